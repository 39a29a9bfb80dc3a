use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::RadialDensity;
use crate::hydrogenic::{model_density, ShellConfiguration};
use crate::kedf::gauss_legendre;

/// `18^{1/3}`, where the scaled Thomas–Fermi density of the bare-Coulomb
/// model vanishes.
pub fn scaled_turning_point() -> f64 {
    18f64.cbrt()
}

/// `(2 sqrt 2 / 3 pi^2) (1/r - 18^{-1/3})^{3/2}` inside the turning point, zero outside.
pub fn tf_limit_density(r_hat: f64) -> Result<f64> {
    if !(r_hat > 0.0) {
        return Err(Error::Domain {
            function: "tf_limit_density",
            detail: format!("r_hat = {r_hat}; the density is singular at the origin"),
        });
    }
    let gap = 1.0 / r_hat - 1.0 / scaled_turning_point();
    if gap <= 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * 2f64.sqrt() / (3.0 * PI * PI) * gap.powf(1.5))
}

/// `integral 4 pi r^2 rho_TF dr` over `(0, 18^{1/3})` by Gauss–Legendre in
/// `theta` after `r = r_m sin^2 theta`, which makes the integrand smooth.
pub fn tf_limit_charge(panels: usize) -> f64 {
    let rm = scaled_turning_point();
    let (x, w) = gauss_legendre(8);
    let h = 0.5 * PI / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in x.iter().zip(&w) {
            let theta = mid + 0.5 * h * x;
            let (s, c) = theta.sin_cos();
            let r = rm * s * s;
            let jac = 2.0 * rm * s * c;
            if r > 0.0 {
                total += 0.5 * h * w * jac * 4.0 * PI * r * r * tf_limit_density(r).unwrap();
            }
        }
    }
    total
}

/// One row of the scaled-density table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledSample {
    pub r_hat: f64,
    pub rho_hat_model: f64,
    pub rho_hat_tf: f64,
}

impl ScaledSample {
    pub fn deviation(&self) -> f64 {
        self.rho_hat_model - self.rho_hat_tf
    }

    /// `4 pi r^2` times the deviation: the difference of radial charge distributions.
    pub fn radial_deviation(&self) -> f64 {
        4.0 * PI * self.r_hat * self.r_hat * self.deviation()
    }
}

/// `rho_hat = rho / Z^2` against `r_hat = Z^{1/3} r`, alongside the TF limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScaledDensity {
    pub n_max: u32,
    pub nuclear_charge: f64,
    pub turning_point: f64,
    pub samples: Vec<ScaledSample>,
}

/// `count` equally spaced interior points of `(0, 18^{1/3})`.
pub fn figure_abscissae(count: usize) -> Vec<f64> {
    let rm = scaled_turning_point();
    (1..=count).map(|i| rm * i as f64 / (count + 1) as f64).collect()
}

pub fn scaled_model_density(cfg: &ShellConfiguration, r_hat: &[f64]) -> Result<ScaledDensity> {
    let density = model_density(cfg)?;
    let z = cfg.nuclear_charge();
    let length = z.cbrt().recip();
    let samples = r_hat
        .iter()
        .map(|&r| {
            Ok(ScaledSample {
                r_hat: r,
                rho_hat_model: density.value(r * length) / (z * z),
                rho_hat_tf: tf_limit_density(r)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScaledDensity {
        n_max: cfg.n_max(),
        nuclear_charge: z,
        turning_point: scaled_turning_point(),
        samples,
    })
}

/// Indices of interior local maxima of a sampled curve, found as sign
/// changes `+ -> -` of the first difference. Flat steps are skipped; for a
/// plateau the index of its first sample is reported.
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let mut found = Vec::new();
    let mut rising: Option<bool> = None;
    let mut last_change = 0;
    for (i, w) in values.windows(2).enumerate() {
        let d = w[1] - w[0];
        if d == 0.0 {
            continue;
        }
        let up = d > 0.0;
        if rising == Some(true) && !up {
            found.push(last_change);
        }
        if up {
            last_change = i + 1;
        }
        rising = Some(up);
    }
    found
}

pub fn count_local_maxima(values: &[f64]) -> usize {
    local_maxima(values).len()
}

fn highest_peak(values: &[f64]) -> f64 {
    local_maxima(values)
        .into_iter()
        .map(|i| values[i])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The oscillation statistics the figure illustrates. Amplitudes are the
/// height of the highest local maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillationSummary {
    pub n_max: u32,
    pub local_maxima: usize,
    pub peak_amplitude: f64,
    pub radial_local_maxima: usize,
    pub radial_peak_amplitude: f64,
}

impl ScaledDensity {
    pub fn oscillations(&self) -> OscillationSummary {
        let dev: Vec<f64> = self.samples.iter().map(|s| s.deviation()).collect();
        let radial: Vec<f64> = self.samples.iter().map(|s| s.radial_deviation()).collect();
        OscillationSummary {
            n_max: self.n_max,
            local_maxima: count_local_maxima(&dev),
            peak_amplitude: highest_peak(&dev),
            radial_local_maxima: count_local_maxima(&radial),
            radial_peak_amplitude: highest_peak(&radial),
        }
    }
}
