//! The exactly solvable model: `N = Z` non-interacting electrons filling
//! hydrogenic shells `n = 1..n_max` of a bare nucleus.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{DensityPoint, ExpTerm, RadialDensity, RadialField};
use crate::special_functions::{laguerre_with_derivatives, log_factorial, LaguerreSpec};

/// Largest principal quantum number supported in double precision.
pub const MAX_SHELLS: u32 = 40;

/// Largest `n_max` for which [`ModelDensity::to_field`] expands into
/// monomials; beyond it the Laguerre coefficients cancel too strongly.
pub const MAX_SYMBOLIC_SHELLS: u32 = 12;

/// Closed shells `1..=n_max` around a nucleus of charge `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellConfiguration {
    nuclear_charge: f64,
    n_max: u32,
}

impl ShellConfiguration {
    pub fn new(nuclear_charge: f64, n_max: u32) -> Result<Self> {
        if !(nuclear_charge.is_finite() && nuclear_charge > 0.0) {
            return Err(Error::Domain {
                function: "ShellConfiguration::new",
                detail: format!("nuclear charge must be positive, got {nuclear_charge}"),
            });
        }
        check_shell(n_max)?;
        Ok(Self { nuclear_charge, n_max })
    }

    /// The neutral closed-shell model, `Z = N(n_max)`.
    pub fn neutral(n_max: u32) -> Result<Self> {
        check_shell(n_max)?;
        Self::new(electron_count(n_max) as f64, n_max)
    }

    pub fn nuclear_charge(&self) -> f64 {
        self.nuclear_charge
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn electron_count(&self) -> u64 {
        electron_count(self.n_max)
    }
}

fn check_shell(n_max: u32) -> Result<()> {
    if n_max == 0 || n_max > MAX_SHELLS {
        return Err(Error::OutOfRange(format!(
            "n_max = {n_max}; supported range is 1..={MAX_SHELLS}"
        )));
    }
    Ok(())
}

/// `sum_{n=1}^{n_max} 2 n^2 = n_max (n_max + 1) (2 n_max + 1) / 3`.
pub fn electron_count(n_max: u32) -> u64 {
    let n = n_max as u64;
    n * (n + 1) * (2 * n + 1) / 3
}

/// `n_max` of the closed-shell configuration holding exactly `z` electrons.
pub fn magic_shell(z: u64) -> Option<u32> {
    (1..=MAX_SHELLS).find(|&n| electron_count(n) == z)
}

/// `T = n_max Z^2`: every orbital contributes its Rydberg kinetic energy `Z^2 / 2n^2`.
pub fn model_kinetic_energy(cfg: &ShellConfiguration) -> f64 {
    cfg.n_max as f64 * cfg.nuclear_charge * cfg.nuclear_charge
}

/// `n_max N^2` for the neutral model, in exact integer arithmetic.
pub fn neutral_kinetic_energy_exact(n_max: u32) -> u128 {
    let n = electron_count(n_max) as u128;
    n_max as u128 * n * n
}

/// Kinetic energy of the neutral model as a smooth function of `Z`, obtained
/// by solving the shell-filling cubic for `n_max` in radicals.
pub fn model_kinetic_energy_continuous(z: f64) -> Result<f64> {
    let radicand = 2916.0 * z * z - 3.0;
    if !(z > 0.0 && radicand >= 0.0) {
        return Err(Error::Domain {
            function: "model_kinetic_energy_continuous",
            detail: format!("Z = {z} gives a negative radicand {radicand}"),
        });
    }
    let d = (54.0 * z + radicand.sqrt()).cbrt();
    let c1 = 3f64.cbrt();
    Ok(0.5 * (1.0 / (c1 * d) + d / (c1 * c1) - 1.0) * z * z)
}

fn check_orbital(n: u32, l: u32) -> Result<()> {
    if n == 0 || n > MAX_SHELLS {
        return Err(Error::OutOfRange(format!(
            "n = {n}; supported range is 1..={MAX_SHELLS}"
        )));
    }
    if l >= n {
        return Err(Error::OutOfRange(format!("l = {l} must be below n = {n}")));
    }
    Ok(())
}

/// One `(n, l)` orbital at fixed `Z`: the pieces of `R_{nl}` that do not depend on `r`.
#[derive(Debug, Clone, Copy)]
struct Orbital {
    l: u32,
    laguerre: LaguerreSpec,
    /// `2Z/n`, the argument scale `x = s r`.
    scale: f64,
    log_norm: f64,
}

impl Orbital {
    fn new(z: f64, n: u32, l: u32) -> Self {
        let scale = 2.0 * z / n as f64;
        let log_norm = 0.5
            * (3.0 * scale.ln() + log_factorial((n - l - 1) as u64)
                - (2.0 * n as f64).ln()
                - log_factorial((n + l) as u64));
        Self {
            l,
            laguerre: LaguerreSpec::new(n - l - 1, 2 * l + 1),
            scale,
            log_norm,
        }
    }

    fn value(&self, r: f64) -> f64 {
        let x = self.scale * r;
        if x == 0.0 {
            return if self.l == 0 { self.log_norm.exp() } else { 0.0 };
        }
        let (lag, _, _) = laguerre_with_derivatives(self.laguerre, x);
        (self.log_norm - 0.5 * x + self.l as f64 * x.ln()).exp() * lag
    }

    /// `(R, dR/dr, d^2R/dr^2)`.
    fn derivatives(&self, r: f64) -> (f64, f64, f64) {
        let x = self.scale * r;
        let s = self.scale;
        let (lag, dlag, ddlag) = laguerre_with_derivatives(self.laguerre, x);
        if x == 0.0 {
            // only s orbitals survive at the nucleus; d^2 needs l <= 1
            let n0 = self.log_norm.exp();
            return match self.l {
                0 => (
                    n0 * lag,
                    s * n0 * (dlag - 0.5 * lag),
                    s * s * n0 * (ddlag - dlag + 0.25 * lag),
                ),
                1 => (0.0, s * n0 * lag, s * s * n0 * 2.0 * (dlag - 0.5 * lag)),
                _ => (0.0, 0.0, if self.l == 2 { s * s * n0 * 2.0 * lag } else { 0.0 }),
            };
        }
        let l = self.l as f64;
        // g = N e^{-x/2} x^l, g'/g = l/x - 1/2, g''/g = l(l-1)/x^2 - l/x + 1/4
        let g = (self.log_norm - 0.5 * x + l * x.ln()).exp();
        let q = l / x - 0.5;
        let qq = l * (l - 1.0) / (x * x) - l / x + 0.25;
        let value = g * lag;
        let dx = g * (dlag + q * lag);
        let ddx = g * (ddlag + 2.0 * q * dlag + qq * lag);
        (value, s * dx, s * s * ddx)
    }

    /// `R_{nl}` as a polynomial in `r` (coefficients by power), times `exp(-s r / 2)`.
    fn monomials(&self) -> Vec<f64> {
        let LaguerreSpec { degree: k, order: a } = self.laguerre;
        let norm = self.log_norm.exp();
        let mut poly = vec![0.0; (self.l + k + 1) as usize];
        for i in 0..=k {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let log_mag = log_factorial((k + a) as u64)
                - log_factorial((k - i) as u64)
                - log_factorial((a + i) as u64)
                - log_factorial(i as u64)
                + (self.l + i) as f64 * self.scale.ln();
            poly[(self.l + i) as usize] = sign * norm * log_mag.exp();
        }
        poly
    }
}

/// `R_{nl}(r)` for charge `Z`, normalized so that `integral R^2 r^2 dr = 1`.
pub fn radial_wavefunction(z: f64, n: u32, l: u32, r: f64) -> Result<f64> {
    check_orbital(n, l)?;
    if !(r >= 0.0) {
        return Err(Error::Domain {
            function: "radial_wavefunction",
            detail: format!("r = {r}"),
        });
    }
    Ok(Orbital::new(z, n, l).value(r))
}

/// `(R, R', R'')` of `R_{nl}` at `r`.
pub fn radial_wavefunction_derivatives(z: f64, n: u32, l: u32, r: f64) -> Result<(f64, f64, f64)> {
    check_orbital(n, l)?;
    Ok(Orbital::new(z, n, l).derivatives(r))
}

#[derive(Debug, Clone)]
struct Shell {
    orbitals: Vec<Orbital>,
}

/// Density of the filled shells,
/// `rho(r) = (1/4pi) sum_n sum_l 2 (2l+1) R_{nl}^2(r)`,
/// with the factor 2 for spin.
#[derive(Debug, Clone)]
pub struct ModelDensity {
    cfg: ShellConfiguration,
    shells: Vec<Shell>,
}

/// Builds the model density for `cfg`.
pub fn model_density(cfg: &ShellConfiguration) -> Result<ModelDensity> {
    check_shell(cfg.n_max)?;
    let z = cfg.nuclear_charge;
    let shells = (1..=cfg.n_max)
        .map(|n| Shell {
            orbitals: (0..n).map(|l| Orbital::new(z, n, l)).collect(),
        })
        .collect();
    Ok(ModelDensity { cfg: *cfg, shells })
}

impl ModelDensity {
    pub fn configuration(&self) -> &ShellConfiguration {
        &self.cfg
    }

    /// Exponential-polynomial form of the density, one exponent `2Z/n` per shell.
    pub fn to_field(&self) -> Result<RadialField> {
        if self.cfg.n_max > MAX_SYMBOLIC_SHELLS {
            return Err(Error::OutOfRange(format!(
                "symbolic expansion needs n_max <= {MAX_SYMBOLIC_SHELLS}, got {}",
                self.cfg.n_max
            )));
        }
        let mut terms = Vec::new();
        for shell in &self.shells {
            for orb in &shell.orbitals {
                let weight = 2.0 * (2 * orb.l + 1) as f64 / (4.0 * PI);
                let poly = orb.monomials();
                for (i, &a) in poly.iter().enumerate() {
                    for (j, &b) in poly.iter().enumerate() {
                        if a != 0.0 && b != 0.0 {
                            terms.push(ExpTerm::new(weight * a * b, (i + j) as u32, orb.scale));
                        }
                    }
                }
            }
        }
        RadialField::new(terms)
    }
}

impl RadialDensity for ModelDensity {
    fn point(&self, r: f64) -> DensityPoint {
        let mut acc = DensityPoint::default();
        for shell in &self.shells {
            for orb in &shell.orbitals {
                let weight = 2.0 * (2 * orb.l + 1) as f64 / (4.0 * PI);
                let (f, df, ddf) = orb.derivatives(r);
                acc += DensityPoint {
                    value: weight * f * f,
                    first: 2.0 * weight * f * df,
                    second: 2.0 * weight * (df * df + f * ddf),
                };
            }
        }
        acc
    }

    fn value(&self, r: f64) -> f64 {
        self.shells
            .iter()
            .flat_map(|s| s.orbitals.iter())
            .map(|orb| {
                let f = orb.value(r);
                2.0 * (2 * orb.l + 1) as f64 / (4.0 * PI) * f * f
            })
            .sum()
    }

    fn tail_decay(&self) -> f64 {
        2.0 * self.cfg.nuclear_charge / self.cfg.n_max as f64
    }

    fn core_decay(&self) -> f64 {
        2.0 * self.cfg.nuclear_charge
    }
}
