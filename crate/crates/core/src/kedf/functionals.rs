use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::RadialGrid;
use crate::error::{Error, Result};
use crate::field::{DensityPoint, RadialDensity};

/// `(3/10)(3 pi^2)^{2/3}`.
pub fn tf_constant() -> f64 {
    0.3 * (3.0 * PI * PI).powf(2.0 / 3.0)
}

/// `(3 pi^2)^{-2/3} / 540`, prefactor of the fourth-order density.
pub fn fourth_order_constant() -> f64 {
    (3.0 * PI * PI).powf(-2.0 / 3.0) / 540.0
}

/// Points with `rho` below this are left out of every integrand.
pub const DENSITY_FLOOR: f64 = 1e-280;
/// Largest relative change allowed when the grid is doubled.
pub const CONVERGENCE_LIMIT: f64 = 1e-8;
/// Largest share of the electrons allowed below [`DENSITY_FLOOR`].
pub const CUTOFF_MASS_LIMIT: f64 = 1e-10;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Functional {
    ThomasFermi,
    Weizsacker,
    FourthOrder,
}

impl Functional {
    fn name(self) -> &'static str {
        match self {
            Functional::ThomasFermi => "T_TF",
            Functional::Weizsacker => "T_W",
            Functional::FourthOrder => "T4",
        }
    }
}

/// The three gradient-expansion terms of one density.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GradientTerms {
    pub electrons: f64,
    pub t_tf: f64,
    pub t_w: f64,
    pub t2: f64,
    pub t4: f64,
}

impl GradientTerms {
    fn get(&self, f: Functional) -> f64 {
        match f {
            Functional::ThomasFermi => self.t_tf,
            Functional::Weizsacker => self.t_w,
            Functional::FourthOrder => self.t4,
        }
    }
}

#[derive(Default, Clone, Copy)]
struct Sums {
    electrons: f64,
    skipped: f64,
    tf: f64,
    tw: f64,
    t4: f64,
}

impl std::ops::Add for Sums {
    type Output = Sums;
    fn add(self, o: Sums) -> Sums {
        Sums {
            electrons: self.electrons + o.electrons,
            skipped: self.skipped + o.skipped,
            tf: self.tf + o.tf,
            tw: self.tw + o.tw,
            t4: self.t4 + o.t4,
        }
    }
}

fn node_sums(r: f64, w: f64, p: DensityPoint, negative_limit: f64) -> Result<Sums> {
    let rho = p.value;
    let wr2 = w * r * r;
    if rho < DENSITY_FLOOR {
        if rho < -negative_limit {
            return Err(Error::NegativeDensity { radius: r, value: rho });
        }
        return Ok(Sums {
            skipped: wr2 * rho.abs(),
            ..Sums::default()
        });
    }
    let q1 = p.first / rho;
    let q2 = (2.0 * p.first + r * p.second) / rho;
    let bracket = q2 * q2 - 1.125 * r * q2 * q1 * q1 + r * r * q1.powi(4) / 3.0;
    Ok(Sums {
        electrons: wr2 * rho,
        skipped: 0.0,
        tf: wr2 * rho.powf(5.0 / 3.0),
        tw: wr2 * p.first * q1 / 8.0,
        t4: w * rho.cbrt() * bracket,
    })
}

/// All terms on one grid, without the refinement check.
pub fn gradient_terms_on(density: &dyn RadialDensity, grid: &RadialGrid) -> Result<GradientTerms> {
    let points: Vec<DensityPoint> = grid.nodes().par_iter().map(|&r| density.point(r)).collect();
    let peak = points.iter().map(|p| p.value).fold(0.0, f64::max);
    let negative_limit = 1e-12 * peak;
    let partial: Vec<Result<Sums>> = grid
        .nodes()
        .par_chunks(CHUNK)
        .zip(grid.weights().par_chunks(CHUNK))
        .zip(points.par_chunks(CHUNK))
        .map(|((rs, ws), ps)| {
            let mut acc = Sums::default();
            for ((&r, &w), &p) in rs.iter().zip(ws).zip(ps) {
                acc = acc + node_sums(r, w, p, negative_limit)?;
            }
            Ok(acc)
        })
        .collect();
    let mut total = Sums::default();
    for s in partial {
        total = total + s?;
    }
    let mass = total.electrons + total.skipped;
    if mass > 0.0 && total.skipped / mass > CUTOFF_MASS_LIMIT {
        return Err(Error::DensityCutoff {
            fraction: total.skipped / mass,
        });
    }
    let four_pi = 4.0 * PI;
    let t_w = four_pi * total.tw;
    Ok(GradientTerms {
        electrons: four_pi * total.electrons,
        t_tf: four_pi * tf_constant() * total.tf,
        t_w,
        t2: t_w / 9.0,
        t4: four_pi * fourth_order_constant() * total.t4,
    })
}

fn relative_change(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Terms on `grid`, checked against the doubled grid for the listed functionals.
pub fn gradient_terms_checked(
    density: &dyn RadialDensity,
    grid: &RadialGrid,
    check: &[Functional],
) -> Result<GradientTerms> {
    let coarse = gradient_terms_on(density, grid)?;
    let fine = gradient_terms_on(density, &grid.refined())?;
    for &f in check {
        let change = relative_change(coarse.get(f), fine.get(f));
        if change > CONVERGENCE_LIMIT {
            return Err(Error::NotConverged {
                functional: f.name(),
                relative_change: change,
                limit: CONVERGENCE_LIMIT,
            });
        }
    }
    Ok(fine)
}

/// `T_TF`, `T_W`, `T2` and `T4`, each converged under grid doubling.
pub fn gradient_expansion(density: &dyn RadialDensity, grid: &RadialGrid) -> Result<GradientTerms> {
    gradient_terms_checked(
        density,
        grid,
        &[Functional::ThomasFermi, Functional::Weizsacker, Functional::FourthOrder],
    )
}

/// `4 pi integral r^2 (3/10)(3 pi^2)^{2/3} rho^{5/3} dr`.
pub fn tf_energy(density: &dyn RadialDensity, grid: &RadialGrid) -> Result<f64> {
    Ok(gradient_terms_checked(density, grid, &[Functional::ThomasFermi])?.t_tf)
}

/// `(T_W, T_W / 9)` with `T_W = 4 pi integral r^2 rho'^2 / (8 rho) dr`.
pub fn weizsacker_energy(density: &dyn RadialDensity, grid: &RadialGrid) -> Result<(f64, f64)> {
    let t = gradient_terms_checked(density, grid, &[Functional::Weizsacker])?;
    Ok((t.t_w, t.t2))
}

/// The fourth-order gradient term. The Laplacian enters as
/// `r (2 rho'/r + rho'') = 2 rho' + r rho''`, so the integrand carries no
/// negative power of `r`.
pub fn fourth_order_energy(density: &dyn RadialDensity, grid: &RadialGrid) -> Result<f64> {
    Ok(gradient_terms_checked(density, grid, &[Functional::FourthOrder])?.t4)
}

/// `4 pi integral r^2 rho dr` on the grid.
pub fn integrated_charge(density: &dyn RadialDensity, grid: &RadialGrid) -> f64 {
    4.0 * PI * grid.integrate(|r| r * r * density.value(r))
}

/// One system's approximations against a reference kinetic energy.
/// Relative errors are `(approximation - reference) / reference`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub t_tf: f64,
    pub t2: f64,
    pub t4: f64,
    pub delta_t: f64,
    pub corrected: f64,
    pub reference: f64,
    pub rel_err_tf: f64,
    pub rel_err_t2: f64,
    pub rel_err_t4: f64,
    pub rel_err_corrected: f64,
}

impl EnergyBreakdown {
    pub fn new(terms: &GradientTerms, delta_t: f64, reference: f64) -> Self {
        let rel = |t: f64| (t - reference) / reference;
        let corrected = terms.t_tf + delta_t;
        Self {
            t_tf: terms.t_tf,
            t2: terms.t2,
            t4: terms.t4,
            delta_t,
            corrected,
            reference,
            rel_err_tf: rel(terms.t_tf),
            rel_err_t2: rel(terms.t_tf + terms.t2),
            rel_err_t4: rel(terms.t_tf + terms.t2 + terms.t4),
            rel_err_corrected: rel(corrected),
        }
    }
}
