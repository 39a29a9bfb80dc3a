use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use super::richardson::{richardson_extrapolate, RichardsonFit};
use crate::error::Result;
use crate::hydrogenic::{model_density, model_kinetic_energy, ShellConfiguration, MAX_SHELLS};
use crate::kedf::{gradient_expansion, GradientTerms, GridSettings, RadialGrid};

/// Gradient-expansion terms of one neutral closed-shell model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelPoint {
    pub n_max: u32,
    pub z: f64,
    pub t_model: f64,
    pub terms: GradientTerms,
}

impl ModelPoint {
    /// `(T_TF - T)/T`, `(T_TF + T2 - T)/T`, `(T_TF + T2 + T4 - T)/T`.
    pub fn relative_errors(&self) -> [f64; 3] {
        let t = self.t_model;
        let t0 = self.terms.t_tf;
        let t2 = t0 + self.terms.t2;
        let t4 = t2 + self.terms.t4;
        [(t0 - t) / t, (t2 - t) / t, (t4 - t) / t]
    }
}

pub fn model_point(n_max: u32, settings: &GridSettings) -> Result<ModelPoint> {
    let cfg = ShellConfiguration::neutral(n_max)?;
    let density = model_density(&cfg)?;
    let grid = RadialGrid::for_density(&density, settings)?;
    Ok(ModelPoint {
        n_max,
        z: cfg.nuclear_charge(),
        t_model: model_kinetic_energy(&cfg),
        terms: gradient_expansion(&density, &grid)?,
    })
}

/// Model points for every `n_max` in `shells`, computed in parallel and
/// returned in input order.
pub fn model_sequence(shells: impl IntoIterator<Item = u32>, settings: &GridSettings) -> Result<Vec<ModelPoint>> {
    let shells: Vec<u32> = shells.into_iter().collect();
    shells.par_iter().map(|&n| model_point(n, settings)).collect()
}

/// Default shell range for the large-`Z` fits.
pub fn default_fit_shells() -> std::ops::RangeInclusive<u32> {
    2..=MAX_SHELLS
}

pub fn thirds(n: i32) -> Ratio<i32> {
    Ratio::new(n, 3)
}

/// Richardson fits of `T_TF`, `T2` and `T4` over the model sequence, each in
/// powers `Z^{7/3}, Z^2, Z^{5/3}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelFits {
    pub tf: RichardsonFit,
    pub t2: RichardsonFit,
    pub t4: RichardsonFit,
}

pub fn fit_model_coefficients(points: &[ModelPoint]) -> Result<ModelFits> {
    let powers = [thirds(7), thirds(6), thirds(5)];
    let series =
        |f: fn(&GradientTerms) -> f64| -> Vec<(f64, f64)> { points.iter().map(|p| (p.z, f(&p.terms))).collect() };
    Ok(ModelFits {
        tf: richardson_extrapolate(&series(|t| t.t_tf), &powers)?,
        t2: richardson_extrapolate(&series(|t| t.t2), &powers)?,
        t4: richardson_extrapolate(&series(|t| t.t4), &powers)?,
    })
}
