//! The solvable-model correction `dT = T_model - T_TF[rho_model]` and its
//! cubic interpolation between the closed-shell nodes `Z = 2, 10, 28, 60`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hydrogenic::{magic_shell, model_density, model_kinetic_energy, ShellConfiguration};
use crate::kedf::{tf_energy, GridSettings, RadialGrid};

/// `c0 + c1 Z + c2 Z^2 + c3 Z^3` as printed in the literature, five decimals.
pub const PUBLISHED_COEFFICIENTS: [f64; 4] = [0.21210, -0.19860, 0.12815, 0.00010];

/// Shells of the four interpolation nodes; `Z = 2, 10, 28, 60`.
pub const NODE_SHELLS: [u32; 4] = [1, 2, 3, 4];

/// Upper end of the interpolation range; beyond it the cubic is extrapolated.
pub const LAST_NODE: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InterpolationMode {
    Published,
    #[default]
    Refit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaKind {
    Exact,
    Interpolated,
    Extrapolated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaT {
    pub value: f64,
    pub kind: DeltaKind,
}

/// `T_model - T_TF` for the neutral closed-shell model with `n_max` shells.
pub fn delta_t_exact(n_max: u32, settings: &GridSettings) -> Result<f64> {
    let cfg = ShellConfiguration::neutral(n_max)?;
    let density = model_density(&cfg)?;
    let grid = RadialGrid::for_density(&density, settings)?;
    Ok(model_kinetic_energy(&cfg) - tf_energy(&density, &grid)?)
}

/// `c0 + c1 z + c2 z^2 + c3 z^3`.
pub fn evaluate_cubic(coefficients: &[f64; 4], z: f64) -> f64 {
    coefficients.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// The cubic through four `(z, value)` points, in monomial coefficients.
pub fn fit_cubic(points: &[(f64, f64); 4]) -> [f64; 4] {
    // Newton divided differences, then expand the nested form
    let x: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut d: Vec<f64> = points.iter().map(|p| p.1).collect();
    for level in 1..4 {
        for i in (level..4).rev() {
            d[i] = (d[i] - d[i - 1]) / (x[i] - x[i - level]);
        }
    }
    let mut poly = [0.0; 4];
    for k in (0..4).rev() {
        // poly = poly * (z - x_k) + d_k
        let mut next = [0.0; 4];
        for j in 0..3 {
            next[j + 1] += poly[j];
        }
        for j in 0..4 {
            next[j] -= x[k] * poly[j];
        }
        next[0] += d[k];
        poly = next;
    }
    poly
}

/// Node values and the interpolating cubic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionTable {
    mode: InterpolationMode,
    nodes: Vec<(u32, f64)>,
    coefficients: [f64; 4],
    settings: GridSettings,
}

impl CorrectionTable {
    /// Computes the four node values; in [`InterpolationMode::Refit`] the cubic
    /// is fitted to them, otherwise the published coefficients are used.
    pub fn new(mode: InterpolationMode, settings: &GridSettings) -> Result<Self> {
        let nodes = NODE_SHELLS
            .iter()
            .map(|&n| {
                let cfg = ShellConfiguration::neutral(n)?;
                Ok((cfg.electron_count() as u32, delta_t_exact(n, settings)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let coefficients = match mode {
            InterpolationMode::Published => PUBLISHED_COEFFICIENTS,
            InterpolationMode::Refit => {
                let pts = [0, 1, 2, 3].map(|i| (nodes[i].0 as f64, nodes[i].1));
                fit_cubic(&pts)
            }
        };
        Ok(Self {
            mode,
            nodes,
            coefficients,
            settings: *settings,
        })
    }

    pub fn mode(&self) -> InterpolationMode {
        self.mode
    }

    pub fn nodes(&self) -> &[(u32, f64)] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[f64; 4] {
        &self.coefficients
    }

    /// The cubic at `z`, whatever `z` is.
    pub fn interpolate(&self, z: f64) -> f64 {
        evaluate_cubic(&self.coefficients, z)
    }

    /// `dT` for atomic number `z`: exact at closed-shell `z` (computed on
    /// demand beyond the nodes), the cubic otherwise.
    pub fn delta_t(&self, z: u32) -> Result<DeltaT> {
        if z == 0 {
            return Err(Error::Domain {
                function: "CorrectionTable::delta_t",
                detail: "Z must be at least 1".into(),
            });
        }
        if let Some(n) = magic_shell(z as u64) {
            let value = match self.nodes.iter().find(|node| node.0 == z) {
                Some(node) => node.1,
                None => delta_t_exact(n, &self.settings)?,
            };
            return Ok(DeltaT {
                value,
                kind: DeltaKind::Exact,
            });
        }
        let kind = if (2..=LAST_NODE).contains(&z) {
            DeltaKind::Interpolated
        } else {
            DeltaKind::Extrapolated
        };
        Ok(DeltaT {
            value: self.interpolate(z as f64),
            kind,
        })
    }

    /// `T_TF + dT(z)`.
    pub fn corrected_energy(&self, t_tf: f64, z: u32) -> Result<(f64, DeltaT)> {
        let delta = self.delta_t(z)?;
        Ok((t_tf + delta.value, delta))
    }
}
