//! Quadrature on `[0, r_max]` for radial integrals.
//!
//! Every scheme is a composite 8-point Gauss–Legendre rule applied in a
//! mapped variable, so no node sits on `r = 0` and a doubled grid is just
//! twice as many panels.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::RadialDensity;

const PANEL_ORDER: usize = 8;
pub const MIN_POINTS: usize = 16;
pub const DEFAULT_POINTS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridScheme {
    /// `r = a (e^{alpha t} - 1)` with `t` uniform on `[0, 1]` and
    /// `alpha = ln(1 + r_max / a)`; the span is `(a, r_max)`.
    #[default]
    ExpMapped,
    /// `ln r` uniform on `[ln r_min, ln r_max]`; `[0, r_min]` is dropped.
    Logarithmic,
    /// `r` uniform on `[r_min, r_max]`.
    Linear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    scheme: GridScheme,
    span: (f64, f64),
    panels: usize,
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_ORDER))
}

/// Builds a grid with at least `n_points` nodes (rounded up to whole panels).
pub fn make_grid(scheme: GridScheme, n_points: usize, span: (f64, f64)) -> Result<RadialGrid> {
    if n_points < MIN_POINTS {
        return Err(Error::InvalidGrid(format!(
            "{n_points} points requested, at least {MIN_POINTS} required"
        )));
    }
    let (lo, hi) = span;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo) {
        return Err(Error::InvalidGrid(format!(
            "span ({lo}, {hi}) must satisfy 0 < lo < hi < inf"
        )));
    }
    let panels = n_points.div_ceil(PANEL_ORDER);
    // map t in [0, 1] to r, returning (r, dr/dt)
    let map: Box<dyn Fn(f64) -> (f64, f64)> = match scheme {
        GridScheme::ExpMapped => {
            let alpha = (hi / lo).ln_1p();
            Box::new(move |t| {
                let e = (alpha * t).exp();
                (lo * (e - 1.0), lo * alpha * e)
            })
        }
        GridScheme::Logarithmic => {
            let (a, b) = (lo.ln(), hi.ln());
            Box::new(move |t| {
                let r = (a + (b - a) * t).exp();
                (r, r * (b - a))
            })
        }
        GridScheme::Linear => Box::new(move |t| (lo + (hi - lo) * t, hi - lo)),
    };
    let (gx, gw) = panel_rule();
    let h = 1.0 / panels as f64;
    let mut nodes = Vec::with_capacity(panels * PANEL_ORDER);
    let mut weights = Vec::with_capacity(panels * PANEL_ORDER);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in gx.iter().zip(gw) {
            let (r, jac) = map(mid + 0.5 * h * x);
            nodes.push(r);
            weights.push(0.5 * h * w * jac);
        }
    }
    if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "span ({lo}, {hi}) is too narrow for {n_points} distinct nodes"
        )));
    }
    Ok(RadialGrid {
        nodes,
        weights,
        scheme,
        span,
        panels,
    })
}

impl RadialGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn scheme(&self) -> GridScheme {
        self.scheme
    }

    pub fn span(&self) -> (f64, f64) {
        self.span
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same scheme and span with twice the panels.
    pub fn refined(&self) -> RadialGrid {
        make_grid(self.scheme, 2 * self.panels * PANEL_ORDER, self.span).expect("refining a valid grid cannot fail")
    }

    /// `integral f(r) dr` over the grid.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * f(r)).sum()
    }

    /// Relative error of the grid on `integral r^2 e^{-r} dr = 2`. Only
    /// meaningful when the span covers lengths of order one.
    pub fn self_test(&self) -> f64 {
        (self.integrate(|r| r * r * (-r).exp()) - 2.0).abs() / 2.0
    }

    /// A grid adapted to `density`: inner scale from the core decay, outer
    /// edge where `r^3 rho^{1/3}` has fallen below `1e-17` of its peak.
    pub fn for_density(density: &dyn RadialDensity, settings: &GridSettings) -> Result<RadialGrid> {
        let core = density.core_decay();
        let tail = density.tail_decay();
        let r_max = match settings.r_max {
            Some(r) => r,
            None => outer_radius(density, tail),
        };
        let lo = match settings.scheme {
            GridScheme::ExpMapped => 0.5 / core,
            GridScheme::Logarithmic => 1e-7 / core,
            GridScheme::Linear => 1e-12 * r_max,
        };
        make_grid(settings.scheme, settings.points, (lo, r_max))
    }
}

/// Steps in a row the cutoff must hold for, so that radial nodes are not
/// mistaken for the tail.
const QUIET_STEPS: usize = 8;

fn outer_radius(density: &dyn RadialDensity, tail: f64) -> f64 {
    let step = 0.25 / tail;
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut r = step;
    loop {
        let rho = density.value(r).max(0.0);
        let f = r.powi(3) * rho.cbrt();
        peak = peak.max(f);
        if (peak > 0.0 && f < 1e-17 * peak) || rho < 1e-250 {
            quiet += 1;
            if quiet == QUIET_STEPS {
                return r - (QUIET_STEPS - 1) as f64 * step;
            }
        } else {
            quiet = 0;
        }
        if r > 1e4 / tail {
            return r;
        }
        r += step;
    }
}

/// Grid overrides shared by the library entry points and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSettings {
    pub scheme: GridScheme,
    pub points: usize,
    pub r_max: Option<f64>,
}

impl Default for GridSettings {
    fn default() -> Self {
        Self {
            scheme: GridScheme::default(),
            points: DEFAULT_POINTS,
            r_max: None,
        }
    }
}
