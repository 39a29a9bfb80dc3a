//! Spherically symmetric densities with analytic derivatives.
//!
//! [`RadialDensity`] is what the kinetic functionals consume. Two
//! implementations exist: [`RadialField`], an exponential-polynomial term
//! list `rho(r) = sum_i c_i r^{p_i} exp(-beta_i r)` used for Slater-type
//! atomic densities, and the hydrogenic shell sum in
//! [`crate::hydrogenic::ModelDensity`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_functions::log_factorial;

/// Density and its first two radial derivatives at one radius.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DensityPoint {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

impl std::ops::AddAssign for DensityPoint {
    fn add_assign(&mut self, rhs: Self) {
        self.value += rhs.value;
        self.first += rhs.first;
        self.second += rhs.second;
    }
}

pub trait RadialDensity: Sync {
    /// `rho`, `rho'` and `rho''` at radius `r >= 0`.
    fn point(&self, r: f64) -> DensityPoint;

    fn value(&self, r: f64) -> f64 {
        self.point(r).value
    }

    /// Slowest exponential decay rate present; governs the tail.
    fn tail_decay(&self) -> f64;

    /// Fastest exponential decay rate present; sets the inner length scale.
    fn core_decay(&self) -> f64;
}

/// One `c r^p exp(-beta r)` term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub coefficient: f64,
    pub power: u32,
    pub exponent: f64,
}

impl ExpTerm {
    pub fn new(coefficient: f64, power: u32, exponent: f64) -> Self {
        Self {
            coefficient,
            power,
            exponent,
        }
    }
}

/// Terms sharing one exponent, stored as a dense polynomial in `r`.
#[derive(Debug, Clone, PartialEq)]
struct ExponentGroup {
    exponent: f64,
    coefficients: Vec<f64>,
}

impl ExponentGroup {
    fn point(&self, r: f64) -> DensityPoint {
        // Horner for P, P', P''
        let mut p = 0.0;
        let mut dp = 0.0;
        let mut ddp = 0.0;
        for &c in self.coefficients.iter().rev() {
            ddp = ddp * r + 2.0 * dp;
            dp = dp * r + p;
            p = p * r + c;
        }
        let beta = self.exponent;
        let e = (-beta * r).exp();
        DensityPoint {
            value: e * p,
            first: e * (dp - beta * p),
            second: e * (ddp - 2.0 * beta * dp + beta * beta * p),
        }
    }
}

/// Exponential-polynomial density. Terms with bit-identical exponents are
/// merged on construction.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RadialField {
    groups: Vec<ExponentGroup>,
}

impl RadialField {
    pub fn new(terms: impl IntoIterator<Item = ExpTerm>) -> Result<Self> {
        let mut groups: Vec<ExponentGroup> = Vec::new();
        for term in terms {
            if !(term.exponent.is_finite() && term.exponent > 0.0) {
                return Err(Error::Domain {
                    function: "RadialField::new",
                    detail: format!("exponent must be positive and finite, got {}", term.exponent),
                });
            }
            if !term.coefficient.is_finite() {
                return Err(Error::Domain {
                    function: "RadialField::new",
                    detail: format!("non-finite coefficient {}", term.coefficient),
                });
            }
            let power = term.power as usize;
            let group = match groups
                .iter_mut()
                .position(|g| g.exponent.to_bits() == term.exponent.to_bits())
            {
                Some(i) => &mut groups[i],
                None => {
                    groups.push(ExponentGroup {
                        exponent: term.exponent,
                        coefficients: Vec::new(),
                    });
                    groups.last_mut().unwrap()
                }
            };
            if group.coefficients.len() <= power {
                group.coefficients.resize(power + 1, 0.0);
            }
            group.coefficients[power] += term.coefficient;
        }
        groups.sort_by(|a, b| a.exponent.total_cmp(&b.exponent));
        Ok(Self { groups })
    }

    /// The identically vanishing field.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(|g| g.coefficients.iter().all(|&c| c == 0.0))
    }

    /// Merged terms, ordered by exponent then power. Zero coefficients are omitted.
    pub fn terms(&self) -> impl Iterator<Item = ExpTerm> + '_ {
        self.groups.iter().flat_map(|g| {
            g.coefficients
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0.0)
                .map(move |(p, &c)| ExpTerm::new(c, p as u32, g.exponent))
        })
    }

    pub fn term_count(&self) -> usize {
        self.terms().count()
    }

    /// Distinct exponents.
    pub fn exponent_count(&self) -> usize {
        self.groups.len()
    }

    /// `lambda^3 rho(lambda r)`, the norm-preserving dilation.
    pub fn scaled(&self, lambda: f64) -> Self {
        let groups = self
            .groups
            .iter()
            .map(|g| ExponentGroup {
                exponent: g.exponent * lambda,
                coefficients: g
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(p, &c)| c * lambda.powi(3 + p as i32))
                    .collect(),
            })
            .collect();
        Self { groups }
    }

    /// `integral 4 pi r^2 rho dr`, evaluated term by term in closed form.
    pub fn electron_count(&self) -> f64 {
        4.0 * std::f64::consts::PI
            * self
                .terms()
                .map(|t| {
                    let p = t.power as u64 + 2;
                    t.coefficient * (log_factorial(p) - (p as f64 + 1.0) * t.exponent.ln()).exp()
                })
                .sum::<f64>()
    }
}

impl RadialDensity for RadialField {
    fn point(&self, r: f64) -> DensityPoint {
        let mut acc = DensityPoint::default();
        for g in &self.groups {
            acc += g.point(r);
        }
        acc
    }

    fn tail_decay(&self) -> f64 {
        self.groups.first().map_or(1.0, |g| g.exponent)
    }

    fn core_decay(&self) -> f64 {
        self.groups.last().map_or(1.0, |g| g.exponent)
    }
}
