//! Associated Laguerre polynomials and log-factorials.
//!
//! Laguerre values come from the forward three-term recurrence in the degree,
//!
//! ```text
//! (k+1) L_{k+1}^a(x) = (2k + 1 + a - x) L_k^a(x) - (k + a) L_{k-1}^a(x),
//! ```
//!
//! seeded with `L_0 = 1` and `L_1 = 1 + a - x`. Only integer orders are
//! supported; the hydrogenic radial functions need `a = 2l + 1`.

use serde::{Deserialize, Serialize};

/// Degree `k` and order `alpha` of `L_k^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaguerreSpec {
    pub degree: u32,
    pub order: u32,
}

impl LaguerreSpec {
    pub fn new(degree: u32, order: u32) -> Self {
        Self { degree, order }
    }
}

/// `L_k^alpha(x)` for `x >= 0`.
pub fn laguerre(spec: LaguerreSpec, x: f64) -> f64 {
    debug_assert!(x >= 0.0, "laguerre called with x = {x}");
    let alpha = spec.order as f64;
    if spec.degree == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 1.0 + alpha - x;
    for k in 1..spec.degree {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    curr
}

/// `L_k^a(x)` together with its first and second derivatives in `x`.
///
/// Uses `d/dx L_k^a = -L_{k-1}^{a+1}` twice, so each derivative is itself a
/// recurrence value and there is no cancellation near `x = 0`.
pub fn laguerre_with_derivatives(spec: LaguerreSpec, x: f64) -> (f64, f64, f64) {
    let LaguerreSpec { degree, order } = spec;
    let value = laguerre(spec, x);
    let first = if degree >= 1 {
        -laguerre(LaguerreSpec::new(degree - 1, order + 1), x)
    } else {
        0.0
    };
    let second = if degree >= 2 {
        laguerre(LaguerreSpec::new(degree - 2, order + 2), x)
    } else {
        0.0
    };
    (value, first, second)
}

const STIRLING_THRESHOLD: u64 = 256;

/// `ln(n!)`.
///
/// Direct summation of `ln i` below 256 and the Stirling series above, where
/// the truncated tail is below `1e-17` relative.
pub fn log_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n < STIRLING_THRESHOLD {
        return (2..=n).map(|i| (i as f64).ln()).sum();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI * x).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}
