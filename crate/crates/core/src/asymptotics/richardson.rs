use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Fitted coefficients of `value ~ sum_j a_j Z^{p_j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RichardsonFit {
    #[serde(serialize_with = "serialize_powers")]
    pub powers: Vec<Ratio<i32>>,
    pub coefficients: Vec<f64>,
    /// Sum of the two last tableau differences at the chosen depth.
    pub error_estimates: Vec<f64>,
    /// Number of largest-`Z` points the chosen estimate used.
    pub points_used: Vec<usize>,
    /// Spacing, in sequence positions, between the points used.
    pub strides: Vec<usize>,
}

fn serialize_powers<S: serde::Serializer>(p: &[Ratio<i32>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(|p| p.to_string()))
}

impl RichardsonFit {
    pub fn coefficient(&self, power: Ratio<i32>) -> Option<f64> {
        self.powers
            .iter()
            .position(|&p| p == power)
            .map(|i| self.coefficients[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RichardsonOptions {
    /// Deepest tableau column tried.
    pub max_window: usize,
    /// Windows take every `s`-th point for `s = 1..=max_stride`; wider
    /// spacing conditions the extrapolation better.
    pub max_stride: usize,
    /// Largest accepted error estimate, relative to the size of the data
    /// being extrapolated.
    pub tolerance: f64,
}

impl Default for RichardsonOptions {
    fn default() -> Self {
        Self {
            max_window: 12,
            max_stride: 4,
            tolerance: 1e-2,
        }
    }
}

/// Neville's scheme evaluated at `h = 0`.
pub fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|q| q.1).collect();
    let h: Vec<f64> = points.iter().map(|q| q.0).collect();
    let n = p.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ha, hb) = (h[i], h[i + level]);
            p[i] = (hb * p[i] - ha * p[i + 1]) / (hb - ha);
        }
    }
    p[0]
}

/// [`richardson_extrapolate_with`] under default options.
pub fn richardson_extrapolate(sequence: &[(f64, f64)], powers: &[Ratio<i32>]) -> Result<RichardsonFit> {
    richardson_extrapolate_with(sequence, powers, &RichardsonOptions::default())
}

/// Successive elimination in `h = Z^{-1/3}`. For each power in turn, the
/// previously fitted terms are subtracted, the remainder is divided by
/// `Z^{p_j}` and the resulting function of `h` is extrapolated to `h = 0`.
/// Powers must start a descending run on the `1/3` lattice; the terms
/// below them are assumed to continue it.
pub fn richardson_extrapolate_with(
    sequence: &[(f64, f64)],
    powers: &[Ratio<i32>],
    options: &RichardsonOptions,
) -> Result<RichardsonFit> {
    if powers.is_empty() {
        return Err(Error::IllConditioned("no powers requested".into()));
    }
    if sequence.len() < powers.len() + 2 {
        return Err(Error::IllConditioned(format!(
            "{} points cannot determine {} coefficients; need at least {}",
            sequence.len(),
            powers.len(),
            powers.len() + 2
        )));
    }
    for w in powers.windows(2) {
        let step = w[0] - w[1];
        if step <= Ratio::from_integer(0) || (step * 3).denom() != &1 {
            return Err(Error::IllConditioned(format!(
                "powers {} and {} are not descending multiples of 1/3",
                w[0], w[1]
            )));
        }
    }
    let mut data: Vec<(f64, f64)> = sequence.to_vec();
    if data.iter().any(|(z, v)| !(z.is_finite() && *z > 0.0 && v.is_finite())) {
        return Err(Error::IllConditioned("non-finite or non-positive data".into()));
    }
    data.sort_by(|a, b| a.0.total_cmp(&b.0));

    let as_f64 = |p: Ratio<i32>| *p.numer() as f64 / *p.denom() as f64;
    let mut fit = RichardsonFit {
        powers: powers.to_vec(),
        coefficients: Vec::new(),
        error_estimates: Vec::new(),
        points_used: Vec::new(),
        strides: Vec::new(),
    };
    for (j, &power) in powers.iter().enumerate() {
        let scaled: Vec<(f64, f64)> = data
            .iter()
            .map(|&(z, v)| {
                let known: f64 = (0..j).map(|m| fit.coefficients[m] * z.powf(as_f64(powers[m]))).sum();
                (z.cbrt().recip(), (v - known) / z.powf(as_f64(power)))
            })
            .collect();
        let mut best: Option<(usize, usize, f64, f64)> = None;
        for stride in 1..=options.max_stride.max(1) {
            // every stride-th point, counting down from the largest Z
            let window: Vec<(f64, f64)> = scaled.iter().rev().step_by(stride).copied().collect();
            let max_m = options.max_window.min(window.len());
            let estimates: Vec<f64> = (1..=max_m).map(|m| neville_at_zero(&window[..m])).collect();
            for m in 3..=max_m {
                let delta = (estimates[m - 1] - estimates[m - 2]).abs() + (estimates[m - 2] - estimates[m - 3]).abs();
                if delta.is_finite() && best.map_or(true, |b| delta < b.2) {
                    best = Some((stride, m, delta, estimates[m - 1]));
                }
            }
        }
        let (stride, m, delta, value) =
            best.ok_or_else(|| Error::IllConditioned(format!("tableau for Z^{power} has no finite column")))?;
        let scale = scaled
            .iter()
            .rev()
            .step_by(stride)
            .take(m)
            .map(|q| q.1.abs())
            .fold(value.abs(), f64::max);
        if !value.is_finite() || delta > options.tolerance * scale {
            return Err(Error::IllConditioned(format!(
                "tableau for Z^{power} diverges: best error estimate {delta:.3e} against scale {scale:.3e}"
            )));
        }
        fit.coefficients.push(value);
        fit.error_estimates.push(delta);
        fit.points_used.push(m);
        fit.strides.push(stride);
    }
    Ok(fit)
}
