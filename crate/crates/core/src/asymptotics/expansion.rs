use num_rational::Ratio;
use serde::Serialize;

/// Ordered `sum_i c_i Z^{p_i}` with strictly decreasing powers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZExpansion {
    #[serde(serialize_with = "serialize_terms")]
    terms: Vec<(Ratio<i32>, f64)>,
}

fn serialize_terms<S: serde::Serializer>(terms: &[(Ratio<i32>, f64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (p, c) in terms {
        seq.serialize_element(&(p.to_string(), c))?;
    }
    seq.end()
}

impl ZExpansion {
    /// Panics unless the powers strictly decrease.
    pub fn new(terms: Vec<(Ratio<i32>, f64)>) -> Self {
        assert!(
            terms.windows(2).all(|w| w[0].0 > w[1].0),
            "powers must strictly decrease"
        );
        Self { terms }
    }

    pub fn terms(&self) -> &[(Ratio<i32>, f64)] {
        &self.terms
    }

    /// Coefficient of `Z^p`; zero when the power is absent.
    pub fn coefficient(&self, power: Ratio<i32>) -> f64 {
        self.terms.iter().find(|(p, _)| *p == power).map_or(0.0, |t| t.1)
    }

    pub fn evaluate(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| c * z.powf(*p.numer() as f64 / *p.denom() as f64))
            .sum()
    }

    /// The lowest power kept.
    pub fn truncation_order(&self) -> Option<Ratio<i32>> {
        self.terms.last().map(|t| t.0)
    }
}

/// A closed-form coefficient `q * s^{1/3}` with rational `q` and `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurdCoefficient {
    pub rational: Ratio<i64>,
    pub cube_root_of: Ratio<i64>,
}

impl SurdCoefficient {
    pub fn value(&self) -> f64 {
        ratio_f64(self.rational) * ratio_f64(self.cube_root_of).cbrt()
    }
}

impl std::fmt::Display for SurdCoefficient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self.cube_root_of.numer() == *self.cube_root_of.denom() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{} * ({})^(1/3)", self.rational, self.cube_root_of)
        }
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Coefficients `a_k` of `w(eps) = sum_k a_k eps^k` solving `w^3 = 1 + eps w`
/// with `w(0) = 1`.
pub fn cubic_root_series(terms: usize) -> Vec<Ratio<i64>> {
    let mut a: Vec<Ratio<i64>> = Vec::with_capacity(terms);
    for k in 0..terms {
        if k == 0 {
            a.push(Ratio::from_integer(1));
            continue;
        }
        // [eps^k] w^3 = 3 a_k + rest; must equal a_{k-1}
        let mut rest = Ratio::from_integer(0);
        for i in 0..=k {
            for j in 0..=(k - i) {
                let m = k - i - j;
                if i == k || j == k || m == k {
                    continue;
                }
                rest += a[i] * a[j] * a[m];
            }
        }
        a.push((a[k - 1] - rest) / 3);
    }
    a
}

/// Exact terms of the neutral model energy
/// `T = sum_{k >= 0} a_k 4^{-k} (3/2)^{(1-2k)/3} Z^{7/3 - 2k/3} - Z^2 / 2`,
/// obtained by inverting the shell-filling cubic `u^3 - u/4 = 3Z/2`
/// (`u = n_max + 1/2`) and substituting into `T = n_max Z^2`.
/// Returned as `(power, coefficient)` pairs over the full `1/3` lattice,
/// zeros included, down to the `count`-th non-vanishing term.
pub fn model_expansion_exact(count: usize) -> Vec<(Ratio<i32>, SurdCoefficient)> {
    let three_halves = Ratio::new(3i64, 2);
    let zero = SurdCoefficient {
        rational: Ratio::from_integer(0),
        cube_root_of: Ratio::from_integer(1),
    };
    let mut out = Vec::new();
    let mut found = 0;
    let a = cubic_root_series(3 * count + 3);
    let mut thirds = 7;
    while found < count {
        let power = Ratio::new(thirds, 3);
        let coefficient = if thirds == 6 {
            SurdCoefficient {
                rational: Ratio::new(-1, 2),
                cube_root_of: Ratio::from_integer(1),
            }
        } else if (7 - thirds) % 2 == 0 {
            let k = ((7 - thirds) / 2) as usize;
            let e = 1 - 2 * k as i32;
            let q = e.div_euclid(3);
            let r = e.rem_euclid(3);
            let mut rational = a[k] / Ratio::from_integer(4i64.pow(k as u32));
            rational *= pow_ratio(three_halves, q);
            SurdCoefficient {
                rational,
                cube_root_of: pow_ratio(three_halves, r),
            }
        } else {
            zero
        };
        if *coefficient.rational.numer() != 0 {
            found += 1;
        }
        out.push((power, coefficient));
        thirds -= 1;
    }
    out
}

fn pow_ratio(base: Ratio<i64>, e: i32) -> Ratio<i64> {
    if e >= 0 {
        base.pow(e)
    } else {
        base.recip().pow(-e)
    }
}

/// The model expansion with `count` non-vanishing terms, as floating point.
pub fn model_expansion(count: usize) -> ZExpansion {
    ZExpansion::new(
        model_expansion_exact(count)
            .into_iter()
            .map(|(p, c)| (p, c.value()))
            .collect(),
    )
}
