//! Slater-type-orbital Hartree–Fock atoms.
//!
//! The text format is line oriented; `#` starts a comment line and fields
//! are separated by whitespace:
//!
//! ```text
//! ATOM <symbol> <Z> <reference kinetic energy, hartree>
//! ORB  <n><l letter> <occupation>
//! PRM  <n_i> <zeta_i> <c_i>
//! ```
//!
//! An orbital is `R(r) = sum_i c_i N_i r^{n_i - 1} exp(-zeta_i r)` with
//! `N_i = (2 zeta_i)^{n_i + 1/2} / sqrt((2 n_i)!)`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExpTerm, RadialField};
use crate::special_functions::log_factorial;

/// Largest accepted deviation of an orbital norm from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-5;

const L_LETTERS: [char; 7] = ['s', 'p', 'd', 'f', 'g', 'h', 'i'];

/// A number together with the decimal places it was written with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Written {
    value: f64,
    #[serde(skip)]
    places: Option<usize>,
}

impl Written {
    fn parse(token: &str) -> Option<Self> {
        let value: f64 = token.parse().ok()?;
        if !value.is_finite() {
            return None;
        }
        let places = match token.find(['e', 'E']) {
            Some(_) => None,
            None => Some(token.find('.').map_or(0, |dot| token.len() - dot - 1)),
        };
        Some(Self { value, places })
    }

    fn fmt(&self) -> String {
        match self.places {
            Some(p) => format!("{:.*}", p, self.value),
            None => format!("{}", self.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoPrimitive {
    pub n: u32,
    zeta: Written,
    coefficient: Written,
}

impl StoPrimitive {
    pub fn new(n: u32, zeta: f64, coefficient: f64) -> Self {
        Self {
            n,
            zeta: Written {
                value: zeta,
                places: None,
            },
            coefficient: Written {
                value: coefficient,
                places: None,
            },
        }
    }

    pub fn zeta(&self) -> f64 {
        self.zeta.value
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient.value
    }

    /// `N_i`, computed in log space.
    pub fn normalization(&self) -> f64 {
        let n = self.n as f64;
        ((n + 0.5) * (2.0 * self.zeta()).ln() - 0.5 * log_factorial(2 * self.n as u64)).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoOrbital {
    pub n: u32,
    pub l: u32,
    pub occupation: u32,
    pub primitives: Vec<StoPrimitive>,
}

impl StoOrbital {
    pub fn label(&self) -> String {
        format!("{}{}", self.n, L_LETTERS[self.l as usize])
    }

    /// `R(r)` by direct summation.
    pub fn radial(&self, r: f64) -> f64 {
        self.primitives
            .iter()
            .map(|p| p.coefficient() * p.normalization() * r.powi(p.n as i32 - 1) * (-p.zeta() * r).exp())
            .sum()
    }

    /// `integral R^2 r^2 dr` from `integral r^k e^{-a r} dr = k! / a^{k+1}`.
    pub fn norm(&self) -> f64 {
        let mut total = 0.0;
        for a in &self.primitives {
            for b in &self.primitives {
                let k = a.n + b.n;
                let s = a.zeta() + b.zeta();
                total += a.coefficient()
                    * b.coefficient()
                    * a.normalization()
                    * b.normalization()
                    * (log_factorial(k as u64) - (k as f64 + 1.0) * s.ln()).exp();
            }
        }
        total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StoAtomRecord {
    pub symbol: String,
    pub z: u32,
    reference_kinetic: Written,
    pub orbitals: Vec<StoOrbital>,
    /// Comment lines written directly above the record, without the `#`.
    pub comments: Vec<String>,
}

impl StoAtomRecord {
    pub fn new(symbol: impl Into<String>, z: u32, reference_kinetic: f64, orbitals: Vec<StoOrbital>) -> Self {
        Self {
            symbol: symbol.into(),
            z,
            reference_kinetic: Written {
                value: reference_kinetic,
                places: None,
            },
            orbitals,
            comments: Vec::new(),
        }
    }

    /// Hartree–Fock kinetic energy to compare against, hartree.
    pub fn reference_kinetic(&self) -> f64 {
        self.reference_kinetic.value
    }

    pub fn electron_count(&self) -> u32 {
        self.orbitals.iter().map(|o| o.occupation).sum()
    }

    /// Charge balance and orbital normalization.
    pub fn validate(&self) -> Result<()> {
        let occupied = self.electron_count();
        if occupied != self.z {
            return Err(Error::ChargeMismatch {
                symbol: self.symbol.clone(),
                z: self.z,
                occupied,
            });
        }
        for orb in &self.orbitals {
            let norm = orb.norm();
            if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::Normalization {
                    symbol: self.symbol.clone(),
                    orbital: orb.label(),
                    norm,
                    tolerance: NORMALIZATION_TOLERANCE,
                });
            }
        }
        Ok(())
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<'a>(fields: &[&'a str], i: usize, line: usize, what: &str) -> Result<&'a str> {
    fields
        .get(i)
        .copied()
        .ok_or_else(|| parse_error(line, format!("missing {what}")))
}

fn number(token: &str, line: usize, what: &str) -> Result<Written> {
    Written::parse(token).ok_or_else(|| parse_error(line, format!("{what} `{token}` is not a number")))
}

fn integer(token: &str, line: usize, what: &str) -> Result<u32> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is not a non-negative integer")))
}

/// Parses and validates every record in `text`.
pub fn parse_sto(text: &str) -> Result<Vec<StoAtomRecord>> {
    let mut records: Vec<(usize, StoAtomRecord)> = Vec::new();
    let mut pending_comments: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            // a comment block followed by a blank line belongs to no record
            pending_comments.clear();
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            pending_comments.push(comment.strip_prefix(' ').unwrap_or(comment).to_string());
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = match fields[0] {
            "ATOM" | "PRM" => 4,
            "ORB" => 3,
            other => return Err(parse_error(line, format!("unknown record type `{other}`"))),
        };
        if fields.len() != expected {
            return Err(parse_error(
                line,
                format!(
                    "{} takes {} fields, found {}",
                    fields[0],
                    expected - 1,
                    fields.len() - 1
                ),
            ));
        }
        match fields[0] {
            "ATOM" => {
                let symbol = field(&fields, 1, line, "symbol")?.to_string();
                let z = integer(fields[2], line, "Z")?;
                if z == 0 {
                    return Err(parse_error(line, "Z must be positive"));
                }
                let reference = number(fields[3], line, "reference kinetic energy")?;
                let mut record = StoAtomRecord::new(symbol, z, reference.value, Vec::new());
                record.reference_kinetic = reference;
                record.comments = std::mem::take(&mut pending_comments);
                records.push((line, record));
            }
            "ORB" => {
                let record = &mut records
                    .last_mut()
                    .ok_or_else(|| parse_error(line, "ORB before any ATOM"))?
                    .1;
                let label = fields[1];
                let split = label
                    .find(|c: char| !c.is_ascii_digit())
                    .ok_or_else(|| parse_error(line, format!("orbital label `{label}` has no l letter")))?;
                let n = integer(&label[..split], line, "principal quantum number")?;
                let letter = &label[split..];
                let l = L_LETTERS
                    .iter()
                    .position(|c| letter.len() == 1 && letter.starts_with(*c))
                    .ok_or_else(|| parse_error(line, format!("unknown angular momentum `{letter}`")))?
                    as u32;
                if n <= l {
                    return Err(parse_error(line, format!("orbital {label} needs n > l")));
                }
                let occupation = integer(fields[2], line, "occupation")?;
                if occupation > 2 * (2 * l + 1) {
                    return Err(parse_error(
                        line,
                        format!("occupation {occupation} of {label} exceeds {}", 2 * (2 * l + 1)),
                    ));
                }
                if let Some(prev) = record.orbitals.last() {
                    if prev.primitives.is_empty() {
                        return Err(parse_error(line, format!("orbital {} has no primitives", prev.label())));
                    }
                }
                record.orbitals.push(StoOrbital {
                    n,
                    l,
                    occupation,
                    primitives: Vec::new(),
                });
            }
            _ => {
                let orbital = records
                    .last_mut()
                    .and_then(|r| r.1.orbitals.last_mut())
                    .ok_or_else(|| parse_error(line, "PRM before any ORB"))?;
                let n = integer(fields[1], line, "primitive n")?;
                if n == 0 {
                    return Err(parse_error(line, "primitive n must be at least 1"));
                }
                let zeta = number(fields[2], line, "zeta")?;
                if zeta.value <= 0.0 {
                    return Err(parse_error(line, format!("zeta must be positive, got {}", fields[2])));
                }
                let coefficient = number(fields[3], line, "coefficient")?;
                orbital.primitives.push(StoPrimitive { n, zeta, coefficient });
            }
        }
    }
    records
        .into_iter()
        .map(|(line, record)| {
            if record.orbitals.last().map_or(true, |o| o.primitives.is_empty()) {
                return Err(parse_error(
                    line,
                    format!("{} has an orbital without primitives", record.symbol),
                ));
            }
            record.validate()?;
            Ok(record)
        })
        .collect()
}

pub fn parse_sto_reader(mut reader: impl Read) -> Result<Vec<StoAtomRecord>> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_sto(&text)
}

pub fn parse_sto_file(path: impl AsRef<Path>) -> Result<Vec<StoAtomRecord>> {
    parse_sto(&std::fs::read_to_string(path)?)
}

/// Writes records back in the text format. Numbers keep the decimal places
/// they were parsed with; records are separated by one blank line.
pub fn serialize_sto(records: &[StoAtomRecord]) -> String {
    let mut out = String::new();
    for (i, rec) in records.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for c in &rec.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "ATOM {} {} {}", rec.symbol, rec.z, rec.reference_kinetic.fmt());
        for orb in &rec.orbitals {
            let _ = writeln!(out, "ORB {} {}", orb.label(), orb.occupation);
            for p in &orb.primitives {
                let _ = writeln!(out, "PRM {} {} {}", p.n, p.zeta.fmt(), p.coefficient.fmt());
            }
        }
    }
    out
}

/// `rho(r) = (1/4 pi) sum_orb occ R_orb(r)^2`, expanded into exponential-polynomial terms.
pub fn atom_density(record: &StoAtomRecord) -> Result<RadialField> {
    let mut terms = Vec::new();
    for orb in &record.orbitals {
        let weight = orb.occupation as f64 / (4.0 * PI);
        for a in &orb.primitives {
            for b in &orb.primitives {
                terms.push(ExpTerm::new(
                    weight * a.coefficient() * b.coefficient() * a.normalization() * b.normalization(),
                    a.n + b.n - 2,
                    a.zeta() + b.zeta(),
                ));
            }
        }
    }
    RadialField::new(terms)
}

const BUNDLED: &str = include_str!("../data/neutral_atoms.sto");

/// The atoms shipped with the crate, He through Ar plus Kr and Xe.
pub fn bundled_atoms() -> Vec<StoAtomRecord> {
    parse_sto(BUNDLED).expect("bundled data is valid")
}

pub fn bundled_text() -> &'static str {
    BUNDLED
}

/// Finds a record by symbol (case-insensitive) or by atomic number.
pub fn find_atom<'a>(records: &'a [StoAtomRecord], key: &str) -> Option<&'a StoAtomRecord> {
    match key.parse::<u32>() {
        Ok(z) => records.iter().find(|r| r.z == z),
        Err(_) => records.iter().find(|r| r.symbol.eq_ignore_ascii_case(key)),
    }
}
