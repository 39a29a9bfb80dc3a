use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quantum numbers out of range: {0}")]
    OutOfRange(String),

    #[error("argument outside the domain of {function}: {detail}")]
    Domain { function: &'static str, detail: String },

    #[error("invalid radial grid: {0}")]
    InvalidGrid(String),

    #[error(
        "{functional} did not converge: doubling the grid changed it by {relative_change:.3e} \
         (limit {limit:.0e})"
    )]
    NotConverged {
        functional: &'static str,
        relative_change: f64,
        limit: f64,
    },

    #[error("density vanishes over a region holding {fraction:.3e} of the electrons")]
    DensityCutoff { fraction: f64 },

    #[error("density is negative ({value:.3e}) at r = {radius:.6e}")]
    NegativeDensity { radius: f64, value: f64 },

    #[error("extrapolation is ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{symbol}: occupations sum to {occupied} but Z = {z}")]
    ChargeMismatch { symbol: String, z: u32, occupied: u32 },

    #[error("{symbol}: orbital {orbital} has norm {norm:.8} (tolerance {tolerance:.0e})")]
    Normalization {
        symbol: String,
        orbital: String,
        norm: f64,
        tolerance: f64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input data).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotConverged { .. } | Error::DensityCutoff { .. } | Error::IllConditioned(_)
        )
    }
}
