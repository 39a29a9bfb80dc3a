use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tfcorr::kedf::DEFAULT_POINTS;
use tfcorr::{GridSettings, InterpolationMode};

#[derive(Debug, Parser)]
#[command(
    name = "tfcorr",
    version,
    about = "Thomas-Fermi kinetic energies with a solvable-model correction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative errors of T_TF, T_TF+T2, T_TF+T2+T4 and T_TF+dT against Hartree-Fock.
    Table1,
    /// Energies of the hydrogenic shell model for one Z or n_max.
    Model(ModelArgs),
    /// CSV data for the scaled-density and relative-error figures.
    Figures(FigureArgs),
    /// Large-Z coefficients of T_TF, T2 and T4 by Richardson extrapolation.
    Asymptotics(AsymptoticArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ModelArgs {
    /// Nuclear charge of the neutral model.
    #[arg(long)]
    pub z: Option<u32>,
    /// Number of filled shells.
    #[arg(long)]
    pub n_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// Radial samples per scaled-density curve.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Largest n_max of the relative-error data.
    #[arg(long, default_value_t = tfcorr::hydrogenic::MAX_SHELLS)]
    pub max_shells: u32,
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    /// Largest n_max of the fitted sequence.
    #[arg(long, default_value_t = tfcorr::hydrogenic::MAX_SHELLS)]
    pub max_shells: u32,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Atoms to tabulate, by symbol or Z, comma separated. Defaults to every atom in the data.
    #[arg(long, global = true, value_delimiter = ',')]
    pub atoms: Vec<String>,
    /// STO data file to use instead of the bundled set.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Quadrature points of the radial grid.
    #[arg(long, global = true, default_value_t = DEFAULT_POINTS)]
    pub grid_points: usize,
    /// Outer edge of the radial grid in bohr; chosen per density when absent.
    #[arg(long, global = true)]
    pub r_max: Option<f64>,
    /// Coefficients of the dT interpolation.
    #[arg(long, global = true, value_enum, default_value_t = Interp::Refit)]
    pub interp: Interp,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Directory for output files; standard output when absent (figures default to the current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Interp {
    Published,
    Refit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Table => "txt",
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

/// Everything a command needs, with defaults filled in.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub atoms: Vec<String>,
    pub data: Option<PathBuf>,
    pub grid: GridSettings,
    pub interpolation: InterpolationMode,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl From<&Common> for RunConfig {
    fn from(c: &Common) -> Self {
        RunConfig {
            atoms: c.atoms.clone(),
            data: c.data.clone(),
            grid: GridSettings {
                points: c.grid_points,
                r_max: c.r_max,
                ..GridSettings::default()
            },
            interpolation: match c.interp {
                Interp::Published => InterpolationMode::Published,
                Interp::Refit => InterpolationMode::Refit,
            },
            format: c.format,
            out: c.out.clone(),
        }
    }
}
