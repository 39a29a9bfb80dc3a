//! Thomas–Fermi kinetic energy of atoms with a correction taken from an
//! exactly solvable model: electrons filling the hydrogenic shells of a
//! bare nucleus.
//!
//! ```
//! use tfcorr::{model_density, model_kinetic_energy, tf_energy, GridSettings, RadialGrid, ShellConfiguration};
//!
//! let cfg = ShellConfiguration::neutral(2).unwrap();
//! let rho = model_density(&cfg).unwrap();
//! let grid = RadialGrid::for_density(&rho, &GridSettings::default()).unwrap();
//! let delta = model_kinetic_energy(&cfg) - tf_energy(&rho, &grid).unwrap();
//! assert!((delta - 11.145).abs() < 1e-3);
//! ```

pub mod asymptotics;
pub mod atomic_data;
pub mod correction;
pub mod error;
pub mod field;
pub mod hydrogenic;
pub mod kedf;
pub mod special_functions;
pub mod table;

pub use atomic_data::{atom_density, bundled_atoms, parse_sto, parse_sto_file, StoAtomRecord};
pub use correction::{CorrectionTable, DeltaKind, DeltaT, InterpolationMode};
pub use error::{Error, Result};
pub use field::{DensityPoint, ExpTerm, RadialDensity, RadialField};
pub use hydrogenic::{model_density, model_kinetic_energy, ModelDensity, ShellConfiguration};
pub use kedf::{
    fourth_order_energy, gradient_expansion, gradient_terms_on, make_grid, tf_energy, weizsacker_energy,
    EnergyBreakdown, GradientTerms, GridScheme, GridSettings, RadialGrid,
};
pub use special_functions::{laguerre, log_factorial, LaguerreSpec};
