//! Kinetic-energy density functionals of spherical densities.

mod functionals;
mod grid;

pub use functionals::{
    fourth_order_constant, fourth_order_energy, gradient_expansion, gradient_terms_checked, gradient_terms_on,
    integrated_charge, tf_constant, tf_energy, weizsacker_energy, EnergyBreakdown, Functional, GradientTerms,
    CONVERGENCE_LIMIT, CUTOFF_MASS_LIMIT, DENSITY_FLOOR,
};
pub use grid::{gauss_legendre, make_grid, GridScheme, GridSettings, RadialGrid, DEFAULT_POINTS, MIN_POINTS};
