//! Large-`Z` behaviour of the model.

mod expansion;
mod richardson;
mod scaled;
mod sequence;

pub use expansion::{cubic_root_series, model_expansion, model_expansion_exact, SurdCoefficient, ZExpansion};
pub use richardson::{
    neville_at_zero, richardson_extrapolate, richardson_extrapolate_with, RichardsonFit, RichardsonOptions,
};
pub use scaled::{
    count_local_maxima, figure_abscissae, local_maxima, scaled_model_density, scaled_turning_point, tf_limit_charge,
    tf_limit_density, OscillationSummary, ScaledDensity, ScaledSample,
};
pub use sequence::{
    default_fit_shells, fit_model_coefficients, model_point, model_sequence, thirds, ModelFits, ModelPoint,
};
