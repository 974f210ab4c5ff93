//! Downstream analysis of ground states: binding curves and their Morse fits,
//! entanglement and correlation profiles, displaced-cat fits and joint-density
//! shape diagnostics.

mod bimodal;
mod cat;
mod curve;
mod entropy;
mod morse;
mod simplex;

pub use bimodal::{find_bimodality, Bimodality};
pub use cat::{
    cat_normalization, cat_state, coherent_amplitudes, fit_cat, fit_cat_in, CatFit, CatSearch,
};
pub use curve::{
    bound_state_exists, correlation_coefficient, critical_angle_bracket, d_grid, sweep,
    sweep_with_order, BindingCurve, CurvePoint, Engine, PointStatus,
};
pub use entropy::{entropy_profile, kernel_smooth, EntropyProfile, DEFAULT_BANDWIDTH};
pub use morse::{fit_morse, fit_morse_points, inflection_point, morse, MorseFit};
pub use simplex::{nelder_mead, Simplex};
