//! Zeta-regularized Mellin transforms of Gaussian line integrals: closed
//! forms, small-`t` expansions and an independent numerical regularization.

mod closed;
mod expansion;
mod numeric;

pub use closed::{
    mellin_closed, power_term_mellin, psi_term_constant, zeta_constant_closed, zeta_digamma_closed,
    zeta_rational_closed, LN_2PI, NORMALIZATION,
};
pub use expansion::{
    dyadic_grid, fit_expansion, small_t_expansion_analytic, small_t_expansion_digamma,
    small_t_expansion_psi, small_t_expansion_rational, FittedExpansion, HeatExpansion, PowerTerm,
};
pub use numeric::{
    calibrate_c_psi, calibration_offset, estimate_c_psi, mellin_numeric_list, mellin_reg_numeric,
    mellin_reg_numeric_with, U_MIN,
    Calibration, CALIBRATION_TOLERANCE, CALIBRATION_TRIPLES,
};
