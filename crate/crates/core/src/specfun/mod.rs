//! Special functions: digamma, log-gamma, erfc, the root-of-unity series
//! `b(s, z)` and the quadrature used to check them.

mod gamma;
mod quad;
mod roots;

pub use gamma::{digamma, digamma_finite_part, digamma_real, erfc, gamma, harmonic, log_gamma};
pub use quad::{
    gauss_cutoff, gauss_integral, gauss_integral_with, integrate_partitioned, integrate_real,
    Quadrature,
};
pub use roots::{b_closed, b_closed_root, b_laurent, b_series, RootOfUnity};
