//! Numerical kernel for the trace-formula ingredients of analytic torsion on
//! finite-volume hyperbolic orbifolds `Γ\H^{2n+1}`.
//!
//! The crate is `no_std` (it needs `alloc` for term lists) and is organised
//! bottom-up:
//!
//! * [`lie`] – highest weights of `SO₀(1,2n+1)` and `SO(2n)`, Casimir values,
//!   Weyl dimensions, `M`-characters at elliptic elements.
//! * [`specfun`] – complex digamma, `log Γ`, `erfc`, the root-of-unity series
//!   `b(s,z)` and adaptive Gauss–Kronrod quadrature.
//! * [`orbital`] – Fourier transforms of the identity and cuspidal-elliptic
//!   weighted orbital integrals and their digamma term lists.
//! * [`mellin`] – zeta-regularized Mellin transforms: closed forms, small-`t`
//!   expansions and an independent numerical regularization.
//! * [`torsion`] – assembly of the heat-kernel terms along a ray `τ(m)` and
//!   growth-law fitting.
#![no_std]
// NaN-rejecting guards are written as negated comparisons
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod lie;
mod linalg;
pub mod mellin;
pub mod orbital;
pub mod specfun;
pub mod torsion;

pub use error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
