use core::fmt;

use crate::Complex;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A highest weight or elliptic datum violates its invariants.
    InvalidInput(&'static str),
    /// An index such as `k` in `σ_{τ,k}` is outside `0..=max`.
    IndexOutOfRange { index: usize, max: usize },
    /// The Weyl denominator vanishes at the requested torus element.
    SingularElement,
    /// A digamma (or digamma-derived) pole was hit.
    Pole { at: Complex },
    /// `b(s, 1)` is the divergent harmonic-type series.
    Divergent,
    /// Argument outside the domain of the function.
    Domain(&'static str),
    /// Adaptive quadrature exhausted its subdivision budget.
    NoConvergence { subdivisions: usize, error_estimate: f64 },
    /// Least-squares system too ill-conditioned to trust.
    IllConditioned { condition: f64 },
    /// Operation only implemented for a subset of dimensions (e.g. `n = 1`).
    Unsupported(&'static str),
    /// The supplied small-`t` expansion does not remove all divergent terms.
    DivergentRemainder { ratio: f64 },
    /// Re-evaluating the calibrated constant at other parameters disagrees.
    CalibrationUnstable { spread: f64 },
    /// Exact integer arithmetic overflowed.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(what) => write!(f, "invalid input: {what}"),
            Error::IndexOutOfRange { index, max } => {
                write!(f, "index {index} out of range 0..={max}")
            }
            Error::SingularElement => write!(f, "singular element: Weyl denominator vanishes"),
            Error::Pole { at } => write!(f, "pole at {at}"),
            Error::Divergent => write!(f, "divergent series (z = 1)"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::NoConvergence {
                subdivisions,
                error_estimate,
            } => write!(
                f,
                "quadrature did not converge after {subdivisions} subdivisions (error estimate {error_estimate:e})"
            ),
            Error::IllConditioned { condition } => {
                write!(f, "ill-conditioned fit (condition number {condition:e})")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::DivergentRemainder { ratio } => write!(
                f,
                "expansion leaves a divergent remainder (growth ratio {ratio:e})"
            ),
            Error::CalibrationUnstable { spread } => {
                write!(f, "calibration unstable (spread {spread:e})")
            }
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
        }
    }
}

impl core::error::Error for Error {}
