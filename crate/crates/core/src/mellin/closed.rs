//! Closed forms of zeta-regularized Mellin transforms.
//!
//! For a kernel `φ(t) = (1/π) ∫_ℝ f(λ) e^{−tλ²} dλ` the regularized value is
//! `d/ds|_{s=0} (1/Γ(s)) ∫₀^∞ t^{s−1} e^{−tc²} φ(t) dt`.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::expansion::PowerTerm;
use crate::orbital::DigammaTermList;
use crate::specfun::{digamma_real, gamma, harmonic, log_gamma};
use crate::{Error, Result};

/// The universal constant of the digamma closed form, `ln 2π`.
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

fn require_positive(x: f64, what: &'static str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(what))
    }
}

/// `−(2/e) log(c + d/e)`: the value for `f(λ) = Re 1/(ieλ + d)`.
pub fn zeta_rational_closed(c: f64, d: f64, e: f64) -> Result<f64> {
    require_positive(c, "c must be positive")?;
    require_positive(d, "d must be positive")?;
    require_positive(e, "e must be positive")?;
    Ok(-2.0 / e * (c + d / e).ln())
}

/// Per-term constant `C_j(ψ) = [C + (2a − 1) log b]/b`.
pub fn psi_term_constant(a: f64, b: f64, c_psi: f64) -> f64 {
    (c_psi + (2.0 * a - 1.0) * b.ln()) / b
}

/// `−(2/b) log Γ(a + cb) + C_j(ψ)`: the value for `f(λ) = Re ψ(a + ibλ)`,
/// with `C_j(ψ)` from [`psi_term_constant`] (equal to `c_psi` when `b = 1`).
pub fn zeta_digamma_closed(c: f64, a: f64, b: f64, c_psi: f64) -> Result<f64> {
    require_positive(b, "b must be positive")?;
    if !(c >= 0.0) {
        return Err(Error::Domain("c must be nonnegative"));
    }
    let arg = a + c * b;
    require_positive(arg, "a + cb must be positive")?;
    Ok(-2.0 / b * log_gamma(arg)? + psi_term_constant(a, b, c_psi))
}

/// Value for a constant `f ≡ κ₀`: `−2κ₀c`.
pub fn zeta_constant_closed(c: f64, kappa0: f64) -> f64 {
    -2.0 * kappa0 * c
}

/// Closed form for a whole term list (the odd pole is invisible to the
/// Gaussian integral).
pub fn mellin_closed(terms: &DigammaTermList, c: f64, c_psi: f64) -> Result<f64> {
    let mut acc = zeta_constant_closed(c, terms.constant().re);
    for t in terms.psi_terms() {
        acc += t.c.re * zeta_digamma_closed(c, t.a, t.b, c_psi)?;
    }
    for t in terms.rational_terms() {
        acc += t.c.re * zeta_rational_closed(c, t.d, t.e)?;
    }
    Ok(acc)
}

/// `d/ds|₀ (1/Γ(s)) ∫₀^∞ t^{s−1} e^{−tc²} t^α (log t)^ℓ dt` for `ℓ ∈ {0, 1}`.
pub fn power_term_mellin(term: &PowerTerm, c: f64) -> Result<f64> {
    require_positive(c, "c must be positive")?;
    let alpha = term.exponent;
    let lc = c.ln();
    let is_int = alpha.fract() == 0.0;
    let v = if !is_int || alpha > 0.0 {
        let base = gamma(alpha)? * (-2.0 * alpha * lc).exp();
        if term.log {
            base * (digamma_real(alpha)? - 2.0 * lc)
        } else {
            base
        }
    } else if term.log {
        return Err(Error::Unsupported("log term at a nonpositive integer power"));
    } else {
        let n = (-alpha) as u64;
        let mut fact = 1.0;
        for j in 1..=n {
            fact *= j as f64;
        }
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        c.powi(2 * n as i32) * sign / fact * (harmonic(n) - 2.0 * lc)
    };
    Ok(term.coeff * v)
}

/// Factor `1/π` between the closed forms and the regularized transform of
/// the bare Gaussian integral.
pub const NORMALIZATION: f64 = 1.0 / PI;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_examples() {
        assert!((zeta_rational_closed(3.0, 2.0, 1.0).unwrap() + 2.0 * 5f64.ln()).abs() < 1e-15);
        let e = 2.5;
        assert!((zeta_rational_closed(1.0, e, e).unwrap() + 2.0 / e * 2f64.ln()).abs() < 1e-15);
        assert!(zeta_rational_closed(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn rational_scaling_law() {
        for &k in &[0.5, 2.0, 7.0] {
            let lhs = zeta_rational_closed(1.7, k * 3.0, k * 1.5).unwrap();
            let rhs = zeta_rational_closed(1.7, 3.0, 1.5).unwrap() / k;
            assert!((lhs - rhs).abs() < 1e-14);
        }
    }

    #[test]
    fn digamma_examples() {
        let c = 0.9;
        let v = zeta_digamma_closed(2.0, 1.0, 1.0, c).unwrap();
        assert!((v - (-2.0 * 2f64.ln() + c)).abs() < 1e-14);
        assert!((zeta_digamma_closed(0.0, 1.0, 1.0, c).unwrap() - c).abs() < 1e-15);
        assert!(zeta_digamma_closed(1.0, -3.0, 1.0, c).is_err());
    }

    #[test]
    fn power_terms() {
        let one = PowerTerm { exponent: 0.0, log: false, coeff: 1.0 };
        assert!((power_term_mellin(&one, 2.0).unwrap() + 2.0 * 2f64.ln()).abs() < 1e-15);
        let inv = PowerTerm { exponent: -1.0, log: false, coeff: 1.0 };
        // −c²(1 − 2 ln c)
        let c: f64 = 1.5;
        let want = -c * c * (1.0 - 2.0 * c.ln());
        assert!((power_term_mellin(&inv, c).unwrap() - want).abs() < 1e-14);
        let bad = PowerTerm { exponent: -1.0, log: true, coeff: 1.0 };
        assert!(power_term_mellin(&bad, c).is_err());
    }
}
