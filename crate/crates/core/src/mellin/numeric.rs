//! Numerical zeta regularization: subtract the divergent small-`t` terms,
//! integrate them analytically and integrate the remainder by quadrature.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::closed::{power_term_mellin, LN_2PI, NORMALIZATION};
use super::expansion::{small_t_expansion_analytic, HeatExpansion, PowerTerm};
use crate::orbital::DigammaTermList;
use crate::specfun::{integrate_partitioned, log_gamma};
use crate::{Complex, Error, Result};

/// Expansion terms up to this exponent are subtracted.
const SUBTRACT_THROUGH: f64 = 0.5;
/// Default lower cut of the substituted variable `u = √t`.
pub const U_MIN: f64 = 1e-3;

fn remainder<G: Fn(f64) -> Result<f64>>(g: &G, subtract: &[PowerTerm], t: f64) -> Result<f64> {
    Ok(g(t)? - subtract.iter().map(|p| p.eval(t)).sum::<f64>())
}

/// `d/ds|_{s=0} (1/Γ(s)) ∫₀^∞ t^{s−1} e^{−tc²} G(t) dt` for a kernel with the
/// given small-`t` expansion.
///
/// The expansion terms through `t^{1/2}` are integrated analytically over
/// `(0, ∞)`; the remainder decays at `t → 0`, so its contribution is the plain
/// integral `∫₀^∞ t^{−1} e^{−tc²} (G − S) dt`, computed on `[0,1]` in
/// `u = √t` and on `[1, 1 + 40/c²]` directly.
pub fn mellin_reg_numeric<G>(g: G, expansion: &HeatExpansion, c: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    mellin_reg_numeric_with(g, expansion, c, U_MIN)
}

/// [`mellin_reg_numeric`] with an explicit cut `u_min` of `u = √t`. The
/// piece below the cut is closed assuming a remainder linear in `t`.
pub fn mellin_reg_numeric_with<G>(g: G, expansion: &HeatExpansion, c: f64, u_min: f64) -> Result<f64>
where
    G: Fn(f64) -> Result<f64>,
{
    if !(u_min > 0.0 && u_min < 1.0) {
        return Err(Error::Domain("u_min must lie in (0, 1)"));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain("mellin_reg_numeric needs c > 0"));
    }
    let subtract = expansion.truncated(SUBTRACT_THROUGH);
    let mut analytic = 0.0;
    for p in &subtract {
        analytic += power_term_mellin(p, c)?;
    }

    let near = remainder(&g, &subtract, 1e-6)?;
    let far = remainder(&g, &subtract, 1e-4)?;
    if near.abs() > 1e-6 && near.abs() >= far.abs() {
        return Err(Error::DivergentRemainder {
            ratio: near.abs() / far.abs().max(f64::MIN_POSITIVE),
        });
    }

    // ∫₀^{u_min} (2/u) R(u²) du for a remainder R(t) ≈ r·t
    let head = remainder(&g, &subtract, u_min * u_min)?;

    let mut failure = None;
    let mut eval = |t: f64| -> f64 {
        match remainder(&g, &subtract, t) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let c2 = c * c;
    let mut breaks: Vec<f64> = Vec::new();
    let mut u = u_min;
    while u < 1.0 {
        breaks.push(u);
        u *= 3.0;
    }
    breaks.push(1.0);
    let inner = integrate_partitioned(
        |u| {
            let t = u * u;
            Complex::new(2.0 / u * (-t * c2).exp() * eval(t), 0.0)
        },
        &breaks,
        1e-10,
        1e-10,
        400,
    );
    let inner = inner?.value.re;
    let upper = 1.0 + 40.0 / c2;
    breaks.clear();
    let mut x = 1.0;
    while x < upper {
        breaks.push(x);
        x *= 2.0;
    }
    breaks.push(upper);
    let outer = integrate_partitioned(
        |t| Complex::new((-t * c2).exp() / t * eval(t), 0.0),
        &breaks,
        1e-10,
        1e-10,
        400,
    )?
    .value
    .re;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(analytic + head + inner + outer)
}

/// [`mellin_reg_numeric`] applied to `t ↦ (1/π) ∫_ℝ f(λ) e^{−tλ²} dλ` for
/// the function represented by `terms`, with the analytic expansion.
/// Comparable directly with [`super::mellin_closed`].
///
/// The cut `u_min` shrinks with the largest term scale `a/b`, `d/e`, where
/// the expansion in `√t` stops being accurate.
pub fn mellin_numeric_list(terms: &DigammaTermList, c: f64) -> Result<f64> {
    let expansion = small_t_expansion_analytic(terms)?;
    let scale = terms.term_scale();
    let value = mellin_reg_numeric_with(
        |t| Ok(terms.gauss_integral(t)?.re),
        &expansion,
        c,
        U_MIN / scale,
    )?;
    Ok(NORMALIZATION * value)
}

/// Reference triples `(c, a, b)` for the calibration of `C(ψ)`.
pub const CALIBRATION_TRIPLES: [(f64, f64, f64); 3] = [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.0, 0.5, 2.0)];

/// Tolerated spread of the calibrated constant across reference triples.
pub const CALIBRATION_TOLERANCE: f64 = 1e-5;

/// Outcome of [`calibrate_c_psi`].
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub value: f64,
    pub estimates: Vec<f64>,
    pub spread: f64,
}

/// Estimate of `C(ψ)` from one regularized digamma kernel.
pub fn estimate_c_psi(c: f64, a: f64, b: f64) -> Result<f64> {
    let mut list = DigammaTermList::new();
    list.add_psi(Complex::new(1.0, 0.0), a, b)?;
    let r = mellin_numeric_list(&list, c)?;
    Ok(b * (r + 2.0 / b * log_gamma(a + c * b)?) - (2.0 * a - 1.0) * b.ln())
}

/// Pins `C(ψ)` numerically at `(1,1,1)` and checks it at the other reference
/// triples.
pub fn calibrate_c_psi() -> Result<Calibration> {
    let mut estimates = Vec::new();
    for &(c, a, b) in &CALIBRATION_TRIPLES {
        estimates.push(estimate_c_psi(c, a, b)?);
    }
    let max = estimates.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = estimates.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max - min;
    if !(spread < CALIBRATION_TOLERANCE) {
        return Err(Error::CalibrationUnstable { spread });
    }
    Ok(Calibration {
        value: estimates[0],
        estimates,
        spread,
    })
}

/// Distance of a calibrated value from `ln 2π`.
pub fn calibration_offset(value: f64) -> f64 {
    value - LN_2PI
}
