//! Small-`t` expansions of Gaussian line integrals `G(t) = ∫_ℝ f(λ) e^{−tλ²} dλ`.

use alloc::vec::Vec;
use core::f64::consts::{LN_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg::least_squares;
use crate::orbital::DigammaTermList;
use crate::specfun::gamma;
use crate::{Error, Result, EULER_GAMMA};

/// One term `coeff · t^exponent · (log t)^{0|1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub exponent: f64,
    pub log: bool,
    pub coeff: f64,
}

impl PowerTerm {
    pub fn eval(&self, t: f64) -> f64 {
        let base = self.coeff * t.powf(self.exponent);
        if self.log {
            base * t.ln()
        } else {
            base
        }
    }
}

/// `Σ a′_j t^{j−1/2} + Σ b′_j t^{j−1/2} log t + Σ c′_j t^j + Σ a_j t^{j−d/2}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HeatExpansion {
    pub half_powers: Vec<(i32, f64)>,
    pub log_terms: Vec<(i32, f64)>,
    pub integer_powers: Vec<(i32, f64)>,
    /// The `d` of the `t^{j−d/2}` family.
    pub shift: u32,
    pub shifted_powers: Vec<(i32, f64)>,
}

fn bump(list: &mut Vec<(i32, f64)>, j: i32, coeff: f64) {
    match list.iter_mut().find(|(k, _)| *k == j) {
        Some((_, c)) => *c += coeff,
        None => list.push((j, coeff)),
    }
}

impl HeatExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coeff · t^{twice/2} (log t)^{log}` to the matching family.
    pub fn push(&mut self, twice_exponent: i32, log: bool, coeff: f64) -> Result<()> {
        let odd = twice_exponent.rem_euclid(2) == 1;
        match (odd, log) {
            (true, false) => bump(&mut self.half_powers, (twice_exponent + 1) / 2, coeff),
            (true, true) => bump(&mut self.log_terms, (twice_exponent + 1) / 2, coeff),
            (false, false) => bump(&mut self.integer_powers, twice_exponent / 2, coeff),
            (false, true) => {
                return Err(Error::Unsupported("log terms at integer powers of t"));
            }
        }
        Ok(())
    }

    /// All terms as `(exponent, log, coeff)`, shifted family included.
    pub fn terms(&self) -> Vec<PowerTerm> {
        let mut out = Vec::new();
        let mk = |exponent: f64, log: bool, coeff: f64| PowerTerm { exponent, log, coeff };
        out.extend(self.half_powers.iter().map(|&(j, c)| mk(f64::from(j) - 0.5, false, c)));
        out.extend(self.log_terms.iter().map(|&(j, c)| mk(f64::from(j) - 0.5, true, c)));
        out.extend(self.integer_powers.iter().map(|&(j, c)| mk(f64::from(j), false, c)));
        let d = f64::from(self.shift) / 2.0;
        out.extend(self.shifted_powers.iter().map(|&(j, c)| mk(f64::from(j) - d, false, c)));
        out
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms().iter().map(|p| p.eval(t)).sum()
    }

    /// Sum of two expansions; the shifted family of `other` is folded into
    /// the half/integer families when the shifts differ.
    pub fn add(&mut self, other: &Self) {
        for &(j, c) in &other.half_powers {
            bump(&mut self.half_powers, j, c);
        }
        for &(j, c) in &other.log_terms {
            bump(&mut self.log_terms, j, c);
        }
        for &(j, c) in &other.integer_powers {
            bump(&mut self.integer_powers, j, c);
        }
        if other.shifted_powers.is_empty() {
            return;
        }
        if self.shifted_powers.is_empty() || self.shift == other.shift {
            self.shift = other.shift;
            for &(j, c) in &other.shifted_powers {
                bump(&mut self.shifted_powers, j, c);
            }
        } else {
            for &(j, c) in &other.shifted_powers {
                self.push(2 * j - other.shift as i32, false, c)
                    .expect("no log terms in the shifted family");
            }
        }
    }

    pub fn scale(&mut self, k: f64) {
        for list in [
            &mut self.half_powers,
            &mut self.log_terms,
            &mut self.integer_powers,
            &mut self.shifted_powers,
        ] {
            for (_, c) in list.iter_mut() {
                *c *= k;
            }
        }
    }

    /// Terms with exponent `≤ max_exponent`.
    pub fn truncated(&self, max_exponent: f64) -> Vec<PowerTerm> {
        self.terms()
            .into_iter()
            .filter(|p| p.exponent <= max_exponent + 1e-12)
            .collect()
    }
}

/// Expansion of `∫_ℝ e^{−tλ²} Re[c/(ieλ + d)] dλ = (πc/e) e^{tδ²} erfc(δ√t)`,
/// `δ = d/e`, through `order` powers of `√t`.
pub fn small_t_expansion_rational(c: f64, d: f64, e: f64, order: u32) -> Result<HeatExpansion> {
    if !(d > 0.0 && e > 0.0) {
        return Err(Error::Domain("rational term needs d, e > 0"));
    }
    if order > 8 {
        return Err(Error::InvalidInput("expansion order is limited to 8"));
    }
    let delta = d / e;
    let mut out = HeatExpansion::new();
    let mut power = 1.0;
    for n in 0..order as i32 {
        let coeff = PI * c / e * power / gamma(f64::from(n) / 2.0 + 1.0)?;
        out.push(n, false, coeff)?;
        power *= -delta;
    }
    Ok(out)
}

/// Leading expansion of `∫_ℝ e^{−tλ²} Re[c ψ(a + ibλ)] dλ` through `t^{1/2}`.
pub fn small_t_expansion_psi(c: f64, a: f64, b: f64) -> Result<HeatExpansion> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain("psi term needs a, b > 0"));
    }
    let sp = PI.sqrt();
    let b2 = a * a - a + 1.0 / 6.0;
    let mut out = HeatExpansion::new();
    out.push(-1, false, c * sp * (b.ln() - 0.5 * EULER_GAMMA - LN_2))?;
    out.push(-1, true, -0.5 * c * sp)?;
    out.push(0, false, c * PI * (a - 0.5) / b)?;
    out.push(1, false, -c * sp * b2 / (b * b))?;
    Ok(out)
}

/// Expansion of a whole term list through `t^{1/2}` (rational terms exact to
/// that order, constant as `κ₀√π t^{−1/2}`). The odd pole does not
/// contribute.
pub fn small_t_expansion_analytic(terms: &DigammaTermList) -> Result<HeatExpansion> {
    let mut out = HeatExpansion::new();
    for t in terms.psi_terms() {
        out.add(&small_t_expansion_psi(t.c.re, t.a, t.b)?);
    }
    for t in terms.rational_terms() {
        out.add(&small_t_expansion_rational(t.c.re, t.d, t.e, 2)?);
    }
    out.push(-1, false, terms.constant().re * PI.sqrt())?;
    Ok(out)
}

/// A fitted expansion with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedExpansion {
    pub expansion: HeatExpansion,
    /// Condition number of the column-equilibrated design matrix.
    pub condition: f64,
    /// `(t, |fit − G| / |G|)` at every grid point.
    pub residuals: Vec<(f64, f64)>,
}

/// Dyadic grid `t = 2^{−k}`, `k = 8..=20`.
pub fn dyadic_grid() -> Vec<f64> {
    (8..=20).map(|k| (-f64::from(k)).exp2()).collect()
}

const MAX_CONDITION: f64 = 1e12;
// log t enters only with the divergent power t^{−1/2}
const LOG_TWICE_MAX: i32 = -1;

/// Fits `{a′_j, b′_j, c′_j}` to samples `(t, G(t))`.
///
/// Level `ℓ = 0..order` contributes `t^{(ℓ−1)/2}`; level 0 also carries
/// `t^{−1/2} log t`.
pub fn fit_expansion(samples: &[(f64, f64)], order: u32) -> Result<FittedExpansion> {
    if order == 0 {
        return Err(Error::InvalidInput("fit order must be positive"));
    }
    let mut basis: Vec<(i32, bool)> = Vec::new();
    for level in 0..order as i32 {
        let twice = level - 1;
        basis.push((twice, false));
        if twice.rem_euclid(2) == 1 && twice <= LOG_TWICE_MAX {
            basis.push((twice, true));
        }
    }
    let cols = basis.len();
    let rows = samples.len();
    if rows < cols {
        return Err(Error::InvalidInput("not enough samples for the fit order"));
    }
    let value = |t: f64, (twice, log): (i32, bool)| {
        let p = t.powf(f64::from(twice) / 2.0);
        if log {
            p * t.ln()
        } else {
            p
        }
    };
    let mut a = Vec::with_capacity(rows * cols);
    let mut y = Vec::with_capacity(rows);
    for &(t, g) in samples {
        let w = t.sqrt();
        a.extend(basis.iter().map(|&bk| w * value(t, bk)));
        y.push(w * g);
    }
    let ls = least_squares(&a, &y, rows, cols);
    if !(ls.condition < MAX_CONDITION) {
        return Err(Error::IllConditioned {
            condition: ls.condition,
        });
    }
    let mut expansion = HeatExpansion::new();
    for (&(twice, log), &coeff) in basis.iter().zip(&ls.solution) {
        expansion.push(twice, log, coeff)?;
    }
    let residuals = samples
        .iter()
        .map(|&(t, g)| (t, (expansion.eval(t) - g).abs() / g.abs().max(f64::MIN_POSITIVE)))
        .collect();
    Ok(FittedExpansion {
        expansion,
        condition: ls.condition,
        residuals,
    })
}

/// Numerically fitted small-`t` expansion of `t ↦ ∫_ℝ f(λ) e^{−tλ²} dλ` for
/// the function represented by `terms`, sampled on [`dyadic_grid`].
///
/// The grid is compressed by `1/s²` for the largest term scale
/// `s = max(1, a/b, d/e)`, since the expansion runs in powers of `s√t`.
pub fn small_t_expansion_digamma(terms: &DigammaTermList, order: u32) -> Result<FittedExpansion> {
    let scale = terms.term_scale();
    let mut samples = Vec::new();
    for t in dyadic_grid() {
        let t = t / (scale * scale);
        samples.push((t, terms.gauss_integral(t)?.re));
    }
    fit_expansion(&samples, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_routes_families() {
        let mut h = HeatExpansion::new();
        h.push(-1, false, 1.0).unwrap();
        h.push(-1, true, 2.0).unwrap();
        h.push(0, false, 3.0).unwrap();
        h.push(3, false, 4.0).unwrap();
        assert_eq!(h.half_powers, alloc::vec![(0, 1.0), (2, 4.0)]);
        assert_eq!(h.log_terms, alloc::vec![(0, 2.0)]);
        assert_eq!(h.integer_powers, alloc::vec![(0, 3.0)]);
        assert!(h.push(2, true, 1.0).is_err());
        let t: f64 = 0.25;
        let want = 1.0 / t.sqrt() + 2.0 * t.ln() / t.sqrt() + 3.0 + 4.0 * t.powf(1.5);
        assert!((h.eval(t) - want).abs() < 1e-13);
    }

    #[test]
    fn shifted_family_folds() {
        let mut h = HeatExpansion::new();
        let other = HeatExpansion {
            shift: 3,
            shifted_powers: alloc::vec![(0, 1.0), (1, 2.0)],
            ..HeatExpansion::new()
        };
        h.add(&other);
        assert_eq!(h.shift, 3);
        let mut g = HeatExpansion {
            shift: 1,
            shifted_powers: alloc::vec![(0, 5.0)],
            ..HeatExpansion::new()
        };
        g.add(&other);
        let t = 0.3;
        assert!((g.eval(t) - (5.0 / t.sqrt() + h.eval(t))).abs() < 1e-12);
    }

    #[test]
    fn rational_has_no_logs() {
        let h = small_t_expansion_rational(1.0, 2.0, 1.0, 8).unwrap();
        assert!(h.log_terms.is_empty());
        assert!((h.integer_powers[0].1 - PI).abs() < 1e-15);
        assert!(small_t_expansion_rational(1.0, 2.0, 1.0, 9).is_err());
    }

    #[test]
    fn fit_recovers_synthetic_expansion() {
        let f = |t: f64| 2.0 / t.sqrt() - 0.5 * t.ln() / t.sqrt() + 1.5 + 0.25 * t.sqrt();
        let samples: Vec<(f64, f64)> = dyadic_grid().into_iter().map(|t| (t, f(t))).collect();
        let fit = fit_expansion(&samples, 3).unwrap();
        let h = &fit.expansion;
        assert!((h.half_powers[0].1 - 2.0).abs() < 1e-9);
        assert!((h.log_terms[0].1 + 0.5).abs() < 1e-9);
        assert!((h.integer_powers[0].1 - 1.5).abs() < 1e-8);
        assert!(fit.residuals.iter().all(|&(_, r)| r < 1e-12));
    }
}
