//! Digamma, log-gamma and the complementary error function.


#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, Result, EULER_GAMMA};

// B_{2k} for k = 1..7
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const REFLECTION_THRESHOLD: f64 = -1000.0;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

fn asymptotic(w: Complex) -> Complex {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv2;
    let mut series = Complex::new(0.0, 0.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        series += pow * (b / (2.0 * (k + 1) as f64));
        pow *= inv2;
    }
    w.ln() - inv * 0.5 - series
}

/// Complex digamma `ψ(z) = Γ′(z)/Γ(z)`.
///
/// Upward recurrence into `Re w ≥ 8, |w| ≥ 10` followed by the Stirling
/// series; reflection is used only far to the left.
pub fn digamma(z: Complex) -> Result<Complex> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("digamma of a non-finite argument"));
    }
    if z.im == 0.0 && is_nonpositive_integer(z.re) {
        return Err(Error::Pole { at: z });
    }
    if z.re < REFLECTION_THRESHOLD {
        let pi = core::f64::consts::PI;
        let pz = z * pi;
        return Ok(digamma(Complex::new(1.0, 0.0) - z)? - pz.cos() / pz.sin() * pi);
    }
    let mut acc = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.re < 8.0 || w.norm_sqr() < 100.0 {
        acc -= w.inv();
        w += 1.0;
    }
    Ok(acc + asymptotic(w))
}

/// Real digamma.
pub fn digamma_real(x: f64) -> Result<f64> {
    digamma(Complex::new(x, 0.0)).map(|z| z.re)
}

/// Constant term of the Laurent expansion of `ψ` at the nonpositive integer
/// `−k`, i.e. `lim_{z→−k} (ψ(z) + 1/(z+k)) = H_k − γ`.
pub fn digamma_finite_part(k: u64) -> f64 {
    harmonic(k) - EULER_GAMMA
}

/// Harmonic number `H_k`.
pub fn harmonic(k: u64) -> f64 {
    (1..=k).rev().map(|j| 1.0 / j as f64).sum()
}

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("log_gamma needs a positive finite argument"));
    }
    Ok(libm::lgamma_r(x).0)
}

/// Gamma function on the real line.
pub fn gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Err(Error::Pole {
            at: Complex::new(x, 0.0),
        });
    }
    Ok(libm::tgamma(x))
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}
