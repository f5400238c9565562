//! The series `b(s, z) = Σ_{n≥1} zⁿ/(n+s)` at roots of unity.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::gamma::{digamma, digamma_finite_part};
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Complex, Error, Result};

/// A root of unity `e^{2πip/m}`, stored with `gcd(p, m) = 1` and `0 ≤ p < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    order: u32,
    numerator: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RootOfUnity {
    pub fn new(m: u32, p: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("root of unity order must be positive"));
        }
        let p = p.rem_euclid(i64::from(m)) as u64;
        let g = gcd(p, u64::from(m)).max(1);
        Ok(Self {
            order: (u64::from(m) / g) as u32,
            numerator: (p / g) as u32,
        })
    }

    /// Reduced order.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced numerator in `[0, order)`.
    pub fn numerator(&self) -> u32 {
        self.numerator
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    /// `z^k`, with the exponent reduced modulo the order before evaluation.
    pub fn pow(&self, k: i64) -> Complex {
        let q = i64::from(self.order);
        let r = (i64::from(self.numerator) * k.rem_euclid(q)).rem_euclid(q);
        Complex::from_polar(1.0, 2.0 * PI * r as f64 / q as f64)
    }

    pub fn value(&self) -> Complex {
        self.pow(1)
    }

    pub fn conj(&self) -> Self {
        Self {
            order: self.order,
            numerator: (self.order - self.numerator) % self.order,
        }
    }
}

// B_{2k}/(2k)! for k = 1..6
const EM_COEFFS: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];

fn negative_integer(s: Complex) -> Option<u64> {
    (s.im == 0.0 && s.re <= -1.0 && s.re.fract() == 0.0).then(|| (-s.re) as u64)
}

/// `b(s, z)` by summing whole periods of `z` directly and closing the grouped
/// tail with an Euler–Maclaurin correction.
pub fn b_series(s: Complex, z: RootOfUnity) -> Result<Complex> {
    if z.is_one() {
        return Err(Error::Divergent);
    }
    if negative_integer(s).is_some() {
        return Err(Error::Pole { at: s });
    }
    let q = u64::from(z.order());
    let qf = q as f64;
    let groups = ((64.0f64.max(4.0 * s.norm() + 16.0)) / qf).ceil() as u64;
    let powers: Vec<Complex> = (0..q as i64).map(|r| z.pow(r)).collect();

    let head: Complex = (1..=groups * q)
        .map(|n| powers[(n % q) as usize] / (s + n as f64))
        .sum();

    let x0 = groups as f64;
    let mut integral = Complex::new(0.0, 0.0);
    let mut g0 = Complex::new(0.0, 0.0);
    let mut derivs = [Complex::new(0.0, 0.0); 6];
    for r in 1..=q {
        let w = powers[(r % q) as usize];
        let d = s + (qf * x0 + r as f64);
        let inv = d.inv();
        integral -= w * d.ln() / qf;
        g0 += w * inv;
        // g^{(2k−1)}(x0) = −(2k−1)! q^{2k−1} Σ_r w^r / d^{2k}
        let inv2 = inv * inv;
        let mut pow = inv2;
        let mut fact = 1.0;
        let mut qpow = qf;
        for (k, slot) in derivs.iter_mut().enumerate() {
            *slot -= w * pow * fact * qpow;
            pow *= inv2;
            let j = (2 * k + 1) as f64;
            fact *= (j + 1.0) * (j + 2.0);
            qpow *= qf * qf;
        }
    }
    // Σ_{N≥x0} g(N) = ∫_{x0}^∞ g + ½g(x0) − Σ_k B_{2k}/(2k)! g^{(2k−1)}(x0);
    let em: Complex = EM_COEFFS.iter().zip(&derivs).map(|(c, d)| d * *c).sum();
    Ok(head + integral + g0 * 0.5 - em)
}

/// Closed form `b(s, e^{2πip/m}) = −(1/q) Σ_{r=1}^{q} w^r ψ((r+s)/q)` with
/// `w = e^{2πip′/q}` the reduced root.
pub fn b_closed(s: Complex, m: u32, p: i64) -> Result<Complex> {
    let z = RootOfUnity::new(m, p)?;
    b_closed_root(s, z)
}

/// [`b_closed`] for an already constructed root.
pub fn b_closed_root(s: Complex, z: RootOfUnity) -> Result<Complex> {
    if z.is_one() {
        return Err(Error::Divergent);
    }
    let q = z.order();
    let qf = f64::from(q);
    let mut acc = Complex::new(0.0, 0.0);
    for r in 1..=q {
        acc -= z.pow(i64::from(r)) * digamma((s + f64::from(r)) / qf)?;
    }
    Ok(acc / qf)
}

/// Laurent data of `b(·, z)` at `s₀`: returns `(residue, finite)` with
/// `b(s) = residue/(s − s₀) + finite + O(s − s₀)`. The residue vanishes at
/// regular points.
pub fn b_laurent(s0: Complex, z: RootOfUnity) -> Result<(Complex, Complex)> {
    let Some(n0) = negative_integer(s0) else {
        return Ok((Complex::new(0.0, 0.0), b_closed_root(s0, z)?));
    };
    if z.is_one() {
        return Err(Error::Divergent);
    }
    let q = u64::from(z.order());
    let qf = q as f64;
    let mut finite = Complex::new(0.0, 0.0);
    for r in 1..=q {
        let w = z.pow(r as i64);
        // (r + s₀)/q is a nonpositive integer iff n₀ ≡ r (mod q), n₀ ≥ r
        if n0 >= r && (n0 - r) % q == 0 {
            finite -= w * digamma_finite_part((n0 - r) / q);
        } else {
            finite -= w * digamma((s0 + r as f64) / qf)?;
        }
    }
    Ok((z.pow(n0 as i64), finite / qf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn reduction() {
        let z = RootOfUnity::new(6, 4).unwrap();
        assert_eq!((z.order(), z.numerator()), (3, 2));
        let w = RootOfUnity::new(4, -1).unwrap();
        assert_eq!((w.order(), w.numerator()), (4, 3));
        assert!(RootOfUnity::new(5, 10).unwrap().is_one());
        assert!(RootOfUnity::new(0, 1).is_err());
        assert_eq!(w.conj(), RootOfUnity::new(4, 1).unwrap());
    }

    #[test]
    fn alternating_values() {
        let minus = RootOfUnity::new(2, 1).unwrap();
        assert!((b_series(c(1.0), minus).unwrap() - c(LN_2 - 1.0)).norm() < 1e-13);
        assert!((b_series(c(0.0), minus).unwrap() - c(-LN_2)).norm() < 1e-13);
        assert!((b_closed(c(1.0), 2, 1).unwrap() - c(LN_2 - 1.0)).norm() < 1e-13);
        assert!((b_closed(c(0.0), 2, 1).unwrap() - c(-LN_2)).norm() < 1e-13);
    }

    #[test]
    fn errors() {
        let one = RootOfUnity::new(3, 0).unwrap();
        assert!(matches!(b_series(c(1.0), one), Err(Error::Divergent)));
        let z = RootOfUnity::new(3, 1).unwrap();
        assert!(matches!(b_series(c(-2.0), z), Err(Error::Pole { .. })));
        assert!(b_closed(c(-2.0), 3, 1).is_err());
    }

    #[test]
    fn laurent_matches_nearby_values() {
        let z = RootOfUnity::new(3, 1).unwrap();
        let (res, fin) = b_laurent(c(-4.0), z).unwrap();
        assert!((res - z.pow(4)).norm() < 1e-15);
        let s = -4.0 + 1e-6;
        let near = b_closed_root(c(s), z).unwrap() - res / (s + 4.0);
        assert!((near - fin).norm() < 1e-5);
        let (r0, f0) = b_laurent(Complex::new(0.3, 1.0), z).unwrap();
        assert_eq!(r0, c(0.0));
        assert!((f0 - b_series(Complex::new(0.3, 1.0), z).unwrap()).norm() < 1e-12);
    }
}
