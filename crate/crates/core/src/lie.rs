//! Root data and highest-weight arithmetic for `G = SO₀(1,2n+1)` and
//! `M = SO(2n)`.
//!
//! Weights are written in the basis `e₁,…,e_{n+1}` dual to the Cartan
//! elements `H₁,…,H_{n+1}`; `G`-weights use all `n+1` coordinates and
//! `M`-weights the coordinates `e₂,…,e_{n+1}`. The positive roots of `G` are
//! `e_i ± e_j` (`i < j`) and `ρ_j = n + 1 − j`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::linalg;
use crate::{Complex, Error, Result};

/// Highest weight of an irreducible representation of `SO₀(1,2n+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GHighestWeight {
    coeffs: Vec<i64>,
}

impl GHighestWeight {
    /// Builds `Σ coeffs[j] e_{j+1}`; requires length `n + 1 ≥ 2`, weakly
    /// decreasing, nonnegative integer coordinates.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("G-weight needs n + 1 >= 2 coordinates"));
        }
        if coeffs.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput("G-weight coordinates must be nonnegative"));
        }
        if coeffs.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput("G-weight coordinates must be weakly decreasing"));
        }
        Ok(Self { coeffs })
    }

    /// Trivial representation for the given `n`.
    pub fn trivial(n: usize) -> Self {
        Self {
            coeffs: vec![0; n + 1],
        }
    }

    /// `n`, so that the orbifold has dimension `2n + 1`.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Whether the weight can serve as the base of a torsion ray
    /// (`τ_{n+1} ≥ 1`).
    pub fn is_ray_base(&self) -> bool {
        self.coeffs[self.n()] >= 1
    }
}

/// Highest weight of an irreducible representation of `SO(2n)`, stored on
/// `e₂,…,e_{n+1}`. For `n = 1` the single coordinate is `k₂(σ)` and may have
/// either sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MHighestWeight {
    coeffs: Vec<i64>,
}

impl MHighestWeight {
    /// Requires `c₁ ≥ c₂ ≥ … ≥ c_{n−1} ≥ |c_n|` (dominance for `D_n`); no
    /// condition for `n = 1`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let n = coeffs.len();
        if n == 0 {
            return Err(Error::InvalidInput("M-weight needs n >= 1 coordinates"));
        }
        if n >= 2
            && (coeffs[..n - 1].windows(2).any(|w| w[0] < w[1]) || coeffs[n - 2] < coeffs[n - 1].abs())
        {
            return Err(Error::InvalidInput("M-weight is not SO(2n)-dominant"));
        }
        Ok(Self { coeffs })
    }

    /// The `SO(2)` character of weight `k₂`.
    pub fn so2(k2: i64) -> Self {
        Self { coeffs: vec![k2] }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The last coordinate; for `n = 1` this is `k₂(σ)`.
    pub fn k2(&self) -> i64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Image under the nontrivial element `w₀` of the restricted Weyl group,
    /// which flips the sign of the last coordinate.
    pub fn w0_twin(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        let last = coeffs.len() - 1;
        coeffs[last] = -coeffs[last];
        Self { coeffs }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A cuspidal elliptic conjugacy class `γ ∈ Γ_M(P)`.
///
/// The element acts by rotations `R_{2φ_j}` on the `M`-blocks with
/// `φ_j = π p_j / q`, so its character at weight `μ` is `exp(2i Σ μ_j φ_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EllipticClass {
    numerators: Vec<u32>,
    order: u32,
    weight: f64,
}

impl EllipticClass {
    /// Angles `φ_j = π·numerators[j]/order`, each with `0 < p_j < q`.
    pub fn new(numerators: Vec<u32>, order: u32, weight: f64) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidInput("elliptic order must be >= 2"));
        }
        if numerators.is_empty() {
            return Err(Error::InvalidInput("elliptic class needs at least one angle"));
        }
        if numerators.iter().any(|&p| p == 0 || p >= order) {
            return Err(Error::InvalidInput("elliptic angle must satisfy 0 < p < q"));
        }
        if !weight.is_finite() {
            return Err(Error::InvalidInput("elliptic weight must be finite"));
        }
        Ok(Self {
            numerators,
            order,
            weight,
        })
    }

    /// A class of `SO₀(1,3)` with rotation angle `2φ`, `φ = πp/q`.
    pub fn so13(p: u32, q: u32, weight: f64) -> Result<Self> {
        Self::new(vec![p], q, weight)
    }

    pub fn n(&self) -> usize {
        self.numerators.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn numerators(&self) -> &[u32] {
        &self.numerators
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Copy with a different weight `C′(γ)`.
    pub fn with_weight(&self, weight: f64) -> Self {
        Self {
            weight,
            ..self.clone()
        }
    }

    /// The angles `φ_j` in radians.
    pub fn angles(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&p| core::f64::consts::PI * f64::from(p) / f64::from(self.order))
            .collect()
    }
}

/// `τ(m)`: every coordinate shifted by `m`.
pub fn ray_weight(base: &GHighestWeight, m: u64) -> GHighestWeight {
    let m = m as i64;
    GHighestWeight {
        coeffs: base.coeffs.iter().map(|c| c + m).collect(),
    }
}

/// `σ_{τ,k}` with highest weight `(τ₂+1,…,τ_{k+1}+1, τ_{k+2},…,τ_{n+1})`.
pub fn sigma_tau_k(tau: &GHighestWeight, k: usize) -> Result<MHighestWeight> {
    let n = tau.n();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    let coeffs = tau.coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| if i < k { c + 1 } else { c })
        .collect();
    Ok(MHighestWeight { coeffs })
}

/// `λ_{τ,k} = τ_{k+1} + n − k`.
pub fn lambda_tau_k(tau: &GHighestWeight, k: usize) -> Result<u64> {
    let n = tau.n();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, max: n });
    }
    Ok((tau.coeffs[k] + (n - k) as i64) as u64)
}

fn rho(n: usize) -> impl Iterator<Item = i64> {
    (0..=n).map(move |j| (n - j) as i64)
}

/// Casimir eigenvalue `Σ (k_j + ρ_j)² − Σ ρ_j²` with `ρ_j = n + 1 − j`.
pub fn casimir_eigenvalue(tau: &GHighestWeight) -> i64 {
    tau.coeffs
        .iter()
        .zip(rho(tau.n()))
        .map(|(&k, r)| (k + r) * (k + r) - r * r)
        .sum()
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Weyl dimension `Π_{i<j} (l_i² − l_j²)/(ρ_i² − ρ_j²)` with `l = Λ + ρ`,
/// in exact rational arithmetic.
pub fn weyl_dim(tau: &GHighestWeight) -> Result<u128> {
    let n = tau.n();
    let l: Vec<i128> = tau
        .coeffs
        .iter()
        .zip(rho(n))
        .map(|(&k, r)| i128::from(k + r))
        .collect();
    let r: Vec<i128> = rho(n).map(i128::from).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..=n {
        for j in i + 1..=n {
            let a = l[i] * l[i] - l[j] * l[j];
            let b = r[i] * r[i] - r[j] * r[j];
            let g1 = gcd(a, den);
            let g2 = gcd(b, num);
            num = (num / g2).checked_mul(a / g1).ok_or(Error::Overflow)?;
            den = (den / g1).checked_mul(b / g2).ok_or(Error::Overflow)?;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    if den != 1 || num <= 0 {
        return Err(Error::InvalidInput("Weyl dimension is not a positive integer"));
    }
    Ok(num as u128)
}

/// Dimension of the `SO(2n)` representation (Weyl formula for `D_n`, with
/// `n = 1` giving 1).
pub fn m_dim(sigma: &MHighestWeight) -> Result<u128> {
    let n = sigma.n();
    let rho_m: Vec<i128> = (0..n).map(|j| (n - 1 - j) as i128).collect();
    let l: Vec<i128> = sigma
        .coeffs
        .iter()
        .zip(&rho_m)
        .map(|(&c, &r)| i128::from(c) + r)
        .collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..n {
        for j in i + 1..n {
            let a = l[i] * l[i] - l[j] * l[j];
            let b = rho_m[i] * rho_m[i] - rho_m[j] * rho_m[j];
            let g1 = gcd(a, den);
            let g2 = gcd(b, num);
            num = (num / g2).checked_mul(a / g1).ok_or(Error::Overflow)?;
            den = (den / g1).checked_mul(b / g2).ok_or(Error::Overflow)?;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    if den != 1 {
        return Err(Error::InvalidInput("M dimension is not an integer"));
    }
    Ok(num.unsigned_abs())
}

// Alternating sum Σ_{w ∈ W(D_n)} sgn(w) e^{i⟨w l, θ⟩}
// = ½[det(2 cos(l_j θ_i)) + det(2i sin(l_j θ_i))].
fn d_alternant(l: &[f64], theta: &[f64]) -> Complex {
    let n = l.len();
    let mut cos = Vec::with_capacity(n * n);
    let mut sin = Vec::with_capacity(n * n);
    for &t in theta {
        for &lj in l {
            cos.push(Complex::new(2.0 * (lj * t).cos(), 0.0));
            sin.push(Complex::new(0.0, 2.0 * (lj * t).sin()));
        }
    }
    (linalg::det(cos, n) + linalg::det(sin, n)) * 0.5
}

/// Character `Θ_σ(m_γ)` of `σ ∈ M̂` at the elliptic element `γ`, by the Weyl
/// character formula at torus angles `θ_j = 2φ_j`.
pub fn m_character(sigma: &MHighestWeight, gamma: &EllipticClass) -> Result<Complex> {
    let n = sigma.n();
    if gamma.n() != n {
        return Err(Error::InvalidInput("elliptic class and M-weight have different rank"));
    }
    let theta: Vec<f64> = gamma.angles().iter().map(|phi| 2.0 * phi).collect();
    if n == 1 {
        return Ok(Complex::from_polar(1.0, sigma.coeffs[0] as f64 * theta[0]));
    }
    let rho_m: Vec<f64> = (0..n).map(|j| (n - 1 - j) as f64).collect();
    let denominator = d_alternant(&rho_m, &theta);
    if denominator.norm() < 1e-10 {
        return Err(Error::SingularElement);
    }
    let l: Vec<f64> = sigma
        .coeffs
        .iter()
        .zip(&rho_m)
        .map(|(&c, r)| c as f64 + r)
        .collect();
    Ok(d_alternant(&l, &theta) / denominator)
}
