//! Fourier transforms of the identity and cuspidal-elliptic weighted orbital
//! integrals for `SO₀(1,3)`, as explicit functions of `λ` and as digamma term
//! lists.
//!
//! Both transforms are real on the real line. A [`DigammaTermList`] therefore
//! represents the real function
//!
//! ```text
//! λ ↦ Re[ Σ c_j ψ(a_j + i b_j λ) + Σ c_j/(i e_j λ + d_j) + κ₀ ] + r/λ
//! ```
//!
//! which lets every reflection `λ → −λ` be absorbed by conjugating the
//! coefficient, so that all stored `a_j, b_j, d_j, e_j` are positive. The
//! optional odd pole `r/λ` collects rational terms with `d = 0`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::lie::{EllipticClass, MHighestWeight};
use crate::specfun::{b_closed_root, b_laurent, digamma, digamma_finite_part, RootOfUnity};
use crate::{Complex, Error, Result, EULER_GAMMA};

/// `c·ψ(a + ibλ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiTerm {
    pub c: Complex,
    pub a: f64,
    pub b: f64,
}

/// `c/(ieλ + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RationalTerm {
    pub c: Complex,
    pub d: f64,
    pub e: f64,
}

impl PsiTerm {
    pub fn eval(&self, lambda: f64) -> Complex {
        self.c
            * digamma(Complex::new(self.a, self.b * lambda)).expect("a > 0 keeps ψ regular")
    }
}

impl RationalTerm {
    pub fn eval(&self, lambda: f64) -> Complex {
        self.c / Complex::new(self.d, self.e * lambda)
    }
}

/// A normalized digamma/rational decomposition; see the module docs for the
/// represented function.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DigammaTermList {
    psi_terms: Vec<PsiTerm>,
    rational_terms: Vec<RationalTerm>,
    constant: Complex,
    pole: f64,
}

impl DigammaTermList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn psi_terms(&self) -> &[PsiTerm] {
        &self.psi_terms
    }

    pub fn rational_terms(&self) -> &[RationalTerm] {
        &self.rational_terms
    }

    pub fn constant(&self) -> Complex {
        self.constant
    }

    /// Residue `r` of the odd term `r/λ` (zero for regular functions).
    pub fn pole_residue(&self) -> f64 {
        self.pole
    }

    /// `max(1, a/b, d/e)` over all terms: the `λ`-scale below which the
    /// small-`t` expansion in `√t` applies.
    pub fn term_scale(&self) -> f64 {
        self.psi_terms
            .iter()
            .map(|t| t.a / t.b)
            .chain(self.rational_terms.iter().map(|t| t.d / t.e))
            .fold(1.0, f64::max)
    }

    /// Adds `c·ψ(a + ibλ)`, reflecting `b < 0` and shifting `a ≤ 0` upward
    /// with `ψ(z) = ψ(z+1) − 1/z`.
    pub fn add_psi(&mut self, c: Complex, a: f64, b: f64) -> Result<()> {
        if !(a.is_finite() && b.is_finite()) || b == 0.0 {
            return Err(Error::InvalidInput("psi term needs finite a and nonzero b"));
        }
        let (c, b) = if b < 0.0 { (c.conj(), -b) } else { (c, b) };
        let mut a = a;
        while a <= 0.0 {
            self.add_rational(-c, a, b)?;
            a += 1.0;
        }
        if c == Complex::new(0.0, 0.0) {
            return Ok(());
        }
        self.psi_terms.push(PsiTerm { c, a, b });
        Ok(())
    }

    /// Adds `c/(ieλ + d)`, reflecting `e < 0` and `d < 0`; `d = 0` goes into
    /// the odd pole.
    pub fn add_rational(&mut self, c: Complex, d: f64, e: f64) -> Result<()> {
        if !(d.is_finite() && e.is_finite()) || e == 0.0 {
            return Err(Error::InvalidInput("rational term needs finite d and nonzero e"));
        }
        let (c, e) = if e < 0.0 { (c.conj(), -e) } else { (c, e) };
        if d == 0.0 {
            self.pole += c.im / e;
        } else {
            let (c, d) = if d < 0.0 { (-c.conj(), -d) } else { (c, d) };
            self.rational_terms.push(RationalTerm { c, d, e });
        }
        Ok(())
    }

    pub fn add_constant(&mut self, c: Complex) {
        self.constant += c;
    }

    /// Appends all terms of `other`.
    pub fn extend(&mut self, other: &Self) {
        self.psi_terms.extend_from_slice(&other.psi_terms);
        self.rational_terms.extend_from_slice(&other.rational_terms);
        self.constant += other.constant;
        self.pole += other.pole;
    }

    /// Multiplies every coefficient by a real factor.
    pub fn scale(&mut self, k: f64) {
        for t in &mut self.psi_terms {
            t.c *= k;
        }
        for t in &mut self.rational_terms {
            t.c *= k;
        }
        self.constant *= k;
        self.pole *= k;
    }

    /// The term list with the odd pole removed; all other terms unchanged.
    pub fn without_pole(&self) -> Self {
        Self {
            pole: 0.0,
            ..self.clone()
        }
    }

    fn eval_regular(&self, lambda: f64) -> f64 {
        let psi: Complex = self.psi_terms.iter().map(|t| t.eval(lambda)).sum();
        let rat: Complex = self.rational_terms.iter().map(|t| t.eval(lambda)).sum();
        (psi + rat + self.constant).re
    }

    /// Value of the represented function at real `λ`.
    pub fn eval(&self, lambda: f64) -> Result<f64> {
        let odd = if self.pole == 0.0 {
            0.0
        } else if lambda == 0.0 {
            return Err(Error::Pole {
                at: Complex::new(0.0, 0.0),
            });
        } else {
            self.pole / lambda
        };
        Ok(self.eval_regular(lambda) + odd)
    }

    /// Even part `½(f(λ) + f(−λ))`, always regular.
    pub fn eval_even(&self, lambda: f64) -> f64 {
        0.5 * (self.eval_regular(lambda) + self.eval_regular(-lambda))
    }

    /// `∫_ℝ f(λ) e^{−tλ²} dλ` by quadrature (only the even part contributes).
    pub fn gauss_integral(&self, t: f64) -> Result<Complex> {
        crate::specfun::gauss_integral(|l| Complex::new(self.eval_even(l), 0.0), t)
    }
}

/// Which orbital integral an [`OmegaFunction`] comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    IdentityParabolic,
    CuspidalElliptic,
}

/// An `Ω`-function together with its term list.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaFunction {
    pub terms: DigammaTermList,
    pub sigma: MHighestWeight,
    pub kind: OmegaKind,
}

impl OmegaFunction {
    pub fn identity(sigma: &MHighestWeight) -> Result<Self> {
        Ok(Self {
            terms: decompose_identity(sigma)?,
            sigma: sigma.clone(),
            kind: OmegaKind::IdentityParabolic,
        })
    }

    pub fn cusp(gamma: &EllipticClass, sigma: &MHighestWeight) -> Result<Self> {
        Ok(Self {
            terms: decompose_cusp(gamma, sigma)?,
            sigma: sigma.clone(),
            kind: OmegaKind::CuspidalElliptic,
        })
    }

    pub fn eval(&self, lambda: f64) -> Result<f64> {
        self.terms.eval(lambda)
    }
}

fn require_so2(sigma: &MHighestWeight) -> Result<i64> {
    if sigma.n() != 1 {
        return Err(Error::Unsupported("orbital integrals are implemented for n = 1"));
    }
    Ok(sigma.k2())
}

fn require_so13(gamma: &EllipticClass) -> Result<()> {
    if gamma.n() != 1 {
        return Err(Error::Unsupported("orbital integrals are implemented for n = 1"));
    }
    Ok(())
}

/// `ψ(z)`, or its Laurent constant term when `z` is exactly a pole.
fn digamma_regularized(z: Complex) -> Result<Complex> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Ok(Complex::new(digamma_finite_part((-z.re) as u64), 0.0));
    }
    digamma(z)
}

/// `Ω(σ, λ) = −2γ − ½ Σ_± [ψ(1 + iλ ∓ k₂) + ψ(1 − iλ ± k₂)]` for `n = 1`.
///
/// At `λ = 0` with `|k₂| ≥ 1` two arguments sit on a pole; the poles cancel
/// and the finite limit is returned.
pub fn omega_identity(sigma: &MHighestWeight, lambda: f64) -> Result<Complex> {
    let k = require_so2(sigma)? as f64;
    let mut acc = Complex::new(0.0, 0.0);
    for (re, im) in [(1.0 - k, lambda), (1.0 + k, -lambda), (1.0 + k, lambda), (1.0 - k, -lambda)] {
        acc += digamma_regularized(Complex::new(re, im))?;
    }
    Ok(Complex::new(-2.0 * EULER_GAMMA, 0.0) - acc * 0.5)
}

/// Term list of [`omega_identity`].
pub fn decompose_identity(sigma: &MHighestWeight) -> Result<DigammaTermList> {
    let k = require_so2(sigma)? as f64;
    let mut list = DigammaTermList::new();
    let half = Complex::new(-0.5, 0.0);
    list.add_psi(half, 1.0 - k, 1.0)?;
    list.add_psi(half, 1.0 + k, -1.0)?;
    list.add_psi(half, 1.0 + k, 1.0)?;
    list.add_psi(half, 1.0 - k, -1.0)?;
    list.add_constant(Complex::new(-2.0 * EULER_GAMMA, 0.0));
    Ok(list)
}

// The four (prefactor, root, s₀, sign of iλ) pieces of Ω^cusp.
fn cusp_pieces(gamma: &EllipticClass, k: i64) -> Result<[(Complex, RootOfUnity, f64, f64); 4]> {
    let q = gamma.order();
    let p = i64::from(gamma.numerators()[0]);
    let z = RootOfUnity::new(q, p)?;
    let zb = z.conj();
    let zk = z.pow(k) * 0.5;
    let zmk = z.pow(-k) * 0.5;
    let kf = k as f64;
    Ok([
        (zk, z, -kf, 1.0),
        (zk, zb, kf, 1.0),
        (zmk, z, kf, -1.0),
        (zmk, zb, -kf, -1.0),
    ])
}

/// `Ω(γ, σ, λ) = ½[z^{k}(b(iλ−k, z) + b(iλ+k, z̄)) + z^{−k}(b(−iλ+k, z) + b(−iλ−k, z̄))]`
/// with `z = e^{2iφ}` and `k = k₂(σ)`, each `b` through its digamma closed form.
///
/// At `λ = 0` the individual series may sit on poles; their residues are
/// combined and the finite value is returned when they cancel.
pub fn omega_cusp_so13(gamma: &EllipticClass, sigma: &MHighestWeight, lambda: f64) -> Result<Complex> {
    require_so13(gamma)?;
    let k = require_so2(sigma)?;
    let pieces = cusp_pieces(gamma, k)?;
    if lambda != 0.0 {
        let mut acc = Complex::new(0.0, 0.0);
        for (pre, root, s0, sign) in pieces {
            acc += pre * b_closed_root(Complex::new(s0, sign * lambda), root)?;
        }
        return Ok(acc);
    }
    let mut finite = Complex::new(0.0, 0.0);
    let mut residue = Complex::new(0.0, 0.0);
    for (pre, root, s0, sign) in pieces {
        let (res, fin) = b_laurent(Complex::new(s0, 0.0), root)?;
        finite += pre * fin;
        // s − s₀ = ±iλ
        residue += pre * res * sign;
    }
    if residue.norm() > 1e-12 {
        return Err(Error::Pole {
            at: Complex::new(0.0, 0.0),
        });
    }
    Ok(finite)
}

/// Term list of [`omega_cusp_so13`] through `b(s, w) = −(1/Q) Σ_r w^r ψ((r+s)/Q)`.
pub fn decompose_cusp(gamma: &EllipticClass, sigma: &MHighestWeight) -> Result<DigammaTermList> {
    require_so13(gamma)?;
    let k = require_so2(sigma)?;
    // pieces with the same series (possible when z = z̄ or k = 0) are combined
    let mut series: Vec<(Complex, RootOfUnity, f64, f64)> = Vec::with_capacity(4);
    for (pre, root, s0, sign) in cusp_pieces(gamma, k)? {
        match series
            .iter_mut()
            .find(|(_, r, s, g)| *r == root && *s == s0 && *g == sign)
        {
            Some(entry) => entry.0 += pre,
            None => series.push((pre, root, s0, sign)),
        }
    }
    let mut list = DigammaTermList::new();
    for (pre, root, s0, sign) in series {
        let order = root.order();
        let qf = f64::from(order);
        for r in 1..=order {
            let c = -pre * root.pow(i64::from(r)) / qf;
            list.add_psi(c, (f64::from(r) + s0) / qf, sign / qf)?;
        }
    }
    Ok(list)
}

/// `Θ_{σ′,λ}(h_t^σ)`: `e^{−tλ²}` if the probe is `σ` or `w₀σ`, else `0`.
pub fn theta_ft_heat(sigma: &MHighestWeight, probe: &MHighestWeight, lambda: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain("heat parameter t must be positive"));
    }
    if probe == sigma || *probe == sigma.w0_twin() {
        Ok((-t * lambda * lambda).exp())
    } else {
        Ok(0.0)
    }
}
