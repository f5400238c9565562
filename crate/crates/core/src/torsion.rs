//! Assembly along a ray `τ(m)`: heat-kernel term data, the Mellin
//! contributions `MI`, `M𝓘` and `M𝓔^cusp` for `n = 1`, and growth fits.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::lie::{
    lambda_tau_k, ray_weight, sigma_tau_k, weyl_dim, EllipticClass, GHighestWeight, MHighestWeight,
};
use crate::mellin::{
    mellin_closed, mellin_reg_numeric_with, power_term_mellin, small_t_expansion_analytic,
    HeatExpansion, NORMALIZATION,
};
use crate::orbital::{decompose_cusp, decompose_identity, omega_cusp_so13, omega_identity};
use crate::specfun::{gauss_integral, gauss_integral_with};
use crate::{Complex, Error, Result};

/// Geometric input: dimension parameter `n`, volume, cusp count `κ`, the
/// cuspidal elliptic classes with their weights, and the ray base `τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbifoldData {
    n: usize,
    volume: f64,
    kappa: u32,
    cusp_elliptic: Vec<EllipticClass>,
    base_tau: GHighestWeight,
}

impl OrbifoldData {
    pub fn new(
        n: usize,
        volume: f64,
        kappa: u32,
        cusp_elliptic: Vec<EllipticClass>,
        base_tau: GHighestWeight,
    ) -> Result<Self> {
        if n == 0 || base_tau.n() != n {
            return Err(Error::InvalidInput("base weight does not match n"));
        }
        if !(volume > 0.0 && volume.is_finite()) {
            return Err(Error::InvalidInput("volume must be positive"));
        }
        if !base_tau.is_ray_base() {
            return Err(Error::InvalidInput("ray base needs a nonzero last coordinate"));
        }
        if cusp_elliptic.iter().any(|g| g.n() != n) {
            return Err(Error::InvalidInput("elliptic class rank does not match n"));
        }
        Ok(Self {
            n,
            volume,
            kappa,
            cusp_elliptic,
            base_tau,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn cusp_elliptic(&self) -> &[EllipticClass] {
        &self.cusp_elliptic
    }

    pub fn base_tau(&self) -> &GHighestWeight {
        &self.base_tau
    }

    /// Copy with a different volume.
    pub fn with_volume(&self, volume: f64) -> Result<Self> {
        Self::new(self.n, volume, self.kappa, self.cusp_elliptic.clone(), self.base_tau.clone())
    }

    /// Copy with every elliptic weight multiplied by `k`.
    pub fn with_scaled_weights(&self, k: f64) -> Result<Self> {
        let classes = self
            .cusp_elliptic
            .iter()
            .map(|g| g.with_weight(g.weight() * k))
            .collect();
        Self::new(self.n, self.volume, self.kappa, classes, self.base_tau.clone())
    }

    pub fn tau(&self, m: u64) -> GHighestWeight {
        ray_weight(&self.base_tau, m)
    }
}

/// One summand `(−1)^{k+1} e^{−tλ_k²} h_t^{σ_k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatTerm {
    pub k: usize,
    pub sign: i8,
    pub lambda: u64,
    pub rate: u128,
    pub sigma: MHighestWeight,
}

impl HeatTerm {
    pub fn sign_f64(&self) -> f64 {
        f64::from(self.sign)
    }

    /// `σ_k` and, when different, its `w₀`-twin.
    pub fn sigma_orbit(&self) -> Vec<MHighestWeight> {
        let twin = self.sigma.w0_twin();
        if twin == self.sigma {
            alloc::vec![self.sigma.clone()]
        } else {
            alloc::vec![self.sigma.clone(), twin]
        }
    }
}

/// The `k = 0..n` decomposition of the heat kernel `k_t^τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatTermSet {
    pub terms: Vec<HeatTerm>,
}

/// Heat-kernel term data for `τ`.
pub fn k_heat_ft(tau: &GHighestWeight) -> Result<HeatTermSet> {
    let n = tau.n();
    let mut terms = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lambda = lambda_tau_k(tau, k)?;
        terms.push(HeatTerm {
            k,
            sign: if k % 2 == 0 { -1 } else { 1 },
            lambda,
            rate: u128::from(lambda) * u128::from(lambda),
            sigma: sigma_tau_k(tau, k)?,
        });
    }
    debug_assert!(terms
        .iter()
        .enumerate()
        .all(|(i, a)| terms[i + 1..].iter().all(|b| b.rate != a.rate)));
    Ok(HeatTermSet { terms })
}

fn require_n1(tau: &GHighestWeight) -> Result<()> {
    if tau.n() != 1 {
        return Err(Error::Unsupported("Mellin contributions are implemented for n = 1"));
    }
    Ok(())
}

/// `M𝓔^cusp(τ)`: the alternating `k`-sum of the closed-form regularized
/// Mellin transforms of `Ω(γ, σ_k) + Ω(γ, w₀σ_k)` at `c = λ_k`, weighted by
/// the class weights.
pub fn m_ecusp(tau: &GHighestWeight, orb: &OrbifoldData, c_psi: f64) -> Result<f64> {
    require_n1(tau)?;
    if !c_psi.is_finite() {
        return Err(Error::InvalidInput("C(psi) must be calibrated"));
    }
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        let mut per_k = 0.0;
        for gamma in orb.cusp_elliptic() {
            for sigma in term.sigma_orbit() {
                per_k += gamma.weight() * mellin_closed(&decompose_cusp(gamma, &sigma)?, c, c_psi)?;
            }
        }
        total += term.sign_f64() * per_k;
    }
    Ok(total)
}

/// Independent route for [`m_ecusp`]: the Gaussian integrals of the directly
/// evaluated `w₀`-paired `Ω` are regularized numerically.
pub fn m_ecusp_numeric(tau: &GHighestWeight, orb: &OrbifoldData) -> Result<f64> {
    require_n1(tau)?;
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        let orbit = term.sigma_orbit();
        let mut per_k = 0.0;
        for gamma in orb.cusp_elliptic() {
            let mut expansion = HeatExpansion::new();
            let mut scale = 1.0f64;
            for sigma in &orbit {
                let list = decompose_cusp(gamma, sigma)?;
                expansion.add(&small_t_expansion_analytic(&list)?);
                scale = scale.max(list.term_scale());
            }
            let omega = |l: f64| -> Complex {
                orbit
                    .iter()
                    .map(|s| omega_cusp_so13(gamma, s, l).unwrap_or(Complex::new(f64::NAN, 0.0)))
                    .sum()
            };
            let g = |t: f64| -> Result<f64> {
                let v = gauss_integral(omega, t)?.re;
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::Pole { at: Complex::new(0.0, 0.0) })
                }
            };
            let u_min = crate::mellin::U_MIN / scale;
            let value = mellin_reg_numeric_with(g, &expansion, c, u_min)?;
            per_k += gamma.weight() * NORMALIZATION * value;
        }
        total += term.sign_f64() * per_k;
    }
    Ok(total)
}

/// Plancherel normalization of the identity contribution.
pub const PLANCHEREL_NORMALIZATION: f64 = 1.0 / (4.0 * PI * PI);

/// Small-`t` expansion of `∫_ℝ (λ² + k₂²) e^{−tλ²} dλ = √π(½t^{−3/2} + k₂² t^{−1/2})`.
pub fn plancherel_heat_expansion(k2: i64) -> HeatExpansion {
    let sp = PI.sqrt();
    let k2 = k2 as f64;
    HeatExpansion {
        shift: 3,
        shifted_powers: alloc::vec![(0, 0.5 * sp), (1, sp * k2 * k2)],
        ..HeatExpansion::new()
    }
}

/// `MI(τ)`: volume times the alternating `k`-sum of the regularized Mellin
/// transforms of the Plancherel-weighted Gaussian integrals at `c = λ_k`.
pub fn m_i_identity(tau: &GHighestWeight, orb: &OrbifoldData) -> Result<f64> {
    require_n1(tau)?;
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        let mut per_k = 0.0;
        for sigma in term.sigma_orbit() {
            for p in plancherel_heat_expansion(sigma.k2()).terms() {
                per_k += power_term_mellin(&p, c)?;
            }
        }
        total += term.sign_f64() * per_k;
    }
    Ok(orb.volume() * PLANCHEREL_NORMALIZATION * total)
}

const PLANCHEREL_U_MIN: f64 = 0.1;

/// [`m_i_identity`] through quadrature of the Gaussian integrals and
/// [`mellin_reg_numeric_with`].
pub fn m_i_identity_numeric(tau: &GHighestWeight, orb: &OrbifoldData) -> Result<f64> {
    require_n1(tau)?;
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        for sigma in term.sigma_orbit() {
            let k2 = sigma.k2() as f64;
            let g = |t: f64| Ok(gauss_integral_with(|l| Complex::new(l * l + k2 * k2, 0.0), t, 2)?.re);
            // the expansion is exact, so the cut only has to keep t^{−3/2} rounding small
            total += term.sign_f64()
                * mellin_reg_numeric_with(g, &plancherel_heat_expansion(sigma.k2()), c, PLANCHEREL_U_MIN)?;
        }
    }
    Ok(orb.volume() * PLANCHEREL_NORMALIZATION * total)
}

/// `M𝓘(τ)`: `κ/(4π)` times the alternating `k`-sum of the regularized Mellin
/// transforms of the identity `Ω(σ_k) + Ω(w₀σ_k)`.
pub fn m_script_i(tau: &GHighestWeight, orb: &OrbifoldData, c_psi: f64) -> Result<f64> {
    require_n1(tau)?;
    if orb.kappa() == 0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        let mut per_k = 0.0;
        for sigma in term.sigma_orbit() {
            per_k += mellin_closed(&decompose_identity(&sigma)?, c, c_psi)?;
        }
        total += term.sign_f64() * per_k;
    }
    Ok(f64::from(orb.kappa()) / (4.0 * PI) * PI * total)
}

/// [`m_script_i`] through quadrature of the directly evaluated identity `Ω`.
pub fn m_script_i_numeric(tau: &GHighestWeight, orb: &OrbifoldData) -> Result<f64> {
    require_n1(tau)?;
    if orb.kappa() == 0 {
        return Ok(0.0);
    }
    let mut total = 0.0;
    for term in k_heat_ft(tau)?.terms {
        let c = term.lambda as f64;
        for sigma in term.sigma_orbit() {
            let list = decompose_identity(&sigma)?;
            let expansion = small_t_expansion_analytic(&list)?;
            let scale = list.term_scale();
            let g = |t: f64| -> Result<f64> {
                Ok(gauss_integral(|l| omega_identity(&sigma, l).unwrap_or(Complex::new(f64::NAN, 0.0)), t)?.re)
            };
            let value = mellin_reg_numeric_with(g, &expansion, c, crate::mellin::U_MIN / scale)?;
            total += term.sign_f64() * NORMALIZATION * value;
        }
    }
    Ok(f64::from(orb.kappa()) / (4.0 * PI) * PI * total)
}

/// Growth model `v(m) ≈ C·f(m)`.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthModel {
    /// `f(m) = m · dim τ(m)` along the ray of the given base.
    MTimesDim(GHighestWeight),
    /// `f(m) = m log m`.
    MLogM,
    /// `f(m) = m`.
    Linear,
}

impl GrowthModel {
    pub fn name(&self) -> &'static str {
        match self {
            Self::MTimesDim(_) => "m*dim",
            Self::MLogM => "m*log(m)",
            Self::Linear => "m",
        }
    }

    pub fn basis(&self, m: u64) -> Result<f64> {
        let mf = m as f64;
        Ok(match self {
            Self::MTimesDim(base) => mf * weyl_dim(&ray_weight(base, m))? as f64,
            Self::MLogM => mf * mf.ln(),
            Self::Linear => mf,
        })
    }
}

/// Least-squares coefficient of a one-parameter growth model.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthFit {
    pub model: &'static str,
    pub coefficient: f64,
    /// `max |v − C f| / |v|` over the window.
    pub max_relative_residual: f64,
    pub window: (u64, u64),
    pub points: usize,
}

/// Minimum number of points entering a fit.
pub const MIN_FIT_POINTS: usize = 10;

/// Fit over the upper half of the supplied `m`-range.
pub fn fit_growth(values: &[(u64, f64)], model: &GrowthModel) -> Result<GrowthFit> {
    if values.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidInput("growth fit needs at least 10 points"));
    }
    let lo = values.iter().map(|v| v.0).min().unwrap_or(0);
    let hi = values.iter().map(|v| v.0).max().unwrap_or(0);
    let start = lo + (hi - lo) / 2;
    let window: Vec<(u64, f64)> = values.iter().copied().filter(|v| v.0 >= start).collect();
    fit_points(&window, model, (start, hi))
}

/// Fit over `lo ≤ m ≤ hi`.
pub fn fit_growth_window(values: &[(u64, f64)], model: &GrowthModel, lo: u64, hi: u64) -> Result<GrowthFit> {
    let window: Vec<(u64, f64)> = values
        .iter()
        .copied()
        .filter(|v| (lo..=hi).contains(&v.0))
        .collect();
    if window.len() < MIN_FIT_POINTS {
        return Err(Error::InvalidInput("growth fit needs at least 10 points"));
    }
    fit_points(&window, model, (lo, hi))
}

fn fit_points(window: &[(u64, f64)], model: &GrowthModel, bounds: (u64, u64)) -> Result<GrowthFit> {
    let mut basis = Vec::with_capacity(window.len());
    for &(m, _) in window {
        basis.push(model.basis(m)?);
    }
    let ff: f64 = basis.iter().map(|f| f * f).sum();
    if !(ff > 0.0) || !ff.is_finite() {
        return Err(Error::InvalidInput("degenerate growth model on this window"));
    }
    let fv: f64 = basis.iter().zip(window).map(|(f, v)| f * v.1).sum();
    let coefficient = fv / ff;
    let max_relative_residual = basis
        .iter()
        .zip(window)
        .map(|(f, v)| (v.1 - coefficient * f).abs() / v.1.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    Ok(GrowthFit {
        model: model.name(),
        coefficient,
        max_relative_residual,
        window: bounds,
        points: window.len(),
    })
}

/// One report row; each Mellin column carries its own capability error.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionRow {
    pub m: u64,
    pub dim: u128,
    pub lambdas: Vec<u64>,
    pub mi: Result<f64>,
    pub msi: Result<f64>,
    pub mecusp: Result<f64>,
}

/// All columns at `m`.
pub fn compute_row(orb: &OrbifoldData, m: u64, c_psi: f64) -> Result<TorsionRow> {
    let tau = orb.tau(m);
    let lambdas = k_heat_ft(&tau)?.terms.iter().map(|t| t.lambda).collect();
    Ok(TorsionRow {
        m,
        dim: weyl_dim(&tau)?,
        lambdas,
        mi: m_i_identity(&tau, orb),
        msi: m_script_i(&tau, orb, c_psi),
        mecusp: m_ecusp(&tau, orb, c_psi),
    })
}

/// Name of a report column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Mi,
    Msi,
    Mecusp,
}

impl Column {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Mi => "MI",
            Self::Msi => "MsI",
            Self::Mecusp => "MEcusp",
        }
    }

    pub fn get<'a>(&self, row: &'a TorsionRow) -> &'a Result<f64> {
        match self {
            Self::Mi => &row.mi,
            Self::Msi => &row.msi,
            Self::Mecusp => &row.mecusp,
        }
    }

    /// The growth model each column is fitted against.
    pub fn model(&self, orb: &OrbifoldData) -> GrowthModel {
        match self {
            Self::Mi => GrowthModel::MTimesDim(orb.base_tau().clone()),
            Self::Msi => GrowthModel::Linear,
            Self::Mecusp => GrowthModel::MLogM,
        }
    }
}

/// Fit of one column, or the reason it was skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnFit {
    pub column: Column,
    pub fit: Result<GrowthFit>,
}

/// Rows for `m_min..=m_max` plus the per-column growth fits.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub rows: Vec<TorsionRow>,
    pub fits: Vec<ColumnFit>,
}

/// Fits every column of already computed rows. `M𝓔^cusp` is fitted in
/// absolute value.
pub fn fit_report(orb: &OrbifoldData, rows: Vec<TorsionRow>) -> TorsionReport {
    let fits = [Column::Mi, Column::Msi, Column::Mecusp]
        .into_iter()
        .map(|column| {
            let values: Result<Vec<(u64, f64)>> = rows
                .iter()
                .map(|r| {
                    column.get(r).clone().map(|v| {
                        let v = if column == Column::Mecusp { v.abs() } else { v };
                        (r.m, v)
                    })
                })
                .collect();
            ColumnFit {
                column,
                fit: values.and_then(|v| fit_growth(&v, &column.model(orb))),
            }
        })
        .collect();
    TorsionReport { rows, fits }
}

/// Sequential report over `m_min..=m_max`.
pub fn run_report(orb: &OrbifoldData, m_min: u64, m_max: u64, c_psi: f64) -> Result<TorsionReport> {
    if m_min > m_max {
        return Err(Error::InvalidInput("empty m-range"));
    }
    let rows = (m_min..=m_max)
        .map(|m| compute_row(orb, m, c_psi))
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_report(orb, rows))
}
