//! The acceptance suite behind `--check`. Every criterion returns its own
//! verdict with a one-line summary of the measured quantities.

use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use torsion_core::lie::{
    casimir_eigenvalue, lambda_tau_k, ray_weight, weyl_dim, EllipticClass, GHighestWeight, MHighestWeight,
};
use torsion_core::mellin::{
    mellin_numeric_list, small_t_expansion_digamma, zeta_digamma_closed, zeta_rational_closed,
};
use torsion_core::orbital::{decompose_identity, omega_cusp_so13, omega_identity, DigammaTermList};
use torsion_core::specfun::{b_closed, b_series, gauss_integral, RootOfUnity};
use torsion_core::torsion::{fit_growth_window, m_i_identity, run_report, GrowthModel};
use torsion_core::Complex;

use crate::report::calibration;
use crate::Config;

pub const B_SERIES_TOLERANCE: f64 = 1e-9;
pub const B_PINNED_TOLERANCE: f64 = 1e-10;
pub const B_SERIES_BUDGET: Duration = Duration::from_secs(10);
pub const MELLIN_TOLERANCE: f64 = 1e-5;
pub const RATIONAL_BUDGET: Duration = Duration::from_secs(30);
pub const SPREAD_TOLERANCE: f64 = 1e-5;
pub const REALNESS_TOLERANCE: f64 = 1e-10;
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;
pub const REGULARITY_TOLERANCE: f64 = 1e-6;
pub const GROWTH_RESIDUAL: f64 = 0.05;
pub const GROWTH_STABILITY: f64 = 0.10;
pub const GROWTH_BUDGET: Duration = Duration::from_secs(120);
pub const SHRINK_FACTOR: f64 = 2.0;
pub const FIT_TOLERANCE: f64 = 1e-4;
pub const LOG_TOLERANCE: f64 = 1e-8;

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

fn timed(id: u8, name: &'static str, body: impl FnOnce() -> Result<(bool, String), String>) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Outcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn one(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

/// Grouped `b`-series against the digamma closed form.
pub fn b_series_closed_form() -> Outcome {
    let start = Instant::now();
    timed(1, "b-series closed form", || {
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut worst = 0.0f64;
        for m in 2..=6u32 {
            let mut taken = 0;
            while taken < 100 {
                let s = Complex::new(rng.random_range(0.0..10.0), rng.random_range(-10.0..10.0));
                let pole_distance = (1..=20).map(|j| (s + j as f64).norm()).fold(f64::INFINITY, f64::min);
                if s.re <= 0.0 || pole_distance <= 0.1 {
                    continue;
                }
                let p = rng.random_range(1..i64::from(m));
                let z = RootOfUnity::new(m, p).map_err(|e| e.to_string())?;
                let series = b_series(s, z).map_err(|e| e.to_string())?;
                let closed = b_closed(s, m, p).map_err(|e| e.to_string())?;
                worst = worst.max((series - closed).norm());
                taken += 1;
            }
        }
        let pinned = b_closed(one(1.0), 2, 1).map_err(|e| e.to_string())?;
        let pinned_err = (pinned - one(2f64.ln() - 1.0)).norm();
        let elapsed = start.elapsed();
        Ok((
            worst < B_SERIES_TOLERANCE && pinned_err < B_PINNED_TOLERANCE && elapsed < B_SERIES_BUDGET,
            format!("max |series - closed| = {worst:.2e}, |b(1,-1) - (ln2 - 1)| = {pinned_err:.2e}, {elapsed:.2?}"),
        ))
    })
}

/// Rational-term Mellin closed form against the numeric regularization.
pub fn rational_mellin() -> Outcome {
    let start = Instant::now();
    timed(2, "rational Mellin closed form", || {
        let mut rng = StdRng::seed_from_u64(SEED + 2);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let (c, d, e) = (
                rng.random_range(0.5..=10.0),
                rng.random_range(0.5..=10.0),
                rng.random_range(0.5..=10.0),
            );
            let mut list = DigammaTermList::new();
            list.add_rational(one(1.0), d, e).map_err(|e| e.to_string())?;
            let numeric = mellin_numeric_list(&list, c).map_err(|e| e.to_string())?;
            let closed = zeta_rational_closed(c, d, e).map_err(|e| e.to_string())?;
            worst = worst.max((numeric - closed).abs());
        }
        let elapsed = start.elapsed();
        Ok((
            worst < MELLIN_TOLERANCE && elapsed < RATIONAL_BUDGET,
            format!("max |closed - numeric| = {worst:.2e} over 20 triples, {elapsed:.2?}"),
        ))
    })
}

/// Digamma-term Mellin closed form after one calibration of `C(ψ)`.
pub fn digamma_mellin() -> Outcome {
    timed(3, "digamma Mellin closed form", || {
        let cal = calibration().map_err(|e| e.to_string())?;
        let mut rng = StdRng::seed_from_u64(SEED + 3);
        let mut worst = 0.0f64;
        let mut taken = 0;
        while taken < 20 {
            let (c, a, b) = (
                rng.random_range(0.5..10.0),
                rng.random_range(0.2..5.0),
                rng.random_range(0.25..4.0),
            );
            if !(0.5..=30.0).contains(&(a + c * b)) {
                continue;
            }
            let mut list = DigammaTermList::new();
            list.add_psi(one(1.0), a, b).map_err(|e| e.to_string())?;
            let numeric = mellin_numeric_list(&list, c).map_err(|e| e.to_string())?;
            let closed = zeta_digamma_closed(c, a, b, cal.value).map_err(|e| e.to_string())?;
            worst = worst.max((numeric - closed).abs());
            taken += 1;
        }
        Ok((
            worst < MELLIN_TOLERANCE && cal.spread < SPREAD_TOLERANCE,
            format!(
                "C(psi) = {:.12}, spread = {:.2e}, max |closed - numeric| = {worst:.2e} over 20 triples",
                cal.value, cal.spread
            ),
        ))
    })
}

/// Casimir values, Weyl dimensions and exponential rates.
pub fn representation_arithmetic() -> Outcome {
    timed(4, "representation arithmetic", || {
        let w = |c: Vec<i64>| GHighestWeight::new(c).map_err(|e| e.to_string());
        let mut failures = Vec::new();
        for n in 1..=4usize {
            let zero = GHighestWeight::trivial(n);
            if casimir_eigenvalue(&zero) != 0 || weyl_dim(&zero).ok() != Some(1) {
                failures.push(format!("trivial weight n={n}"));
            }
        }
        // so(4) = sl2 + sl2 with spins j± = (a ± b)/2
        let (a, b) = (2i64, 1i64);
        let (jp, jm) = (a + b, a - b);
        let dim_oracle = ((jp + 1) * (jm + 1)) as u128;
        let casimir_oracle = (jp * (jp + 2) + jm * (jm + 2)) / 2;
        let tau = w(vec![a, b])?;
        let got = (casimir_eigenvalue(&tau), weyl_dim(&tau).map_err(|e| e.to_string())?);
        if got != (casimir_oracle, dim_oracle) || got != (9, 8) {
            failures.push(format!("(2,1) gave {got:?}"));
        }
        let mut checked = 0;
        for base in [vec![1, 1], vec![3, 1], vec![2, 2, 1], vec![4, 2, 1, 1]] {
            let base = w(base)?;
            let n = base.n();
            for m in 0..=1000u64 {
                let tau = ray_weight(&base, m);
                for k in 0..=n {
                    let want = base.coeffs()[k] as u64 + m + (n - k) as u64;
                    if lambda_tau_k(&tau, k).ok() != Some(want) {
                        failures.push(format!("lambda m={m} k={k}"));
                    }
                    checked += 1;
                }
            }
        }
        Ok((
            failures.is_empty(),
            if failures.is_empty() {
                format!("(2,1) -> {got:?}, {checked} exact rates checked")
            } else {
                failures.join("; ")
            },
        ))
    })
}

// Cauchy differences over h = 10^{-2..-6} from both sides; the value at 0
// is compared when the evaluator defines one.
fn cauchy_regular(f: &dyn Fn(f64) -> Result<Complex, String>, literal_zero: bool) -> Result<(bool, f64), String> {
    let hs = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    let mut shrinking = true;
    let mut ends = Vec::new();
    for side in [1.0, -1.0] {
        let mut values = Vec::with_capacity(hs.len());
        for &h in &hs {
            values.push(f(side * h)?);
        }
        let diffs: Vec<f64> = values.windows(2).map(|v| (v[1] - v[0]).norm()).collect();
        shrinking &= diffs.windows(2).all(|d| d[1] <= d[0] + 1e-14);
        ends.push(values[hs.len() - 1]);
    }
    let mut gap = (ends[0] - ends[1]).norm();
    if literal_zero {
        let at_zero = f(0.0)?;
        gap = gap.max((ends[0] - at_zero).norm());
    }
    Ok((shrinking && gap < REGULARITY_TOLERANCE, gap))
}

/// Regularity at `λ = 0`, `Ω(λ) = conj Ω(−λ)`, and real Gaussian integrals.
/// Order-two classes are tested literally; orders 3, 4, 6 through `Ω(σ) + Ω(w₀σ)`.
pub fn omega_regularity() -> Outcome {
    timed(5, "Omega regularity and symmetry", || {
        let mut failures = Vec::new();
        let (mut worst_gap, mut worst_sym, mut worst_im) = (0.0f64, 0.0f64, 0.0f64);
        let lambdas = [0.01, 0.3, 1.0, 2.7, 9.5];
        let ts = [0.05, 0.5, 2.0];
        for (p, q) in [(1u32, 2u32), (1, 3), (2, 3), (1, 4), (3, 4), (1, 6), (5, 6)] {
            let gamma = EllipticClass::so13(p, q, 1.0).map_err(|e| e.to_string())?;
            for k in -4i64..=4 {
                let sigma = MHighestWeight::so2(k);
                let orbit = if q == 2 { vec![sigma] } else { vec![sigma.clone(), sigma.w0_twin()] };
                let omega = |l: f64| -> Result<Complex, String> {
                    orbit
                        .iter()
                        .map(|s| omega_cusp_so13(&gamma, s, l).map_err(|e| e.to_string()))
                        .sum()
                };
                let (regular, gap) = cauchy_regular(&omega, q == 2)?;
                worst_gap = worst_gap.max(gap);
                if !regular {
                    failures.push(format!("irregular q={q} p={p} k={k}"));
                }
                for &l in &lambdas {
                    let sym = (omega(l)? - omega(-l)?.conj()).norm();
                    worst_sym = worst_sym.max(sym);
                    if sym >= SYMMETRY_TOLERANCE {
                        failures.push(format!("asymmetric q={q} p={p} k={k} l={l}"));
                    }
                }
                for &t in &ts {
                    let g = gauss_integral(|l| omega(l).unwrap_or(Complex::new(f64::NAN, 0.0)), t)
                        .map_err(|e| e.to_string())?;
                    worst_im = worst_im.max(g.im.abs());
                    if g.im.is_nan() || g.im.abs() >= REALNESS_TOLERANCE {
                        failures.push(format!("complex cusp integral q={q} k={k} t={t}"));
                    }
                }
            }
        }
        for k in -4i64..=4 {
            let sigma = MHighestWeight::so2(k);
            decompose_identity(&sigma).map_err(|e| e.to_string())?;
            for &t in &ts {
                let g = gauss_integral(|l| omega_identity(&sigma, l).unwrap_or(Complex::new(f64::NAN, 0.0)), t)
                    .map_err(|e| e.to_string())?;
                worst_im = worst_im.max(g.im.abs());
                if g.im.is_nan() || g.im.abs() >= REALNESS_TOLERANCE {
                    failures.push(format!("complex identity integral k={k} t={t}"));
                }
            }
        }
        failures.truncate(5);
        Ok((
            failures.is_empty(),
            format!(
                "max gap at 0 = {worst_gap:.2e}, max asymmetry = {worst_sym:.2e}, max |Im| = {worst_im:.2e}{}",
                if failures.is_empty() { String::new() } else { format!("; {}", failures.join("; ")) }
            ),
        ))
    })
}

/// `|M𝓔^cusp|` against `C·m log m` on the model orbifold.
pub fn cusp_growth_law() -> Outcome {
    let start = Instant::now();
    timed(6, "cusp growth law", || {
        let orb = Config::model(200).orbifold().map_err(|e| e.to_string())?;
        let c_psi = calibration().map_err(|e| e.to_string())?.value;
        let report = run_report(&orb, 1, 200, c_psi).map_err(|e| e.to_string())?;
        let values = report
            .rows
            .iter()
            .map(|r| r.mecusp.clone().map(|v| (r.m, v.abs())))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let upper = fit_growth_window(&values, &GrowthModel::MLogM, 100, 200).map_err(|e| e.to_string())?;
        let lower = fit_growth_window(&values, &GrowthModel::MLogM, 50, 100).map_err(|e| e.to_string())?;
        let drift = (lower.coefficient - upper.coefficient).abs() / upper.coefficient.abs();
        let elapsed = start.elapsed();
        Ok((
            upper.max_relative_residual < GROWTH_RESIDUAL && drift < GROWTH_STABILITY && elapsed < GROWTH_BUDGET,
            format!(
                "C[100,200] = {:.4e} (max residual {:.1}%), C[50,100] = {:.4e}, drift {:.1}%, |M(200)| = {:.4e}",
                upper.coefficient,
                100.0 * upper.max_relative_residual,
                lower.coefficient,
                100.0 * drift,
                values.last().map_or(0.0, |v| v.1)
            ),
        ))
    })
}

/// Convergence of `MI / (vol · m · dim)` and exact volume scaling.
pub fn identity_leading_term() -> Outcome {
    timed(7, "identity leading term", || {
        let orb = Config { cusp_elliptic: vec![], kappa: 0, ..Config::model(1) }
            .orbifold()
            .map_err(|e| e.to_string())?;
        let ratio = |m: u64| -> Result<f64, String> {
            let tau = orb.tau(m);
            let mi = m_i_identity(&tau, &orb).map_err(|e| e.to_string())?;
            let dim = weyl_dim(&tau).map_err(|e| e.to_string())? as f64;
            Ok(mi / (orb.volume() * m as f64 * dim))
        };
        let mut shrink = Vec::new();
        for m in [25u64, 50, 100] {
            let near = (ratio(m + 1)? - ratio(m)?).abs();
            let far = (ratio(2 * m + 1)? - ratio(2 * m)?).abs();
            shrink.push(near / far);
        }
        let mut worst_volume = 0.0f64;
        for v in [0.5, 2.0, 3.7, 1234.5] {
            let scaled = orb.with_volume(v).map_err(|e| e.to_string())?;
            for m in [1u64, 20, 150] {
                let tau = orb.tau(m);
                let base = m_i_identity(&tau, &orb).map_err(|e| e.to_string())?;
                let got = m_i_identity(&tau, &scaled).map_err(|e| e.to_string())?;
                worst_volume = worst_volume.max((got / v - base).abs() / base.abs());
            }
        }
        Ok((
            shrink.iter().all(|&s| s >= SHRINK_FACTOR) && worst_volume <= 4.0 * f64::EPSILON,
            format!(
                "difference shrink factors {:.3?} (need >= 2), max volume-scaling error {worst_volume:.1e}, limit {:.6}",
                shrink,
                ratio(2000)?
            ),
        ))
    })
}

/// Fitted small-`t` expansions of term lists.
pub fn small_t_structure() -> Outcome {
    timed(8, "small-t structure", || {
        let mut mixed = DigammaTermList::new();
        let ok = |r: torsion_core::Result<()>| r.map_err(|e| e.to_string());
        ok(mixed.add_psi(Complex::new(1.0, 0.3), 1.5, 0.5))?;
        ok(mixed.add_psi(one(-0.5), 0.25, 1.0))?;
        ok(mixed.add_rational(one(2.0), 3.0, 1.0))?;
        mixed.add_constant(one(0.7));
        let fit = small_t_expansion_digamma(&mixed, 8).map_err(|e| e.to_string())?;
        let mut worst_rel = 0.0f64;
        for t in [1e-3, 1e-4] {
            let g = mixed.gauss_integral(t).map_err(|e| e.to_string())?.re;
            worst_rel = worst_rel.max((fit.expansion.eval(t) - g).abs() / g.abs());
        }
        let mut worst_log = 0.0f64;
        for terms in [vec![(1.0, 3.0, 1.0), (-1.0, 0.5, 2.0)], vec![(0.4, 1.0, 1.0)], vec![(2.0, 7.0, 0.6)]] {
            let mut list = DigammaTermList::new();
            for (c, d, e) in terms {
                ok(list.add_rational(one(c), d, e))?;
            }
            let fit = small_t_expansion_digamma(&list, 8).map_err(|e| e.to_string())?;
            for &(_, b) in &fit.expansion.log_terms {
                worst_log = worst_log.max(b.abs());
            }
        }
        Ok((
            worst_rel < FIT_TOLERANCE && worst_log < LOG_TOLERANCE,
            format!(
                "max relative fit error {worst_rel:.2e}, max rational log coefficient {worst_log:.2e}, condition {:.1e}",
                fit.condition
            ),
        ))
    })
}

/// Criteria 1 through 8 in order.
pub fn run_all() -> Vec<Outcome> {
    vec![
        b_series_closed_form(),
        rational_mellin(),
        digamma_mellin(),
        representation_arithmetic(),
        omega_regularity(),
        cusp_growth_law(),
        identity_leading_term(),
        small_t_structure(),
    ]
}
