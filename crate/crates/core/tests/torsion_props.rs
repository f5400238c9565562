use proptest::prelude::*;
use torsion_core::lie::*;
use torsion_core::mellin::{mellin_closed, LN_2PI};
use torsion_core::orbital::{decompose_cusp, DigammaTermList};
use torsion_core::torsion::*;
use torsion_core::Complex;

fn base() -> GHighestWeight {
    GHighestWeight::new(vec![1, 1]).unwrap()
}

fn orbifold(volume: f64, kappa: u32, classes: Vec<EllipticClass>) -> OrbifoldData {
    OrbifoldData::new(1, volume, kappa, classes, base()).unwrap()
}

fn mixed() -> OrbifoldData {
    orbifold(
        2.5,
        2,
        vec![
            EllipticClass::so13(1, 2, 1.0).unwrap(),
            EllipticClass::so13(1, 3, 0.7).unwrap(),
            EllipticClass::so13(1, 4, -1.3).unwrap(),
        ],
    )
}

#[test]
fn heat_terms_along_the_ray() {
    let set = k_heat_ft(&base()).unwrap();
    let rates: Vec<u128> = set.terms.iter().map(|t| t.rate).collect();
    let signs: Vec<i8> = set.terms.iter().map(|t| t.sign).collect();
    assert_eq!(rates, vec![4, 1]);
    assert_eq!(signs, vec![-1, 1]);

    let tau = ray_weight(&base(), 3);
    assert_eq!(tau.coeffs(), &[4, 4]);
    let set = k_heat_ft(&tau).unwrap();
    let got: Vec<(i8, u128, i64)> = set.terms.iter().map(|t| (t.sign, t.rate, t.sigma.k2())).collect();
    assert_eq!(got, vec![(-1, 25, 4), (1, 16, 5)]);
}

#[test]
fn heat_terms_in_higher_rank() {
    let tau = GHighestWeight::new(vec![3, 2, 1]).unwrap();
    let set = k_heat_ft(&tau).unwrap();
    let signs: Vec<i8> = set.terms.iter().map(|t| t.sign).collect();
    assert_eq!(signs, vec![-1, 1, -1]);
    let lambdas: Vec<u64> = set.terms.iter().map(|t| t.lambda).collect();
    assert_eq!(lambdas, vec![5, 3, 1]);
    assert_eq!(set.terms[1].sigma.coeffs(), &[3, 1]);
}

#[test]
fn k_sum_is_order_independent() {
    let orb = mixed();
    for m in [1u64, 7, 40] {
        let tau = orb.tau(m);
        let mut parts = Vec::new();
        for term in k_heat_ft(&tau).unwrap().terms {
            for gamma in orb.cusp_elliptic() {
                for sigma in term.sigma_orbit() {
                    let v = mellin_closed(&decompose_cusp(gamma, &sigma).unwrap(), term.lambda as f64, LN_2PI)
                        .unwrap();
                    parts.push(term.sign_f64() * gamma.weight() * v);
                }
            }
        }
        let total = m_ecusp(&tau, &orb, LN_2PI).unwrap();
        let forward: f64 = parts.iter().sum();
        let backward: f64 = parts.iter().rev().sum();
        assert!((total - forward).abs() < 1e-12 * total.abs().max(1.0));
        assert!((total - backward).abs() < 1e-12 * total.abs().max(1.0));
    }
}

#[test]
fn single_psi_term_example() {
    let mut list = DigammaTermList::new();
    list.add_psi(Complex::new(1.0, 0.0), 1.0, 1.0).unwrap();
    let v = mellin_closed(&list, 5.0, LN_2PI).unwrap();
    assert!((v - (-2.0 * 120f64.ln() + LN_2PI)).abs() < 1e-12);
}

#[test]
fn neat_geometry_has_no_cusp_terms() {
    let orb = orbifold(1.0, 0, vec![]);
    for m in [1u64, 10, 100] {
        let tau = orb.tau(m);
        assert_eq!(m_ecusp(&tau, &orb, LN_2PI).unwrap(), 0.0);
        assert_eq!(m_script_i(&tau, &orb, LN_2PI).unwrap(), 0.0);
    }
    let report = run_report(&orb, 1, 30, LN_2PI).unwrap();
    assert_eq!(report.rows.len(), 30);
    assert!(report.rows.iter().all(|r| r.mecusp == Ok(0.0) && r.msi == Ok(0.0)));
}

#[test]
fn report_rows_and_fits() {
    let orb = mixed();
    let report = run_report(&orb, 3, 42, LN_2PI).unwrap();
    assert_eq!(report.rows.len(), 40);
    assert_eq!(report.rows[0].m, 3);
    assert_eq!(report.rows[0].lambdas, vec![5, 4]);
    assert_eq!(report.rows[0].dim, 9);
    assert_eq!(report.fits.len(), 3);
    for fit in &report.fits {
        let fit = fit.fit.as_ref().unwrap();
        assert!(fit.max_relative_residual.is_finite());
        assert_eq!(fit.window, (22, 42));
    }
    assert!(run_report(&orb, 5, 4, LN_2PI).is_err());
}

#[test]
fn higher_rank_columns_report_capability_errors() {
    let tau = GHighestWeight::new(vec![2, 1, 1]).unwrap();
    let orb = OrbifoldData::new(2, 1.0, 1, vec![], tau).unwrap();
    let row = compute_row(&orb, 4, LN_2PI).unwrap();
    assert_eq!(row.lambdas.len(), 3);
    assert!(matches!(row.mi, Err(torsion_core::Error::Unsupported(_))));
    assert!(matches!(row.msi, Err(torsion_core::Error::Unsupported(_))));
    assert!(matches!(row.mecusp, Err(torsion_core::Error::Unsupported(_))));
    let report = fit_report(&orb, vec![row]);
    assert!(report.fits.iter().all(|f| f.fit.is_err()));
}

#[test]
fn volume_is_an_exact_prefactor() {
    let orb = mixed();
    for m in [1u64, 9, 77] {
        let tau = orb.tau(m);
        let per_volume = m_i_identity(&tau, &orb).unwrap() / orb.volume();
        for v in [0.125, 1.0, 3.7, 1e3] {
            let scaled = orb.with_volume(v).unwrap();
            let got = m_i_identity(&tau, &scaled).unwrap() / v;
            assert!((got - per_volume).abs() <= 1e-15 * per_volume.abs());
        }
    }
}

#[test]
fn doubling_weights_doubles_the_cusp_term() {
    let orb = mixed();
    let doubled = orb.with_scaled_weights(2.0).unwrap();
    for m in 1..=30u64 {
        let tau = orb.tau(m);
        assert_eq!(
            m_ecusp(&tau, &doubled, LN_2PI).unwrap(),
            2.0 * m_ecusp(&tau, &orb, LN_2PI).unwrap()
        );
    }
}

#[test]
fn trivial_sigma_identity_term_is_finite() {
    let orb = orbifold(1.0, 0, vec![]);
    let tau = orb.tau(0);
    let v = m_i_identity(&tau, &orb).unwrap();
    assert!(v.is_finite());
    let numeric = m_i_identity_numeric(&tau, &orb).unwrap();
    assert!((v - numeric).abs() < 1e-8 * v.abs());
}

#[test]
fn closed_and_numeric_columns_agree() {
    let orb = orbifold(
        1.0,
        1,
        vec![EllipticClass::so13(1, 3, 1.0).unwrap(), EllipticClass::so13(1, 4, 0.5).unwrap()],
    );
    for m in [1u64, 5, 12] {
        let tau = orb.tau(m);
        let pairs = [
            (m_i_identity(&tau, &orb).unwrap(), m_i_identity_numeric(&tau, &orb).unwrap()),
            (m_script_i(&tau, &orb, LN_2PI).unwrap(), m_script_i_numeric(&tau, &orb).unwrap()),
            (m_ecusp(&tau, &orb, LN_2PI).unwrap(), m_ecusp_numeric(&tau, &orb).unwrap()),
        ];
        for (closed, numeric) in pairs {
            assert!((closed - numeric).abs() < 1e-4, "m={m}: {closed} vs {numeric}");
        }
    }
}

#[test]
fn script_i_is_bounded_linearly() {
    let orb = orbifold(1.0, 1, vec![]);
    let values: Vec<(u64, f64)> =
        (1..=100).map(|m| (m, m_script_i(&orb.tau(m), &orb, LN_2PI).unwrap())).collect();
    assert!(values.iter().all(|&(m, v)| v.abs() <= 2.0 * m as f64));
    let lower = fit_growth_window(&values, &GrowthModel::Linear, 50, 75).unwrap();
    let upper = fit_growth_window(&values, &GrowthModel::Linear, 75, 100).unwrap();
    assert!(lower.coefficient.abs() < 0.05 && upper.coefficient.abs() < 0.05);
}

#[test]
fn identity_term_ratio_converges() {
    let orb = orbifold(1.0, 0, vec![]);
    let ratio = |m: u64| {
        let tau = orb.tau(m);
        m_i_identity(&tau, &orb).unwrap() / (m as f64 * weyl_dim(&tau).unwrap() as f64)
    };
    for m in [25u64, 50, 100] {
        let near = (ratio(m + 1) - ratio(m)).abs();
        let far = (ratio(2 * m + 1) - ratio(2 * m)).abs();
        assert!(far <= 0.5 * near, "m={m}: {near} vs {far}");
    }
}

#[test]
fn fit_recovers_noisy_coefficient() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for &c in &[0.3, -2.0, 17.0] {
        let values: Vec<(u64, f64)> = (1..=200u64)
            .map(|m| {
                let clean = c * m as f64 * (m as f64).ln();
                (m, clean * (1.0 + 0.01 * rng.random_range(-1.0..1.0)))
            })
            .collect();
        let fit = fit_growth(&values, &GrowthModel::MLogM).unwrap();
        assert!((fit.coefficient - c).abs() < 0.03 * c.abs());
    }
}

#[test]
fn residual_shrinks_as_the_window_moves_out() {
    let values: Vec<(u64, f64)> =
        (1..=400u64).map(|m| (m, 1.5 * m as f64 * (m as f64).ln() + 40.0 * m as f64)).collect();
    let mut previous = f64::INFINITY;
    for lo in [10u64, 50, 100, 200, 300] {
        let fit = fit_growth_window(&values, &GrowthModel::MLogM, lo, 400).unwrap();
        assert!(fit.max_relative_residual < previous);
        previous = fit.max_relative_residual;
    }
}

#[test]
fn fit_on_the_dimension_model() {
    let model = GrowthModel::MTimesDim(base());
    let values: Vec<(u64, f64)> = (1..=30u64).map(|m| (m, -0.25 * (m * (2 * m + 3)) as f64)).collect();
    let fit = fit_growth(&values, &model).unwrap();
    assert!((fit.coefficient + 0.25).abs() < 1e-14);
    assert_eq!(fit.model, "m*dim");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weights_act_linearly(w1 in -5.0f64..5.0, w2 in -5.0f64..5.0, m in 1u64..60) {
        let g1 = EllipticClass::so13(1, 3, 1.0).unwrap();
        let g2 = EllipticClass::so13(1, 4, 1.0).unwrap();
        let both = orbifold(1.0, 1, vec![g1.with_weight(w1), g2.with_weight(w2)]);
        let one = orbifold(1.0, 1, vec![g1]);
        let two = orbifold(1.0, 1, vec![g2]);
        let tau = both.tau(m);
        let lhs = m_ecusp(&tau, &both, LN_2PI).unwrap();
        let rhs = w1 * m_ecusp(&tau, &one, LN_2PI).unwrap() + w2 * m_ecusp(&tau, &two, LN_2PI).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn exact_model_data_fits_exactly(c in -50.0f64..50.0, n in 10u64..120) {
        prop_assume!(c.abs() > 1e-3);
        let values: Vec<(u64, f64)> = (2..2 + n).map(|m| (m, c * m as f64 * (m as f64).ln())).collect();
        let fit = fit_growth(&values, &GrowthModel::MLogM).unwrap();
        prop_assert!((fit.coefficient - c).abs() < 1e-12 * c.abs());
        prop_assert!(fit.max_relative_residual < 1e-12);
    }
}
