use core::f64::consts::{LN_2, PI};

use proptest::prelude::*;
use torsion_core::specfun::{
    b_closed, b_closed_root, b_series, digamma, erfc, gauss_integral, gauss_integral_with,
    integrate_real, log_gamma, RootOfUnity,
};
use torsion_core::{Complex, EULER_GAMMA};

fn c(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

// Euler transform of an alternating series Σ (−1)^n a_n.
fn euler_alternating(a: impl Fn(usize) -> f64, terms: usize) -> f64 {
    let mut diffs: Vec<f64> = (0..terms).map(&a).collect();
    let mut total = 0.0;
    let mut scale = 0.5;
    for _ in 0..terms {
        total += scale * diffs[0];
        diffs = diffs.windows(2).map(|w| w[0] - w[1]).collect();
        scale *= 0.5;
        if diffs.is_empty() {
            break;
        }
    }
    total
}

// Harmonic-series definition of ψ for Re z > 0, with Richardson-corrected tail.
fn digamma_oracle(z: f64) -> f64 {
    let n = 200_000;
    let s: f64 = (1..=n).map(|k| 1.0 / k as f64 - 1.0 / (k as f64 + z - 1.0)).sum();
    s - EULER_GAMMA + (z - 1.0) / n as f64
}

#[test]
fn digamma_known_values() {
    assert!((digamma(c(1.0)).unwrap().re + 0.577_215_664_901_532).abs() < 1e-14);
    assert!((digamma(c(0.5)).unwrap().re + 1.963_510_026_021_423).abs() < 1e-14);
    for &z in &[0.3, 1.0, 2.5, 7.25] {
        assert!((digamma(c(z)).unwrap().re - digamma_oracle(z)).abs() < 1e-8);
    }
}

#[test]
fn log_gamma_values() {
    assert_eq!(log_gamma(1.0).unwrap(), 0.0);
    assert!((log_gamma(6.0).unwrap() - 120f64.ln()).abs() < 1e-13);
    assert!((log_gamma(0.5).unwrap() - 0.5 * PI.ln()).abs() < 1e-14);
    assert!(log_gamma(-1.0).is_err());
}

#[test]
fn erfc_values() {
    assert_eq!(erfc(0.0), 1.0);
    assert!(erfc(10.0) < 1e-44);
    let defining = 2.0 / PI.sqrt()
        * integrate_real(|x| (-x * x).exp(), &[1.0, 3.0, 10.0], 1e-16, 1e-14, 100).unwrap();
    assert!((erfc(1.0) - defining).abs() < 1e-13);
    assert!((erfc(1.0) - 0.157_299_207_050_285).abs() < 1e-13);
}

#[test]
fn b_at_minus_one_against_accelerated_series() {
    let minus = RootOfUnity::new(2, 1).unwrap();
    for &s in &[0.0, 1.0, 2.5] {
        let oracle = -euler_alternating(|n| 1.0 / (n as f64 + 1.0 + s), 60);
        assert!((b_series(c(s), minus).unwrap().re - oracle).abs() < 1e-12);
        assert!((b_closed(c(s), 2, 1).unwrap().re - oracle).abs() < 1e-12);
    }
    assert!((b_series(c(1.0), minus).unwrap().re - (LN_2 - 1.0)).abs() < 1e-13);
}

#[test]
fn b_series_against_grouped_partial_sums() {
    // Richardson over plain grouped partial sums with N and 2N periods.
    let z = RootOfUnity::new(3, 1).unwrap();
    let s = c(2.0);
    let partial = |groups: u64| -> Complex {
        (1..=3 * groups).map(|n| z.pow(n as i64) / (s + n as f64)).sum()
    };
    let (a, b) = (partial(200_000), partial(400_000));
    let oracle = b * 2.0 - a;
    let got = b_series(s, z).unwrap();
    assert!((got - oracle).norm() < 1e-10, "{got} {oracle}");
    assert!((got - b_closed(s, 3, 1).unwrap()).norm() < 1e-10);
    assert!((b_closed(c(1.7), 3, 1).unwrap() - b_series(c(1.7), z).unwrap()).norm() < 1e-10);
}

#[test]
fn gauss_integral_of_digamma_pair_is_real() {
    let f = |l: f64| digamma(Complex::new(2.0, l)).unwrap() + digamma(Complex::new(2.0, -l)).unwrap();
    let v = gauss_integral(f, 1.0).unwrap();
    assert!(v.im.abs() < 1e-12);
    // symmetrized oracle: 4∫₀^∞ Re ψ(2+iλ) e^{−λ²}
    let oracle = 4.0
        * integrate_real(
            |l| digamma(Complex::new(2.0, l)).unwrap().re * (-l * l).exp(),
            &[0.0, 0.5, 1.0, 2.0, 4.0, 7.0],
            1e-15,
            1e-15,
            500,
        )
        .unwrap();
    assert!((v.re - oracle).abs() < 1e-11);
    let quad = gauss_integral_with(|l| c(l * l), 1.0, 2).unwrap();
    assert!((quad.re - PI.sqrt() / 2.0).abs() < 1e-12);
}

fn away_from_poles(z: Complex) -> bool {
    z.im.abs() > 0.1 || (z.re - z.re.round()).abs() > 0.1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn b_series_matches_closed_form(re in 0.0f64..10.0, im in -5.0f64..5.0, m in 2u32..=6, p in 1i64..6) {
        let s = Complex::new(re, im);
        prop_assume!(away_from_poles(s));
        let z = RootOfUnity::new(m, p).unwrap();
        prop_assume!(!z.is_one());
        let a = b_series(s, z).unwrap();
        let b = b_closed_root(s, z).unwrap();
        prop_assert!((a - b).norm() < 1e-9, "{} {} {}", s, a, b);
    }

    #[test]
    fn digamma_recurrence(re in -30.0f64..30.0, im in -30.0f64..30.0) {
        let z = Complex::new(re, im);
        prop_assume!(away_from_poles(z));
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        prop_assert!((lhs - z.inv()).norm() < 1e-10 * z.inv().norm().max(1.0));
    }

    #[test]
    fn digamma_reflection(re in -20.0f64..20.0, im in -3.0f64..3.0) {
        let z = Complex::new(re, im);
        prop_assume!(away_from_poles(z));
        let lhs = digamma(Complex::new(1.0, 0.0) - z).unwrap() - digamma(z).unwrap();
        let pz = z * PI;
        let rhs = pz.cos() / pz.sin() * PI;
        prop_assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn log_gamma_derivative_is_digamma(x in 0.2f64..50.0) {
        let h = 1e-5 * x.max(1.0);
        let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
        let d = digamma(c(x)).unwrap().re;
        prop_assert!((fd - d).abs() < 1e-6 * d.abs().max(1.0));
    }

    #[test]
    fn erfc_symmetry(x in -6.0f64..6.0) {
        prop_assert!((erfc(x) + erfc(-x) - 2.0).abs() < 1e-12);
    }
}
