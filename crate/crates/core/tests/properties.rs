use hypersphere_laplace::hypersphere::{laplace_dn, HypersphereSpec};
use hypersphere_laplace::oracles::Oracle;
use hypersphere_laplace::saddle::{
    critical_point, inverse_digamma, l_value, l_value_legendre, solve_saddle, tabulate,
};
use hypersphere_laplace::specfun::{
    digamma, ln_gamma, ln_gamma_complex, trigamma, EULER_GAMMA,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn digamma_recurrence(x in 1e-4f64..1e3) {
        let lhs = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
        // ψ(x) is ~ -1/x near zero, so scale by its magnitude there.
        let scale = (1.0 / x).max(1.0);
        prop_assert!((lhs - 1.0 / x).abs() < 1e-12 * scale, "x = {}", x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn complex_real_axis_agreement(x in 1e-6f64..1e4) {
        let z = ln_gamma_complex(Complex64::new(x, 0.0)).unwrap();
        let r = ln_gamma(x).unwrap();
        prop_assert!((z.re - r).abs() <= 1e-13 * r.abs().max(1.0));
        prop_assert_eq!(z.im, 0.0);
    }

    #[test]
    fn scale_covariance(
        f in prop::collection::vec(0.05f64..20.0, 1..7),
        r in 0.1f64..3.0,
        s in 0.01f64..100.0,
    ) {
        let a = HypersphereSpec::new(r, f.clone()).unwrap();
        let scaled: Vec<f64> = f.iter().map(|x| s * x).collect();
        let b = HypersphereSpec::new(r / s, scaled).unwrap();
        prop_assert!((a.lambda_eff() - b.lambda_eff()).abs() <= 1e-13 * a.lambda_eff());
        let da = laplace_dn(&a, Oracle::Asymptotic).unwrap().ln();
        let db = laplace_dn(&b, Oracle::Asymptotic).unwrap().ln();
        prop_assert!((da - db).abs() <= 1e-12 * da.abs().max(1.0));
    }

    #[test]
    fn permutation_invariance(mut f in prop::collection::vec(0.01f64..50.0, 2..9), seed in any::<u64>()) {
        let a = HypersphereSpec::new(0.9, f.clone()).unwrap();
        // deterministic shuffle driven by the seed
        let len = f.len();
        let mut state = seed;
        for i in (1..len).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            f.swap(i, (state >> 33) as usize % (i + 1));
        }
        let b = HypersphereSpec::new(0.9, f).unwrap();
        prop_assert_eq!(a.lambda_eff().to_bits(), b.lambda_eff().to_bits());
    }
}

#[test]
fn derivative_consistency() {
    let step = 1e-5;
    for x in log_grid(0.01, 100.0, 60) {
        let d_lngamma = (ln_gamma(x + step).unwrap() - ln_gamma(x - step).unwrap()) / (2.0 * step);
        let psi = digamma(x).unwrap();
        assert!((d_lngamma - psi).abs() < 1e-6 * psi.abs().max(1.0), "x = {x}");
        let d_psi = (digamma(x + step).unwrap() - digamma(x - step).unwrap()) / (2.0 * step);
        let tri = trigamma(x).unwrap();
        // the central difference loses ~ε/h relative to ψ near the pole
        assert!((d_psi - tri).abs() < 1e-6 * tri.max(1.0), "x = {x}");
    }
}

#[test]
fn digamma_asymptotic_bound() {
    for x in log_grid(10.0, 1e6, 200) {
        let defect = digamma(x).unwrap() - x.ln() + 0.5 / x;
        assert!(defect.abs() <= 0.1 / (x * x), "x = {x}");
    }
}

#[test]
fn monotonicity_on_grid() {
    let grid = log_grid(1e-6, 1e4, 2000);
    let psi: Vec<f64> = grid.iter().map(|&x| digamma(x).unwrap()).collect();
    assert!(psi.windows(2).all(|w| w[1] > w[0]));
    assert!(grid.iter().all(|&x| trigamma(x).unwrap() > 0.0));
}

#[test]
fn inverse_digamma_round_trip() {
    for lambda in log_grid(1e-6, 1e4, 1000) {
        let g = inverse_digamma(lambda.ln()).unwrap();
        let back = digamma(g).unwrap().exp();
        assert!((back - lambda).abs() <= 1e-10 * lambda, "lambda = {lambda}");
    }
}

#[test]
fn envelope_identity() {
    // d ln L / d ln λ = −γ(λ)
    let h = 1e-5;
    for lambda in log_grid(1e-3, 1e3, 100) {
        let u = lambda.ln();
        let up = l_value((u + h).exp()).unwrap().ln();
        let down = l_value((u - h).exp()).unwrap().ln();
        let slope = (up - down) / (2.0 * h);
        let gamma = solve_saddle(lambda).unwrap().gamma;
        assert!((slope + gamma).abs() < 1e-5 * gamma.max(1.0), "lambda = {lambda}");
    }
}

#[test]
fn legendre_route_agreement() {
    for lambda in log_grid(1e-3, 1e3, 60) {
        let a = l_value(lambda).unwrap().ln();
        let b = l_value_legendre(lambda).unwrap().ln_l.ln();
        assert!((a - b).abs() < 1e-9, "lambda = {lambda}: {a} vs {b}");
    }
}

#[test]
fn strict_monotonicity_of_gamma_and_l() {
    let rows = tabulate(&log_grid(1e-6, 1e4, 500)).unwrap();
    assert!(rows.windows(2).all(|w| w[1].gamma > w[0].gamma));
    assert!(rows.windows(2).all(|w| w[1].ln_l < w[0].ln_l));
}

#[test]
fn large_lambda_shift() {
    for lambda in log_grid(100.0, 1e6, 50) {
        let g = solve_saddle(lambda).unwrap().gamma;
        assert!((g - lambda - 0.5).abs() < 1.0 / lambda, "lambda = {lambda}");
    }
}

#[test]
fn small_lambda_corrected_form_converges() {
    let defects: Vec<f64> = (3..=8)
        .map(|e| {
            let lambda = 10f64.powi(-e);
            let ln_l = l_value(lambda).unwrap().ln();
            (ln_l - (1.0 + (-lambda.ln() - EULER_GAMMA).ln())).abs()
        })
        .collect();
    assert!(defects.windows(2).all(|w| w[1] < w[0]), "{defects:?}");
    // the inverted-constant form C/λ is far off
    let ln_l = l_value(0.01).unwrap().ln();
    assert!((ln_l.exp() - 11.420_189_556).abs() < 1e-6);
    assert!((ln_l.exp() - EULER_GAMMA / 0.01).abs() > 40.0);
}

#[test]
fn critical_point_is_unit_level() {
    let cp = critical_point();
    assert!(l_value(cp.lambda_cr).unwrap().ln().abs() < 1e-10);
    assert!(l_value(cp.lambda_cr * 0.99).unwrap().ln() > 0.0);
    assert!(l_value(cp.lambda_cr * 1.01).unwrap().ln() < 0.0);
}
