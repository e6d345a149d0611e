//! Gamma-family special functions on the positive axis and the right
//! half-plane, plus `ln K₀`.
//!
//! Every function shifts its argument upward with the recurrence until it is
//! at least [`SHIFT_THRESHOLD`], then sums the asymptotic Stirling-type
//! series. No reflection formula is needed because the domain is `Re s > 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, require_positive, Result};
use crate::quadrature;
use crate::LogValue;

/// Euler–Mascheroni constant `C = −ψ(1)`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `½ ln(2π)`
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this argument the recurrence is applied before the series.
pub const SHIFT_THRESHOLD: f64 = 8.0;

/// `B_{2k} / (2k (2k−1))`, k = 1..9: coefficients of the `lnΓ` series.
const LN_GAMMA_SERIES: [f64; 9] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
];

/// `B_{2k} / 2k`, k = 1..8: coefficients of the digamma series.
const DIGAMMA_SERIES: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// `B_{2k}`, k = 1..8: coefficients of the trigamma series.
const TRIGAMMA_SERIES: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

fn check_real(op: &'static str, x: f64) -> Result<()> {
    require_positive(op, "x", x)
}

/// Number of unit shifts that bring `x` to at least [`SHIFT_THRESHOLD`].
fn shift_count(x: f64) -> usize {
    if x >= SHIFT_THRESHOLD {
        0
    } else {
        (SHIFT_THRESHOLD - x).ceil() as usize
    }
}

/// Horner evaluation of `Σ c_k t^k` for k = 0..len.
fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

fn ln_gamma_series(x: f64) -> f64 {
    let inv = x.recip();
    let tail = inv * horner(&LN_GAMMA_SERIES, inv * inv);
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + tail
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_real("ln_gamma", x)?;
    let k = shift_count(x);
    if k == 0 {
        return Ok(ln_gamma_series(x));
    }
    // Γ(x) = Γ(x+k) / (x (x+1) … (x+k−1)); the product stays below ~8!·8^8.
    let product: f64 = (0..k).map(|j| x + j as f64).product();
    Ok(ln_gamma_series(x + k as f64) - product.ln())
}

/// Analytic `ln Γ(s)` on `Re s > 0`.
///
/// The imaginary part is the continuous branch obtained by integrating `ψ`
/// from the real axis, not the principal argument of `Γ(s)`, so it grows
/// without bound along vertical lines.
pub fn ln_gamma_complex(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite() && s.re > 0.0) {
        return Err(domain(
            "ln_gamma_complex",
            format!("s = {s} must have finite components and Re s > 0"),
        ));
    }
    let k = shift_count(s.re);
    // Each factor has Re > 0, so its principal log is continuous in Im s.
    let shift: Complex64 = (0..k).map(|j| (s + j as f64).ln()).sum();
    let z = s + k as f64;
    let inv = z.inv();
    let tail = inv * LN_GAMMA_SERIES
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * inv * inv + c);
    Ok((z - 0.5) * z.ln() - z + HALF_LN_2PI + tail - shift)
}

/// Digamma `ψ(x) = d/dx ln Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_real("digamma", x)?;
    let k = shift_count(x);
    let correction: f64 = (0..k).map(|j| (x + j as f64).recip()).sum();
    let z = x + k as f64;
    let inv2 = (z * z).recip();
    let series = z.ln() - 0.5 / z - inv2 * horner(&DIGAMMA_SERIES, inv2);
    Ok(series - correction)
}

/// Trigamma `ψ′(x)` for `x > 0`; always positive.
pub fn trigamma(x: f64) -> Result<f64> {
    check_real("trigamma", x)?;
    let k = shift_count(x);
    let correction: f64 = (0..k).map(|j| (x + j as f64).powi(-2)).sum();
    let z = x + k as f64;
    let inv = z.recip();
    let inv2 = inv * inv;
    let series = inv + 0.5 * inv2 + inv * inv2 * horner(&TRIGAMMA_SERIES, inv2);
    Ok(series + correction)
}

/// `ln K₀(x)` for `x > 0`.
///
/// Uses `K₀(x) = e^{−x} ∫₀^∞ exp(−2x sinh²(t/2)) dt`; the integrand is
/// bounded by one, so the log form stays valid long after `K₀` underflows.
pub fn bessel_k0(x: f64) -> Result<LogValue> {
    check_real("bessel_k0", x)?;
    // Beyond x·(cosh T − 1) = 60 the remaining tail is below e^{-60}/(x sinh T).
    let upper = (1.0 + 60.0 / x).acosh();
    let integrand = |t: f64| {
        let s = (0.5 * t).sinh();
        (-2.0 * x * s * s).exp()
    };
    let est = quadrature::tanh_sinh(integrand, 0.0, upper, 1e-14);
    LogValue::from_ln(est.value.ln() - x)
        .ok_or_else(|| domain("bessel_k0", format!("integral degenerated at x = {x}")))
}

/// `π²/6`, exposed for tests and callers that need `ψ′(1)`.
pub const ZETA_2: f64 = PI * PI / 6.0;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ln_gamma_closed_forms() {
        assert_abs_diff_eq!(ln_gamma(1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ln_gamma(2.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ln_gamma(0.5).unwrap(), 0.5 * PI.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(ln_gamma(5.0).unwrap(), 24f64.ln(), epsilon = 1e-13);
        // Γ(x) ~ 1/x − C as x → 0
        let x = 1e-6;
        assert_abs_diff_eq!(
            ln_gamma(x).unwrap(),
            (1.0 / x - EULER_GAMMA).ln(),
            epsilon = 1e-11
        );
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut ln_fact = 0.0;
        for n in 1..=170u32 {
            // ln Γ(n+1) = ln n!
            ln_fact += f64::from(n).ln();
            let got = ln_gamma(f64::from(n) + 1.0).unwrap();
            assert!(
                (got - ln_fact).abs() <= 1e-13 * ln_fact.max(1.0),
                "n = {n}: {got} vs {ln_fact}"
            );
        }
    }

    #[test]
    fn digamma_special_values() {
        assert_abs_diff_eq!(digamma(1.0).unwrap(), -EULER_GAMMA, epsilon = 1e-14);
        assert_abs_diff_eq!(digamma(2.0).unwrap(), 1.0 - EULER_GAMMA, epsilon = 1e-14);
        // ψ(½) = −C − 2 ln 2
        assert_abs_diff_eq!(
            digamma(0.5).unwrap(),
            -EULER_GAMMA - 2.0 * 2f64.ln(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn digamma_large_argument_against_independent_series() {
        // ψ(x) = ln x − 1/(2x) − 1/(12x²) + 1/(120x⁴) − 1/(252x⁶) …,
        // summed directly without the shared coefficient table.
        let x: f64 = 1e4;
        let expected = x.ln() - 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x) + 1.0 / (120.0 * x.powi(4));
        assert_abs_diff_eq!(digamma(x).unwrap(), expected, epsilon = 1e-14);
        assert_abs_diff_eq!(digamma(x).unwrap(), 9.210_290_371_142_849, epsilon = 1e-13);
    }

    #[test]
    fn trigamma_special_values() {
        assert_abs_diff_eq!(trigamma(1.0).unwrap(), ZETA_2, epsilon = 1e-13);
        assert_abs_diff_eq!(trigamma(2.0).unwrap(), ZETA_2 - 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(trigamma(0.5).unwrap(), PI * PI / 2.0, epsilon = 1e-13);
    }

    #[test]
    fn small_arguments_follow_pole_behaviour() {
        let x = 1e-6;
        // ψ(x) = −1/x − C + ζ(2) x + O(x²)
        let d = digamma(x).unwrap();
        assert!((d - (-1.0 / x - EULER_GAMMA + ZETA_2 * x)).abs() <= 1e-15 / x);
        // ψ′(x) = 1/x² + ζ(2) + O(x)
        let t = trigamma(x).unwrap();
        assert!((t - (1.0 / (x * x) + ZETA_2)).abs() <= 1e-14 / (x * x));
    }

    #[test]
    fn complex_agrees_on_real_axis() {
        for &x in &[1e-6, 0.01, 0.5, 1.0, 1.4616, 3.3, 7.99, 8.0, 25.0, 1e4] {
            let z = ln_gamma_complex(Complex64::new(x, 0.0)).unwrap();
            let r = ln_gamma(x).unwrap();
            assert!((z.re - r).abs() <= 1e-13 * r.abs().max(1.0), "x = {x}");
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn complex_is_conjugate_symmetric() {
        let s = Complex64::new(0.7, 13.25);
        let a = ln_gamma_complex(s).unwrap();
        let b = ln_gamma_complex(s.conj()).unwrap();
        assert_eq!(a, b.conj());
    }

    #[test]
    fn complex_satisfies_recurrence() {
        // lnΓ(s+1) = lnΓ(s) + ln s on the analytic branch
        for &(re, im) in &[(0.3, 0.0), (1.5, 2.0), (0.05, 40.0), (4.0, -17.0), (9.0, 3.0)] {
            let s = Complex64::new(re, im);
            let lhs = ln_gamma_complex(s + 1.0).unwrap();
            let rhs = ln_gamma_complex(s).unwrap() + s.ln();
            assert!((lhs - rhs).norm() < 1e-12, "s = {s}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn complex_modulus_matches_closed_form_on_half_line() {
        // |Γ(½ + it)|² = π / cosh(πt)
        for &t in &[0.1, 1.0, 5.0, 20.0] {
            let z = ln_gamma_complex(Complex64::new(0.5, t)).unwrap();
            let expected = 0.5 * (PI.ln() - (PI * t).cosh().ln());
            assert_abs_diff_eq!(z.re, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.0).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
        assert!(ln_gamma(f64::INFINITY).is_err());
        assert!(digamma(0.0).is_err());
        assert!(trigamma(-2.5).is_err());
        assert!(bessel_k0(0.0).is_err());
        assert!(ln_gamma_complex(Complex64::new(0.0, 1.0)).is_err());
        assert!(ln_gamma_complex(Complex64::new(-0.5, 0.0)).is_err());
    }

    #[test]
    fn k0_large_argument_asymptotics() {
        // ln K₀(x) + x + ½ ln(2x/π) → 0; the next term is ln(1 − 1/(8x)).
        let x = 50.0;
        let defect = bessel_k0(x).unwrap().ln() + x + 0.5 * (2.0 * x / PI).ln();
        assert_abs_diff_eq!(defect, (1.0 - 1.0 / (8.0 * x)).ln(), epsilon = 1e-4);
        assert!(defect.abs() < 3e-3);
        // far past the underflow of K₀ itself
        let x = 2000.0;
        let defect = bessel_k0(x).unwrap().ln() + x + 0.5 * (2.0 * x / PI).ln();
        assert!(defect.abs() < 1e-4, "defect {defect}");
    }
}
