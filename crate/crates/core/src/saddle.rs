//! Saddle-point data of the Mellin–Barnes integral.
//!
//! For `λ > 0` the abscissa `γ(λ)` solves `ψ(γ) = ln λ`. The rate function
//! is `L(λ) = Γ(γ)/λ^γ`, equivalently the minimum over `γ > 0` of
//! `lnΓ(γ) − γ ln λ`, and `F_n(λ)^{1/n} → L(λ)`. The critical point is the
//! unique `λ_cr` with `L(λ_cr) = 1`.

use crate::error::{domain, require_positive, Error, Result};
use crate::specfun::{digamma, ln_gamma, trigamma, EULER_GAMMA};
use crate::LogValue;

/// Saddle data at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleSolution {
    pub lambda: f64,
    /// Root of `ψ(γ) = ln λ`.
    pub gamma: f64,
    /// `ln L(λ) = lnΓ(γ) − γ ln λ`.
    pub ln_l: f64,
    /// Curvature `ψ′(γ)` of the exponent along the contour.
    pub sigma: f64,
}

/// `(γ_cr, λ_cr)` where `L = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub gamma_cr: f64,
    pub lambda_cr: f64,
    /// `lnΓ(γ_cr) − γ_cr ψ(γ_cr)`.
    pub residual: f64,
}

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_CAP: usize = 50;
/// Below this `y` the pole expansion `ψ(γ) ≈ −1/γ − C` is the better guess.
const SMALL_Y: f64 = -2.22;

/// Solve `ψ(γ) = y` for `γ > 0`.
///
/// Newton's method on `ψ(γ) − y`, kept inside a bisection bracket.
pub fn inverse_digamma(y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(domain("inverse_digamma", format!("y = {y} must be finite")));
    }
    let mut gamma = if y >= SMALL_Y {
        y.exp() + 0.5
    } else {
        -1.0 / (y + EULER_GAMMA)
    };

    // ψ is increasing: ψ(lo) ≤ y ≤ ψ(hi).
    let mut lo = gamma;
    while digamma(lo)? > y {
        lo *= 0.5;
    }
    let mut hi = gamma;
    while digamma(hi)? < y {
        hi *= 2.0;
    }

    let mut residual = f64::INFINITY;
    for _ in 0..NEWTON_CAP {
        let g = digamma(gamma)? - y;
        residual = g.abs();
        if residual < NEWTON_TOL {
            return Ok(gamma);
        }
        if g < 0.0 {
            lo = gamma;
        } else {
            hi = gamma;
        }
        let mut next = gamma - g / trigamma(gamma)?;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == gamma {
            // The bracket has collapsed to adjacent floats.
            break;
        }
        gamma = next;
    }
    // ψ itself is only accurate to a few ulps of |y|.
    if residual <= NEWTON_TOL * y.abs().max(1.0) {
        return Ok(gamma);
    }
    Err(Error::Convergence {
        op: "inverse_digamma",
        iterations: NEWTON_CAP,
        residual,
    })
}

/// Saddle abscissa, `ln L` and curvature at `λ`.
pub fn solve_saddle(lambda: f64) -> Result<SaddleSolution> {
    require_positive("solve_saddle", "lambda", lambda)?;
    let ln_lambda = lambda.ln();
    let gamma = inverse_digamma(ln_lambda)?;
    Ok(SaddleSolution {
        lambda,
        gamma,
        ln_l: ln_gamma(gamma)? - gamma * ln_lambda,
        sigma: trigamma(gamma)?,
    })
}

/// `ln L(λ)`.
pub fn l_value(lambda: f64) -> Result<LogValue> {
    let sol = solve_saddle(lambda)?;
    LogValue::from_ln(sol.ln_l).ok_or_else(|| domain("l_value", format!("lambda = {lambda}")))
}

/// Result of the convex minimisation route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendreMinimum {
    pub ln_l: LogValue,
    pub argmin: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `ln L(λ)` as `min_{γ>0} [lnΓ(γ) − γ ln λ]` by golden-section search.
///
/// Uses objective values only; the first-order condition is never solved,
/// so this is independent of [`inverse_digamma`].
pub fn l_value_legendre(lambda: f64) -> Result<LegendreMinimum> {
    require_positive("l_value_legendre", "lambda", lambda)?;
    let ln_lambda = lambda.ln();
    let objective = |g: f64| ln_gamma(g).map(|v| v - g * ln_lambda);

    // Bracket a < m < b with f(m) below both ends.
    let mut m = 1.0;
    let mut fm = objective(m)?;
    let (mut a, mut b);
    let up = 2.0;
    let f_up = objective(up)?;
    if f_up < fm {
        a = m;
        m = up;
        fm = f_up;
        b = 2.0 * m;
        let mut fb = objective(b)?;
        while fb < fm {
            a = m;
            m = b;
            fm = fb;
            b *= 2.0;
            fb = objective(b)?;
        }
    } else {
        b = up;
        a = 0.5 * m;
        let mut fa = objective(a)?;
        while fa < fm {
            b = m;
            m = a;
            fm = fa;
            a *= 0.5;
            fa = objective(a)?;
        }
    }

    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = objective(x1)?;
    let mut f2 = objective(x2)?;
    for _ in 0..200 {
        if b - a <= 1e-12 * (a + b) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = objective(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = objective(x2)?;
        }
    }
    let (argmin, value) = [(x1, f1), (x2, f2), (m, fm)]
        .into_iter()
        .min_by(|p, q| p.1.total_cmp(&q.1))
        .expect("non-empty");
    Ok(LegendreMinimum {
        ln_l: LogValue::from_ln(value)
            .ok_or_else(|| domain("l_value_legendre", format!("lambda = {lambda}")))?,
        argmin,
    })
}

/// `lnΓ(γ) − γ ψ(γ)`; vanishes exactly where `L(e^{ψ(γ)}) = 1`.
pub fn critical_defect(gamma: f64) -> Result<f64> {
    Ok(ln_gamma(gamma)? - gamma * digamma(gamma)?)
}

/// The point where `L = 1`, solved by bisection in `γ`.
///
/// `h(γ) = lnΓ(γ) − γψ(γ)` has `h′ = −γψ′(γ) < 0`, `h(1) = C > 0` and
/// `h(2) = 2C − 2 < 0`, so `[1, 2]` always brackets the root.
pub fn critical_point() -> CriticalPoint {
    let h = |g: f64| critical_defect(g).expect("bracket lies in the domain");
    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    while hi - lo > 4.0 * f64::EPSILON {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma_cr = if h(lo).abs() <= h(hi).abs() { lo } else { hi };
    CriticalPoint {
        gamma_cr,
        lambda_cr: digamma(gamma_cr).expect("γ_cr > 0").exp(),
        residual: h(gamma_cr),
    }
}

/// Leading small-`λ` approximation `γ(λ) ≈ 1/(|ln λ| − C)`.
///
/// Only meaningful where `|ln λ| > C`, i.e. `λ < e^{−C} ≈ 0.56`.
pub fn gamma_asymptotic_zero(lambda: f64) -> Result<f64> {
    require_positive("gamma_asymptotic_zero", "lambda", lambda)?;
    let denom = -lambda.ln() - EULER_GAMMA;
    if lambda >= 1.0 || denom <= 0.0 {
        return Err(domain(
            "gamma_asymptotic_zero",
            format!("lambda = {lambda} must satisfy |ln λ| > C"),
        ));
    }
    Ok(denom.recip())
}

/// Saddle solutions on a strictly increasing positive grid.
pub fn tabulate(grid: &[f64]) -> Result<Vec<SaddleSolution>> {
    for (i, &x) in grid.iter().enumerate() {
        require_positive("tabulate", "grid point", x)?;
        if i > 0 && grid[i - 1] >= x {
            return Err(domain(
                "tabulate",
                format!("grid not strictly increasing at index {i}"),
            ));
        }
    }
    grid.iter().map(|&x| solve_saddle(x)).collect()
}
