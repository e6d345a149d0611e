//! Laplace transform of the invariant measure on `M_{n,r}` and the
//! comparison with the infinite-dimensional transform `exp(−θ ∫ ln f)`.
//!
//! Substituting `y_k → ρ_n(f) y_k / f_k`, then `y_k = r e^{x_k}`, reduces
//! `D_n(f) = ∫ exp(−Σ f_k y_k) dm_n(y)` to `F_n(ρ_n(f)·r)`, where `ρ_n` is the
//! geometric mean of `f`.

use std::fmt;

use crate::error::{domain, require_positive, Error, Result};
use crate::oracles::{fn_contour, Oracle, OracleResult};
use crate::saddle::{critical_point, l_value};
use crate::LogValue;

/// Dimension, radius and dual vector of a hypersphere transform.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersphereSpec {
    n: usize,
    radius: f64,
    f: Vec<f64>,
}

impl HypersphereSpec {
    pub fn new(radius: f64, f: Vec<f64>) -> Result<Self> {
        const OP: &str = "HypersphereSpec";
        if f.is_empty() {
            return Err(domain(OP, "f must have at least one entry"));
        }
        require_positive(OP, "radius", radius)?;
        for &fk in &f {
            require_positive(OP, "f_k", fk)?;
        }
        Ok(Self {
            n: f.len(),
            radius,
            f,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    /// `ρ_n(f)·r`, the argument of `F_n`.
    pub fn lambda_eff(&self) -> f64 {
        (ln_geometric_mean(&self.f) + self.radius.ln()).exp()
    }
}

/// `(1/n) Σ ln f_k`, summed in sorted order so the result is independent of
/// the order of `f`.
fn ln_geometric_mean(f: &[f64]) -> f64 {
    let mut logs: Vec<f64> = f.iter().map(|x| x.ln()).collect();
    logs.sort_by(f64::total_cmp);
    logs.iter().sum::<f64>() / logs.len() as f64
}

/// `ρ_n(f) = (Π f_k)^{1/n}`, evaluated in log space.
pub fn geometric_mean(f: &[f64]) -> Result<f64> {
    if f.is_empty() {
        return Err(domain("geometric_mean", "empty input"));
    }
    for &x in f {
        require_positive("geometric_mean", "entry", x)?;
    }
    Ok(ln_geometric_mean(f).exp())
}

/// `ln D_n(f) = ln F_n(ρ_n(f)·r)` by the chosen oracle.
pub fn laplace_dn(spec: &HypersphereSpec, oracle: Oracle) -> Result<OracleResult> {
    oracle.evaluate(spec.n, spec.lambda_eff())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `F_n → ∞` exponentially: `λ < λ_cr − ε`.
    Diverges,
    /// `F_n → 0` exponentially: `λ > λ_cr + ε`.
    Vanishes,
    CriticalBand,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Diverges => "diverges",
            Regime::Vanishes => "vanishes",
            Regime::CriticalBand => "critical-band",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub lambda_eff: f64,
    pub regime: Regime,
    /// `λ_eff − λ_cr`
    pub margin: f64,
}

/// Which side of the critical point `λ_eff` lies on, with band half-width `ε`.
pub fn classify_regime(lambda_eff: f64, epsilon: f64) -> Result<RegimeReport> {
    require_positive("classify_regime", "lambda_eff", lambda_eff)?;
    require_positive("classify_regime", "epsilon", epsilon)?;
    let margin = lambda_eff - critical_point().lambda_cr;
    let regime = if margin < -epsilon {
        Regime::Diverges
    } else if margin > epsilon {
        Regime::Vanishes
    } else {
        Regime::CriticalBand
    };
    Ok(RegimeReport {
        lambda_eff,
        regime,
        margin,
    })
}

const CROSSING_TOL: f64 = 1e-9;
const MAX_WIDENINGS: usize = 10;

/// `λ_n` with `F_n(λ_n) = 1`, by bisection in `ln λ` on the contour oracle.
pub fn unit_crossing(n: usize) -> Result<f64> {
    unit_crossing_with(n, |lambda| fn_contour(n, lambda, None).map(|r| r.ln()))
}

/// Bisection for the root of a decreasing `ln F(λ)`, starting from the
/// bracket `[0.3 λ_cr, 3 λ_cr]` and widening it geometrically if needed.
pub fn unit_crossing_with<F>(n: usize, ln_f: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    const OP: &str = "unit_crossing";
    if n < 2 {
        return Err(domain(OP, format!("n = {n} must be at least 2")));
    }
    let lambda_cr = critical_point().lambda_cr;
    let (mut lo, mut hi) = ((0.3 * lambda_cr).ln(), (3.0 * lambda_cr).ln());
    let mut f_lo = ln_f(lo.exp())?;
    let mut f_hi = ln_f(hi.exp())?;
    let mut widenings = 0;
    while !(f_lo > 0.0 && f_hi < 0.0) {
        if widenings == MAX_WIDENINGS {
            return Err(Error::Bracket {
                op: OP,
                widenings,
            });
        }
        widenings += 1;
        if f_lo <= 0.0 {
            lo -= std::f64::consts::LN_2 * widenings as f64;
            f_lo = ln_f(lo.exp())?;
        }
        if f_hi >= 0.0 {
            hi += std::f64::consts::LN_2 * widenings as f64;
            f_hi = ln_f(hi.exp())?;
        }
    }

    let mut best = (f64::INFINITY, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let value = ln_f(mid.exp())?;
        if value.abs() < best.0 {
            best = (value.abs(), mid);
        }
        if value.abs() < CROSSING_TOL {
            return Ok(mid.exp());
        }
        if value > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    Err(Error::Convergence {
        op: OP,
        iterations: 200,
        residual: best.0,
    })
}

/// Dual function and quadrature weights discretising `∫ ln f(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrandEnsembleSpec {
    theta: f64,
    f: Vec<f64>,
    weights: Vec<f64>,
}

impl GrandEnsembleSpec {
    pub fn new(theta: f64, f: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        const OP: &str = "GrandEnsembleSpec";
        require_positive(OP, "theta", theta)?;
        if f.is_empty() || f.len() != weights.len() {
            return Err(domain(
                OP,
                format!("f ({}) and weights ({}) must be non-empty and of equal length", f.len(), weights.len()),
            ));
        }
        for &fk in &f {
            require_positive(OP, "f_k", fk)?;
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(domain(OP, "weights must be non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(domain(OP, format!("weights sum to {total}, not 1")));
        }
        Ok(Self { theta, f, weights })
    }

    /// Equal weights `1/len`.
    pub fn uniform(theta: f64, f: Vec<f64>) -> Result<Self> {
        let w = 1.0 / f.len().max(1) as f64;
        let weights = vec![w; f.len()];
        Self::new(theta, f, weights)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `ln Ψ_θ(f) = −θ Σ w_k ln f_k`.
pub fn psi_theta(spec: &GrandEnsembleSpec) -> LogValue {
    let mean: f64 = spec
        .f
        .iter()
        .zip(&spec.weights)
        .map(|(f, w)| w * f.ln())
        .sum();
    LogValue::from_ln(-spec.theta * mean).expect("validated inputs give a finite value")
}

/// Radius as a function of dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusSchedule {
    /// `r_n = c · n^α`
    Power { c: f64, alpha: f64 },
    /// `r_n = λ_cr / ρ(f)`, which pins `λ_eff` to the critical point.
    PinnedCritical,
}

impl RadiusSchedule {
    pub fn radius(&self, n: usize, rho: f64) -> f64 {
        match *self {
            RadiusSchedule::Power { c, alpha } => c * (n as f64).powf(alpha),
            RadiusSchedule::PinnedCritical => critical_point().lambda_cr / rho,
        }
    }
}

/// One row of the ensemble comparison table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleRow {
    pub n: usize,
    pub lambda_eff: f64,
    /// `(ln D_n)/n` from the contour oracle.
    pub ln_dn_per_n: f64,
    /// `ln L(λ_eff)`, the large-`n` limit of `ln_dn_per_n`.
    pub ln_l: f64,
    pub regime: Regime,
    pub ln_psi_theta: f64,
}

/// Tabulate `(ln D_n)/n` along a radius schedule next to the fixed
/// infinite-dimensional value `ln Ψ_θ(f)`.
///
/// `f` is treated as samples of a function on a unit-measure domain with
/// equal weights.
pub fn ensemble_comparison(
    f: &[f64],
    theta: f64,
    schedule: RadiusSchedule,
    n_grid: &[usize],
    epsilon: f64,
) -> Result<Vec<EnsembleRow>> {
    const OP: &str = "ensemble_comparison";
    if n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain(OP, "n_grid must be strictly increasing"));
    }
    if let RadiusSchedule::Power { c, alpha } = schedule {
        require_positive(OP, "c", c)?;
        if !alpha.is_finite() {
            return Err(domain(OP, "alpha must be finite"));
        }
    }
    let rho = geometric_mean(f)?;
    let ln_psi = psi_theta(&GrandEnsembleSpec::uniform(theta, f.to_vec())?).ln();
    n_grid
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(domain(OP, "dimensions must be positive"));
            }
            let lambda_eff = rho * schedule.radius(n, rho);
            let ln_f = fn_contour(n, lambda_eff, None)?.ln();
            Ok(EnsembleRow {
                n,
                lambda_eff,
                ln_dn_per_n: ln_f / n as f64,
                ln_l: l_value(lambda_eff)?.ln(),
                regime: classify_regime(lambda_eff, epsilon)?.regime,
                ln_psi_theta: ln_psi,
            })
        })
        .collect()
}
