use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{op}: argument out of domain: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative solver exhausted its iteration budget.
    #[error("{op}: no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// Adaptive quadrature hit its subdivision cap before meeting tolerance.
    #[error("{op}: tolerance {tol:e} not reached within {cap} subdivisions")]
    Tolerance { op: &'static str, tol: f64, cap: usize },

    /// The contour integrand is still significant at the truncation point.
    #[error("contour truncated too early: |integrand(±T)| / peak = {ratio:e}")]
    Truncation { ratio: f64 },

    /// Importance weights collapsed onto too few samples.
    #[error("degenerate importance weights: effective sample size {ess:.1} < {min}")]
    DegenerateWeights { ess: f64, min: f64 },

    /// A root bracket could not be established.
    #[error("{op}: no sign change found after {widenings} bracket widenings")]
    Bracket { op: &'static str, widenings: usize },

    /// The requested method cannot evaluate this input.
    #[error("method {method} unavailable for n = {n}")]
    Unavailable { method: &'static str, n: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        op,
        detail: detail.into(),
    }
}

/// Check `x > 0` and finite.
pub(crate) fn require_positive(op: &'static str, name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("{name} = {x} must be positive and finite")))
    }
}
