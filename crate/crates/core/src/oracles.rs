//! Independent evaluators of `ln F_n(λ)`, where
//!
//! ```text
//! F_n(λ) = ∫ exp(−λ Σ_{k=1}^n e^{x_k}) dx_1 … dx_{n−1},   x_n = −(x_1 + … + x_{n−1}).
//! ```
//!
//! | method        | n      | route                                                     |
//! |---------------|--------|-----------------------------------------------------------|
//! | closed form   | 1, 2   | `F₁ = e^{−λ}`, `F₂ = 2K₀(2λ)`                             |
//! | quadrature    | 2..=4  | nested adaptive Gauss–Kronrod over the hyperplane         |
//! | contour       | any    | `(1/2πi) ∫ Γ(s)^n λ^{−ns} ds` on the saddle line          |
//! | asymptotic    | any    | `L^n / √(2πnσ)`                                           |
//! | Monte Carlo   | ≥ 2    | importance sampling with a Gaussian on the hyperplane     |
//!
//! The Mellin pair `∫₀^∞ n F_n(λ) λ^{ns−1} dλ = Γ(s)^n` inverts to the
//! contour integral with prefactor `1/(2πi)`; there is no extra `1/n`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{domain, require_positive, Error, Result};
use crate::quadrature::gauss_kronrod;
use crate::saddle::{inverse_digamma, solve_saddle};
use crate::specfun::{bessel_k0, ln_gamma_complex};
use crate::LogValue;

/// How an [`OracleResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    ClosedForm,
    Quadrature,
    Contour,
    MonteCarlo,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::ClosedForm,
        Method::Quadrature,
        Method::Contour,
        Method::MonteCarlo,
        Method::Asymptotic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed-form",
            Method::Quadrature => "quadrature",
            Method::Contour => "contour",
            Method::MonteCarlo => "monte-carlo",
            Method::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Method::ALL.iter().map(|m| m.as_str()).collect();
                format!("unknown method `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// `ln F_n(λ)` together with a claimed bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: LogValue,
    /// Claimed upper bound on `|ln F̂ − ln F|`.
    pub abs_error: f64,
    pub method: Method,
}

impl OracleResult {
    fn new(op: &'static str, ln_value: f64, abs_error: f64, method: Method) -> Result<Self> {
        let value = LogValue::from_ln(ln_value)
            .ok_or_else(|| domain(op, format!("non-finite result {ln_value}")))?;
        Ok(Self {
            value,
            abs_error,
            method,
        })
    }

    pub fn ln(&self) -> f64 {
        self.value.ln()
    }
}

fn check_lambda(op: &'static str, lambda: f64) -> Result<()> {
    require_positive(op, "lambda", lambda)
}

/// `ln F₁(λ) = −λ`: the hyperplane is the single point `x = 0`.
pub fn f1_exact(lambda: f64) -> Result<OracleResult> {
    check_lambda("f1_exact", lambda)?;
    OracleResult::new("f1_exact", -lambda, 0.0, Method::ClosedForm)
}

/// `ln F₂(λ) = ln 2 + ln K₀(2λ)`, from `∫ e^{−2λ cosh x} dx = 2K₀(2λ)`.
pub fn f2_exact(lambda: f64) -> Result<OracleResult> {
    check_lambda("f2_exact", lambda)?;
    let k0 = bessel_k0(2.0 * lambda)?;
    OracleResult::new(
        "f2_exact",
        std::f64::consts::LN_2 + k0.ln(),
        1e-10,
        Method::ClosedForm,
    )
}

/// Closed form for `n ∈ {1, 2}`.
pub fn closed_form(n: usize, lambda: f64) -> Result<OracleResult> {
    match n {
        1 => f1_exact(lambda),
        2 => f2_exact(lambda),
        _ => Err(Error::Unavailable {
            method: Method::ClosedForm.as_str(),
            n,
        }),
    }
}

/// Truncation box `[−X, X]^{n−1}` for the hyperplane coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureDomain {
    pub dimension: usize,
    pub half_width: f64,
}

impl QuadratureDomain {
    /// Smallest box whose complement carries relative mass below `tol`.
    ///
    /// Leaving the box through `x_k < −X` forces the other `n−1`
    /// coordinates to sum past `X`, so `Σe^{x} ≥ (n−1) e^{X/(n−1)}` there;
    /// leaving through `x_k > X` gives `Σe^{x} ≥ e^X`. Both exponents must
    /// beat `ln(1/tol)` plus a polynomial volume allowance.
    pub fn new(n: usize, lambda: f64, tol: f64) -> Self {
        let m = (n - 1) as f64;
        let nf = n as f64;
        let budget = |x: f64| (1.0 / tol).ln() + nf * (1.0 + x).ln() + 10.0;
        let mut x: f64 = 1.0;
        for _ in 0..100 {
            let need = budget(x) / lambda + nf;
            let next = (m * (need / m).ln()).max(need.ln()).max(1.0);
            if (next - x).abs() < 1e-9 {
                x = next;
                break;
            }
            x = next;
        }
        // also the plain one-sided tail bound λ e^X ≥ ln(1/tol) + nX
        while lambda * x.exp() < (1.0 / tol).ln() + nf * x {
            x += 0.5;
        }
        Self {
            dimension: n - 1,
            half_width: x,
        }
    }
}

const QUAD_SEGMENT_CAP: usize = 4000;

/// Nested integration over the remaining coordinates; `sum_exp` and
/// `sum_x` accumulate `Σ e^{x_k}` and `Σ x_k` over the fixed ones.
fn nested(
    remaining: usize,
    sum_exp: f64,
    sum_x: f64,
    lambda: f64,
    n: f64,
    half_width: f64,
    abs_tol: f64,
) -> Result<f64> {
    if remaining == 0 {
        // peak value 1 at x = 0 since Σe^{x} ≥ n on the hyperplane
        return Ok((-lambda * (sum_exp + (-sum_x).exp() - n)).exp());
    }
    let inner_tol = abs_tol / (3.0 * 2.0 * half_width);
    let mut failure = None;
    let est = gauss_kronrod(
        |x| {
            if failure.is_some() {
                return 0.0;
            }
            match nested(
                remaining - 1,
                sum_exp + x.exp(),
                sum_x + x,
                lambda,
                n,
                half_width,
                inner_tol,
            ) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        -half_width,
        half_width,
        abs_tol,
        QUAD_SEGMENT_CAP,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(est?.value)
}

/// `ln F_n(λ)` by nested adaptive quadrature over `[−X, X]^{n−1}`.
///
/// The integrand is shifted by its peak `e^{−nλ}`, so the accumulated
/// integral is `O(1)` regardless of `λ`.
pub fn fn_quadrature(n: usize, lambda: f64, tol: f64) -> Result<OracleResult> {
    const OP: &str = "fn_quadrature";
    if !(2..=4).contains(&n) {
        return Err(domain(OP, format!("n = {n} must lie in 2..=4")));
    }
    check_lambda(OP, lambda)?;
    if !(1e-12..=1e-3).contains(&tol) {
        return Err(domain(OP, format!("tol = {tol} must lie in [1e-12, 1e-3]")));
    }
    let domain_box = QuadratureDomain::new(n, lambda, tol);
    let nf = n as f64;
    let m = (n - 1) as f64;
    // Gaussian approximation of the shifted integral; only sets the scale.
    let mut scale = (2.0 * PI / lambda).powf(0.5 * m) / nf.sqrt();

    for _ in 0..3 {
        // Inner levels contribute at most eps/3 + eps/9 + … < eps/2.
        let eps = 0.5 * tol * scale;
        let value = nested(
            n - 1,
            0.0,
            0.0,
            lambda,
            nf,
            domain_box.half_width,
            0.5 * eps,
        )?;
        if value <= 0.0 || !value.is_finite() {
            return Err(domain(OP, format!("integral degenerated to {value}")));
        }
        if eps <= tol * value {
            return OracleResult::new(OP, value.ln() - nf * lambda, eps / value, Method::Quadrature);
        }
        scale = value;
    }
    Err(Error::Tolerance {
        op: OP,
        tol,
        cap: QUAD_SEGMENT_CAP,
    })
}

/// Discretisation of the vertical line `s = γ + it`, `t ∈ [−T, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    gamma: f64,
    half_width: f64,
    steps: usize,
}

impl ContourSpec {
    pub const MIN_STEPS: usize = 100;

    /// Requires `γ > 0`, `T > 0`, `h > 0` and `T/h` an integer of at least 100.
    pub fn new(gamma: f64, half_width: f64, step: f64) -> Result<Self> {
        const OP: &str = "ContourSpec";
        require_positive(OP, "gamma", gamma)?;
        require_positive(OP, "half_width", half_width)?;
        require_positive(OP, "step", step)?;
        let ratio = half_width / step;
        let steps = ratio.round();
        if (ratio - steps).abs() > 1e-9 * ratio || steps < Self::MIN_STEPS as f64 {
            return Err(domain(
                OP,
                format!("T/h = {ratio} must be an integer ≥ {}", Self::MIN_STEPS),
            ));
        }
        Ok(Self {
            gamma,
            half_width,
            steps: steps as usize,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn step(&self) -> f64 {
        self.half_width / self.steps as f64
    }

    pub fn steps(&self) -> usize {
        self.steps
    }
}

/// Relative integrand size at `±T` that auto mode aims below.
const CONTOUR_TAIL: f64 = 1e-14;
const AUTO_STEPS: usize = 2000;

/// Exponent `lnΓ(s) − s ln λ` along the line, measured from its value at `t = 0`.
struct LineExponent {
    gamma: f64,
    ln_lambda: f64,
    origin: f64,
}

impl LineExponent {
    fn new(gamma: f64, ln_lambda: f64) -> Result<Self> {
        let origin = ln_gamma_complex(Complex64::new(gamma, 0.0))?.re - gamma * ln_lambda;
        Ok(Self {
            gamma,
            ln_lambda,
            origin,
        })
    }

    fn at(&self, t: f64) -> Result<Complex64> {
        let s = Complex64::new(self.gamma, t);
        Ok(ln_gamma_complex(s)? - s * self.ln_lambda - self.origin)
    }
}

/// Half-width where `n (Re φ(T) − φ(0)) = ln(tail)`; `|Γ(γ+it)|` decreases in `|t|`.
fn auto_half_width(line: &LineExponent, n: f64) -> Result<f64> {
    let target = CONTOUR_TAIL.ln();
    let below = |t: f64| line.at(t).map(|z| n * z.re < target);
    let mut hi = 1.0;
    while !below(hi)? {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if below(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `ln F_n(λ)` from the inverse Mellin integral
/// `F_n(λ) = (1/2π) ∫ Γ(γ+it)^n λ^{−n(γ+it)} dt`, trapezoidal rule.
///
/// With `spec = None` the line passes through the saddle abscissa
/// `γ = ψ^{-1}(ln λ)`, `T` is chosen so the integrand has fallen by 1e-14
/// and `h = T/2000`. The error estimate combines the change from step `2h`
/// to `h`, the imaginary residue (which vanishes in exact arithmetic) and the
/// truncated tail.
pub fn fn_contour(n: usize, lambda: f64, spec: Option<ContourSpec>) -> Result<OracleResult> {
    const OP: &str = "fn_contour";
    if n == 0 {
        return Err(domain(OP, "n must be at least 1"));
    }
    check_lambda(OP, lambda)?;
    let ln_lambda = lambda.ln();
    let nf = n as f64;

    let spec = match spec {
        Some(spec) => spec,
        None => {
            let gamma = inverse_digamma(ln_lambda)?;
            let line = LineExponent::new(gamma, ln_lambda)?;
            let half_width = auto_half_width(&line, nf)?;
            ContourSpec {
                gamma,
                half_width,
                steps: AUTO_STEPS,
            }
        }
    };
    let line = LineExponent::new(spec.gamma, ln_lambda)?;
    let h = spec.step();

    let edge = (nf * line.at(spec.half_width)?.re).exp();
    if edge > CONTOUR_TAIL {
        return Err(Error::Truncation { ratio: edge });
    }

    let mut fine = Complex64::new(1.0, 0.0);
    let mut coarse = Complex64::new(1.0, 0.0);
    for j in 1..=spec.steps {
        let t = j as f64 * h;
        let pair = (nf * line.at(t)?).exp() + (nf * line.at(-t)?).exp();
        fine += pair;
        if j % 2 == 0 {
            coarse += pair;
        }
    }
    // the endpoint carries half weight
    let end = 0.5 * ((nf * line.at(spec.half_width)?).exp() + (nf * line.at(-spec.half_width)?).exp());
    fine -= end;
    let fine = fine * h;
    let coarse = if spec.steps % 2 == 0 {
        (coarse - end) * (2.0 * h)
    } else {
        // odd step count: no nested coarse grid; fall back to the fine sum
        fine
    };

    if fine.re <= 0.0 {
        return Err(domain(OP, format!("contour sum lost positivity: {}", fine.re)));
    }
    // Decay is at least exponential with rate nπ/2, which bounds the tail.
    let tail = 2.0 * edge / (nf * std::f64::consts::FRAC_PI_2);
    let abs_error = ((fine.re - coarse.re).abs() + fine.im.abs() + tail) / fine.re;
    OracleResult::new(
        OP,
        nf * line.origin + (fine.re / (2.0 * PI)).ln(),
        abs_error,
        Method::Contour,
    )
}

/// Gaussian saddle approximation `ln F̂_n = n ln L − ½ ln(2πnσ)`.
///
/// The claimed error is `1/(4n)`; the first neglected term is `O(1/n)` with a
/// coefficient built from `ψ″` and `ψ‴` that stays below 0.1 in magnitude.
pub fn fn_saddle_asymptotic(n: usize, lambda: f64) -> Result<OracleResult> {
    const OP: &str = "fn_saddle_asymptotic";
    if n == 0 {
        return Err(domain(OP, "n must be at least 1"));
    }
    let sol = solve_saddle(lambda)?;
    let nf = n as f64;
    OracleResult::new(
        OP,
        nf * sol.ln_l - 0.5 * (2.0 * PI * nf * sol.sigma).ln(),
        0.25 / nf,
        Method::Asymptotic,
    )
}

/// Minimum effective sample size accepted by [`fn_montecarlo`].
pub const MIN_EFFECTIVE_SAMPLES: f64 = 100.0;

/// Importance-sampling estimate of `ln F_n(λ)`.
///
/// Proposal: an isotropic Gaussian on the hyperplane `Σx = 0` (a Gaussian in
/// `R^n` with its mean removed) with variance `1/λ` clipped to `[0.05, 20]`,
/// matching the curvature of the integrand at its peak `x = 0`. Its density
/// with respect to `dx_1 … dx_{n−1}` carries an extra factor `√n`. The
/// returned error is one standard error of the log estimate (delta method).
pub fn fn_montecarlo(n: usize, lambda: f64, samples: usize, seed: u64) -> Result<OracleResult> {
    const OP: &str = "fn_montecarlo";
    if n < 2 {
        return Err(domain(OP, format!("n = {n} must be at least 2")));
    }
    check_lambda(OP, lambda)?;
    if samples < 10_000 {
        return Err(domain(OP, format!("samples = {samples} must be at least 10^4")));
    }
    let nf = n as f64;
    let variance = (1.0 / lambda).clamp(0.05, 20.0);
    let sd = variance.sqrt();
    let ln_norm = 0.5 * nf.ln() - 0.5 * (nf - 1.0) * (2.0 * PI * variance).ln();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = vec![0.0; n];
    let mut ln_weights = Vec::with_capacity(samples);
    for _ in 0..samples {
        for zk in z.iter_mut() {
            let e: f64 = StandardNormal.sample(&mut rng);
            *zk = sd * e;
        }
        let mean = z.iter().sum::<f64>() / nf;
        let (mut sum_exp, mut norm2) = (0.0, 0.0);
        for &zk in &z {
            let x = zk - mean;
            sum_exp += x.exp();
            norm2 += x * x;
        }
        let ln_target = -lambda * sum_exp;
        let ln_proposal = ln_norm - 0.5 * norm2 / variance;
        ln_weights.push(ln_target - ln_proposal);
    }

    let shift = ln_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut s1, mut s2) = (0.0, 0.0);
    for &lw in &ln_weights {
        let w = (lw - shift).exp();
        s1 += w;
        s2 += w * w;
    }
    let ess = s1 * s1 / s2;
    if ess < MIN_EFFECTIVE_SAMPLES {
        return Err(Error::DegenerateWeights {
            ess,
            min: MIN_EFFECTIVE_SAMPLES,
        });
    }
    let count = samples as f64;
    let mean = s1 / count;
    let var = (s2 / count - mean * mean).max(0.0) * count / (count - 1.0);
    let std_err = (var / count).sqrt() / mean;
    OracleResult::new(OP, shift + mean.ln(), std_err, Method::MonteCarlo)
}

/// A configured evaluator of `ln F_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oracle {
    ClosedForm,
    Quadrature { tol: f64 },
    Contour,
    Asymptotic,
    MonteCarlo { samples: usize, seed: u64 },
}

impl Oracle {
    pub fn method(&self) -> Method {
        match self {
            Oracle::ClosedForm => Method::ClosedForm,
            Oracle::Quadrature { .. } => Method::Quadrature,
            Oracle::Contour => Method::Contour,
            Oracle::Asymptotic => Method::Asymptotic,
            Oracle::MonteCarlo { .. } => Method::MonteCarlo,
        }
    }

    /// Whether this evaluator accepts dimension `n`.
    pub fn supports(&self, n: usize) -> bool {
        match self {
            Oracle::ClosedForm => (1..=2).contains(&n),
            Oracle::Quadrature { .. } => (2..=4).contains(&n),
            Oracle::Contour | Oracle::Asymptotic => n >= 1,
            Oracle::MonteCarlo { .. } => n >= 2,
        }
    }

    pub fn evaluate(&self, n: usize, lambda: f64) -> Result<OracleResult> {
        if !self.supports(n) {
            return Err(Error::Unavailable {
                method: self.method().as_str(),
                n,
            });
        }
        match *self {
            Oracle::ClosedForm => closed_form(n, lambda),
            Oracle::Quadrature { tol } => fn_quadrature(n, lambda, tol),
            Oracle::Contour => fn_contour(n, lambda, None),
            Oracle::Asymptotic => fn_saddle_asymptotic(n, lambda),
            Oracle::MonteCarlo { samples, seed } => fn_montecarlo(n, lambda, samples, seed),
        }
    }
}
