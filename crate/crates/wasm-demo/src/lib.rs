//! WebAssembly bindings behind `www/index.html`.
//!
//! Each export is a thin wrapper over a plain function in this crate so the
//! numbers can be tested natively.

use hypersphere_laplace::oracles::{Method, Oracle};
use hypersphere_laplace::saddle::{critical_point, solve_saddle};
use wasm_bindgen::prelude::*;

/// Largest dimension the convergence scan accepts.
pub const MAX_SCAN_DIMENSION: usize = 400;
const MAX_CURVE_POINTS: usize = 2000;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `(lambda, gamma, L)` triples, flattened, on a log grid.
pub fn curve(lambda_min: f64, lambda_max: f64, count: usize) -> Result<Vec<f64>, String> {
    if !(lambda_min > 0.0 && lambda_min < lambda_max && lambda_max.is_finite()) {
        return Err(format!("need 0 < min < max, got [{lambda_min}, {lambda_max}]"));
    }
    if !(2..=MAX_CURVE_POINTS).contains(&count) {
        return Err(format!("point count must be in 2..={MAX_CURVE_POINTS}"));
    }
    let (a, b) = (lambda_min.ln(), lambda_max.ln());
    let mut out = Vec::with_capacity(3 * count);
    for i in 0..count {
        let lambda = match i {
            0 => lambda_min,
            _ if i == count - 1 => lambda_max,
            _ => (a + (b - a) * i as f64 / (count - 1) as f64).exp(),
        };
        let s = solve_saddle(lambda).map_err(err)?;
        out.extend([lambda, s.gamma, s.ln_l.exp()]);
    }
    Ok(out)
}

/// One `method<TAB>ln F<TAB>error` line per method that supports `n`.
pub fn comparison(n: usize, lambda: f64, samples: usize, seed: u64) -> Result<String, String> {
    let oracles = [
        Oracle::ClosedForm,
        Oracle::Quadrature { tol: 1e-9 },
        Oracle::Contour,
        Oracle::MonteCarlo { samples, seed },
        Oracle::Asymptotic,
    ];
    let mut lines = Vec::new();
    for oracle in oracles.iter().filter(|o| o.supports(n)) {
        let line = match oracle.evaluate(n, lambda) {
            Ok(r) => format!("{}\t{:.12}\t{:.2e}", r.method, r.ln(), r.abs_error),
            Err(e) => format!("{}\tfailed\t{e}", oracle.method()),
        };
        lines.push(line);
    }
    if lines.is_empty() {
        return Err(format!("no method supports n = {n}"));
    }
    Ok(lines.join("\n"))
}

/// `[ln L, a_1, b_1, a_2, b_2, ...]` where `a_n = (ln F_n)/n` from the
/// contour integral and `b_n` is the Gaussian saddle prediction of it.
pub fn scan(lambda: f64, n_max: usize) -> Result<Vec<f64>, String> {
    if !(1..=MAX_SCAN_DIMENSION).contains(&n_max) {
        return Err(format!("n_max must be in 1..={MAX_SCAN_DIMENSION}"));
    }
    let s = solve_saddle(lambda).map_err(err)?;
    let mut out = vec![s.ln_l];
    for n in 1..=n_max {
        let ln_f = Oracle::Contour.evaluate(n, lambda).map_err(err)?.ln();
        let nf = n as f64;
        let predicted = s.ln_l - (2.0 * std::f64::consts::PI * nf * s.sigma).ln() / (2.0 * nf);
        out.extend([ln_f / nf, predicted]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn saddle_curve(lambda_min: f64, lambda_max: f64, count: usize) -> Result<Vec<f64>, JsError> {
    curve(lambda_min, lambda_max, count).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn compare_methods(n: usize, lambda: f64, samples: usize, seed: u64) -> Result<String, JsError> {
    comparison(n, lambda, samples, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn convergence_scan(lambda: f64, n_max: usize) -> Result<Vec<f64>, JsError> {
    scan(lambda, n_max).map_err(|e| JsError::new(&e))
}

/// `[gamma_cr, lambda_cr]`
#[wasm_bindgen]
pub fn critical() -> Vec<f64> {
    let cp = critical_point();
    vec![cp.gamma_cr, cp.lambda_cr]
}

/// Kebab-case names accepted by the native CLI, for labels.
#[wasm_bindgen]
pub fn method_names() -> String {
    Method::ALL.map(Method::as_str).join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_layout() {
        let c = curve(0.01, 10.0, 5).unwrap();
        assert_eq!(c.len(), 15);
        assert_eq!((c[0], c[12]), (0.01, 10.0));
        assert!(curve(1.0, 1.0, 5).is_err());
        assert!(curve(0.1, 1.0, 1).is_err());
    }

    #[test]
    fn comparison_skips_unsupported_methods() {
        let text = comparison(6, 1.0, 10_000, 1).unwrap();
        let methods: Vec<&str> = text.lines().map(|l| l.split('\t').next().unwrap()).collect();
        assert_eq!(methods, ["contour", "monte-carlo", "asymptotic"]);
    }

    #[test]
    fn scan_bounds() {
        assert!(scan(1.0, 0).is_err());
        assert!(scan(1.0, MAX_SCAN_DIMENSION + 1).is_err());
        assert!(scan(-1.0, 3).is_err());
    }
}
