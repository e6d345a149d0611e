use std::fmt;
use std::path::Path;

use hypersphere_laplace::hypersphere::{
    classify_regime, ensemble_comparison, geometric_mean, laplace_dn, unit_crossing,
    HypersphereSpec, RadiusSchedule,
};
use hypersphere_laplace::oracles::{fn_contour, Method, Oracle, OracleResult};
use hypersphere_laplace::saddle::{critical_point, l_value, tabulate};

use crate::args::{
    Command, CompareArgs, EnsembleArgs, EvalArgs, GridArgs, MethodArgs, OracleArgs, PlotArgs,
    RegimeArgs, TableArgs,
};
use crate::output::{sci, Table};
use crate::plot::{self, Panel};

#[derive(Debug)]
pub enum CliError {
    /// Malformed or out-of-range flags; exit status 2.
    Usage(String),
    /// Anything that fails after the flags were accepted; exit status 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "error: {m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn compute<T>(context: impl fmt::Display, r: hypersphere_laplace::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Compute(format!("{context}: {e}")))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn positive(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be a positive finite number, got {x}")))
    }
}

fn grid(g: &GridArgs) -> CliResult<Vec<f64>> {
    if !(g.grid_min.is_finite() && g.grid_max.is_finite() && g.grid_min < g.grid_max) {
        return Err(usage(format!(
            "grid requires finite --grid-min < --grid-max, got [{}, {}]",
            g.grid_min, g.grid_max
        )));
    }
    if g.grid_count < 2 {
        return Err(usage("--grid-count must be at least 2"));
    }
    if g.grid_log && g.grid_min <= 0.0 {
        return Err(usage("a log grid needs --grid-min > 0"));
    }
    let last = (g.grid_count - 1) as f64;
    let points = (0..g.grid_count).map(|i| {
        let t = i as f64 / last;
        if g.grid_log {
            (g.grid_min.ln() + t * (g.grid_max.ln() - g.grid_min.ln())).exp()
        } else {
            g.grid_min + t * (g.grid_max - g.grid_min)
        }
    });
    let mut points: Vec<f64> = points.collect();
    // exact endpoints, free of exp/ln round-off
    points[0] = g.grid_min;
    points[g.grid_count - 1] = g.grid_max;
    Ok(points)
}

fn lambdas(single: Option<f64>, g: &GridArgs) -> CliResult<Vec<f64>> {
    match single {
        Some(l) => Ok(vec![positive("lambda", l)?]),
        None => grid(g),
    }
}

fn oracle_for(method: Method, a: &MethodArgs) -> CliResult<Oracle> {
    if !(1e-12..=1e-3).contains(&a.tol) {
        return Err(usage(format!("--tol must lie in [1e-12, 1e-3], got {}", a.tol)));
    }
    Ok(match method {
        Method::ClosedForm => Oracle::ClosedForm,
        Method::Quadrature => Oracle::Quadrature { tol: a.tol },
        Method::Contour => Oracle::Contour,
        Method::MonteCarlo => Oracle::MonteCarlo {
            samples: a.samples,
            seed: a.seed,
        },
        Method::Asymptotic => Oracle::Asymptotic,
    })
}

fn evaluate(oracle: Oracle, n: usize, lambda: f64) -> CliResult<OracleResult> {
    compute(
        format_args!("{} at n={n}, lambda={lambda}", oracle.method()),
        oracle.evaluate(n, lambda),
    )
}

/// Run a parsed command and return the bytes to emit plus the destination.
pub fn run(cmd: &Command) -> CliResult<(Vec<u8>, Option<&Path>)> {
    let (bytes, out) = match cmd {
        Command::Eval(a) => (eval(a)?, &a.out),
        Command::Table(a) => (table(a)?, &a.out),
        Command::Critical(out) => (critical(), out),
        Command::Oracle(a) => (oracle(a)?, &a.out),
        Command::Compare(a) => (compare(a)?, &a.out),
        Command::Regime(a) => (regime(a)?, &a.out),
        Command::Ensemble(a) => (ensemble(a)?, &a.out),
        Command::Plot(a) => (plot_cmd(a)?, &a.out),
    };
    Ok((bytes, out.out.as_deref()))
}

fn eval(a: &EvalArgs) -> CliResult<Vec<u8>> {
    positive("radius", a.radius)?;
    if let Some(bad) = a.f.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(usage(format!("--f entries must be positive, got {bad}")));
    }
    let spec = compute("hypersphere", HypersphereSpec::new(a.radius, a.f.clone()))?;
    let oracle = oracle_for(a.method, &a.method_args)?;
    let r = compute(
        format_args!("{} at n={}", a.method, spec.n()),
        laplace_dn(&spec, oracle),
    )?;
    let mut t = Table::new(&["n", "radius", "lambda_eff", "method", "ln_D", "err_est"]);
    t.push(vec![
        spec.n().to_string(),
        sci(spec.radius()),
        sci(spec.lambda_eff()),
        r.method.to_string(),
        sci(r.ln()),
        sci(r.abs_error),
    ]);
    Ok(t.to_csv())
}

fn table(a: &TableArgs) -> CliResult<Vec<u8>> {
    let points = grid(&a.grid)?;
    if points[0] <= 0.0 {
        return Err(usage("lambda grid must be positive"));
    }
    let rows = compute("table", tabulate(&points))?;
    let mut t = Table::new(&["lambda", "gamma", "ln_L", "sigma"]);
    for r in rows {
        t.push(vec![sci(r.lambda), sci(r.gamma), sci(r.ln_l), sci(r.sigma)]);
    }
    Ok(t.to_csv())
}

fn critical() -> Vec<u8> {
    let cp = critical_point();
    let mut t = Table::new(&["gamma_cr", "lambda_cr", "residual"]);
    t.push(vec![sci(cp.gamma_cr), sci(cp.lambda_cr), sci(cp.residual)]);
    t.to_csv()
}

fn oracle(a: &OracleArgs) -> CliResult<Vec<u8>> {
    let oracle = oracle_for(a.method, &a.method_args)?;
    if !oracle.supports(a.n) {
        return Err(usage(format!("method {} does not support n={}", a.method, a.n)));
    }
    let mut t = Table::new(&["n", "lambda", "method", "ln_F", "err_est"]);
    for lambda in lambdas(a.lambda, &a.grid)? {
        let r = evaluate(oracle, a.n, lambda)?;
        t.push(vec![
            a.n.to_string(),
            sci(lambda),
            r.method.to_string(),
            sci(r.ln()),
            sci(r.abs_error),
        ]);
    }
    Ok(t.to_csv())
}

/// Methods whose error claims are tight enough to count towards the
/// pairwise deviation.
const EXACT_ROUTES: [Method; 3] = [Method::ClosedForm, Method::Quadrature, Method::Contour];

fn compare(a: &CompareArgs) -> CliResult<Vec<u8>> {
    if a.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let oracles = Method::ALL
        .iter()
        .map(|&m| oracle_for(m, &a.method_args))
        .collect::<CliResult<Vec<_>>>()?;
    let mut t = Table::new(&[
        "n",
        "lambda",
        "closed_form",
        "quadrature",
        "contour",
        "monte_carlo",
        "asymptotic",
        "max_pairwise_dev",
    ]);
    for lambda in lambdas(a.lambda, &a.grid)? {
        let mut row = vec![a.n.to_string(), sci(lambda)];
        let mut exact = Vec::new();
        for oracle in &oracles {
            if !oracle.supports(a.n) {
                row.push(String::new());
                continue;
            }
            let v = evaluate(*oracle, a.n, lambda)?.ln();
            if EXACT_ROUTES.contains(&oracle.method()) {
                exact.push(v);
            }
            row.push(sci(v));
        }
        let dev = exact
            .iter()
            .flat_map(|x| exact.iter().map(move |y| (x - y).abs()))
            .fold(0.0, f64::max);
        row.push(if exact.len() >= 2 { sci(dev) } else { String::new() });
        t.push(row);
    }
    Ok(t.to_csv())
}

fn regime(a: &RegimeArgs) -> CliResult<Vec<u8>> {
    if !a.n.is_empty() {
        let lambda_cr = critical_point().lambda_cr;
        let mut t = Table::new(&["n", "lambda_n", "ln_F_residual", "gap_to_lambda_cr"]);
        for &n in &a.n {
            if n < 2 {
                return Err(usage("unit crossings need --n >= 2"));
            }
            let lambda_n = compute(format_args!("unit crossing at n={n}"), unit_crossing(n))?;
            let residual = compute(
                format_args!("contour at n={n}"),
                fn_contour(n, lambda_n, None),
            )?
            .ln();
            t.push(vec![
                n.to_string(),
                sci(lambda_n),
                sci(residual),
                sci(lambda_n - lambda_cr),
            ]);
        }
        return Ok(t.to_csv());
    }
    let epsilon = a
        .epsilon
        .ok_or_else(|| usage("regime classification requires --epsilon"))?;
    positive("epsilon", epsilon)?;
    let mut t = Table::new(&["lambda_eff", "ln_L", "regime", "margin"]);
    for lambda in lambdas(a.lambda, &a.grid)? {
        let report = compute("regime", classify_regime(lambda, epsilon))?;
        let ln_l = compute("regime", l_value(lambda))?.ln();
        t.push(vec![
            sci(report.lambda_eff),
            sci(ln_l),
            report.regime.as_str().to_string(),
            sci(report.margin),
        ]);
    }
    Ok(t.to_csv())
}

fn ensemble(a: &EnsembleArgs) -> CliResult<Vec<u8>> {
    positive("theta", a.theta)?;
    positive("epsilon", a.epsilon)?;
    let schedule = if a.pinned {
        RadiusSchedule::PinnedCritical
    } else {
        let c = a.radius_c.ok_or_else(|| usage("--radius-c or --pinned is required"))?;
        positive("radius-c", c)?;
        if !a.radius_alpha.is_finite() {
            return Err(usage("--radius-alpha must be finite"));
        }
        RadiusSchedule::Power {
            c,
            alpha: a.radius_alpha,
        }
    };
    if a.n.is_empty() || a.n.contains(&0) || a.n.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("--n must be a strictly increasing list of positive dimensions"));
    }
    let rho = compute("ensemble", geometric_mean(&a.f))?;
    let rows = compute(
        "ensemble",
        ensemble_comparison(&a.f, a.theta, schedule, &a.n, a.epsilon),
    )?;
    let mut t = Table::new(&[
        "n",
        "radius",
        "lambda_eff",
        "ln_D_per_n",
        "ln_L",
        "regime",
        "ln_psi_theta",
    ]);
    for r in rows {
        t.push(vec![
            r.n.to_string(),
            sci(schedule.radius(r.n, rho)),
            sci(r.lambda_eff),
            sci(r.ln_dn_per_n),
            sci(r.ln_l),
            r.regime.as_str().to_string(),
            sci(r.ln_psi_theta),
        ]);
    }
    Ok(t.to_csv())
}

/// `(lambda, gamma, ln L)` triples from a table CSV.
fn read_table(path: &Path) -> CliResult<Vec<(f64, f64, f64)>> {
    let fail = |m: String| CliError::Compute(format!("{}: {m}", path.display()));
    let mut reader = csv::Reader::from_path(path).map_err(|e| fail(e.to_string()))?;
    let headers = reader.headers().map_err(|e| fail(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| fail(format!("missing column `{name}`")))
    };
    let (il, ig, ll) = (col("lambda")?, col("gamma")?, col("ln_L")?);
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| fail(e.to_string()))?;
        let get = |i: usize| -> CliResult<f64> {
            record
                .get(i)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| fail(format!("bad number on data row {}", line + 1)))
        };
        rows.push((get(il)?, get(ig)?, get(ll)?));
    }
    if rows.len() < 2 {
        return Err(fail("need at least two data rows".into()));
    }
    Ok(rows)
}

fn plot_cmd(a: &PlotArgs) -> CliResult<Vec<u8>> {
    let rows = match &a.input {
        Some(path) => read_table(path)?,
        None => {
            let points = grid(&a.grid)?;
            compute("plot", tabulate(&points))?
                .into_iter()
                .map(|r| (r.lambda, r.gamma, r.ln_l))
                .collect()
        }
    };
    let (lo, hi) = rows
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r.0), hi.max(r.0)));
    let log_x = lo > 0.0 && hi / lo > 100.0;
    let svg = plot::render(&[
        Panel {
            title: "lambda(gamma) = exp(psi(gamma))",
            x_label: "gamma",
            y_label: "lambda",
            points: rows.iter().map(|r| (r.1, r.0)).collect(),
            log_x: false,
        },
        Panel {
            title: "L(lambda) = Gamma(gamma) / lambda^gamma",
            x_label: if log_x { "lambda (log scale)" } else { "lambda" },
            y_label: "L",
            points: rows.iter().map(|r| (r.0, r.2.exp())).collect(),
            log_x,
        },
    ]);
    Ok(svg.into_bytes())
}
