use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlaplace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Header plus parsed rows.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(text: &str, name: &str) -> Vec<f64> {
    let (header, rows) = csv(text);
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn critical_reports_gamma_near_1_38() {
    let text = stdout(&["critical"]);
    assert!(text.starts_with("gamma_cr,lambda_cr,residual\n"));
    let g = column(&text, "gamma_cr")[0];
    assert!((1.37..=1.39).contains(&g), "{g}");
    assert!(column(&text, "residual")[0].abs() < 1e-12);
}

#[test]
fn oracle_n1_contour_is_minus_lambda() {
    let text = stdout(&["oracle", "--n", "1", "--lambda", "2", "--method", "contour"]);
    assert!(text.starts_with("n,lambda,method,ln_F,err_est\n"));
    assert!((column(&text, "ln_F")[0] + 2.0).abs() < 1e-9);
}

#[test]
fn compare_n2_exact_routes_agree() {
    let text = stdout(&["compare", "--n", "2", "--lambda", "1"]);
    let dev = column(&text, "max_pairwise_dev")[0];
    assert!(dev < 1e-6, "{dev}");
    // every method is available at n = 2
    let (_, rows) = csv(&text);
    assert!(rows[0].iter().all(|c| !c.is_empty()));
}

#[test]
fn default_table_is_monotone_with_17_digits() {
    let text = stdout(&["table"]);
    assert!(text.starts_with("lambda,gamma,ln_L,sigma\n"));
    let lambda = column(&text, "lambda");
    assert_eq!(lambda.len(), 200);
    assert_eq!((lambda[0], lambda[199]), (1e-3, 10.0));
    let gamma = column(&text, "gamma");
    let ln_l = column(&text, "ln_L");
    assert!(gamma.windows(2).all(|w| w[1] > w[0]));
    assert!(ln_l.windows(2).all(|w| w[1] < w[0]));
    assert!(column(&text, "sigma").iter().all(|&s| s > 0.0));
    let (_, rows) = csv(&text);
    for cell in rows.iter().flatten() {
        let mantissa = cell.split('e').next().unwrap();
        assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{cell}");
    }
}

#[test]
fn outputs_are_byte_stable() {
    let cases: [&[&str]; 3] = [
        &["table", "--grid-count", "50"],
        &["oracle", "--n", "3", "--lambda", "0.7", "--method", "monte-carlo", "--seed", "11"],
        &["compare", "--n", "2", "--grid-count", "4", "--seed", "5", "--samples", "20000"],
    ];
    for args in cases {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn linear_grid_flag() {
    let text = stdout(&[
        "table", "--grid-min", "1", "--grid-max", "2", "--grid-count", "3", "--grid-log", "false",
    ]);
    assert_eq!(column(&text, "lambda"), vec![1.0, 1.5, 2.0]);
}

#[test]
fn regime_flips_across_lambda_cr() {
    let below = stdout(&["regime", "--lambda", "0.8", "--epsilon", "0.01"]);
    let above = stdout(&["regime", "--lambda", "1.1", "--epsilon", "0.01"]);
    assert!(below.lines().nth(1).unwrap().contains(",diverges,"));
    assert!(above.lines().nth(1).unwrap().contains(",vanishes,"));
}

#[test]
fn regime_unit_crossings_close_in() {
    let text = stdout(&["regime", "--n", "5,10,20"]);
    let gaps: Vec<f64> = column(&text, "gap_to_lambda_cr").iter().map(|g| g.abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(column(&text, "ln_F_residual").iter().all(|r| r.abs() < 1e-9));
}

#[test]
fn ensemble_schedules() {
    let pinned = stdout(&["ensemble", "--pinned", "--f", "1,1,1", "--epsilon", "0.05"]);
    assert!(pinned.lines().skip(1).all(|l| l.contains(",critical-band,")));
    let growing = stdout(&[
        "ensemble", "--radius-c", "1", "--radius-alpha", "0.5", "--epsilon", "0.05",
    ]);
    assert!(growing.lines().skip(1).all(|l| l.contains(",vanishes,")));
    let psi = column(&stdout(&["ensemble", "--f", "2,8", "--radius-c", "1", "--epsilon", "0.1"]), "ln_psi_theta");
    assert!((psi[0] + 4f64.ln()).abs() < 1e-15);
}

#[test]
fn eval_matches_scaled_oracle() {
    // f = (2, 8) has geometric mean 4, so D_2 at r = 0.25 is F_2(1)
    let d = column(&stdout(&["eval", "--f", "2,8", "--radius", "0.25"]), "ln_D")[0];
    let f = column(&stdout(&["oracle", "--n", "2", "--lambda", "1", "--method", "closed-form"]), "ln_F")[0];
    assert!((d - f).abs() < 1e-12);
}

#[test]
fn plot_from_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("table.csv");
    let svg = dir.path().join("fig.svg");
    stdout(&["table", "--grid-count", "40", "--out", table.to_str().unwrap()]);
    stdout(&["plot", "--input", table.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    let text = std::fs::read_to_string(svg).unwrap();
    assert!(text.contains(r#"version="1.1""#));
    assert_eq!(text.matches("<polyline").count(), 2);
    assert!(!text.contains("NaN"));
}

fn assert_one_line_failure(args: &[&str], code: i32) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_one_line_failure(&["oracle", "--bogus"], 2);
    assert_one_line_failure(&["oracle", "--n", "2", "--lambda", "-1"], 2);
    assert_one_line_failure(&["oracle", "--n", "2", "--method", "simpson"], 2);
    assert_one_line_failure(&["table", "--grid-min", "5", "--grid-max", "1"], 2);
    assert_one_line_failure(&["regime", "--lambda", "1"], 2);
    assert_one_line_failure(&["oracle", "--n", "7", "--lambda", "1", "--method", "quadrature"], 2);
    assert_one_line_failure(&[], 2);
}

#[test]
fn computation_errors_exit_1() {
    assert_one_line_failure(
        &["oracle", "--n", "3", "--lambda", "1", "--method", "monte-carlo", "--samples", "10"],
        1,
    );
    assert_one_line_failure(&["plot", "--input", "/nonexistent/table.csv"], 1);
}
