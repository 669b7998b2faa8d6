use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn fracdiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracdiff")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_problem(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

const STEP: &str = r#"{
    "kind": "dirichlet",
    "alpha": 0.5,
    "lambda": 1.0,
    "T": 1.0,
    "f": {"family": "constant", "value": 0.0},
    "g": {"family": "constant", "value": 1.0},
    "grid": {"x": {"start": 0.1, "stop": 3.0, "count": 12}, "t": [0.25, 0.5, 0.75, 1.0]}
}"#;

fn step_file(dir: &TempDir) -> PathBuf {
    write_problem(dir, "step.json", STEP)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn parse_scalar(o: &Output) -> f64 {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    stdout(o).trim().parse().unwrap()
}

#[test]
fn mainardi_gaussian_value() {
    let o = fracdiff(&["mainardi", "--nu", "0.5", "--x", "2"]);
    let text = stdout(&o);
    let v = parse_scalar(&o);
    assert!(((v - 0.20755374871029736) / v).abs() < 1e-14, "{text}");
    assert_eq!(text.trim().trim_start_matches("0.").len(), 17, "{text}");
}

#[test]
fn wright_erfc_value() {
    let v = parse_scalar(&fracdiff(&["wright", "--rho", "-0.5", "--beta", "1", "--z", "-2"]));
    assert!(((v - 0.15729920705028513) / v).abs() < 1e-14, "{v}");
}

#[test]
fn scalar_json_reports_branch() {
    let o = fracdiff(&["wright", "--rho", "-0.3", "--beta", "0.7", "--z", "-40", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["branch"], "contour");
    assert!(v["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fracdiff(&["mainardi", "--nu", "0.5"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["mainardi", "--nu", "0.5", "--x", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["mainardi", "--nu", "0.5", "--x", "1", "--rel-tol", "-1"]).status.code(), Some(2));
    assert_eq!(fracdiff(&["solve", "--problem", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn invalid_parameters_exit_one() {
    let o = fracdiff(&["mainardi", "--nu", "1.2", "--x", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nu"));
}

#[test]
fn malformed_problem_names_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = write_problem(&dir, "bad.json", &STEP.replace(r#""value": 1.0"#, r#""value": [1.0]"#));
    let o = fracdiff(&["solve", "--problem", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`g`"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn invariant_violations_name_the_field() {
    let dir = TempDir::new().unwrap();
    let alpha = write_problem(&dir, "alpha.json", &STEP.replace("0.5,", "1.5,"));
    let o = fracdiff(&["solve", "--problem", p(&alpha)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha"), "{}", stderr(&o));

    let tab = r#"{"family": "tabulated", "points": [0.0, 1.0, 1.0], "values": [0.0, 1.0, 2.0]}"#;
    let f = write_problem(&dir, "f.json", &STEP.replace(r#"{"family": "constant", "value": 0.0}"#, tab));
    let o = fracdiff(&["solve", "--problem", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("f.points"), "{}", stderr(&o));
}

#[test]
fn solve_emits_csv_field() {
    let dir = TempDir::new().unwrap();
    let step = step_file(&dir);
    let o = fracdiff(&["solve", "--problem", p(&step)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,t,value,error_estimate,provenance"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 48);
    for r in &rows {
        let v: f64 = r[2].parse().unwrap();
        assert!((0.0..=1.0).contains(&v));
        assert_eq!(r[4], "analytic-fractional");
    }
}

#[test]
fn solve_is_deterministic_and_writes_to_file() {
    let dir = TempDir::new().unwrap();
    let step = step_file(&dir);
    let out1 = dir.path().join("a.json");
    let out2 = dir.path().join("b.json");
    for out in [&out1, &out2] {
        let o = fracdiff(&["solve", "--problem", p(&step), "--format", "json", "--out", p(out)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).is_empty());
    }
    let a = std::fs::read(&out1).unwrap();
    assert_eq!(a, std::fs::read(&out2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 48);
    assert_eq!(v["provenance"], "analytic-fractional");
}

#[test]
fn near_classical_order_matches_heat_limit() {
    let dir = TempDir::new().unwrap();
    let step = step_file(&dir);
    let args = ["solve", "--problem", p(&step), "--alpha-override", "0.999", "--compare", "heat-limit", "--format", "json"];
    let o = fracdiff(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["linf"].as_f64().unwrap() <= 1e-2);

    let mut strict = args.to_vec();
    strict.extend(["--max-linf", "1e-2"]);
    assert_eq!(fracdiff(&strict).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.extend(["--max-linf", "1e-6"]);
    assert_eq!(fracdiff(&strict).status.code(), Some(1));
}

#[test]
fn compare_with_oracle() {
    let dir = TempDir::new().unwrap();
    let doc = STEP.replace(
        r#""grid""#,
        r#""oracle": {"domain_length": 10.0, "nx": 200, "nt": 400}, "grid""#,
    );
    let step = write_problem(&dir, "step.json", &doc);
    let o = fracdiff(&["solve", "--problem", p(&step), "--compare", "oracle", "--format", "json", "--max-linf", "2e-2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["rel_linf"].as_f64().unwrap() <= 2e-2);
}

#[test]
fn oracle_emits_every_node() {
    let dir = TempDir::new().unwrap();
    let step = step_file(&dir);
    let o = fracdiff(&["oracle", "--problem", p(&step), "--nx", "20", "--nt", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 21 * 10);
    assert!(text.lines().nth(1).unwrap().ends_with("oracle-fd"));
}

#[test]
fn sweep_distances_shrink() {
    let dir = TempDir::new().unwrap();
    let step = step_file(&dir);
    let o = fracdiff(&["sweep", "--problem", p(&step), "--alphas", "0.9,0.99,0.999"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let linf: Vec<f64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(linf.len(), 3);
    assert!(linf[0] > linf[1] && linf[1] > linf[2] && linf[2] <= 1e-2, "{linf:?}");

    let o = fracdiff(&["sweep", "--problem", p(&step), "--alphas", "0.99,0.9"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn check_passes_and_is_reproducible() {
    let a = fracdiff(&["check", "--seed", "11", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&a)).unwrap();
    assert!(rows.len() >= 20);
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert!(stderr(&a).contains("0 failed"));
    let b = fracdiff(&["check", "--seed", "11", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_uses_problem_data() {
    let dir = TempDir::new().unwrap();
    let doc = STEP.replace(
        r#"{"family": "constant", "value": 0.0}"#,
        r#"{"family": "tabulated", "points": [0.0, 1.0, 2.0], "values": [1.0, 0.5, 0.0]}"#,
    );
    let problem = write_problem(&dir, "tab.json", &doc);
    let o = fracdiff(&["check", "--problem", p(&problem), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("module,property,status,detail\n"));
}
