//! Command-line front end for `fracdiff`.
//!
//! Exit status: 0 on success, 1 on a validation or tolerance failure,
//! 2 on a usage error (bad flags, unreadable or malformed problem file).

pub mod args;
pub mod check;
pub mod output;
pub mod problem_file;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::Parser;
use fracdiff::solvers::{alpha_sweep, heat_limit, solve};
use fracdiff::specfun::{wright_detailed, WrightBranch};
use fracdiff::{compare, fd_solve, EvalPolicy, SolutionField, SolveOptions, WrightIndex};
use serde::Serialize;
use thiserror::Error;

use args::{CheckArgs, Cli, Command, CompareWith, Format, MainardiArgs, OracleArgs, SolveArgs, SweepArgs, WrightArgs};
use output::{emit, json, render_field, render_report, sig17};
use problem_file::{load_problem, LoadError, LoadedProblem};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Invariant(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

/// Parse `argv` (program name first) and run the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Wright(a) => run_wright(a),
        Command::Mainardi(a) => run_mainardi(a),
        Command::Solve(a) => run_solve(a),
        Command::Oracle(a) => run_oracle(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Check(a) => run_check(a),
    }
}

fn write(out: &args::Output, content: &str) -> Result<(), CliError> {
    emit(out.out.as_deref(), content).map_err(|e| CliError::Failure(format!("cannot write output: {e}")))
}

#[derive(Serialize)]
struct ScalarValue {
    rho: f64,
    beta: f64,
    z: f64,
    value: f64,
    abs_error_estimate: f64,
    branch: &'static str,
}

fn branch_name(b: WrightBranch) -> &'static str {
    match b {
        WrightBranch::Origin => "origin",
        WrightBranch::Series => "series",
        WrightBranch::Contour => "contour",
        WrightBranch::Asymptotic => "asymptotic",
    }
}

fn scalar(idx: WrightIndex, z: f64, rel_tol: f64, out: &args::Output) -> Result<(), CliError> {
    let policy = EvalPolicy::default().with_rel_tol(rel_tol).map_err(|e| CliError::Usage(e.to_string()))?;
    let w = wright_detailed(z, idx, &policy).map_err(failure)?;
    let text = match out.format {
        Format::Csv => format!("{}\n", sig17(w.value)),
        Format::Json => json(&ScalarValue {
            rho: idx.rho(),
            beta: idx.beta(),
            z,
            value: w.value,
            abs_error_estimate: w.abs_error_estimate,
            branch: branch_name(w.branch),
        }),
    };
    write(out, &text)
}

fn run_wright(a: WrightArgs) -> Result<(), CliError> {
    let idx = WrightIndex::new(a.rho, a.beta).map_err(failure)?;
    scalar(idx, a.z, a.rel_tol, &a.output)
}

fn run_mainardi(a: MainardiArgs) -> Result<(), CliError> {
    if !(a.nu > 0.0 && a.nu < 1.0) {
        return Err(CliError::Failure(format!("nu = {} must lie in (0, 1)", a.nu)));
    }
    if !(a.x >= 0.0) {
        return Err(CliError::Failure(format!("x = {} must be non-negative", a.x)));
    }
    let idx = WrightIndex::mainardi(a.nu).map_err(failure)?;
    scalar(idx, -a.x, a.rel_tol, &a.output)
}

fn unconverged(field: &SolutionField) -> Option<CliError> {
    (!field.unconverged.is_empty()).then(|| {
        CliError::Failure(format!(
            "{} of {} points missed the requested tolerance",
            field.unconverged.len(),
            field.grid.len()
        ))
    })
}

fn run_solve(a: SolveArgs) -> Result<(), CliError> {
    let mut loaded = load_problem(&a.problem)?;
    if let Some(alpha) = a.alpha_override {
        loaded.spec = loaded.spec.with_alpha(alpha).map_err(failure)?;
    }
    let opts = SolveOptions::default().with_rel_tol(a.rel_tol);
    let field = solve(&loaded.spec, &loaded.grid, &opts).map_err(failure)?;
    let Some(with) = a.compare else {
        write(&a.output, &render_field(&field, a.output.format))?;
        return unconverged(&field).map_or(Ok(()), Err);
    };
    let report = match with {
        CompareWith::HeatLimit => {
            let reference = heat_limit(&loaded.spec, &loaded.grid, &opts).map_err(failure)?;
            compare(&field, &reference).map_err(failure)?
        }
        CompareWith::Oracle => {
            let cfg = loaded.oracle_config().map_err(failure)?;
            let reference = fd_solve(&loaded.spec, &cfg).map_err(failure)?;
            compare(&reference, &field).map_err(failure)?
        }
    };
    write(&a.output, &render_report(&report, a.output.format))?;
    eprintln!("linf = {:e}, l2 = {:e}, rel_linf = {:e}", report.linf, report.l2, report.rel_linf);
    if let Some(limit) = a.max_linf {
        if !(report.linf <= limit) {
            return Err(CliError::Failure(format!("linf {:e} exceeds {limit:e}", report.linf)));
        }
    }
    unconverged(&field).map_or(Ok(()), Err)
}

fn run_oracle(a: OracleArgs) -> Result<(), CliError> {
    let mut loaded: LoadedProblem = load_problem(&a.problem)?;
    loaded.oracle.nx = a.nx.or(loaded.oracle.nx);
    loaded.oracle.nt = a.nt.or(loaded.oracle.nt);
    let cfg = loaded.oracle_config().map_err(failure)?;
    let field = fd_solve(&loaded.spec, &cfg).map_err(failure)?;
    write(&a.output, &render_field(&field, a.output.format))
}

fn run_sweep(a: SweepArgs) -> Result<(), CliError> {
    let loaded = load_problem(&a.problem)?;
    let opts = SolveOptions::default().with_rel_tol(a.rel_tol);
    let points = alpha_sweep(&loaded.spec, &loaded.grid, &a.alphas, &opts).map_err(failure)?;
    let text = match a.output.format {
        Format::Json => json(&points),
        Format::Csv => {
            let mut s = String::from("alpha,linf,l2,rel_linf\n");
            for p in &points {
                let r = &p.report;
                let _ = writeln!(s, "{},{},{},{}", sig17(p.alpha), sig17(r.linf), sig17(r.l2), sig17(r.rel_linf));
            }
            s
        }
    };
    write(&a.output, &text)
}

fn run_check(a: CheckArgs) -> Result<(), CliError> {
    let setup = match &a.problem {
        Some(path) => {
            let loaded = load_problem(path)?;
            check::Setup::from_problem(&loaded.spec, loaded.grid, a.rel_tol)
        }
        None => check::Setup::default_problem(a.rel_tol),
    };
    let rows = check::run_checks(a.seed, &setup);
    let text = match a.output.format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("module,property,status,detail\n");
            for r in &rows {
                let status = if r.passed { "pass" } else { "fail" };
                let _ = writeln!(s, "{},{},{status},\"{}\"", r.module, r.property, r.detail.replace('"', "'"));
            }
            s
        }
    };
    write(&a.output, &text)?;
    eprint!("{}", check::table(&rows));
    let failed = rows.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} properties failed")));
    }
    Ok(())
}
