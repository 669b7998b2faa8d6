//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use fracdiff::field::linspace;
use fracdiff::oracle::discrete_mass;
use fracdiff::solvers::{alpha_sweep, boundary_derivative, residual_check, solve_dirichlet, solve_neumann_zero};
use fracdiff::specfun::{erfc, gamma, mainardi, mainardi_asymptotic, mainardi_tail_bound, recip_gamma, wright, wright_detailed, WrightBranch};
use fracdiff::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn constant(value: f64) -> FunctionSpec {
    FunctionSpec::Constant { value }
}

fn erfc_reduction() -> Outcome {
    let policy = EvalPolicy::default();
    let idx = WrightIndex::new(-0.5, 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for i in 0..=800 {
        let x = i as f64 * 1e-2;
        let w = wright(-x, idx, &policy).map_err(|e| e.to_string())?;
        worst = worst.max((w - erfc(x / 2.0)).abs());
    }
    check(worst <= 1e-10, format!("max |W(-x,-1/2,1) - erfc(x/2)| = {worst:.2e} (limit 1e-10)"))
}

fn mainardi_gaussian() -> Outcome {
    let policy = EvalPolicy::default();
    let idx = WrightIndex::mainardi(0.5).unwrap();
    let (mut worst, mut worst_asym): (f64, f64) = (0.0, 0.0);
    let (mut series, mut other) = (0, 0);
    for i in 0..=3000 {
        let x = i as f64 * 1e-2;
        let exact = (-x * x / 4.0).exp() / std::f64::consts::PI.sqrt();
        let w = wright_detailed(-x, idx, &policy).map_err(|e| e.to_string())?;
        match w.branch {
            WrightBranch::Series | WrightBranch::Origin => series += 1,
            _ => other += 1,
        }
        worst = worst.max(((w.value - exact) / exact).abs());
        let a = mainardi_asymptotic(x.max(1e-3), 0.5).unwrap();
        let e = (-x.max(1e-3).powi(2) / 4.0).exp() / std::f64::consts::PI.sqrt();
        worst_asym = worst_asym.max(((a - e) / e).abs());
    }
    check(
        worst <= 1e-9 && worst_asym <= 1e-9 && series > 0 && other > 0,
        format!(
            "max rel err on [0, 30] = {worst:.2e} (limit 1e-9; {series} series / {other} large-argument points; asymptotic form {worst_asym:.1e})"
        ),
    )
}

fn moments() -> Outcome {
    let policy = EvalPolicy::default();
    let mut worst: f64 = 0.0;
    for &alpha in &[0.3, 0.5, 0.8] {
        let nu = alpha / 2.0;
        for n in 0..=4u32 {
            let bound = mainardi_tail_bound(nu, 0.0).unwrap().with_polynomial_factor(n);
            let f = |x: f64| x.powi(n as i32) * mainardi(x, nu, &policy).unwrap_or(f64::NAN);
            let q = integrate_to_infinity(f, 0.0, bound, 1e-12, 1e-11).map_err(|e| e.to_string())?;
            let exact = gamma(n as f64 + 1.0) * recip_gamma(nu * n as f64 + 1.0);
            worst = worst.max((q.value - exact).abs());
        }
    }
    check(worst <= 1e-8, format!("max |moment - Γ(n+1)/Γ(νn+1)| = {worst:.2e} over 15 cases (limit 1e-8)"))
}

fn bound_suite() -> Outcome {
    let policy = EvalPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut checked = 0;
    for _ in 0..100 {
        let alpha = rng.gen_range(0.05..0.95);
        let nu = alpha / 2.0;
        let cap = recip_gamma(1.0 - nu).recip();
        let mut xs: Vec<f64> = (0..100).map(|_| 30.0 - rng.gen_range(0.0..30.0)).collect();
        xs.sort_by(f64::total_cmp);
        let step = WrightIndex::step(nu).unwrap();
        let (mut prev_w, mut prev_m) = (f64::INFINITY, f64::INFINITY);
        for &x in &xs {
            let w = wright(-x, step, &policy).map_err(|e| e.to_string())?;
            let m = mainardi(x, nu, &policy).map_err(|e| e.to_string())?;
            if !(w > 0.0 && w <= 1.0) {
                return Err(format!("W(-{x}, -{nu}, 1) = {w} outside (0, 1]"));
            }
            if !(m > 0.0 && m < cap) {
                return Err(format!("M_{nu}({x}) = {m} outside (0, 1/Γ(1-ν) = {cap})"));
            }
            if !(w < prev_w && m < prev_m) {
                return Err(format!("not strictly decreasing at x = {x}, alpha = {alpha}"));
            }
            prev_w = w;
            prev_m = m;
            checked += 1;
        }
    }
    check(checked == 10_000, format!("{checked} random (x, alpha) samples satisfy range, cap and monotonicity"))
}

fn closed_form_solution() -> Outcome {
    let (a, b) = (2.0, 5.0);
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, constant(a), constant(b)).unwrap();
    let grid = EvalGrid::new(linspace(0.0, 5.0, 20), linspace(0.05, 1.0, 20)).unwrap();
    let field = solve_dirichlet(&p, &grid, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let m = Medium::new(p.order, p.lambda);
    let mut worst: f64 = 0.0;
    for k in 0..grid.len() {
        let (x, t) = grid.point(k);
        let exact = a + (b - a) * m.step_response(x, t).unwrap();
        worst = worst.max(((field.values[k] - exact) / exact).abs());
    }
    check(worst <= 1e-7, format!("rel L∞ vs A + (B-A) W on 20x20 grid = {worst:.2e} (limit 1e-7)"))
}

fn boundary_recovery() -> Outcome {
    let opts = SolveOptions::default();
    let g = FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] };
    let mut notes = vec![];
    let mut ok = true;
    for &alpha in &[0.3, 0.7] {
        let p = ProblemSpec::dirichlet(alpha, 1.0, 1.0, constant(0.0), g.clone()).unwrap();
        let grid = EvalGrid::new(vec![1e-3, 1e-2, 1e-1], vec![1.0]).unwrap();
        let c = solve_dirichlet(&p, &grid, &opts).map_err(|e| e.to_string())?;
        let d: Vec<f64> = c.values.iter().map(|v| (v - 2.0).abs()).collect();
        ok &= d[0] < d[1] && d[1] < d[2] && d[0] <= 5e-3;

        let q = ProblemSpec::flux(alpha, 1.0, 1.0, constant(0.0), g.clone()).unwrap();
        let flux = boundary_derivative(&q, 1.0, 1e-3, &opts).map_err(|e| e.to_string())?;
        let fd = (flux - 2.0).abs();
        ok &= fd <= 5e-3;
        notes.push(format!(
            "alpha={alpha}: |c-g| = {:.1e} > {:.1e} > {:.1e}, |c_x(0+)-g| = {fd:.1e}",
            d[2], d[1], d[0]
        ));
    }
    check(ok, format!("{} (limit 5e-3)", notes.join("; ")))
}

fn classical_limit() -> Outcome {
    let grid = EvalGrid::new(linspace(0.1, 3.0, 30), linspace(0.1, 1.0, 10)).unwrap();
    let opts = SolveOptions::default();
    let alphas = [0.9, 0.99, 0.999];
    let mut ok = true;
    let mut notes = vec![];
    for p in [
        ProblemSpec::dirichlet(0.5, 1.0, 1.0, constant(0.0), constant(1.0)).unwrap(),
        ProblemSpec::flux(0.5, 1.0, 1.0, constant(0.0), constant(1.0)).unwrap(),
    ] {
        let sweep = alpha_sweep(&p, &grid, &alphas, &opts).map_err(|e| e.to_string())?;
        let d: Vec<f64> = sweep.iter().map(|s| s.report.linf).collect();
        ok &= d[0] > d[1] && d[1] > d[2] && d[2] <= 1e-2;
        notes.push(format!("{}: {:.2e} > {:.2e} > {:.2e}", p.kind.as_str(), d[0], d[1], d[2]));
    }
    check(ok, format!("sup distance at alpha = 0.9, 0.99, 0.999: {} (limit 1e-2)", notes.join("; ")))
}

fn oracle_cross_validation() -> Outcome {
    let started = Instant::now();
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, constant(0.0), constant(1.0)).unwrap();
    let m = Medium::new(p.order, p.lambda);
    let xs: Vec<f64> = linspace(0.0, 10.0, 101);
    let ts: Vec<f64> = (10..=100).map(|i| i as f64 / 100.0).collect();
    let grid = EvalGrid::new(xs, ts).unwrap();
    let exact = SolutionField::from_fn(grid, Provenance::AnalyticFractional, |x, t| m.step_response(x, t).unwrap());
    let err = |nt: usize| -> Result<f64, String> {
        let cfg = OracleConfig::new(10.0, 400, nt, FarBoundary::DirichletFromFTail).map_err(|e| e.to_string())?;
        let u = fd_solve(&p, &cfg).map_err(|e| e.to_string())?;
        Ok(compare(&u, &exact).map_err(|e| e.to_string())?.rel_linf)
    };
    let (e1, e2) = (err(2000)?, err(4000)?);
    let ratio = e1 / e2;
    let secs = started.elapsed().as_secs_f64();
    check(
        e1 <= 2e-2 && (1.5..=3.2).contains(&ratio) && secs <= 120.0,
        format!("rel L∞ = {e1:.2e} (limit 2e-2), dt-halving ratio = {ratio:.2} (window [1.5, 3.2]), {secs:.1} s"),
    )
}

fn pde_residual() -> Outcome {
    let m = Medium::new(FractionalOrder::new(0.5).unwrap(), Diffusivity::new(1.0).unwrap());
    let run = |n: usize, corrupt: bool| {
        let xs = linspace(1.0, 3.0, n);
        let ts: Vec<f64> = (1..=n).map(|i| i as f64 / n as f64).collect();
        let grid = EvalGrid::new(xs.clone(), ts).unwrap();
        let field = SolutionField::from_fn(grid, Provenance::AnalyticFractional, |x, t| {
            m.step_response(x, t).unwrap() + if corrupt { x * t } else { 0.0 }
        });
        residual_check(&field, &vec![0.0; n], 0.5, 1.0, 0.05).map_err(|e| e.to_string())
    };
    let coarse = run(64, false)?;
    let fine = run(128, false)?;
    let bad = run(64, true)?;
    let drop = coarse.report.linf / fine.report.linf;
    check(
        coarse.report.linf.is_finite() && drop >= 2.0 && coarse.passed() && !bad.passed(),
        format!(
            "residual L∞ {:.2e} -> {:.2e} (drop {drop:.2}, need >= 2); corrupted field L∞ {:.2e}, {} points flagged",
            coarse.report.linf,
            fine.report.linf,
            bad.report.linf,
            bad.flagged.len()
        ),
    )
}

fn neumann_mass() -> Outcome {
    let p = ProblemSpec::neumann_zero(0.5, 1.0, 1.0, constant(3.0)).unwrap();
    let grid = EvalGrid::new(linspace(0.0, 5.0, 20), linspace(0.05, 1.0, 20)).unwrap();
    let field = solve_neumann_zero(&p, &grid, &SolveOptions::default()).map_err(|e| e.to_string())?;
    let worst = field.values.iter().fold(0.0f64, |m, v| m.max((v - 3.0).abs()));

    let f = FunctionSpec::Tabulated {
        points: vec![0.0, 1.0, 2.0, 4.0],
        values: vec![2.0, 3.0, 0.5, 0.0],
    };
    let q = ProblemSpec::neumann_zero(0.5, 1.0, 1.0, f).unwrap();
    let cfg = OracleConfig::new(10.0, 400, 500, FarBoundary::HomogeneousNeumann).unwrap();
    let u = fd_solve(&q, &cfg).map_err(|e| e.to_string())?;
    let mass = discrete_mass(&u);
    let m0: f64 = {
        let xs = u.grid.xs();
        xs.windows(2).map(|w| 0.5 * (w[1] - w[0]) * (q.f.eval(w[0]) + q.f.eval(w[1]))).sum()
    };
    let drift = mass.iter().fold(0.0f64, |d, m| d.max(((m - m0) / m0).abs()));
    check(
        worst <= 1e-7 && drift <= 1e-10,
        format!("max |c - 3| = {worst:.2e} (limit 1e-7); relative mass drift = {drift:.2e} (limit 1e-10)"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("special-function reduction to erfc", erfc_reduction),
        ("Mainardi closed form at nu = 1/2", mainardi_gaussian),
        ("moment identities", moments),
        ("bound suite", bound_suite),
        ("closed-form Dirichlet solution", closed_form_solution),
        ("boundary recovery", boundary_recovery),
        ("classical limit alpha -> 1", classical_limit),
        ("finite-difference cross-validation", oracle_cross_validation),
        ("PDE residual", pde_residual),
        ("zero-flux constancy and mass", neumann_mass),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1} s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
