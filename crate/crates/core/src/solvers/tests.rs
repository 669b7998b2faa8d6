use super::terms::boundary_flux_term_nested;
use super::*;
use crate::field::linspace;
use crate::specfun::{erf, erfc};

fn constant(value: f64) -> FunctionSpec {
    FunctionSpec::Constant { value }
}

fn opts() -> SolveOptions {
    SolveOptions::default()
}

fn grid() -> EvalGrid {
    EvalGrid::new(linspace(0.0, 3.0, 7), linspace(0.1, 1.0, 4)).unwrap()
}

#[test]
fn dirichlet_constant_data_matches_step_response() {
    let (a, b) = (2.0, 5.0);
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, constant(a), constant(b)).unwrap();
    let field = solve_dirichlet(&p, &grid(), &opts()).unwrap();
    assert!(field.is_converged());
    let m = Medium::new(p.order, p.lambda);
    for k in 0..field.grid.len() {
        let (x, t) = field.grid.point(k);
        let exact = a + (b - a) * m.step_response(x, t).unwrap();
        assert!(((field.values[k] - exact) / exact).abs() < 1e-9, "x={x} t={t}");
        assert!(field.error_estimates[k] >= 0.0);
    }
}

#[test]
fn zero_data_gives_zero() {
    let p = ProblemSpec::dirichlet(0.3, 1.0, 1.0, constant(0.0), constant(0.0)).unwrap();
    let field = solve(&p, &grid(), &opts()).unwrap();
    assert!(field.values.iter().all(|&v| v == 0.0));
}

#[test]
fn unit_boundary_value_is_step_response() {
    let p = ProblemSpec::dirichlet(0.7, 1.3, 1.0, constant(0.0), constant(1.0)).unwrap();
    let field = solve(&p, &grid(), &opts()).unwrap();
    let m = Medium::new(p.order, p.lambda);
    for k in 0..field.grid.len() {
        let (x, t) = field.grid.point(k);
        let v = m.step_response(x, t).unwrap();
        assert!((field.values[k] - v).abs() < 1e-10 * v.max(1e-3));
        assert!((0.0..=1.0).contains(&field.values[k]));
    }
}

#[test]
fn superposition() {
    let f = FunctionSpec::ExpDecay { a: 1.5, b: 0.7 };
    let g = FunctionSpec::Polynomial { coeffs: vec![0.5, 1.0, -0.25] };
    let both = ProblemSpec::dirichlet(0.6, 1.0, 1.0, f.clone(), g.clone()).unwrap();
    let only_f = ProblemSpec::dirichlet(0.6, 1.0, 1.0, f, constant(0.0)).unwrap();
    let only_g = ProblemSpec::dirichlet(0.6, 1.0, 1.0, constant(0.0), g).unwrap();
    let (a, b, c) = (
        solve(&both, &grid(), &opts()).unwrap(),
        solve(&only_f, &grid(), &opts()).unwrap(),
        solve(&only_g, &grid(), &opts()).unwrap(),
    );
    for k in 0..a.values.len() {
        let tol = a.error_estimates[k] + b.error_estimates[k] + c.error_estimates[k] + 1e-12;
        assert!((a.values[k] - b.values[k] - c.values[k]).abs() <= tol);
    }
}

#[test]
fn initial_condition_recovered_as_t_shrinks() {
    let f = FunctionSpec::ExpDecay { a: 2.0, b: 0.5 };
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, f.clone(), constant(1.0)).unwrap();
    let x = 1.0;
    let grid = EvalGrid::new(vec![x], vec![1e-4, 1e-3, 1e-2]).unwrap();
    let field = solve(&p, &grid, &opts()).unwrap();
    let d: Vec<f64> = field.values.iter().map(|v| (v - f.eval(x)).abs()).collect();
    assert!(d[0] < d[1] && d[1] < d[2], "{d:?}");
}

#[test]
fn boundary_value_recovered_as_x_shrinks() {
    let g = FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] };
    let p = ProblemSpec::dirichlet(0.7, 1.0, 1.0, constant(0.0), g).unwrap();
    let grid = EvalGrid::new(vec![1e-3, 1e-2, 1e-1], vec![1.0]).unwrap();
    let field = solve(&p, &grid, &opts()).unwrap();
    let d: Vec<f64> = field.values.iter().map(|v| (v - 2.0).abs()).collect();
    assert!(d[0] < d[1] && d[1] < d[2], "{d:?}");
}

#[test]
fn neumann_preserves_constants() {
    let p = ProblemSpec::neumann_zero(0.4, 0.8, 1.0, constant(3.0)).unwrap();
    let field = solve_neumann_zero(&p, &grid(), &opts()).unwrap();
    for v in &field.values {
        assert!((v - 3.0).abs() < 3e-9);
    }
}

#[test]
fn neumann_has_zero_boundary_derivative() {
    let f = FunctionSpec::ExpDecay { a: 1.0, b: 1.0 };
    let p = ProblemSpec::neumann_zero(0.6, 1.0, 1.0, f).unwrap();
    let d = boundary_derivative(&p, 0.5, 1e-3, &opts()).unwrap();
    assert!(d.abs() < 5e-3, "{d}");
}

#[test]
fn flux_without_boundary_data_is_neumann() {
    let f = FunctionSpec::Tabulated {
        points: vec![0.0, 0.5, 1.0, 2.0],
        values: vec![1.0, 2.0, 0.5, 0.0],
    };
    let flux = ProblemSpec::flux(0.5, 1.0, 1.0, f.clone(), constant(0.0)).unwrap();
    let neumann = ProblemSpec::neumann_zero(0.5, 1.0, 1.0, f).unwrap();
    let a = solve_flux(&flux, &grid(), &opts()).unwrap();
    let b = solve_neumann_zero(&neumann, &grid(), &opts()).unwrap();
    assert_eq!(a.values, b.values);
}

#[test]
fn flux_boundary_derivative_matches_data() {
    for &alpha in &[0.3, 0.7] {
        let g = FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] };
        let p = ProblemSpec::flux(alpha, 1.0, 1.0, constant(0.0), g).unwrap();
        let d = boundary_derivative(&p, 1.0, 1e-3, &opts()).unwrap();
        assert!((d - 2.0).abs() < 5e-3, "alpha={alpha}: {d}");
    }
}

#[test]
fn flux_forms_agree() {
    let m = Medium::new(crate::FractionalOrder::new(0.6).unwrap(), Diffusivity::new(1.2).unwrap());
    let profile = Profile::Fractional(m);
    let g = FunctionSpec::Tabulated {
        points: vec![0.0, 0.3, 1.0],
        values: vec![0.0, 1.0, 0.5],
    };
    let o = SolveOptions::default().with_rel_tol(1e-9);
    for &(x, t) in &[(0.0, 0.5), (0.4, 1.0), (1.5, 0.8)] {
        let a = boundary_flux_term(&profile, &g, x, t, &o);
        let b = boundary_flux_term_nested(&m, &g, x, t, &o);
        assert!(a.converged && b.converged);
        assert!((a.value - b.value).abs() < 1e-7, "x={x} t={t}: {} vs {}", a.value, b.value);
    }
}

#[test]
fn heat_limits_closed_forms() {
    let lambda = Diffusivity::new(1.5).unwrap();
    let g = grid();
    let step = heat_dirichlet_limit(&constant(1.0), &constant(0.0), &g, lambda, &opts()).unwrap();
    let init = heat_dirichlet_limit(&constant(0.0), &constant(2.0), &g, lambda, &opts()).unwrap();
    let flux = heat_flux_limit(&constant(1.0), &constant(0.0), &g, lambda, &opts()).unwrap();
    let konst = heat_flux_limit(&constant(0.0), &constant(4.0), &g, lambda, &opts()).unwrap();
    for k in 0..g.len() {
        let (x, t) = g.point(k);
        let z = x / (2.0 * 1.5 * t.sqrt());
        assert!((step.values[k] - erfc(z)).abs() < 1e-10);
        assert!((init.values[k] - 2.0 * erf(z)).abs() < 1e-10);
        assert!((konst.values[k] - 4.0).abs() < 1e-9);
        // ∫₀^t … dτ for g ≡ 1 in closed form: −λ(2√(t/π) e^{−z²} − (x/λ) erfc(z))
        let exact = -1.5 * (2.0 * (t / std::f64::consts::PI).sqrt() * (-z * z).exp() - x / 1.5 * erfc(z));
        assert!((flux.values[k] - exact).abs() < 1e-10, "x={x} t={t}");
    }
}

#[test]
fn heat_boundary_conditions() {
    let lambda = Diffusivity::new(1.0).unwrap();
    let g = FunctionSpec::Polynomial { coeffs: vec![1.0, 2.0] };
    let grid = EvalGrid::new(vec![0.0, 1e-3, 2e-3], vec![0.7]).unwrap();
    let w = heat_dirichlet_limit(&g, &constant(0.0), &grid, lambda, &opts()).unwrap();
    assert!((w.values[1] - g.eval(0.7)).abs() < 5e-3);
    let w = heat_flux_limit(&g, &constant(0.0), &grid, lambda, &opts()).unwrap();
    let d = (-3.0 * w.values[0] + 4.0 * w.values[1] - w.values[2]) / 2e-3;
    assert!((d - g.eval(0.7)).abs() < 5e-3, "{d}");
}

#[test]
fn classical_order_matches_heat_solution() {
    let bump = FunctionSpec::Tabulated {
        points: vec![0.5, 0.6, 1.4, 1.5],
        values: vec![0.0, 1.0, 1.0, 0.0],
    };
    let p = ProblemSpec::neumann_zero(1.0, 1.0, 1.0, bump).unwrap();
    let a = solve(&p, &grid(), &opts()).unwrap();
    let b = heat_limit(&p, &grid(), &opts()).unwrap();
    let r = field_difference(&a, &b);
    assert!(r.linf < 1e-6, "{}", r.linf);
}

#[test]
fn sweep_of_constant_solution_is_flat() {
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, constant(2.0), constant(2.0)).unwrap();
    let sweep = alpha_sweep(&p, &grid(), &[0.5, 0.9], &opts()).unwrap();
    for s in &sweep {
        assert!(s.report.linf < 1e-8);
    }
    assert!(alpha_sweep(&p, &grid(), &[0.9, 0.5], &opts()).is_err());
    assert!(alpha_sweep(&p, &grid(), &[1.0], &opts()).is_err());
}

#[test]
fn rejects_mismatched_kind_and_horizon() {
    let p = ProblemSpec::neumann_zero(0.5, 1.0, 0.5, constant(1.0)).unwrap();
    assert!(matches!(solve_dirichlet(&p, &grid(), &opts()), Err(SolveError::WrongKind { .. })));
    assert!(matches!(solve_neumann_zero(&p, &grid(), &opts()), Err(SolveError::OutsideHorizon { .. })));
}

#[test]
fn residual_of_constant_and_corrupted_fields() {
    let grid = EvalGrid::new(linspace(1.0, 3.0, 17), (1..=16).map(|i| i as f64 / 16.0).collect()).unwrap();
    let c = SolutionField::from_fn(grid.clone(), Provenance::AnalyticFractional, |_, _| 2.0);
    let r = residual_check(&c, &[2.0; 17], 0.5, 1.0, 1e-10).unwrap();
    assert!(r.passed() && r.report.linf < 1e-12);

    let m = Medium::new(crate::FractionalOrder::new(0.5).unwrap(), Diffusivity::new(1.0).unwrap());
    let bad = SolutionField::from_fn(grid.clone(), Provenance::AnalyticFractional, |x, t| m.step_response(x, t).unwrap() + x * t);
    let init: Vec<f64> = grid.xs().iter().map(|&x| m.step_response(x, 1e-300).unwrap()).collect();
    let r = residual_check(&bad, &init, 0.5, 1.0, 0.05).unwrap();
    assert!(!r.passed());
    assert!(r.report.linf > 0.5);

    let tiny = EvalGrid::new(vec![1.0, 2.0], vec![0.5, 1.0]).unwrap();
    let f = SolutionField::from_fn(tiny, Provenance::AnalyticFractional, |_, _| 0.0);
    assert!(residual_check(&f, &[0.0; 2], 0.5, 1.0, 1.0).is_err());
}
