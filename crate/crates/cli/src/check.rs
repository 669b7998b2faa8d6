//! Property suite behind the `check` command.

use std::f64::consts::PI;

use fracdiff::oracle::{discrete_mass, heat_backward_euler};
use fracdiff::quadrature::{integrate_with, QuadOptions};
use fracdiff::solvers::{solve_dirichlet, solve_flux, solve_neumann_zero};
use fracdiff::specfun::{erf, erfc, gamma, l1_weights, mainardi, mainardi_tail_bound, recip_gamma, wright};
use fracdiff::field::linspace;
use fracdiff::kernels::{boundary_kernel, green_dirichlet, green_neumann};
use fracdiff::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Exponential-decay constant: sup of `W(−x, −ν, 1) e^{b x}` over
/// `x ∈ [1, 30]`, `α ∈ [0.05, 0.95]` is 0.906.
const DECAY_K: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub module: &'static str,
    pub property: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Data for the solver properties.
pub struct Setup {
    pub problem: ProblemSpec,
    pub grid: EvalGrid,
    pub opts: SolveOptions,
}

impl Setup {
    pub fn default_problem(rel_tol: f64) -> Self {
        let problem = ProblemSpec::dirichlet(
            0.5,
            1.0,
            1.0,
            FunctionSpec::ExpDecay { a: 1.0, b: 1.0 },
            FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] },
        )
        .expect("valid problem");
        let grid = EvalGrid::new(linspace(0.25, 3.0, 6), linspace(0.2, 1.0, 5)).expect("valid grid");
        Self {
            problem,
            grid,
            opts: SolveOptions::default().with_rel_tol(rel_tol),
        }
    }

    /// The Dirichlet problem sharing `p`'s data (boundary value 1 when `p` has none).
    pub fn from_problem(p: &ProblemSpec, grid: EvalGrid, rel_tol: f64) -> Self {
        let g = p.g.clone().unwrap_or(FunctionSpec::Constant { value: 1.0 });
        let problem = ProblemSpec::dirichlet(p.alpha(), p.lambda.value(), p.horizon, p.f.clone(), g).expect("validated data");
        Self {
            problem,
            grid,
            opts: SolveOptions::default().with_rel_tol(rel_tol),
        }
    }
}

fn mainardi_positive_decreasing(rng: &mut ChaCha8Rng) -> Outcome {
    let policy = EvalPolicy::default();
    for _ in 0..100 {
        let nu = rng.gen_range(0.05..0.95) / 2.0;
        let mut xs: Vec<f64> = (0..100).map(|_| 30.0 - rng.gen_range(0.0..30.0)).collect();
        xs.sort_by(f64::total_cmp);
        let mut prev = f64::INFINITY;
        for x in xs {
            let m = mainardi(x, nu, &policy).map_err(err)?;
            if !(m > 0.0 && m < prev) {
                return Err(format!("M_{nu}({x}) = {m} after {prev}"));
            }
            prev = m;
        }
    }
    Ok("10000 samples".into())
}

fn mainardi_upper_bound(rng: &mut ChaCha8Rng) -> Outcome {
    let policy = EvalPolicy::default();
    for _ in 0..10_000 {
        let nu = rng.gen_range(0.05..0.95) / 2.0;
        let x = 30.0 - rng.gen_range(0.0..30.0);
        let m = mainardi(x, nu, &policy).map_err(err)?;
        if !(m < 1.0 / gamma(1.0 - nu)) {
            return Err(format!("M_{nu}({x}) = {m}"));
        }
    }
    Ok("10000 samples".into())
}

fn step_range(rng: &mut ChaCha8Rng) -> Outcome {
    let policy = EvalPolicy::default();
    for _ in 0..100 {
        let idx = WrightIndex::step(rng.gen_range(0.05..0.95) / 2.0).map_err(err)?;
        let mut xs: Vec<f64> = (0..100).map(|_| rng.gen_range(0.0..30.0)).collect();
        xs.sort_by(f64::total_cmp);
        let mut prev = f64::INFINITY;
        for x in xs {
            let w = wright(-x, idx, &policy).map_err(err)?;
            if !(w > 0.0 && w <= 1.0 && w < prev) {
                return Err(format!("W(-{x}) = {w} after {prev}"));
            }
            prev = w;
        }
    }
    Ok("10000 samples".into())
}

fn step_decay(rng: &mut ChaCha8Rng) -> Outcome {
    let policy = EvalPolicy::default();
    let mut worst: f64 = 0.0;
    for _ in 0..2000 {
        let nu = rng.gen_range(0.05..0.95) / 2.0;
        let x = rng.gen_range(1.0..30.0);
        let b = AsymptoticParams::for_nu(nu).map_err(err)?.b_cor4;
        let w = wright(-x, WrightIndex::step(nu).map_err(err)?, &policy).map_err(err)?;
        worst = worst.max(w * (b * x).exp());
    }
    verdict(worst <= DECAY_K, format!("max W e^(bx) = {worst:.3} (K = {DECAY_K})"))
}

fn erfc_reduction() -> Outcome {
    let policy = EvalPolicy::default();
    let idx = WrightIndex::new(-0.5, 1.0).map_err(err)?;
    let mut worst: f64 = 0.0;
    for i in 0..=800 {
        let x = i as f64 * 1e-2;
        worst = worst.max((wright(-x, idx, &policy).map_err(err)? - erfc(x / 2.0)).abs());
    }
    verdict(worst <= 1e-10, format!("max error {worst:.2e}"))
}

fn derivative_identity(rng: &mut ChaCha8Rng) -> Outcome {
    let policy = EvalPolicy::default();
    let h = 1e-4;
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let idx = WrightIndex::new(rng.gen_range(-0.9..-0.1), rng.gen_range(0.2..2.0)).map_err(err)?;
        let x = rng.gen_range(0.1..5.0);
        let numeric = (wright(-x + h, idx, &policy).map_err(err)? - wright(-x - h, idx, &policy).map_err(err)?) / (2.0 * h);
        worst = worst.max((numeric - wright(-x, idx.derivative(), &policy).map_err(err)?).abs());
    }
    verdict(worst <= 1e-6, format!("max error {worst:.2e}"))
}

fn moments() -> Outcome {
    let policy = EvalPolicy::default();
    let mut worst: f64 = 0.0;
    for alpha in [0.3, 0.5, 0.8] {
        let nu = alpha / 2.0;
        for n in 0..=4u32 {
            let bound = mainardi_tail_bound(nu, 0.0).map_err(err)?.with_polynomial_factor(n);
            let f = |x: f64| x.powi(n as i32) * mainardi(x, nu, &policy).unwrap_or(f64::NAN);
            let q = integrate_to_infinity(f, 0.0, bound, 1e-12, 1e-11).map_err(err)?;
            worst = worst.max((q.value - gamma(n as f64 + 1.0) * recip_gamma(nu * n as f64 + 1.0)).abs());
        }
    }
    verdict(worst <= 1e-8, format!("max error {worst:.2e}"))
}

fn classical_limit() -> Outcome {
    let policy = EvalPolicy::default();
    let nu = 0.999 / 2.0;
    let idx = WrightIndex::step(nu).map_err(err)?;
    let mut worst: f64 = 0.0;
    for i in 0..=80 {
        let x = i as f64 * 0.05;
        let m = mainardi(x, nu, &policy).map_err(err)?;
        worst = worst.max((m - (-x * x / 4.0).exp() / PI.sqrt()).abs());
        let w = wright(-x, idx, &policy).map_err(err)?;
        worst = worst.max((1.0 - w - erf(x / 2.0)).abs());
    }
    verdict(worst <= 5e-3, format!("max deviation at alpha 0.999: {worst:.2e}"))
}

fn smooth(rng: &mut ChaCha8Rng) -> impl Fn(f64) -> f64 {
    let (a, b, c, d) = (rng.gen_range(-3.0..3.0), rng.gen_range(0.1..8.0), rng.gen_range(-3.0..3.0), rng.gen_range(0.1..20.0));
    move |x: f64| a * (b * x).sin() + c * (-d * x * x).exp()
}

fn additivity(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let f = smooth(rng);
        let a = rng.gen_range(-3.0..0.0);
        let b = a + rng.gen_range(0.1..3.0);
        let c = b + rng.gen_range(0.1..3.0);
        let whole = integrate(&f, a, c, 1e-12, 1e-13).map_err(err)?;
        let left = integrate(&f, a, b, 1e-12, 1e-13).map_err(err)?;
        let right = integrate(&f, b, c, 1e-12, 1e-13).map_err(err)?;
        let gap = (whole.value - left.value - right.value).abs();
        if gap > whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate + 1e-14 {
            return Err(format!("gap {gap:.2e} on [{a}, {b}, {c}]"));
        }
    }
    Ok("200 random splits".into())
}

fn monotone_truncation(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..100 {
        let f = smooth(rng);
        let loose = 10f64.powi(-rng.gen_range(3..8));
        let tight = loose * 10f64.powi(-rng.gen_range(1..5));
        let r1 = integrate_with(&f, &[-2.0, 3.0], 0.0, loose, QuadOptions::default()).map_err(err)?;
        let r2 = integrate_with(&f, &[-2.0, 3.0], 0.0, tight, QuadOptions::default()).map_err(err)?;
        if r2.abs_error_estimate > r1.abs_error_estimate {
            return Err(format!("{:.2e} at {tight:.0e} > {:.2e} at {loose:.0e}", r2.abs_error_estimate, r1.abs_error_estimate));
        }
    }
    Ok("100 random integrands".into())
}

fn unit_mass(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (alpha, lambda) = (rng.gen_range(0.1..1.0), rng.gen_range(0.5..2.0));
        let (x, t) = (rng.gen_range(0.0..3.0), rng.gen_range(0.1..2.0));
        let m = Medium::new(FractionalOrder::new(alpha).map_err(err)?, Diffusivity::new(lambda).map_err(err)?);
        let s = m.scale(t);
        // in u = ξ/s the kernel is dominated by M(u − x/s) beyond x/s
        let bound = mainardi_tail_bound(m.nu(), 0.0).map_err(err)?;
        let f = |u: f64| s * green_neumann(x, s * u, t, alpha, lambda).unwrap_or(f64::NAN);
        let head = integrate(f, 0.0, x / s, 1e-12, 1e-14).map_err(err)?.value;
        let tail = integrate_to_infinity(f, x / s, bound, 1e-12, 1e-12).map_err(err)?.value;
        worst = worst.max((head + tail - 1.0).abs());
    }
    verdict(worst <= 1e-7, format!("max |mass - 1| = {worst:.2e}"))
}

fn boundary_normalization() -> Outcome {
    let x = 1e-3;
    let f = |s: f64| if s == 0.0 { 0.0 } else { boundary_kernel(x, s, 0.5, 1.0).unwrap_or(f64::NAN) };
    let v = match integrate_to_infinity(f, 0.0, TailBound::None, 1e-10, 1e-12) {
        Ok(r) => r.value,
        Err(e) => e.best().ok_or_else(|| e.to_string())?.value,
    };
    verdict((v - 1.0).abs() <= 1e-3, format!("integral at x = 1e-3 is {v:.6}"))
}

fn dirichlet_kernel_vanishes(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..1000 {
        let (xi, t, alpha) = (rng.gen_range(0.0..5.0), rng.gen_range(0.01..3.0), rng.gen_range(0.05..1.0));
        let g = green_dirichlet(0.0, xi, t, alpha, 1.0).map_err(err)?;
        if g != 0.0 {
            return Err(format!("G_D(0, {xi}, {t}) = {g}"));
        }
    }
    Ok("1000 samples".into())
}

fn kernels_classical(rng: &mut ChaCha8Rng) -> Outcome {
    let gauss = |d: f64, t: f64, l: f64| (-d * d / (4.0 * l * l * t)).exp() / (2.0 * l * (PI * t).sqrt());
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (x, xi, t, l) = (rng.gen_range(0.0..3.0), rng.gen_range(0.0..3.0), rng.gen_range(0.05..2.0), rng.gen_range(0.5..2.0));
        let d = green_dirichlet(x, xi, t, 1.0, l).map_err(err)?;
        let n = green_neumann(x, xi, t, 1.0, l).map_err(err)?;
        worst = worst.max((d - gauss(x - xi, t, l) + gauss(x + xi, t, l)).abs());
        worst = worst.max((n - gauss(x - xi, t, l) - gauss(x + xi, t, l)).abs());
    }
    verdict(worst <= 1e-10, format!("max deviation {worst:.2e}"))
}

fn superposition(s: &Setup) -> Outcome {
    let p = &s.problem;
    let zero = FunctionSpec::zero();
    let both = solve_dirichlet(p, &s.grid, &s.opts).map_err(err)?;
    let only_f = ProblemSpec::dirichlet(p.alpha(), p.lambda.value(), p.horizon, p.f.clone(), zero.clone()).map_err(err)?;
    let only_g = ProblemSpec::dirichlet(p.alpha(), p.lambda.value(), p.horizon, zero, p.boundary()).map_err(err)?;
    let a = solve_dirichlet(&only_f, &s.grid, &s.opts).map_err(err)?;
    let b = solve_dirichlet(&only_g, &s.grid, &s.opts).map_err(err)?;
    let mut worst: f64 = 0.0;
    for k in 0..s.grid.len() {
        let budget = both.error_estimates[k] + a.error_estimates[k] + b.error_estimates[k] + 1e-13;
        worst = worst.max((both.values[k] - a.values[k] - b.values[k]).abs() / budget);
    }
    verdict(worst <= 1.0, format!("max gap / combined estimate = {worst:.2e}"))
}

fn shrinking(d: &[f64]) -> bool {
    d.windows(2).all(|w| w[1] < w[0] || w[1] <= 1e-12)
}

fn initial_condition(s: &Setup) -> Outcome {
    let p = &s.problem;
    let x = s.grid.xs().iter().copied().find(|&x| x > 0.0).unwrap_or(1.0);
    let grid = EvalGrid::new(vec![x], vec![1e-4, 1e-3, 1e-2]).map_err(err)?;
    let c = solve_dirichlet(p, &grid, &s.opts).map_err(err)?;
    let d: Vec<f64> = c.values.iter().rev().map(|v| (v - p.f.eval(x)).abs()).collect();
    verdict(shrinking(&d), format!("|c - f({x})| at t = 1e-2, 1e-3, 1e-4: {:.1e}, {:.1e}, {:.1e}", d[0], d[1], d[2]))
}

fn boundary_condition(s: &Setup) -> Outcome {
    let p = &s.problem;
    let t = *s.grid.ts().last().expect("non-empty grid");
    let grid = EvalGrid::new(vec![1e-3, 1e-2, 1e-1], vec![t]).map_err(err)?;
    let c = solve_dirichlet(p, &grid, &s.opts).map_err(err)?;
    let g = p.boundary().eval(t);
    let d: Vec<f64> = c.values.iter().rev().map(|v| (v - g).abs()).collect();
    verdict(shrinking(&d), format!("|c - g({t})| at x = 1e-1, 1e-2, 1e-3: {:.1e}, {:.1e}, {:.1e}", d[0], d[1], d[2]))
}

fn maximum_principle(s: &Setup) -> Outcome {
    let p = &s.problem;
    let step = ProblemSpec::dirichlet(p.alpha(), p.lambda.value(), p.horizon, FunctionSpec::zero(), FunctionSpec::Constant { value: 1.0 })
        .map_err(err)?;
    let c = solve_dirichlet(&step, &s.grid, &s.opts).map_err(err)?;
    let ok = c.values.iter().zip(&c.error_estimates).all(|(v, e)| *v >= -e && *v <= 1.0 + e);
    let (lo, hi) = c.values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| (l.min(v), h.max(v)));
    verdict(ok, format!("values in [{lo:.3e}, {hi:.6}]"))
}

fn flux_consistency(s: &Setup) -> Outcome {
    let p = &s.problem;
    let flux = ProblemSpec::flux(p.alpha(), p.lambda.value(), p.horizon, p.f.clone(), FunctionSpec::zero()).map_err(err)?;
    let neumann = ProblemSpec::neumann_zero(p.alpha(), p.lambda.value(), p.horizon, p.f.clone()).map_err(err)?;
    let a = solve_flux(&flux, &s.grid, &s.opts).map_err(err)?;
    let b = solve_neumann_zero(&neumann, &s.grid, &s.opts).map_err(err)?;
    let same = a.values.iter().zip(&b.values).all(|(x, y)| x.to_bits() == y.to_bits());
    verdict(same, format!("{} points compared bitwise", a.values.len()))
}

fn mass_conservation(s: &Setup) -> Outcome {
    let p = &s.problem;
    let q = ProblemSpec::neumann_zero(p.alpha(), p.lambda.value(), p.horizon, p.f.clone()).map_err(err)?;
    let base = OracleConfig::default_for(&q, 200, 200).map_err(err)?;
    let cfg = OracleConfig::new(base.domain_length, 200, 200, FarBoundary::HomogeneousNeumann).map_err(err)?;
    let u = fd_solve(&q, &cfg).map_err(err)?;
    let xs = u.grid.xs();
    let m0: f64 = xs.windows(2).map(|w| 0.5 * (w[1] - w[0]) * (q.f.eval(w[0]) + q.f.eval(w[1]))).sum();
    let scale = if m0 == 0.0 { 1.0 } else { m0.abs() };
    let drift = discrete_mass(&u).iter().fold(0.0f64, |d, m| d.max((m - m0).abs() / scale));
    verdict(drift <= 1e-10, format!("relative drift {drift:.2e}"))
}

fn l1_weights_monotone(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let alpha = rng.gen_range(0.01..1.0);
        let b = l1_weights(alpha, 1000).map_err(err)?;
        if b[0] != 1.0 || !b.iter().all(|&w| w > 0.0) || !b.windows(2).all(|w| w[1] < w[0]) {
            return Err(format!("weights at alpha = {alpha} are not positive and decreasing"));
        }
    }
    Ok("20 orders, 1000 weights each".into())
}

fn backward_euler_limit(s: &Setup) -> Outcome {
    let p = s.problem.with_alpha(1.0 - 1e-12).map_err(err)?;
    let cfg = OracleConfig::default_for(&p, 50, 50).map_err(err)?;
    let a = fd_solve(&p, &cfg).map_err(err)?;
    let b = heat_backward_euler(&p, &cfg).map_err(err)?;
    let worst = a.values.iter().zip(&b.values).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    verdict(worst <= 1e-8, format!("max difference {worst:.2e}"))
}

/// Every property, in module order. The seed fixes all random samples.
pub fn run_checks(seed: u64, setup: &Setup) -> Vec<CheckRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = vec![];
    let mut push = |module, property, outcome: Outcome| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        rows.push(CheckRow {
            module,
            property,
            passed,
            detail,
        });
    };
    push("specfun", "mainardi positive and strictly decreasing", mainardi_positive_decreasing(&mut rng));
    push("specfun", "mainardi below 1/gamma(1-nu)", mainardi_upper_bound(&mut rng));
    push("specfun", "step response in (0, 1] and decreasing", step_range(&mut rng));
    push("specfun", "step response exponential decay", step_decay(&mut rng));
    push("specfun", "erfc reduction", erfc_reduction());
    push("specfun", "derivative identity", derivative_identity(&mut rng));
    push("specfun", "moments", moments());
    push("specfun", "classical limit", classical_limit());
    push("quadrature", "additivity", additivity(&mut rng));
    push("quadrature", "monotone truncation", monotone_truncation(&mut rng));
    push("kernels", "unit mass", unit_mass(&mut rng));
    push("kernels", "boundary kernel normalization", boundary_normalization());
    push("kernels", "dirichlet kernel vanishes at x = 0", dirichlet_kernel_vanishes(&mut rng));
    push("kernels", "classical kernels", kernels_classical(&mut rng));
    push("solvers", "superposition", superposition(setup));
    push("solvers", "initial condition", initial_condition(setup));
    push("solvers", "boundary condition", boundary_condition(setup));
    push("solvers", "maximum principle", maximum_principle(setup));
    push("solvers", "flux consistency", flux_consistency(setup));
    push("oracle", "discrete mass conservation", mass_conservation(setup));
    push("oracle", "l1 weights positive and decreasing", l1_weights_monotone(&mut rng));
    push("oracle", "backward-euler degeneracy", backward_euler_limit(setup));
    rows
}

pub fn table(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.module.len() + r.property.len() + 1).max().unwrap_or(0);
    let mut s = String::new();
    for r in rows {
        let name = format!("{}/{}", r.module, r.property);
        s.push_str(&format!("{}  {name:<width$}  {}\n", if r.passed { "PASS" } else { "FAIL" }, r.detail));
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    s.push_str(&format!("{} passed, {failed} failed\n", rows.len() - failed));
    s
}
