use criterion::{criterion_group, criterion_main, Criterion};
use fracdiff::field::linspace;
use fracdiff::solvers::{solve_dirichlet, solve_flux};
use fracdiff::{fd_solve, EvalGrid, FarBoundary, FunctionSpec, OracleConfig, ProblemSpec, SolveOptions};

fn grid() -> EvalGrid {
    EvalGrid::new(linspace(0.1, 3.0, 10), linspace(0.1, 1.0, 10)).unwrap()
}

fn analytic(c: &mut Criterion) {
    let opts = SolveOptions::default();
    let g = grid();
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let step = ProblemSpec::dirichlet(0.5, 1.0, 1.0, FunctionSpec::zero(), FunctionSpec::Constant { value: 1.0 }).unwrap();
    group.bench_function("dirichlet-step", |b| b.iter(|| solve_dirichlet(&step, &g, &opts).unwrap()));
    let data = ProblemSpec::dirichlet(
        0.5,
        1.0,
        1.0,
        FunctionSpec::ExpDecay { a: 1.0, b: 0.5 },
        FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] },
    )
    .unwrap();
    group.bench_function("dirichlet-general", |b| b.iter(|| solve_dirichlet(&data, &g, &opts).unwrap()));
    let flux = ProblemSpec::flux(0.5, 1.0, 1.0, FunctionSpec::zero(), FunctionSpec::Polynomial { coeffs: vec![1.0, 1.0] }).unwrap();
    group.bench_function("flux", |b| b.iter(|| solve_flux(&flux, &g, &opts).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let p = ProblemSpec::dirichlet(0.5, 1.0, 1.0, FunctionSpec::zero(), FunctionSpec::Constant { value: 1.0 }).unwrap();
    let cfg = OracleConfig::new(10.0, 200, 500, FarBoundary::DirichletFromFTail).unwrap();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("l1-200x500", |b| b.iter(|| fd_solve(&p, &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, analytic, oracle);
criterion_main!(benches);
