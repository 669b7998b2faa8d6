//! Wright and Mainardi functions on the negative real axis and closed-form
//! solutions of the time-fractional diffusion equation
//! `D_t^α c = λ² c_xx` on the quarter plane `x > 0, t > 0`.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod field;
pub mod kernels;
pub mod oracle;
pub mod quadrature;
pub mod solvers;
pub mod specfun;

pub use field::{ErrorReport, EvalGrid, GridError, Provenance, SolutionField};
pub use kernels::{Diffusivity, Medium, SimilarityPoint};
pub use quadrature::{integrate, integrate_to_infinity, QuadError, QuadResult, TailBound};
pub use solvers::{FunctionSpec, ProblemError, ProblemKind, ProblemSpec, SolveError, SolveOptions};
pub use specfun::{AsymptoticParams, Crossover, EvalPolicy, FractionalOrder, SpecFunError, WrightIndex};
pub use oracle::{compare, fd_solve, FarBoundary, OracleConfig, OracleError};
