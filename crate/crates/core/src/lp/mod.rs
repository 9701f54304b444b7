//! Exact rational linear programming.

mod int;
mod problem;
mod simplex;

pub use problem::{rat, rat_frac, Constraint, LpOutcome, LpProblem, Rational, Status};
pub use simplex::{dump_phase_one, lex_min_vertex, solve, Solver, VertexEnumeration};
