//! Deciding triviality of a multiplier on a finite orbit structure.
//!
//! A multiplier given by edge weights `σ(e)` is trivial when there is a
//! positive node function `f` with `σ(e) = f(to)/f(from)` on every edge,
//! `f(u) = f(v)` on every identified pair, and `f` continuous along every
//! declared limit. The solver works with `log f`.

pub mod example81;
pub mod fixtures;
pub mod graph;
pub mod solver;

pub use example81::{build_example_8_1, Example81, RSequence};
pub use fixtures::{coset_fixture, coset_fixtures, CosetFixture};
pub use graph::{Edge, Limit, OrbitGraph};
pub use solver::{
    boundedness_scan, constraint_ratio, coset_equivalent, solve_coboundary, verify_witness, Certificate, Constraint,
    SolveOptions, TrivialityVerdict,
};

#[cfg(test)]
mod tests;
