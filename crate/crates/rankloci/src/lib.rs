//! Exact-arithmetic invariants of matrix rank loci and recursive group orbits:
//! local Euler obstructions, sectional Euler characteristics, IC stalk Euler
//! characteristics and Fano-scheme counts, each computed along at least two
//! independent routes (closed binomial tables vs. Schubert calculus vs. the
//! recursive orbit engine) so the routes can be diffed against each other.

pub mod combinatorics;
pub mod engine;
pub mod families;
pub mod fano;
pub mod output;
pub mod projcalc;
pub mod schubert;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("G({k},{n}) has dimension {dim}, over the configured budget {budget}")]
    BudgetExceeded {
        k: usize,
        n: usize,
        dim: usize,
        budget: usize,
    },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
