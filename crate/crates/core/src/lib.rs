//! Weighted Chebyshev polynomials on `[-1, 1]` under Jacobi weights
//! `(1-x)^ρα (1+x)^ρβ`: a Remez solver, Widom-factor sequences, Bernstein-type
//! bounds and the correspondence with extremal problems on the unit circle.

pub mod bounds;
pub mod circle;
pub mod cli;
pub mod error;
mod maxsearch;
pub mod minimax;
pub mod oracle;
pub mod poly;
pub mod special;
pub mod widom;

pub use error::{Error, Result};
pub use minimax::{solve, ChebyshevSolution, MonicPolynomial, SolveOptions};
pub use special::{JacobiParams, WeightParams};
pub use widom::{Classification, WidomSequence};
