//! Quadrature-compound probability distributions.
//!
//! A quadrature compound replaces the integral in a compound density
//! p(x) = E[p(x | z)] with a finite quadrature rule over the mixing variable,
//! giving a distribution q_N(x) = sum_n w_n p(x | z_n) that is an exact
//! probability function for every grid size N, not merely an approximation of
//! one. This crate builds the quadrature grids (quantile midpoints,
//! square-root-quantile rules, Gauss-Hermite pushforwards, product cubature on
//! the simplex), the diffeomorphic transforms that move grids between spaces,
//! concrete compound families (Poisson-log-normal counts, mixture-of-normals
//! weight laws, vector diffeomixtures), divergence and gradient diagnostics,
//! and a small benchmark binary.
//!
//! Everything scalar is generic over [`numerics::Scalar`], so densities and
//! grid constructions can be evaluated with plain `f64` or differentiated in
//! forward mode with [`numerics::DualScalar`] without a second code path.

pub mod error;
pub mod integrate;
pub mod numerics;
pub mod transforms;

pub use error::{Error, Result};
