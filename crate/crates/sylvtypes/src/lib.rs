//! Exact and numerically verified type distributions of random polytopes
//! and cones built on d+2 generators.
//!
//! A set of d+2 points in general position in R^d spans a simplicial
//! polytope of one of `floor(d/2) + 1` combinatorial types; d+2 vectors in
//! R^{d+1} span a spherical polytope with one extra degenerate type. The
//! crate computes the probability of each type for the standard random
//! models, exactly where the answer is rational and by controlled
//! quadrature elsewhere, and cross-checks every formula against
//! independent Monte-Carlo and brute-force oracles.

pub mod comb;
pub mod mc;
pub mod models;
pub mod quad;
pub mod special;
pub mod types;
pub mod verify;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
