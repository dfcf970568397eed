//! Verification kernel for associator calculus.
//!
//! The crate builds a coefficient table of the Knizhnik-Zamolodchikov
//! associator to a chosen weight and precision, derives the formal
//! Gamma/Beta calculus from it, and mechanically verifies a family of
//! identities (Selberg integral formulas, Dixon-type theorems,
//! hypergeometric relations, and the depth-graded zeta relation for
//! compositions (2,...,2,3,2,...,2)) against independent numerics.
//!
//! Module map:
//! - [`words`]: binary words, compositions, shuffle algebra
//! - [`series`]: ball arithmetic, truncated noncommutative and
//!   multivariate commutative series over a generic scalar ring
//! - [`mzv`]: classical multiple zeta values at 50+ digits
//! - [`associator`]: the coefficient table, regularization, calibration
//! - [`gammacalc`]: formal Gamma/Beta/digamma series and canonical
//!   Gamma-expression normalization
//! - [`hyper`]: generalized hypergeometric evaluation and quadrature
//! - [`identities`]: the verification suites and machine-readable reports
//! - [`cli`]: the `assoclab` command-line front end

pub mod associator;
pub mod cli;
pub mod error;
pub mod gammacalc;
pub mod hyper;
pub mod identities;
pub mod mzv;
pub mod series;
pub mod tolerances;
pub mod words;

pub use error::Error;
