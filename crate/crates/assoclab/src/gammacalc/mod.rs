//! Formal gamma calculus on top of the coefficient table.
//!
//! `series` extracts the log-gamma Taylor coefficients a_n from the
//! table and builds the derived beta, digamma, and sine series; `expr`
//! gives canonical products of formal gamma factors with a text
//! grammar, normalization via the functional equation, numeric
//! specialization, and series expansion.

pub mod expr;
pub mod series;

pub use expr::{parse_gamma_expr, GammaExpr};
pub use series::{
    b_prime_from_coeffs, b_prime_from_table, extract_gamma_coeffs, log_gamma_series,
    psi_series, s_numeric, s_series, ACoeffs,
};
