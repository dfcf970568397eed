//! Arithmetic layers: exact rationals, ball floats, transcendental
//! kernels, and truncated series (noncommutative and multivariate).

pub mod float;
pub mod json;
pub mod linform;
pub mod mag;
pub mod matrix;
pub mod mseries;
pub mod nc;
pub mod scalar;
pub mod transcend;

pub use float::{AppFloat, PREC_EXACT};
pub use linform::LinForm;
pub use mag::Mag;
pub use matrix::Mat2;
pub use mseries::MSeries;
pub use nc::NCSeries;
pub use scalar::ScalarRing;
