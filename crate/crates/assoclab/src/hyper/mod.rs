//! Generalized hypergeometric evaluation and numeric quadrature.
//!
//! `pfq` evaluates (q+1)Fq series at the unit argument with a rigorous
//! asymptotic tail (exact rational matching of the term recurrence,
//! Hurwitz-zeta summation) plus series evaluation inside the disc and
//! the Gauss connection formula; `quad` holds tanh-sinh quadrature for
//! the ordered-simplex integrals used as independent cross-checks.

pub mod pfq;
pub mod quad;

pub use pfq::{
    convergence_margin, d3f2_dz, gauss_2f1, pfq_at_1, pfq_at_1_with_cutoff, pfq_at_x,
    pfq_dz_at_1, pfq_minus_one,
};
pub use quad::{phi_integral, selberg_even_quad, selberg_odd_quad, tanh_sinh};
