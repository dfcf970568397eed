//! Centralized verification tolerances.
//!
//! Every threshold used by the identity suites and the acceptance tests is
//! defined here with its rationale. No ad-hoc magic numbers at call sites.
//!
//! Three regimes:
//! - formal/ball comparisons of 50-digit table data (1e-30 .. 1e-48),
//!   limited by the table radius, not by the identity;
//! - unit-argument hypergeometric sums with modelled tails (1e-10);
//! - quadrature cross-checks (1e-8), limited by the 2-D error estimate.

/// Calibration of the sine-series coefficients c((01)^n) against
/// (-1)^n pi^{2n}/(2n+1)! computed from an independent Machin-formula pi.
/// The 50-digit table leaves ~1e-45 of slack; 1e-40 is conservative.
pub const CALIBRATION: f64 = 1e-40;

/// Depth-graded zeta relation residuals (weight <= 12 table data).
pub const BROWN_ZAGIER: f64 = 1e-30;

/// Generating-identity coefficient comparison through total degree 12.
pub const ZAGIER_COEFF: f64 = 1e-30;

/// Series-vs-series consistency of the Beta kernel (closed form against
/// the abelianized table read) through total degree 12.
pub const BPRIME_CONSISTENCY: f64 = 1e-40;

/// MZV duality and shuffle cross-checks on 50-digit values.
pub const MZV_IDENTITY: f64 = 1e-45;

/// zeta(2) against pi^2/6 with pi from the Machin formula.
pub const ZETA2_VS_PI: f64 = 1e-48;

/// Unit-argument pFq evaluations (accelerated sums, tail model at M=10^4).
pub const PFQ_POINT: f64 = 1e-10;

/// Numeric identity checks that mix quadrature with pFq sums.
pub const QUADRATURE_POINT: f64 = 1e-8;

/// Convolution identity: the table side is truncated at the table
/// weight, so the residual is dominated by the dropped tail at the
/// sample point, not by arithmetic error.
pub const CONVOLUTION: f64 = 1e-8;

/// Classical Gauss-average closed form against quadrature; the 1-D
/// integrand is smooth enough for one extra digit over the 2-D checks.
pub const GAUSS_MOMENT: f64 = 1e-9;

/// Minimum convergence margin sigma = sum(lower) - sum(upper) for a
/// nonterminating (q+1)Fq sum at the unit argument. Below it, the tail
/// model at M = 10^4 cannot certify the requested accuracy; the point
/// is rejected rather than evaluated loosely.
pub const MARGIN_SIGMA: f64 = 0.3;

/// Default working precision in decimal digits for table builds.
pub const DEFAULT_DIGITS: u32 = 50;

/// Default table weight.
pub const DEFAULT_WEIGHT: u32 = 12;

/// Guard digits carried internally beyond the requested digits.
pub const GUARD_DIGITS: u32 = 10;

/// Bits per decimal digit, rounded up (log2(10) = 3.32...).
pub const BITS_PER_DIGIT: f64 = 3.3219280948873623;

/// Working precision in bits for a requested digit count, with guard.
pub fn bits_for_digits(digits: u32) -> u32 {
    (((digits + GUARD_DIGITS) as f64) * BITS_PER_DIGIT).ceil() as u32 + 16
}
