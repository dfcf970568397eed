//! Ring abstraction shared by the series types.
//!
//! Generic series code only ever needs ring ops plus division by a
//! nonzero machine integer (for factorials in exp/log), so the trait
//! stays small and every implementor can keep its own precision or
//! truncation policy internal to the value.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait ScalarRing: Clone + std::fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;
    /// Divide by a nonzero integer.
    fn div_i64(&self, n: i64) -> Self;
    /// Multiplicative inverse where one exists.
    fn try_invert(&self) -> Option<Self>;
}

impl ScalarRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn div_i64(&self, n: i64) -> Self {
        assert!(n != 0);
        self / BigRational::from_integer(n.into())
    }
    fn try_invert(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Exact rational helpers used across the crate.
pub fn rat(p: i64, q: i64) -> BigRational {
    assert!(q != 0);
    BigRational::new(p.into(), q.into())
}

pub fn rat_abs(x: &BigRational) -> BigRational {
    x.abs()
}
