//! Directed-rounding magnitudes for error radii.
//!
//! A `Mag` is a nonnegative value `man * 2^exp` with `man < 2^31`.
//! Every operation rounds so the result never underestimates the true
//! value (outward for radii). Lower-bound helpers round the other way
//! and are named `_lower`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

const MAN_BITS: u32 = 31;
const MAN_MAX: u64 = 1 << MAN_BITS;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Exactly 2^e.
    pub fn pow2(e: i64) -> Self {
        Mag {
            man: 1 << (MAN_BITS - 1),
            exp: e - (MAN_BITS as i64 - 1),
        }
    }

    fn norm_up(mut man: u64, mut exp: i64) -> Self {
        if man == 0 {
            return Mag::zero();
        }
        while man >= MAN_MAX {
            man = (man >> 1) + (man & 1);
            exp += 1;
        }
        while man < MAN_MAX / 2 {
            man <<= 1;
            exp -= 1;
        }
        Mag { man, exp }
    }

    fn norm_down(mut man: u128, mut exp: i64) -> Self {
        if man == 0 {
            return Mag::zero();
        }
        while man >= MAN_MAX as u128 {
            man >>= 1;
            exp += 1;
        }
        let mut man = man as u64;
        while man < MAN_MAX / 2 {
            man <<= 1;
            exp -= 1;
        }
        Mag { man, exp }
    }

    pub fn from_u64(v: u64) -> Self {
        Mag::norm_up(v, 0)
    }

    /// Upper bound for |m| * 2^exp.
    pub fn from_bigint(m: &BigInt, exp: i64) -> Self {
        if m.is_zero() {
            return Mag::zero();
        }
        let a = m.abs();
        let bits = a.bits();
        if bits <= MAN_BITS as u64 {
            let digs = a.to_u64_digits().1;
            return Mag::norm_up(digs[0], exp);
        }
        let s = bits - MAN_BITS as u64;
        let top: BigInt = &a >> s;
        let exact = (&top << s) == a;
        let mut man = top.to_u64_digits().1[0];
        if !exact {
            man += 1;
        }
        Mag::norm_up(man, exp + s as i64)
    }

    /// Lower bound for |m| * 2^exp.
    pub fn from_bigint_lower(m: &BigInt, exp: i64) -> Self {
        if m.is_zero() {
            return Mag::zero();
        }
        let a = m.abs();
        let bits = a.bits();
        if bits <= MAN_BITS as u64 {
            let digs = a.to_u64_digits().1;
            return Mag::norm_down(digs[0] as u128, exp);
        }
        let s = bits - MAN_BITS as u64;
        let top: BigInt = &a >> s;
        Mag::norm_down(top.to_u64_digits().1[0] as u128, exp + s as i64)
    }

    /// Upper bound, from a nonnegative f64.
    pub fn from_f64(x: f64) -> Self {
        assert!(x >= 0.0 && x.is_finite());
        if x == 0.0 {
            return Mag::zero();
        }
        let mut m = x;
        let mut exp = 0i64;
        while m >= (MAN_MAX / 2) as f64 {
            m /= 2.0;
            exp += 1;
        }
        while m < (MAN_MAX / 4) as f64 {
            m *= 2.0;
            exp -= 1;
        }
        Mag::norm_up(m.ceil() as u64, exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp as f64;
        if e > 1000.0 {
            return f64::INFINITY;
        }
        if e < -1100.0 {
            return 0.0;
        }
        self.man as f64 * e.exp2()
    }

    pub fn add(&self, other: &Mag) -> Mag {
        if self.man == 0 {
            return *other;
        }
        if other.man == 0 {
            return *self;
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let d = hi.exp - lo.exp;
        let lo_man = if d > 62 {
            1
        } else {
            (lo.man + ((1u64 << d) - 1)) >> d
        };
        Mag::norm_up(hi.man + lo_man, hi.exp)
    }

    pub fn mul(&self, other: &Mag) -> Mag {
        if self.man == 0 || other.man == 0 {
            return Mag::zero();
        }
        Mag::norm_up_u128(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    fn norm_up_u128(mut man: u128, mut exp: i64) -> Self {
        while man >= MAN_MAX as u128 {
            man = (man >> 1) + (man & 1);
            exp += 1;
        }
        Mag::norm_up(man as u64, exp)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.man == 0 {
            return *self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    /// Upper bound for self / den where `den` is a LOWER bound (> 0).
    pub fn div_lower(&self, den: &Mag) -> Mag {
        assert!(den.man != 0, "division by magnitude lower bound zero");
        if self.man == 0 {
            return Mag::zero();
        }
        let num = (self.man as u128) << 40;
        let q = num / den.man as u128 + 1;
        Mag::norm_up_u128(q, self.exp - den.exp - 40)
    }

    /// Lower bound for max(self - other, 0), self a lower bound,
    /// other an upper bound.
    pub fn sub_lower(&self, other: &Mag) -> Mag {
        if other.man == 0 {
            return *self;
        }
        if self.man == 0 || other.cmp_ge(self) {
            return Mag::zero();
        }
        // Here other < self, so exponents are within range.
        let d = self.exp - other.exp;
        if d > 62 {
            // other < ulp(self): shave one ulp, rounding down.
            return Mag::norm_down(self.man as u128 - 1, self.exp);
        }
        let e = self.exp.min(other.exp);
        let va = (self.man as u128) << (self.exp - e) as u32;
        // Round the subtrahend up.
        let db = (other.exp - e) as u32;
        let vb = (other.man as u128) << db;
        if vb >= va {
            return Mag::zero();
        }
        Mag::norm_down(va - vb, e)
    }

    pub fn cmp_ge(&self, other: &Mag) -> bool {
        if other.man == 0 {
            return true;
        }
        if self.man == 0 {
            return false;
        }
        (self.exp, self.man) >= (other.exp, other.man)
    }

    pub fn max(&self, other: &Mag) -> Mag {
        if self.cmp_ge(other) {
            *self
        } else {
            *other
        }
    }

    /// Exponent e with self <= 2^e (self nonzero).
    pub fn ceil_log2(&self) -> i64 {
        assert!(self.man != 0);
        self.exp + MAN_BITS as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_bound_truth() {
        let a = Mag::from_f64(1.5);
        let b = Mag::from_f64(2.25);
        assert!(a.add(&b).to_f64() >= 3.75);
        assert!(a.add(&b).to_f64() <= 3.7500001);
        assert!(a.mul(&b).to_f64() >= 3.375);
        assert!(Mag::pow2(-10).to_f64() == 2.0f64.powi(-10));
    }

    #[test]
    fn bigint_bounds() {
        let m = BigInt::from(u64::MAX) * BigInt::from(12345u64);
        let up = Mag::from_bigint(&m, -10);
        let lo = Mag::from_bigint_lower(&m, -10);
        let truth = 1.8446744e19 * 12345.0 / 1024.0;
        assert!(up.to_f64() >= truth * 0.999999);
        assert!(lo.to_f64() <= truth * 1.000001);
        assert!(up.cmp_ge(&lo));
    }

    #[test]
    fn sub_and_div_directions() {
        let a = Mag::from_f64(10.0);
        let b = Mag::from_f64(3.0);
        let d = a.sub_lower(&b);
        assert!(d.to_f64() <= 7.0 && d.to_f64() > 6.9);
        let q = a.div_lower(&b);
        // b here plays the role of a lower bound on the denominator
        assert!(q.to_f64() >= 10.0 / 3.0);
        assert!(b.sub_lower(&a).is_zero());
    }
}
