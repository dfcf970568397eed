//! 2x2 matrices over any scalar ring.

use super::scalar::ScalarRing;

#[derive(Clone, PartialEq, Debug)]
pub struct Mat2<S> {
    pub a11: S,
    pub a12: S,
    pub a21: S,
    pub a22: S,
}

impl<S: ScalarRing> Mat2<S> {
    pub fn new(a11: S, a12: S, a21: S, a22: S) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn zero() -> Self {
        Mat2::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn identity() -> Self {
        Mat2::new(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        Mat2::new(
            self.a11.add(&other.a11),
            self.a12.add(&other.a12),
            self.a21.add(&other.a21),
            self.a22.add(&other.a22),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        Mat2::new(
            self.a11.mul(&other.a11).add(&self.a12.mul(&other.a21)),
            self.a11.mul(&other.a12).add(&self.a12.mul(&other.a22)),
            self.a21.mul(&other.a11).add(&self.a22.mul(&other.a21)),
            self.a21.mul(&other.a12).add(&self.a22.mul(&other.a22)),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Mat2::new(
            self.a11.mul(s),
            self.a12.mul(s),
            self.a21.mul(s),
            self.a22.mul(s),
        )
    }

    pub fn map<T: ScalarRing>(&self, f: impl Fn(&S) -> T) -> Mat2<T> {
        Mat2::new(f(&self.a11), f(&self.a12), f(&self.a21), f(&self.a22))
    }

    pub fn is_zero(&self) -> bool {
        self.a11.is_zero() && self.a12.is_zero() && self.a21.is_zero() && self.a22.is_zero()
    }

    /// Row vector (r1, r2) times this matrix, times column (c1, c2).
    pub fn sandwich(&self, r: (&S, &S), c: (&S, &S)) -> S {
        let top = self.a11.mul(c.0).add(&self.a12.mul(c.1));
        let bot = self.a21.mul(c.0).add(&self.a22.mul(c.1));
        r.0.mul(&top).add(&r.1.mul(&bot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(p: i64) -> BigRational {
        BigRational::from_integer(p.into())
    }

    #[test]
    fn mul_and_sandwich() {
        let a = Mat2::new(r(1), r(2), r(3), r(4));
        let b = Mat2::new(r(0), r(1), r(1), r(0));
        let p = a.mul(&b);
        assert_eq!(p, Mat2::new(r(2), r(1), r(4), r(3)));
        assert_eq!(a.mul(&Mat2::identity()), a);
        // (1,0) A (0,1)^T = a12
        let s = a.sandwich((&r(1), &r(0)), (&r(0), &r(1)));
        assert_eq!(s, r(2));
    }
}
