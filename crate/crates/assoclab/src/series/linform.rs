//! Affine-linear forms in named variables over exact rationals.
//!
//! These are the arguments of the formal gamma factors, e.g.
//! `2*c - a + 1`. Display and the expression parser round-trip.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::float::AppFloat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Hash, Default)]
pub struct LinForm {
    coeffs: BTreeMap<String, BigRational>,
    konst: BigRational,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), BigRational::one());
        LinForm {
            coeffs,
            konst: BigRational::zero(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            konst: c,
        }
    }

    pub fn constant_int(c: i64) -> Self {
        LinForm::constant(BigRational::from_integer(c.into()))
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            let e = out.coeffs.entry(v.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.coeffs.remove(v);
            }
        }
        out.konst += &other.konst;
        out
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), -c)).collect(),
            konst: -&self.konst,
        }
    }

    pub fn sub(&self, other: &LinForm) -> LinForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &BigRational) -> LinForm {
        if s.is_zero() {
            return LinForm::zero();
        }
        LinForm {
            coeffs: self.coeffs.iter().map(|(v, c)| (v.clone(), c * s)).collect(),
            konst: &self.konst * s,
        }
    }

    pub fn shift(&self, n: i64) -> LinForm {
        let mut out = self.clone();
        out.konst += BigRational::from_integer(n.into());
        out
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.konst.is_zero()
    }

    pub fn konst(&self) -> &BigRational {
        &self.konst
    }

    pub fn coeffs(&self) -> &BTreeMap<String, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, var: &str) -> BigRational {
        self.coeffs.get(var).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The variable part with zero constant.
    pub fn linear_part(&self) -> LinForm {
        LinForm {
            coeffs: self.coeffs.clone(),
            konst: BigRational::zero(),
        }
    }

    /// Split as (L0, n) with self = L0 + n, n integer, and the constant
    /// of L0 in (0, 1].
    pub fn split_unit_interval(&self) -> (LinForm, i64) {
        let n = self.konst.ceil().to_integer() - BigInt::one();
        let n_i64 = i64::try_from(&n).expect("constant shift out of range");
        let mut out = self.clone();
        out.konst -= BigRational::from_integer(n);
        (out, n_i64)
    }

    /// Key grouping forms whose difference is an integer: the linear
    /// part plus the fractional residue of the constant.
    pub fn integer_class(&self) -> (BTreeMap<String, BigRational>, BigRational) {
        let frac = &self.konst - self.konst.floor();
        (self.coeffs.clone(), frac)
    }

    pub fn eval_rational(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational> {
        let mut acc = self.konst.clone();
        for (v, c) in &self.coeffs {
            let x = point
                .get(v)
                .ok_or_else(|| Error::MissingParam(v.clone()))?;
            acc += c * x;
        }
        Ok(acc)
    }

    pub fn eval_float(
        &self,
        point: &BTreeMap<String, AppFloat>,
        prec: u32,
    ) -> Result<AppFloat> {
        let mut acc = AppFloat::from_rational(&self.konst, prec);
        for (v, c) in &self.coeffs {
            let x = point
                .get(v)
                .ok_or_else(|| Error::MissingParam(v.clone()))?;
            acc = acc.add(&AppFloat::from_rational(c, prec).mul(x));
        }
        Ok(acc)
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut write_term = |f: &mut fmt::Formatter<'_>,
                              sign_neg: bool,
                              body: String|
         -> fmt::Result {
            if first {
                first = false;
                if sign_neg {
                    write!(f, "-{body}")
                } else {
                    write!(f, "{body}")
                }
            } else if sign_neg {
                write!(f, " - {body}")
            } else {
                write!(f, " + {body}")
            }
        };
        for (v, c) in &self.coeffs {
            let a = c.abs();
            let body = if a.is_one() {
                v.clone()
            } else {
                format!("{}*{}", fmt_rat(&a), v)
            };
            write_term(f, c.is_negative(), body)?;
        }
        if !self.konst.is_zero() || self.coeffs.is_empty() {
            let a = self.konst.abs();
            write_term(f, self.konst.is_negative(), fmt_rat(&a))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn display_forms() {
        let a = LinForm::var("a");
        let c = LinForm::var("c");
        let f = c.scale(&r(2, 1)).sub(&a).shift(1);
        assert_eq!(f.to_string(), "-a + 2*c + 1");
        assert_eq!(LinForm::zero().to_string(), "0");
        assert_eq!(LinForm::constant(r(-3, 2)).to_string(), "-3/2");
        assert_eq!(a.sub(&LinForm::constant_int(1)).to_string(), "a - 1");
    }

    #[test]
    fn unit_interval_split() {
        let f = LinForm::var("a").shift(3);
        let (f0, n) = f.split_unit_interval();
        assert_eq!(n, 2);
        assert_eq!(f0.konst(), &r(1, 1));
        let g = LinForm::var("a").add(&LinForm::constant(r(-5, 2)));
        let (g0, m) = g.split_unit_interval();
        assert_eq!(m, -3);
        assert_eq!(g0.konst(), &r(1, 2));
        // already in (0,1]
        let h = LinForm::var("a").add(&LinForm::constant(r(1, 2)));
        let (h0, k) = h.split_unit_interval();
        assert_eq!(k, 0);
        assert_eq!(h0, h);
    }

    #[test]
    fn eval_and_classes() {
        let f = LinForm::var("a").scale(&r(2, 1)).shift(-1);
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), r(3, 4));
        assert_eq!(f.eval_rational(&pt).unwrap(), r(1, 2));
        assert!(f.eval_rational(&BTreeMap::new()).is_err());
        let g = f.shift(7);
        assert_eq!(f.integer_class(), g.integer_class());
        let h = LinForm::var("a").scale(&r(2, 1)).add(&LinForm::constant(r(-1, 2)));
        assert_ne!(f.integer_class(), h.integer_class());
    }
}
