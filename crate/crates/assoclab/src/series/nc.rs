//! Truncated noncommutative power series in two letters.
//!
//! Coefficients live in any [`ScalarRing`]; words above `max_weight`
//! are dropped by every operation, so products and exponentials stay
//! finite. The empty word is the unit.

use std::collections::BTreeMap;

use super::scalar::ScalarRing;
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, PartialEq, Debug)]
pub struct NCSeries<S> {
    max_weight: u32,
    terms: BTreeMap<Word, S>,
}

impl<S: ScalarRing> NCSeries<S> {
    pub fn zero(max_weight: u32) -> Self {
        NCSeries {
            max_weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(max_weight: u32) -> Self {
        let mut s = NCSeries::zero(max_weight);
        s.set(Word::empty(), S::one());
        s
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn set(&mut self, w: Word, c: S) {
        if w.weight() > self.max_weight || c.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, c);
        }
    }

    pub fn coeff(&self, w: &Word) -> S {
        self.terms.get(w).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_to(&mut self, w: Word, c: &S) {
        if w.weight() > self.max_weight {
            return;
        }
        let cur = self.coeff(&w);
        self.set(w, cur.add(c));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.max_weight = self.max_weight.min(other.max_weight);
        out.terms.retain(|w, _| w.weight() <= out.max_weight);
        for (w, c) in &other.terms {
            out.add_to(*w, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        NCSeries {
            max_weight: self.max_weight,
            terms: self.terms.iter().map(|(w, c)| (*w, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return NCSeries::zero(self.max_weight);
        }
        let mut out = NCSeries::zero(self.max_weight);
        for (w, c) in &self.terms {
            out.set(*w, c.mul(s));
        }
        out
    }

    /// Concatenation product, truncated at the common max weight.
    pub fn mul(&self, other: &Self) -> Self {
        let mw = self.max_weight.min(other.max_weight);
        let mut out = NCSeries::zero(mw);
        for (u, cu) in &self.terms {
            if u.weight() > mw {
                continue;
            }
            for (v, cv) in &other.terms {
                if u.weight() + v.weight() > mw {
                    continue;
                }
                out.add_to(u.concat(v), &cu.mul(cv));
            }
        }
        out
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&Word::empty()).is_zero() {
            return Err(Error::ConstantTerm(
                "exp needs a zero constant term".to_string(),
            ));
        }
        let mut out = NCSeries::one(self.max_weight);
        // pw holds x^n / n!
        let mut pw = NCSeries::one(self.max_weight);
        for n in 1..=self.max_weight as i64 {
            pw = pw.mul(self).map(|c| c.div_i64(n));
            if pw.is_empty() {
                break;
            }
            out = out.add(&pw);
        }
        Ok(out)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = self.coeff(&Word::empty());
        if !c0.sub(&S::one()).is_zero() {
            return Err(Error::ConstantTerm(
                "log needs constant term exactly 1".to_string(),
            ));
        }
        let mut y = self.clone();
        y.set(Word::empty(), S::zero());
        let mut out = NCSeries::zero(self.max_weight);
        // pw holds y^n; signs alternate
        let mut pw = NCSeries::one(self.max_weight);
        for n in 1..=self.max_weight as i64 {
            pw = pw.mul(&y);
            if pw.is_empty() {
                break;
            }
            let term = pw.map(|c| c.div_i64(if n % 2 == 0 { -n } else { n }));
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn map<T: ScalarRing>(&self, f: impl Fn(&S) -> T) -> NCSeries<T> {
        let mut out = NCSeries::zero(self.max_weight);
        for (w, c) in &self.terms {
            out.set(*w, f(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn mul_truncates() {
        let mut a = NCSeries::<BigRational>::zero(4);
        a.set(w("011"), r(2, 1));
        a.set(w("0"), r(1, 1));
        let mut b = NCSeries::<BigRational>::zero(4);
        b.set(w("10"), r(3, 1));
        let p = a.mul(&b);
        // 011.10 has weight 5 > 4: dropped; 0.10 stays
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&w("010")), r(3, 1));
    }

    #[test]
    fn exp_single_letter() {
        let mut x = NCSeries::<BigRational>::zero(5);
        x.set(w("1"), r(3, 1));
        let e = x.exp().unwrap();
        // coefficient of 1^n is 3^n/n!
        assert_eq!(e.coeff(&Word::empty()), r(1, 1));
        assert_eq!(e.coeff(&w("1")), r(3, 1));
        assert_eq!(e.coeff(&w("11")), r(9, 2));
        assert_eq!(e.coeff(&w("111")), r(27, 6));
        assert_eq!(e.coeff(&w("11111")), r(243, 120));
        assert!(x.log().is_err());
        let mut bad = x.clone();
        bad.set(Word::empty(), r(1, 1));
        assert!(bad.exp().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let mut x = NCSeries::<BigRational>::zero(6);
        x.set(w("0"), r(1, 2));
        x.set(w("1"), r(-2, 3));
        x.set(w("01"), r(5, 1));
        x.set(w("110"), r(-1, 7));
        let back = x.exp().unwrap().log().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn exp_is_group_like_for_primitive_input() {
        // exp of a single letter: coefficients multiply along shuffles
        let mut x = NCSeries::<BigRational>::zero(6);
        x.set(w("0"), r(2, 1));
        let e = x.exp().unwrap();
        let u = w("00");
        let v = w("0");
        let lhs = e.coeff(&u) * e.coeff(&v);
        let mut rhs = BigRational::new(0.into(), 1.into());
        for (word, m) in crate::words::shuffle(&u, &v).iter() {
            rhs += m * e.coeff(word);
        }
        assert_eq!(lhs, rhs);
    }
}
