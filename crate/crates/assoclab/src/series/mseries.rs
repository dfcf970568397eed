//! Truncated commutative multivariate power series.
//!
//! Keys are exponent vectors with trailing zeros trimmed, so values
//! with different variable counts mix freely. `trunc` is the maximum
//! total degree kept; `u32::MAX` marks constants produced by the ring
//! trait, and operations take the tighter of the two truncations.
//! The type is itself a [`ScalarRing`], which lets series coefficients
//! be series (used for expansions whose coefficients are polynomials
//! in the gamma-series generators).

use std::collections::BTreeMap;

use super::scalar::ScalarRing;
use crate::error::{Error, Result};

pub const NO_TRUNC: u32 = u32::MAX;

#[derive(Clone, PartialEq, Debug)]
pub struct MSeries<S> {
    trunc: u32,
    terms: BTreeMap<Vec<u8>, S>,
}

fn trim(mut key: Vec<u8>) -> Vec<u8> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

fn degree(key: &[u8]) -> u32 {
    key.iter().map(|&e| e as u32).sum()
}

impl<S: ScalarRing> MSeries<S> {
    pub fn zero_t(trunc: u32) -> Self {
        MSeries {
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S, trunc: u32) -> Self {
        let mut s = MSeries::zero_t(trunc);
        s.set(vec![], c);
        s
    }

    /// The variable with index `i`.
    pub fn var(i: usize, trunc: u32) -> Self {
        let mut key = vec![0u8; i + 1];
        key[i] = 1;
        let mut s = MSeries::zero_t(trunc);
        s.set(key, S::one());
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn set(&mut self, key: Vec<u8>, c: S) {
        let key = trim(key);
        if degree(&key) > self.trunc || c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn coeff(&self, key: &[u8]) -> S {
        let key = trim(key.to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_to(&mut self, key: Vec<u8>, c: &S) {
        let key = trim(key);
        if degree(&key) > self.trunc {
            return;
        }
        let cur = self.coeff(&key);
        self.set(key, cur.add(c));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| degree(k)).min()
    }

    pub fn truncate(&self, trunc: u32) -> Self {
        let mut out = MSeries::zero_t(trunc.min(self.trunc));
        for (k, c) in &self.terms {
            if degree(k) <= trunc {
                out.set(k.clone(), c.clone());
            }
        }
        out
    }

    pub fn add_ms(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.trunc.min(other.trunc));
        for (k, c) in &other.terms {
            out.add_to(k.clone(), c);
        }
        out
    }

    pub fn sub_ms(&self, other: &Self) -> Self {
        self.add_ms(&other.neg_ms())
    }

    pub fn neg_ms(&self) -> Self {
        MSeries {
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return MSeries::zero_t(self.trunc);
        }
        let mut out = MSeries::zero_t(self.trunc);
        for (k, c) in &self.terms {
            out.set(k.clone(), c.mul(s));
        }
        out
    }

    pub fn mul_ms(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = MSeries::zero_t(trunc);
        for (ka, ca) in &self.terms {
            let da = degree(ka);
            if da > trunc {
                continue;
            }
            for (kb, cb) in &other.terms {
                if da + degree(kb) > trunc {
                    continue;
                }
                let mut key = vec![0u8; ka.len().max(kb.len())];
                for (i, e) in ka.iter().enumerate() {
                    key[i] += e;
                }
                for (i, e) in kb.iter().enumerate() {
                    key[i] += e;
                }
                out.add_to(key, &ca.mul(cb));
            }
        }
        out
    }

    fn require_trunc(&self, what: &str) -> Result<u32> {
        if self.trunc == NO_TRUNC && self.terms.keys().any(|k| degree(k) > 0) {
            return Err(Error::Truncation(format!(
                "{what} of an untruncated non-constant series"
            )));
        }
        Ok(self.trunc)
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(&[]).is_zero() {
            return Err(Error::ConstantTerm(
                "series exp needs a zero constant term".to_string(),
            ));
        }
        self.require_trunc("exp")?;
        let mut out = MSeries::constant(S::one(), self.trunc);
        let mut pw = MSeries::constant(S::one(), self.trunc);
        let nmax = self.trunc / self.min_degree().unwrap_or(1).max(1);
        for n in 1..=nmax.max(1) as i64 {
            // divide per coefficient so each rounds at its own precision
            pw = pw.mul_ms(self).map(|c| c.div_i64(n));
            if pw.is_empty() {
                break;
            }
            out = out.add_ms(&pw);
        }
        Ok(out)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(&[]).sub(&S::one()).is_zero() {
            return Err(Error::ConstantTerm(
                "series log needs constant term exactly 1".to_string(),
            ));
        }
        self.require_trunc("log")?;
        let mut y = self.clone();
        y.set(vec![], S::zero());
        let mut out = MSeries::zero_t(self.trunc);
        let mut pw = MSeries::constant(S::one(), self.trunc);
        let nmax = self.trunc / y.min_degree().unwrap_or(1).max(1);
        for n in 1..=nmax.max(1) as i64 {
            pw = pw.mul_ms(&y);
            if pw.is_empty() {
                break;
            }
            let d = if n % 2 == 0 { -n } else { n };
            out = out.add_ms(&pw.map(|c| c.div_i64(d)));
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff(&[]);
        let i0 = c0.try_invert().ok_or_else(|| {
            Error::ConstantTerm("series inverse needs an invertible constant term".to_string())
        })?;
        self.require_trunc("inverse")?;
        // self * i0 = 1 - u with u of positive degree
        let mut u = MSeries::constant(S::one(), self.trunc).add_ms(&self.scale(&i0).neg_ms());
        u.set(vec![], S::zero());
        let mut out = MSeries::constant(S::one(), self.trunc);
        let mut pw = MSeries::constant(S::one(), self.trunc);
        let nmax = self.trunc / u.min_degree().unwrap_or(1).max(1);
        for _ in 1..=nmax.max(1) {
            pw = pw.mul_ms(&u);
            if pw.is_empty() {
                break;
            }
            out = out.add_ms(&pw);
        }
        Ok(out.scale(&i0))
    }

    /// Divide by the monomial var_i^k; every term must contain it.
    pub fn div_monomial(&self, var: usize, k: u8) -> Result<Self> {
        let mut out = MSeries::zero_t(self.trunc);
        for (key, c) in &self.terms {
            if key.len() <= var || key[var] < k {
                return Err(Error::Truncation(format!(
                    "monomial division: term {key:?} lacks var{var}^{k}"
                )));
            }
            let mut nk = key.clone();
            nk[var] -= k;
            out.set(nk, c.clone());
        }
        Ok(out)
    }

    /// Multiply by the monomial var_i^k.
    pub fn mul_monomial(&self, var: usize, k: u8) -> Self {
        let mut out = MSeries::zero_t(self.trunc);
        for (key, c) in &self.terms {
            let mut nk = key.clone();
            if nk.len() <= var {
                nk.resize(var + 1, 0);
            }
            nk[var] += k;
            out.set(nk, c.clone());
        }
        out
    }

    pub fn map<T: ScalarRing>(&self, f: impl Fn(&S) -> T) -> MSeries<T> {
        let mut out = MSeries::zero_t(self.trunc);
        for (k, c) in &self.terms {
            out.set(k.clone(), f(c));
        }
        out
    }

    /// Substitute scalars for the variables.
    pub fn eval(&self, point: &[S]) -> Result<S> {
        let mut acc = S::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).ok_or_else(|| {
                    Error::MissingParam(format!("series variable {i} has no value"))
                })?;
                for _ in 0..e {
                    term = term.mul(x);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Largest coefficient magnitude under a caller-supplied measure.
    pub fn max_by_measure(&self, measure: impl Fn(&S) -> f64) -> f64 {
        self.terms.values().map(measure).fold(0.0, f64::max)
    }
}

/// Compose a one-variable series (given by its coefficient list, index
/// = power) with a multivariate series of zero constant term.
pub fn compose_1var<S: ScalarRing>(coeffs: &[S], v: &MSeries<S>) -> Result<MSeries<S>> {
    if !v.coeff(&[]).is_zero() {
        return Err(Error::ConstantTerm(
            "composition target must have zero constant term".to_string(),
        ));
    }
    let trunc = v.trunc();
    if trunc == NO_TRUNC && !v.is_empty() {
        return Err(Error::Truncation(
            "composition with an untruncated series".to_string(),
        ));
    }
    let mut out = MSeries::zero_t(trunc);
    if let Some(c0) = coeffs.first() {
        out.set(vec![], c0.clone());
    }
    let mut pw = MSeries::constant(S::one(), trunc);
    let step = v.min_degree().unwrap_or(1).max(1);
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        if (k as u32) * step > trunc {
            break;
        }
        pw = pw.mul_ms(v);
        if pw.is_empty() {
            break;
        }
        out = out.add_ms(&pw.scale(c));
    }
    Ok(out)
}

impl<S: ScalarRing> ScalarRing for MSeries<S> {
    fn zero() -> Self {
        MSeries::zero_t(NO_TRUNC)
    }
    fn one() -> Self {
        MSeries::constant(S::one(), NO_TRUNC)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ms(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.add_ms(&other.neg_ms())
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ms(other)
    }
    fn neg(&self) -> Self {
        self.neg_ms()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(n: i64) -> Self {
        MSeries::constant(S::from_i64(n), NO_TRUNC)
    }
    fn div_i64(&self, n: i64) -> Self {
        self.map(|c| c.div_i64(n))
    }
    fn try_invert(&self) -> Option<Self> {
        self.inv().ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type QS = MSeries<BigRational>;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn mul_and_truncation() {
        let x = QS::var(0, 3);
        let y = QS::var(1, 3);
        let s = x.add_ms(&y); // x + y
        let c = s.mul_ms(&s).mul_ms(&s); // (x+y)^3
        assert_eq!(c.coeff(&[3]), r(1, 1));
        assert_eq!(c.coeff(&[2, 1]), r(3, 1));
        assert_eq!(c.coeff(&[1, 2]), r(3, 1));
        let c4 = c.mul_ms(&s); // degree 4 exceeds trunc: empty
        assert!(c4.is_empty());
    }

    #[test]
    fn exp_log_roundtrip() {
        let x = QS::var(0, 6);
        let y = QS::var(1, 6);
        let s = x.scale(&r(1, 2)).add_ms(&y.mul_ms(&y).scale(&r(-2, 3)));
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(&[]), r(1, 1));
        assert_eq!(e.log().unwrap(), s);
        // exp(x) coefficient check
        let ex = x.exp().unwrap();
        assert_eq!(ex.coeff(&[4]), r(1, 24));
        assert!(ex.exp().is_err());
    }

    #[test]
    fn inverse() {
        let x = QS::var(0, 5);
        let one_plus = QS::constant(r(2, 1), 5).add_ms(&x);
        let inv = one_plus.inv().unwrap();
        let p = one_plus.mul_ms(&inv);
        assert_eq!(p.coeff(&[]), r(1, 1));
        assert_eq!(p.len(), 1);
        // 1/(2+x) = 1/2 - x/4 + ...
        assert_eq!(inv.coeff(&[1]), r(-1, 4));
        assert!(QS::var(0, 5).inv().is_err());
    }

    #[test]
    fn monomial_division_and_compose() {
        let x = QS::var(0, 6);
        let y = QS::var(1, 6);
        let s = x.mul_ms(&y).add_ms(&x.mul_ms(&x)); // xy + x^2
        let d = s.div_monomial(0, 1).unwrap();
        assert_eq!(d.coeff(&[0, 1]), r(1, 1));
        assert_eq!(d.coeff(&[1]), r(1, 1));
        assert!(s.div_monomial(1, 1).is_err());
        // compose 1/(1-t) = sum t^k with t = x+y
        let ones: Vec<BigRational> = (0..7).map(|_| r(1, 1)).collect();
        let geo = compose_1var(&ones, &x.add_ms(&y)).unwrap();
        // coefficient of x^2 y in (x+y)^3 summand: binom(3,1) = 3
        assert_eq!(geo.coeff(&[2, 1]), r(3, 1));
        let direct = QS::constant(r(1, 1), 6)
            .sub(&x.add_ms(&y))
            .inv()
            .unwrap();
        assert_eq!(geo, direct);
    }

    #[test]
    fn series_as_scalar_nesting() {
        // MSeries<MSeries<Q>>: outer in one var, inner coefficients in
        // another: exercises the ring impl recursively.
        type QQ = MSeries<QS>;
        let inner = QS::var(0, 4);
        let outer_var = QQ::var(0, 4);
        let s = outer_var.scale(&inner); // t * a
        let e = s.exp().unwrap();
        let c2 = e.coeff(&[2]); // a^2/2
        assert_eq!(c2.coeff(&[2]), r(1, 2));
    }

    #[test]
    fn eval_substitutes() {
        let x = QS::var(0, 8);
        let y = QS::var(1, 8);
        let s = x.mul_ms(&x).add_ms(&y.scale(&r(3, 1))); // x^2 + 3y
        let v = s.eval(&[r(2, 1), r(5, 1)]).unwrap();
        assert_eq!(v, r(19, 1));
        assert!(s.eval(&[r(1, 1)]).is_err());
    }
}
