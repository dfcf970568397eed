//! Canonical products of formal gamma factors.
//!
//! A `GammaExpr` is scalar * prod (linear form)^e * prod G(linear
//! form)^e. `normalize` rewrites every gamma argument so its constant
//! lies in (0, 1] via G(L + 1) = L G(L), drops G(1), absorbs constant
//! polynomial factors into the scalar, and scales polynomial factors
//! to primitive integer form, so equal expressions become structurally
//! equal.
//!
//! Numeric specialization of one factor at a rational point p is
//! exp(euler_gamma * (L(p) - const L)) * Gamma(L(p)); for balanced
//! products the exponential factors cancel.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use super::series::ACoeffs;
use crate::error::{Error, Result};
use crate::series::float::AppFloat;
use crate::series::linform::LinForm;
use crate::series::mseries::{compose_1var, MSeries};
use crate::series::transcend::{euler_gamma, exp, gamma, ln2, zeta_int};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaExpr {
    pub scalar: BigRational,
    gammas: BTreeMap<LinForm, i64>,
    polys: BTreeMap<LinForm, i64>,
}

fn rat_pow(r: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if r.is_zero() {
        if e > 0 {
            return Ok(BigRational::zero());
        }
        return Err(Error::PoleArgument);
    }
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= r;
    }
    if e < 0 {
        acc = acc.recip();
    }
    Ok(acc)
}

impl GammaExpr {
    pub fn one() -> Self {
        GammaExpr {
            scalar: BigRational::one(),
            gammas: BTreeMap::new(),
            polys: BTreeMap::new(),
        }
    }

    pub fn from_scalar(r: BigRational) -> Self {
        let mut e = GammaExpr::one();
        e.scalar = r;
        e
    }

    pub fn gamma(l: LinForm) -> Self {
        let mut e = GammaExpr::one();
        e.gammas.insert(l, 1);
        e
    }

    pub fn poly(l: LinForm) -> Self {
        let mut e = GammaExpr::one();
        e.polys.insert(l, 1);
        e
    }

    pub fn gammas(&self) -> impl Iterator<Item = (&LinForm, i64)> {
        self.gammas.iter().map(|(l, e)| (l, *e))
    }

    pub fn polys(&self) -> impl Iterator<Item = (&LinForm, i64)> {
        self.polys.iter().map(|(l, e)| (l, *e))
    }

    pub fn mul(&self, other: &GammaExpr) -> GammaExpr {
        let mut out = self.clone();
        out.scalar *= &other.scalar;
        for (l, e) in &other.gammas {
            let slot = out.gammas.entry(l.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.gammas.remove(l);
            }
        }
        for (l, e) in &other.polys {
            let slot = out.polys.entry(l.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                out.polys.remove(l);
            }
        }
        out
    }

    pub fn pow(&self, k: i64) -> Result<GammaExpr> {
        Ok(GammaExpr {
            scalar: rat_pow(&self.scalar, k)?,
            gammas: self.gammas.iter().map(|(l, e)| (l.clone(), e * k)).collect(),
            polys: self.polys.iter().map(|(l, e)| (l.clone(), e * k)).collect(),
        })
    }

    pub fn div(&self, other: &GammaExpr) -> Result<GammaExpr> {
        Ok(self.mul(&other.pow(-1)?))
    }

    /// Sum of exponent-weighted gamma arguments; zero for any
    /// correctly transcribed reflection or product identity.
    pub fn argument_sum(&self) -> LinForm {
        let mut acc = LinForm::zero();
        for (l, e) in &self.gammas {
            acc = acc.add(&l.scale(&BigRational::from_integer((*e).into())));
        }
        acc
    }

    pub fn is_balanced(&self) -> bool {
        self.argument_sum().is_zero()
    }

    /// Canonical form; errors when a constant gamma argument sits at a
    /// pole or a zero polynomial factor is inverted.
    pub fn normalize(&self) -> Result<GammaExpr> {
        let mut out = GammaExpr::from_scalar(self.scalar.clone());
        for (l, e) in &self.gammas {
            if *e == 0 {
                continue;
            }
            let (l0, shift) = l.split_unit_interval();
            if shift >= 0 {
                for j in 0..shift {
                    push_poly(&mut out, l0.shift(j), *e)?;
                }
            } else {
                for j in shift..0 {
                    push_poly(&mut out, l0.shift(j), -e)?;
                }
            }
            if !(l0.is_constant() && l0.konst().is_one()) {
                let slot = out.gammas.entry(l0).or_insert(0);
                *slot += e;
            }
        }
        out.gammas.retain(|_, e| *e != 0);
        for (l, e) in &self.polys {
            push_poly(&mut out, l.clone(), *e)?;
        }
        out.polys.retain(|_, e| *e != 0);
        if out.scalar.is_zero() {
            return Ok(GammaExpr::from_scalar(BigRational::zero()));
        }
        Ok(out)
    }

    pub fn substitute(&self, point: &BTreeMap<String, BigRational>) -> Result<GammaExpr> {
        let mut out = GammaExpr::from_scalar(self.scalar.clone());
        for (l, e) in &self.gammas {
            let c = LinForm::constant(l.eval_rational(point)?);
            *out.gammas.entry(c).or_insert(0) += e;
        }
        for (l, e) in &self.polys {
            let c = LinForm::constant(l.eval_rational(point)?);
            *out.polys.entry(c).or_insert(0) += e;
        }
        Ok(out)
    }

    /// Exact rational value when no transcendental factor survives
    /// normalization.
    pub fn as_exact(&self) -> Result<Option<BigRational>> {
        let nz = self.normalize()?;
        if nz.gammas.is_empty() && nz.polys.is_empty() {
            Ok(Some(nz.scalar))
        } else {
            Ok(None)
        }
    }

    /// Numeric value at a rational point under the formal-to-classical
    /// specialization rule (see the module docs).
    pub fn numeric_at(
        &self,
        point: &BTreeMap<String, BigRational>,
        prec: u32,
    ) -> Result<AppFloat> {
        let mut acc = AppFloat::from_rational(&self.scalar, prec);
        let mut gamma_coeff = BigRational::zero();
        for (l, e) in &self.gammas {
            let x = l.eval_rational(point)?;
            gamma_coeff += (&x - l.konst()) * BigRational::from_integer((*e).into());
            let g = gamma(&AppFloat::from_rational(&x, prec))?;
            acc = acc.mul(&g.pow_int(*e)?);
        }
        if !gamma_coeff.is_zero() {
            let arg = euler_gamma(prec).mul(&AppFloat::from_rational(&gamma_coeff, prec));
            acc = acc.mul(&exp(&arg)?);
        }
        for (l, e) in &self.polys {
            let x = l.eval_rational(point)?;
            if x.is_zero() && *e < 0 {
                return Err(Error::PoleArgument);
            }
            acc = acc.mul(&AppFloat::from_rational(&rat_pow(&x, *e)?, prec));
        }
        Ok(acc)
    }

    /// Multivariate series of the whole product around the origin, in
    /// the given variable order. Gamma factors with constant class 1
    /// expand through the a-coefficients; class 1/2 through
    /// zeta(k, 1/2) = (2^k - 1) zeta(k); any other fractional class
    /// must cancel within the expression.
    pub fn gamma_expand(
        &self,
        vars: &[&str],
        trunc: u32,
        a: &ACoeffs,
    ) -> Result<MSeries<AppFloat>> {
        let nz = self.normalize()?;
        let prec = a.prec;
        let linear_ms = |l: &LinForm| -> Result<MSeries<AppFloat>> {
            let mut m = MSeries::zero_t(trunc);
            for (v, c) in l.coeffs() {
                let i = vars
                    .iter()
                    .position(|n| n == v)
                    .ok_or_else(|| Error::MissingParam(v.clone()))?;
                m = m.add_ms(&MSeries::var(i, trunc).scale(&AppFloat::from_rational(c, prec)));
            }
            Ok(m)
        };

        let mut log_acc = MSeries::zero_t(trunc);
        let mut half_members: Vec<(MSeries<AppFloat>, i64)> = Vec::new();
        let mut class_sums: BTreeMap<BigRational, i64> = BTreeMap::new();
        let mut other_parts: BTreeMap<(BigRational, LinForm), i64> = BTreeMap::new();
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        for (l, e) in &nz.gammas {
            let v = linear_ms(l)?;
            if l.konst() == &one {
                let coeffs = a.coeff_vec(trunc)?;
                log_acc = log_acc.add_ms(&scale_int(&compose_1var(&coeffs, &v)?, *e));
            } else {
                *class_sums.entry(l.konst().clone()).or_insert(0) += e;
                if l.konst() == &half {
                    half_members.push((v, *e));
                } else {
                    *other_parts
                        .entry((l.konst().clone(), l.linear_part()))
                        .or_insert(0) += e;
                }
            }
        }
        for (c, s) in &class_sums {
            if *s != 0 {
                return Err(Error::FractionalOffset(format!(
                    "class {c} has exponent sum {s}"
                )));
            }
        }
        for ((c, lp), e) in &other_parts {
            if *e != 0 {
                return Err(Error::FractionalOffset(format!(
                    "cannot expand gamma factors with variable part {lp} at class {c}"
                )));
            }
        }
        if !half_members.is_empty() {
            // log G(1/2 + t) - log G(1/2)
            //   = -2 ln2 t + sum_{k>=2} (-1)^k (2^k - 1) zeta(k)/k t^k
            let mut coeffs = vec![AppFloat::zero(), ln2(prec).mul_int(-2)];
            for k in 2..=trunc {
                let two_k = AppFloat::from_int(1).mul_2exp(k as i64).sub(&AppFloat::from_int(1));
                let z = zeta_int(k, prec).mul(&two_k).div_i64(k as i64);
                coeffs.push(if k % 2 == 1 { z.neg() } else { z });
            }
            for (v, e) in &half_members {
                log_acc = log_acc.add_ms(&scale_int(&compose_1var(&coeffs, v)?, *e));
            }
        }

        let mut out = log_acc.exp()?.scale(&AppFloat::from_rational(&nz.scalar, prec));
        for (l, e) in &nz.polys {
            let mut m = linear_ms(l)?;
            m.add_to(vec![], &AppFloat::from_rational(l.konst(), prec));
            if *e > 0 {
                for _ in 0..*e {
                    out = out.mul_ms(&m);
                }
            } else {
                let mi = m.inv().map_err(|_| Error::PoleArgument)?;
                for _ in 0..e.unsigned_abs() {
                    out = out.mul_ms(&mi);
                }
            }
        }
        Ok(out)
    }
}

fn scale_int(m: &MSeries<AppFloat>, e: i64) -> MSeries<AppFloat> {
    m.scale(&AppFloat::from_int(e))
}

/// Multiply a polynomial factor in, splitting content so the stored
/// linform is primitive with positive leading coefficient.
fn push_poly(out: &mut GammaExpr, l: LinForm, e: i64) -> Result<()> {
    if e == 0 {
        return Ok(());
    }
    if l.is_zero() {
        if e < 0 {
            return Err(Error::PoleArgument);
        }
        out.scalar = BigRational::zero();
        return Ok(());
    }
    if l.is_constant() {
        out.scalar *= rat_pow(l.konst(), e)?;
        return Ok(());
    }
    // content: first variable coefficient fixes the sign
    let lead = l.coeffs().values().next().expect("nonconstant").clone();
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    let mut fold = |r: &BigRational| {
        if !r.is_zero() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, r.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, r.denom());
        }
    };
    for c in l.coeffs().values() {
        fold(c);
    }
    fold(l.konst());
    let mut content = BigRational::new(num_gcd, den_lcm);
    if lead.is_negative() {
        content = -content;
    }
    let prim = l.scale(&content.clone().recip());
    out.scalar *= rat_pow(&content, e)?;
    let slot = out.polys.entry(prim).or_insert(0);
    *slot += e;
    Ok(())
}

impl fmt::Display for GammaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num: Vec<String> = Vec::new();
        let mut den: Vec<String> = Vec::new();
        let part = |l: &LinForm, e: i64, gamma: bool| {
            let base = if gamma {
                format!("G({l})")
            } else {
                format!("({l})")
            };
            if e.unsigned_abs() == 1 {
                base
            } else {
                format!("{base}^{}", e.unsigned_abs())
            }
        };
        for (l, e) in &self.polys {
            if *e > 0 {
                num.push(part(l, *e, false));
            } else if *e < 0 {
                den.push(part(l, *e, false));
            }
        }
        for (l, e) in &self.gammas {
            if *e > 0 {
                num.push(part(l, *e, true));
            } else if *e < 0 {
                den.push(part(l, *e, true));
            }
        }
        let fmt_rat = |r: &BigRational| {
            if r.denom().is_one() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        if num.is_empty() || !self.scalar.is_one() {
            num.insert(0, fmt_rat(&self.scalar));
        }
        write!(f, "{}", num.join(" * "))?;
        for d in den {
            write!(f, " / {d}")?;
        }
        Ok(())
    }
}

/// Grammar: product of factors joined by `*` or `/`, each factor
/// `G(<linear form>)`, `(<linear form>)`, or a rational, optionally
/// raised by `^<integer>`.
pub fn parse_gamma_expr(s: &str) -> Result<GammaExpr> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let e = p.expression()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {:?}", b as char)))
        }
    }

    fn expression(&mut self) -> Result<GammaExpr> {
        self.ws();
        let mut acc = self.term()?;
        loop {
            self.ws();
            if self.eat(b'*') {
                self.ws();
                acc = acc.mul(&self.term()?);
            } else if self.eat(b'/') {
                self.ws();
                acc = acc.div(&self.term()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GammaExpr> {
        let f = self.factor()?;
        self.ws();
        if self.eat(b'^') {
            self.ws();
            let e = self.integer()?;
            return f.pow(e);
        }
        Ok(f)
    }

    fn factor(&mut self) -> Result<GammaExpr> {
        self.ws();
        match self.peek() {
            Some(b'G') => {
                self.pos += 1;
                self.ws();
                self.expect(b'(')?;
                let l = self.linform()?;
                self.expect(b')')?;
                Ok(GammaExpr::gamma(l))
            }
            Some(b'(') => {
                self.pos += 1;
                let l = self.linform()?;
                self.expect(b')')?;
                Ok(GammaExpr::poly(l))
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(GammaExpr::from_scalar(r))
            }
            _ => Err(self.err("expected 'G(', '(' or a number")),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        let v: i64 = digits
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let neg = self.eat(b'-');
        self.ws();
        let num = self.natural()?;
        let den = if self.eat(b'/') {
            let d = self.natural()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        let r = BigRational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(digits.parse().expect("digits"))
    }

    fn ident(&mut self) -> Result<String> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == b'_') {
            return Err(self.err("expected a variable name"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .to_string())
    }

    /// linear form: [-] term { (+|-) term }, term = rational ['*' var]
    /// or var.
    fn linform(&mut self) -> Result<LinForm> {
        self.ws();
        let mut acc = LinForm::zero();
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        loop {
            self.ws();
            let term = self.linterm()?;
            acc = acc.add(&if sign < 0 { term.neg() } else { term });
            self.ws();
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn linterm(&mut self) -> Result<LinForm> {
        self.ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                self.ws();
                if self.eat(b'*') {
                    self.ws();
                    let v = self.ident()?;
                    Ok(LinForm::var(&v).scale(&r))
                } else {
                    Ok(LinForm::constant(r))
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let v = self.ident()?;
                Ok(LinForm::var(&v))
            }
            _ => Err(self.err("expected a linear-form term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associator::build_kz;
    use crate::gammacalc::series::{b_prime_from_table, extract_gamma_coeffs};
    use crate::series::transcend::pi;
    use once_cell::sync::Lazy;

    static TABLE: Lazy<crate::associator::KzTable> =
        Lazy::new(|| build_kz(8, 45).expect("weight-8 build"));
    static A: Lazy<ACoeffs> = Lazy::new(|| extract_gamma_coeffs(&TABLE).expect("extraction"));

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn parse_display_roundtrip() {
        let e = parse_gamma_expr("G(2*c)*G(1-a)/G(2*c-a+1)").unwrap();
        let shown = e.to_string();
        let back = parse_gamma_expr(&shown).unwrap();
        assert_eq!(
            e.normalize().unwrap(),
            back.normalize().unwrap(),
            "display {shown} must reparse"
        );
        assert!(parse_gamma_expr("G(a").is_err());
        assert!(parse_gamma_expr("H(a)").is_err());
        match parse_gamma_expr("G(a) ** G(b)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn functional_equation_normalization() {
        let lhs = parse_gamma_expr("G(a+2)").unwrap().normalize().unwrap();
        let rhs = parse_gamma_expr("(a+1)*(a)*G(a)")
            .unwrap()
            .normalize()
            .unwrap();
        // G(a) itself normalizes to G(a+1)/a, so both reach (a+1) G(a+1)
        assert_eq!(lhs, rhs);
        let six = parse_gamma_expr("G(4)").unwrap().normalize().unwrap();
        assert_eq!(six.as_exact().unwrap(), Some(rat(6, 1)));
        assert!(parse_gamma_expr("G(0)").unwrap().normalize().is_err());
        assert!(parse_gamma_expr("G(-2)").unwrap().normalize().is_err());
    }

    #[test]
    fn balance_and_substitution() {
        let b = parse_gamma_expr("G(a)*G(b)/G(a+b)").unwrap();
        assert!(b.is_balanced());
        assert!(!parse_gamma_expr("G(a)").unwrap().is_balanced());
        let q = parse_gamma_expr("G(a+3)/G(a)").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), rat(2, 1));
        let v = q.substitute(&pt).unwrap().as_exact().unwrap();
        assert_eq!(v, Some(rat(24, 1)));
    }

    #[test]
    fn numeric_specialization() {
        let prec = 180;
        // G(1/2)^2 = pi
        let e = parse_gamma_expr("G(1/2)^2").unwrap();
        let v = e.numeric_at(&BTreeMap::new(), prec).unwrap();
        assert!(v.sub(&pi(prec)).abs_upper_f64() < 1e-50);
        // the specialization rule respects the functional equation
        let lhs = parse_gamma_expr("G(a+1)").unwrap();
        let rhs = parse_gamma_expr("(a)*G(a)").unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), rat(3, 7));
        let d = lhs
            .numeric_at(&pt, prec)
            .unwrap()
            .sub(&rhs.numeric_at(&pt, prec).unwrap());
        assert!(d.contains_zero() && d.abs_upper_f64() < 1e-50);
    }

    #[test]
    fn series_expansion_matches_beta_series() {
        let e = parse_gamma_expr("G(1+a)*G(1+b)/G(1+a+b)").unwrap();
        let s = e.gamma_expand(&["a", "b"], 8, &A).unwrap();
        let direct = b_prime_from_table(&TABLE);
        let worst = s.sub_ms(&direct).max_by_measure(|c| c.abs_upper_f64());
        assert!(worst < 1e-36, "worst residual {worst}");
    }

    #[test]
    fn series_expansion_functional_equation() {
        let lhs = parse_gamma_expr("G(a+1)").unwrap();
        let rhs = parse_gamma_expr("(a)*G(a)").unwrap();
        let sl = lhs.gamma_expand(&["a"], 8, &A).unwrap();
        let sr = rhs.gamma_expand(&["a"], 8, &A).unwrap();
        let worst = sl.sub_ms(&sr).max_by_measure(|c| c.abs_upper_f64());
        assert!(worst < 1e-40, "worst residual {worst}");
    }

    #[test]
    fn half_class_expansion_against_numeric() {
        let e = parse_gamma_expr("G(a+1/2)/G(1/2)").unwrap();
        let s = e.gamma_expand(&["a"], 8, &A).unwrap();
        let mut pt = BTreeMap::new();
        pt.insert("a".to_string(), rat(1, 100));
        let series_val = s
            .eval(&[AppFloat::from_rational(&rat(1, 100), 180)])
            .unwrap();
        let exact = e.numeric_at(&pt, 180).unwrap();
        // truncation tail at degree 9 is about (2/100)^9 * 2^9/9
        assert!(series_val.sub(&exact).abs_upper_f64() < 1e-12);
    }

    #[test]
    fn fractional_class_must_cancel() {
        let lone = parse_gamma_expr("G(a+1/2)").unwrap();
        assert!(matches!(
            lone.gamma_expand(&["a"], 6, &A),
            Err(Error::FractionalOffset(_))
        ));
        let third = parse_gamma_expr("G(a+1/3)/G(b+1/3)").unwrap();
        assert!(matches!(
            third.gamma_expand(&["a", "b"], 6, &A),
            Err(Error::FractionalOffset(_))
        ));
        // identical variable parts at an unsupported class cancel fine
        let paired = parse_gamma_expr("G(a+1/3)/G(a+1/3)").unwrap();
        let s = paired.gamma_expand(&["a"], 6, &A).unwrap();
        let worst = s
            .sub_ms(&MSeries::constant(AppFloat::from_int(1), 6))
            .max_by_measure(|c| c.abs_upper_f64());
        assert_eq!(worst, 0.0);
    }

    #[test]
    fn pole_from_inverted_zero_poly() {
        let e = parse_gamma_expr("G(a)/(a)").unwrap();
        assert!(matches!(
            e.gamma_expand(&["a"], 6, &A),
            Err(Error::PoleArgument)
        ));
    }
}
