//! Arbitrary-precision ball arithmetic.
//!
//! An `AppFloat` is an interval `mid +/- rad` with a big-integer
//! midpoint `mid = man * 2^exp` and a directed-rounding [`Mag`] radius.
//! Every operation produces a ball containing the exact image of the
//! input balls. `prec` controls midpoint rounding only; `PREC_EXACT`
//! marks values that are never rounded (integers, exact dyadics), and
//! mixing an exact value with a rounded one inherits the rounded
//! operand's precision.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::mag::Mag;
use super::scalar::ScalarRing;
use crate::error::{Error, Result};

pub const PREC_EXACT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct AppFloat {
    man: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

fn combine_prec(a: u32, b: u32) -> u32 {
    if a == PREC_EXACT {
        b
    } else if b == PREC_EXACT {
        a
    } else {
        a.max(b)
    }
}

impl AppFloat {
    pub fn zero() -> Self {
        AppFloat {
            man: BigInt::zero(),
            exp: 0,
            rad: Mag::zero(),
            prec: PREC_EXACT,
        }
    }

    pub fn from_int(n: i64) -> Self {
        AppFloat {
            man: n.into(),
            exp: 0,
            rad: Mag::zero(),
            prec: PREC_EXACT,
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        AppFloat {
            man: n,
            exp: 0,
            rad: Mag::zero(),
            prec: PREC_EXACT,
        }
    }

    pub fn from_parts(man: BigInt, exp: i64, rad: Mag, prec: u32) -> Self {
        let mut x = AppFloat {
            man,
            exp,
            rad,
            prec,
        };
        x.round_in_place();
        x
    }

    /// Exact ball from a finite f64 (quadrature results enter here).
    pub fn from_f64_exact(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite f64 cannot become a ball");
        if x == 0.0 {
            return AppFloat::zero();
        }
        let bits = x.to_bits();
        let expbits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (man, exp) = if expbits == 0 {
            (BigInt::from(frac), -1074)
        } else {
            (BigInt::from(frac | (1u64 << 52)), expbits - 1075)
        };
        let man = if bits >> 63 == 1 { -man } else { man };
        let mut out = AppFloat {
            man,
            exp,
            rad: Mag::zero(),
            prec: PREC_EXACT,
        };
        out.round_in_place();
        out
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        AppFloat::from_bigint(r.numer().clone()).div_int(r.denom(), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid_man(&self) -> &BigInt {
        &self.man
    }

    pub fn mid_exp(&self) -> i64 {
        self.exp
    }

    /// Round the midpoint to `prec` bits, absorbing the error into rad.
    fn round_in_place(&mut self) {
        if self.prec == PREC_EXACT {
            // Keep exact chains compact: strip trailing zero bits.
            if !self.man.is_zero() {
                if let Some(tz) = self.man.trailing_zeros() {
                    if tz > 0 {
                        self.man >>= tz;
                        self.exp += tz as i64;
                    }
                }
            }
            return;
        }
        let bits = self.man.bits();
        if bits <= self.prec as u64 {
            return;
        }
        let d = (bits - self.prec as u64) as i64;
        // Round to nearest by adding half before the shift.
        let half: BigInt = BigInt::from(1) << (d - 1) as u64;
        let shifted = if self.man.sign() == Sign::Minus {
            -((-&self.man + half) >> d as u64)
        } else {
            (&self.man + half) >> d as u64
        };
        self.man = shifted;
        self.exp += d;
        // |error| <= 2^(new_exp - 1)
        self.rad = self.rad.add(&Mag::pow2(self.exp - 1));
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec;
        self.round_in_place();
        self
    }

    pub fn is_exact_zero(&self) -> bool {
        self.man.is_zero() && self.rad.is_zero()
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// Upper bound for |self| (midpoint magnitude plus radius).
    pub fn abs_upper(&self) -> Mag {
        Mag::from_bigint(&self.man, self.exp).add(&self.rad)
    }

    /// Lower bound for |self|; zero if the ball straddles zero.
    pub fn abs_lower(&self) -> Mag {
        Mag::from_bigint_lower(&self.man, self.exp).sub_lower(&self.rad)
    }

    pub fn neg(&self) -> Self {
        AppFloat {
            man: -&self.man,
            exp: self.exp,
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        AppFloat {
            man: self.man.abs(),
            exp: self.exp,
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Self {
        AppFloat {
            man: self.man.clone(),
            exp: self.exp + e,
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = combine_prec(self.prec, other.prec);
        if self.man.is_zero() && self.rad.is_zero() {
            return other.clone().with_prec(prec);
        }
        if other.man.is_zero() && other.rad.is_zero() {
            return self.clone().with_prec(prec);
        }
        let (hi, lo) = if self.exp >= other.exp {
            (self, other)
        } else {
            (other, self)
        };
        let d = (hi.exp - lo.exp) as u64;
        // If aligning would be much wider than prec, absorb lo's
        // midpoint into the radius instead.
        let span = hi.man.bits() + d;
        let limit = if prec == PREC_EXACT {
            u64::MAX
        } else {
            prec as u64 + lo.man.bits() + 64
        };
        if span > limit && !lo.man.is_zero() {
            let mut out = AppFloat {
                man: hi.man.clone(),
                exp: hi.exp,
                rad: hi
                    .rad
                    .add(&lo.rad)
                    .add(&Mag::from_bigint(&lo.man, lo.exp)),
                prec,
            };
            out.round_in_place();
            return out;
        }
        let man = (&hi.man << d) + &lo.man;
        let mut out = AppFloat {
            man,
            exp: lo.exp,
            rad: hi.rad.add(&lo.rad),
            prec,
        };
        out.round_in_place();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = combine_prec(self.prec, other.prec);
        let ma = Mag::from_bigint(&self.man, self.exp);
        let mb = Mag::from_bigint(&other.man, other.exp);
        let rad = ma
            .mul(&other.rad)
            .add(&mb.mul(&self.rad))
            .add(&self.rad.mul(&other.rad));
        let mut out = AppFloat {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
            rad,
            prec,
        };
        out.round_in_place();
        out
    }

    pub fn mul_int(&self, n: i64) -> Self {
        let mut out = AppFloat {
            man: &self.man * n,
            exp: self.exp,
            rad: self.rad.mul(&Mag::from_u64(n.unsigned_abs())),
            prec: self.prec,
        };
        out.round_in_place();
        out
    }

    /// Divide by an exact nonzero big integer.
    pub fn div_int(&self, n: &BigInt, prec_if_exact: u32) -> Self {
        assert!(!n.is_zero());
        let prec = if self.prec == PREC_EXACT {
            prec_if_exact
        } else {
            self.prec
        };
        let work = if prec == PREC_EXACT { 128 } else { prec + 2 };
        // Scale the numerator so the quotient keeps `work` bits.
        let shift = (work as i64 + n.bits() as i64 - self.man.bits() as i64).max(0) as u64;
        let num: BigInt = &self.man << shift;
        let q = &num / n;
        let rem = &num - &q * n;
        let exp = self.exp - shift as i64;
        if rem.is_zero() && self.prec == PREC_EXACT && self.rad.is_zero() {
            let mut out = AppFloat {
                man: q,
                exp,
                rad: Mag::zero(),
                prec: PREC_EXACT,
            };
            out.round_in_place();
            return out;
        }
        let mut rad = if self.rad.is_zero() {
            Mag::zero()
        } else {
            self.rad.div_lower(&Mag::from_bigint_lower(n, 0))
        };
        if !rem.is_zero() {
            // Truncated quotient: off by at most one ulp.
            rad = rad.add(&Mag::pow2(exp));
        }
        let mut out = AppFloat { man: q, exp, rad, prec };
        out.round_in_place();
        out
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let prec = combine_prec(self.prec, other.prec);
        let den_lo = other.abs_lower();
        if den_lo.is_zero() {
            return Err(Error::Precision(
                "division by a ball containing zero".to_string(),
            ));
        }
        if other.rad.is_zero() {
            // Exact denominator: reuse integer division on mantissas.
            let mut out =
                AppFloat {
                    man: self.man.clone(),
                    exp: self.exp - other.exp,
                    rad: self.rad.mul_2exp(-other.exp),
                    prec: self.prec,
                }
                .div_int(&other.man, prec);
            out.prec = prec;
            out.round_in_place();
            return Ok(out);
        }
        let work = if prec == PREC_EXACT { 128 } else { prec + 2 };
        let shift =
            (work as i64 + other.man.bits() as i64 - self.man.bits() as i64).max(0) as u64;
        let num: BigInt = &self.man << shift;
        let q = &num / &other.man;
        let exp = self.exp - other.exp - shift as i64;
        // |a/b - ma/mb| <= (ra + |ma/mb| rb) / |b|_lower, plus one ulp
        // of truncation.
        let quot_mag = Mag::from_bigint(&q, exp).add(&Mag::pow2(exp));
        let rad = self
            .rad
            .add(&quot_mag.mul(&other.rad))
            .div_lower(&den_lo)
            .add(&Mag::pow2(exp));
        let mut out = AppFloat { man: q, exp, rad, prec };
        out.round_in_place();
        Ok(out)
    }

    /// Integer power by squaring. Negative exponents invert at the end.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(AppFloat::from_int(1));
        }
        let mut base = self.clone();
        let mut k = e.unsigned_abs();
        let mut acc = AppFloat::from_int(1);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        if e < 0 {
            acc = AppFloat::from_int(1).div(&acc)?;
        }
        Ok(acc)
    }

    /// Copy at the given precision (rounds only if the midpoint is wider).
    pub fn at_prec(&self, prec: u32) -> Self {
        self.clone().with_prec(prec)
    }

    /// Divide by a nonzero machine integer, keeping exactness when possible.
    pub fn div_i64(&self, n: i64) -> Self {
        self.div_int(&BigInt::from(n), PREC_EXACT)
    }

    /// Enlarge the radius.
    pub fn add_error(&self, extra: Mag) -> Self {
        let mut out = self.clone();
        out.rad = out.rad.add(&extra);
        out
    }

    /// Midpoint as f64 (diagnostics only).
    pub fn to_f64(&self) -> f64 {
        let bits = self.man.bits();
        if bits == 0 {
            return 0.0;
        }
        if bits > 300 {
            // Take the top 60 bits and adjust the exponent.
            let s = bits - 60;
            let top: BigInt = &self.man >> s;
            return top.to_f64().unwrap_or(0.0)
                * 2.0f64.powi((self.exp + s as i64).clamp(-2000, 2000) as i32);
        }
        self.man.to_f64().unwrap_or(0.0) * 2.0f64.powi(self.exp.clamp(-2000, 2000) as i32)
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad.to_f64()
    }

    /// Upper bound of |self| as f64, saturating.
    pub fn abs_upper_f64(&self) -> f64 {
        self.abs_upper().to_f64()
    }

    /// True if |self| is certainly below `tol`.
    pub fn certainly_below(&self, tol: f64) -> bool {
        self.abs_upper_f64() < tol
    }

    pub fn sign_of_mid(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Midpoint as an exact rational.
    pub fn mid_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::from(1) << (-self.exp) as u64)
        }
    }

    /// Decimal string of the midpoint with `digits` significant digits,
    /// scientific form `[-]d.ddd...e<exp>`.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.man.is_zero() {
            return "0".to_string();
        }
        let neg = self.man.sign() == Sign::Minus;
        let a = self.man.abs();
        // decimal exponent estimate of a * 2^exp
        let log10 = (a.bits() as f64 + self.exp as f64) * std::f64::consts::LOG10_2;
        let mut dec_exp = log10.floor() as i64;
        // digits of D = round(a * 2^exp * 10^(digits-1-dec_exp))
        let mut d = Self::scaled_decimal(&a, self.exp, digits as i64 - 1 - dec_exp);
        let want = BigInt::from(10u32).pow(digits as u32);
        let lo = BigInt::from(10u32).pow(digits as u32 - 1);
        while d >= want {
            dec_exp += 1;
            d = Self::scaled_decimal(&a, self.exp, digits as i64 - 1 - dec_exp);
        }
        while d < lo {
            dec_exp -= 1;
            d = Self::scaled_decimal(&a, self.exp, digits as i64 - 1 - dec_exp);
        }
        let s = d.to_string();
        let (first, rest) = s.split_at(1);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(first);
        if !rest.is_empty() {
            out.push('.');
            out.push_str(rest);
        }
        out.push('e');
        out.push_str(&dec_exp.to_string());
        out
    }

    /// round(a * 2^exp * 10^k) for nonnegative a.
    fn scaled_decimal(a: &BigInt, exp: i64, k: i64) -> BigInt {
        let mut num = a.clone();
        let mut den = BigInt::from(1);
        if exp >= 0 {
            num <<= exp as u64;
        } else {
            den <<= (-exp) as u64;
        }
        if k >= 0 {
            num *= BigInt::from(10u32).pow(k as u32);
        } else {
            den *= BigInt::from(10u32).pow((-k) as u32);
        }
        (&num + (&den >> 1)) / den
    }

    /// Parse scientific-notation decimal into a ball at `prec` bits,
    /// with one extra ulp of parse slack in the radius.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self> {
        let r = parse_decimal_rational(s)?;
        let mut x = AppFloat::from_rational(&r, prec);
        if x.rad.is_zero() && !x.man.is_zero() {
            x.rad = Mag::pow2(x.exp);
        }
        Ok(x)
    }
}

pub fn parse_decimal_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let err = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {t:?}"),
    };
    if t.is_empty() {
        return Err(err("empty number"));
    }
    let (mant, exp10) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (mant, neg) = match mant.strip_prefix('-') {
        Some(m) => (m, true),
        None => (mant.strip_prefix('+').unwrap_or(mant), false),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(err("bad digit"));
    }
    let n: BigInt = all.parse().map_err(|_| err("bad mantissa"))?;
    let n = if neg { -n } else { n };
    let shift = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let r = if shift >= 0 {
        BigRational::from_integer(n * ten.pow(shift as u32))
    } else {
        BigRational::new(n, ten.pow((-shift) as u32))
    };
    Ok(r)
}

impl PartialEq for AppFloat {
    /// Structural equality of balls (same midpoint, radius, precision).
    fn eq(&self, other: &Self) -> bool {
        self.man == other.man
            && self.exp == other.exp
            && self.rad == other.rad
            && self.prec == other.prec
    }
}

impl ScalarRing for AppFloat {
    fn zero() -> Self {
        AppFloat::zero()
    }
    fn one() -> Self {
        AppFloat::from_int(1)
    }
    fn add(&self, other: &Self) -> Self {
        AppFloat::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        AppFloat::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        AppFloat::mul(self, other)
    }
    fn neg(&self) -> Self {
        AppFloat::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn from_i64(n: i64) -> Self {
        AppFloat::from_int(n)
    }
    fn div_i64(&self, n: i64) -> Self {
        AppFloat::div_i64(self, n)
    }
    fn try_invert(&self) -> Option<Self> {
        AppFloat::from_int(1).div(self).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: f64, y: f64, tol: f64) {
        assert!((x - y).abs() <= tol, "{x} vs {y}");
    }

    #[test]
    fn exact_integer_arithmetic() {
        let a = AppFloat::from_int(7);
        let b = AppFloat::from_int(-3);
        let c = a.mul(&b).add(&AppFloat::from_int(1));
        assert_eq!(c.to_f64(), -20.0);
        assert!(c.rad().is_zero());
        assert_eq!(c.prec(), PREC_EXACT);
    }

    #[test]
    fn rational_rounding_and_radius() {
        let third = AppFloat::from_rational(&BigRational::new(1.into(), 3.into()), 128);
        close(third.to_f64(), 1.0 / 3.0, 1e-15);
        assert!(!third.rad().is_zero());
        assert!(third.rad_f64() < 1e-36);
        // containment: 3 * (1/3) must contain 1
        let one = third.mul_int(3).sub(&AppFloat::from_int(1));
        assert!(one.contains_zero());
    }

    #[test]
    fn division_containment() {
        let a = AppFloat::from_rational(&BigRational::new(22.into(), 7.into()), 160);
        let b = AppFloat::from_rational(&BigRational::new(355.into(), 113.into()), 160);
        let q = a.div(&b).unwrap();
        close(q.to_f64(), (22.0 / 7.0) / (355.0 / 113.0), 1e-14);
        let back = q.mul(&b).sub(&a);
        assert!(back.contains_zero());
        assert!(AppFloat::from_int(1)
            .div(&AppFloat::zero())
            .is_err());
    }

    #[test]
    fn pow_and_bounds() {
        let x = AppFloat::from_rational(&BigRational::new(3.into(), 2.into()), 100);
        let y = x.pow_int(10).unwrap();
        close(y.to_f64(), 1.5f64.powi(10), 1e-10);
        let z = x.pow_int(-2).unwrap();
        close(z.to_f64(), 1.0 / 2.25, 1e-14);
        assert!(y.abs_upper().to_f64() >= y.to_f64());
        assert!(y.abs_lower().to_f64() <= y.to_f64());
    }

    #[test]
    fn decimal_roundtrip() {
        let x = AppFloat::from_rational(&BigRational::new(1.into(), 7.into()), 200);
        let s = x.to_decimal(40);
        let y = AppFloat::parse_decimal(&s, 200).unwrap();
        let d = x.sub(&y);
        assert!(d.abs_upper_f64() < 1e-38);
        assert_eq!(AppFloat::from_int(-250).to_decimal(3), "-2.50e2");
        assert_eq!(AppFloat::zero().to_decimal(10), "0");
        let r = parse_decimal_rational("1.25e-2").unwrap();
        assert_eq!(r, BigRational::new(1.into(), 80.into()));
    }

    #[test]
    fn mixed_precision_combination() {
        let exact = AppFloat::from_int(5);
        let rounded = AppFloat::from_rational(&BigRational::new(1.into(), 3.into()), 96);
        assert_eq!(exact.add(&rounded).prec(), 96);
        assert_eq!(exact.mul(&rounded).prec(), 96);
    }

    #[test]
    fn absorb_tiny_addend() {
        // Adding 2^-100000 to 1 at 64 bits must not allocate huge
        // mantissas, just widen the radius.
        let tiny = AppFloat::from_int(1).mul_2exp(-100_000);
        let one = AppFloat::from_int(1).with_prec(64);
        let s = one.add(&tiny);
        assert!(s.mid_man().bits() <= 70);
        let diff = s.sub(&AppFloat::from_int(1));
        assert!(diff.abs_upper_f64() < 1e-15);
    }
}
