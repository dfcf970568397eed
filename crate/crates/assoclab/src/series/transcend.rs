//! Transcendental kernels over ball arithmetic.
//!
//! Every series here carries an explicit truncation bound that is added
//! to the result radius, so outputs are genuine enclosures: exp/ln/sin
//! by argument reduction plus Taylor or atanh series, pi by Machin's
//! formula, log-gamma and digamma by recurrence shift plus Stirling
//! with a Bernoulli remainder bound, Hurwitz zeta by Euler-Maclaurin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

use super::float::AppFloat;
use super::mag::Mag;
use crate::error::{Error, Result};

/// B_{2j} for j = 1..=17 as (numerator, denominator).
pub const BERNOULLI: [(i64, i64); 17] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
    (8553103, 6),
    (-23749461029, 870),
    (8615841276005, 14322),
    (-7709321041217, 510),
    (2577687858367, 6),
];

fn bern(j: usize) -> BigRational {
    let (n, d) = BERNOULLI[j - 1];
    BigRational::new(n.into(), d.into())
}

static CONSTS: Lazy<Mutex<HashMap<(u8, u32), AppFloat>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn cached(id: u8, prec: u32, compute: impl FnOnce() -> AppFloat) -> AppFloat {
    if let Some(v) = CONSTS.lock().unwrap().get(&(id, prec)) {
        return v.clone();
    }
    let v = compute();
    CONSTS
        .lock()
        .unwrap()
        .insert((id, prec), v.clone());
    v
}

fn below_pow2(m: &Mag, e: i64) -> bool {
    m.is_zero() || !m.cmp_ge(&Mag::pow2(e))
}

/// arctan(1/q) for integer q >= 2: alternating series in 1/q^2.
fn atan_inv(q: i64, prec: u32) -> AppFloat {
    let stop = -(prec as i64) - 8;
    let inv_q2 = AppFloat::from_int(1)
        .div_int(&BigInt::from(q * q), prec + 16)
        .neg();
    let mut upow = AppFloat::from_int(1).div_int(&BigInt::from(q), prec + 16);
    let mut sum = AppFloat::zero();
    let mut j = 0i64;
    loop {
        let term = upow.div_i64(2 * j + 1);
        sum = sum.add(&term);
        if below_pow2(&term.abs_upper(), stop) {
            // Alternating with decreasing terms: tail below last term.
            return sum.add_error(term.abs_upper()).with_prec(prec);
        }
        upow = upow.mul(&inv_q2);
        j += 1;
    }
}

pub fn pi(prec: u32) -> AppFloat {
    cached(1, prec, || {
        let w = prec + 16;
        atan_inv(5, w)
            .mul_int(16)
            .sub(&atan_inv(239, w).mul_int(4))
            .with_prec(prec)
    })
}

pub fn ln2(prec: u32) -> AppFloat {
    cached(2, prec, || {
        // 2 atanh(1/3) = 2 sum 3^-(2j+1)/(2j+1); tail < last term.
        let w = prec + 16;
        let stop = -(w as i64) - 8;
        let inv9 = AppFloat::from_int(1).div_int(&BigInt::from(9), w + 16);
        let mut upow = AppFloat::from_int(1).div_int(&BigInt::from(3), w + 16);
        let mut sum = AppFloat::zero();
        let mut j = 0i64;
        loop {
            let term = upow.div_i64(2 * j + 1);
            sum = sum.add(&term);
            if below_pow2(&term.abs_upper(), stop) {
                return sum
                    .mul_int(2)
                    .add_error(term.abs_upper())
                    .with_prec(prec);
            }
            upow = upow.mul(&inv9);
            j += 1;
        }
    })
}

pub fn exp(x: &AppFloat) -> Result<AppFloat> {
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let w = prec + 32;
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1.0e6 {
        return Err(Error::Precision(format!(
            "exp argument out of supported range: {xf}"
        )));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let r = x.at_prec(w).sub(&ln2(w + 16).mul_int(k));
    // Taylor sum of exp(r), |r| <= 0.5 + input radius.
    if !below_pow2(&r.abs_upper(), 0) {
        return Err(Error::Precision(
            "exp reduction failed: radius too large".to_string(),
        ));
    }
    let stop = -(w as i64) - 4;
    let mut term = AppFloat::from_int(1).at_prec(w);
    let mut sum = term.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&r).div_i64(n);
        sum = sum.add(&term);
        if n > 2 && below_pow2(&term.abs_upper(), stop) {
            break;
        }
        n += 1;
        if n > 10_000 {
            return Err(Error::Precision("exp series did not converge".to_string()));
        }
    }
    // |r| <= 1 so the tail is below twice the last term.
    Ok(sum
        .add_error(term.abs_upper().mul(&Mag::from_u64(2)))
        .mul_2exp(k)
        .with_prec(prec))
}

pub fn ln(x: &AppFloat) -> Result<AppFloat> {
    if x.sign_of_mid() <= 0 || x.abs_lower().is_zero() {
        return Err(Error::PoleArgument);
    }
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let w = prec + 32;
    // x = m * 2^e with m in about [0.7, 1.42); pick e from the top 8
    // mantissa bits so huge exponents never touch f64.
    let bits = x.mid_man().bits();
    let e0 = bits as i64 + x.mid_exp();
    let top: u64 = {
        use num_traits::ToPrimitive;
        let a = num_traits::Signed::abs(x.mid_man());
        let shifted: BigInt = if bits <= 8 { a << (8 - bits) } else { a >> (bits - 8) };
        shifted.to_u64().unwrap_or(255)
    };
    let e = if top >= 181 { e0 } else { e0 - 1 };
    let m = x.at_prec(w).mul_2exp(-e);
    let one = AppFloat::from_int(1);
    let u = m.sub(&one).div(&m.add(&one))?;
    if !below_pow2(&u.abs_upper(), -2) {
        return Err(Error::Precision(
            "ln reduction failed: radius too large".to_string(),
        ));
    }
    let u2 = u.mul(&u);
    let stop = -(w as i64) - 4;
    let mut upow = u.clone();
    let mut sum = AppFloat::zero();
    let mut j = 0i64;
    loop {
        let term = upow.div_i64(2 * j + 1);
        sum = sum.add(&term);
        if below_pow2(&term.abs_upper(), stop) {
            // |u| <= 1/4: tail below u^2/(1-u^2) * last < last term.
            sum = sum.add_error(term.abs_upper());
            break;
        }
        upow = upow.mul(&u2);
        j += 1;
        if j > 100_000 {
            return Err(Error::Precision("ln series did not converge".to_string()));
        }
    }
    Ok(sum.mul_int(2).add(&ln2(w).mul_int(e)).with_prec(prec))
}

pub fn sin(x: &AppFloat) -> Result<AppFloat> {
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let w = prec + 32;
    let xf = x.to_f64();
    if !xf.is_finite() || xf.abs() > 1.0e6 {
        return Err(Error::Precision(format!(
            "sin argument out of supported range: {xf}"
        )));
    }
    let two_pi = pi(w + 16).mul_int(2);
    let k = (xf / (2.0 * std::f64::consts::PI)).round() as i64;
    let r = x.at_prec(w).sub(&two_pi.mul_int(k));
    if !below_pow2(&r.abs_upper(), 3) {
        return Err(Error::Precision(
            "sin reduction failed: radius too large".to_string(),
        ));
    }
    let neg_r2 = r.mul(&r).neg();
    let stop = -(w as i64) - 4;
    let mut term = r.clone();
    let mut sum = r.clone();
    let mut j = 1i64;
    loop {
        term = term.mul(&neg_r2).div_i64((2 * j) * (2 * j + 1));
        sum = sum.add(&term);
        // ratio below 1 from j >= 4 for |r| <= 8 (alternating tail bound)
        if j >= 4 && below_pow2(&term.abs_upper(), stop) {
            return Ok(sum.add_error(term.abs_upper()).with_prec(prec));
        }
        j += 1;
        if j > 10_000 {
            return Err(Error::Precision("sin series did not converge".to_string()));
        }
    }
}

/// sin(pi x) with the pi factor at matching precision.
pub fn sin_pi(x: &AppFloat) -> Result<AppFloat> {
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    sin(&pi(prec + 16).mul(&x.at_prec(prec + 16)))
}

/// Shift target making the order-33 Stirling remainder below 2^-w.
fn stirling_target(w: u32) -> f64 {
    (2.2 * 2.0f64.powf(w as f64 / 33.0)).max(48.0)
}

/// log Gamma on balls with a positive lower bound.
pub fn lngamma(x: &AppFloat) -> Result<AppFloat> {
    if x.sign_of_mid() <= 0 || x.abs_lower().is_zero() {
        return Err(Error::PoleArgument);
    }
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let w = prec + 32;
    let xf = x.to_f64();
    let target = stirling_target(w);
    let shift = if xf < target { (target - xf).ceil() as i64 } else { 0 };
    let xw = x.at_prec(w);
    let y = xw.add(&AppFloat::from_int(shift));
    // product of the recurrence factors, one log at the end
    let mut p = AppFloat::from_int(1).at_prec(w);
    for i in 0..shift {
        p = p.mul(&xw.add(&AppFloat::from_int(i)));
    }
    let ln_y = ln(&y)?;
    let half = AppFloat::from_int(1).div_i64(2);
    let ln_2pi_half = ln2(w).add(&ln(&pi(w))?).div_i64(2);
    let mut s = y
        .sub(&half)
        .mul(&ln_y)
        .sub(&y)
        .add(&ln_2pi_half);
    let z = AppFloat::from_int(1).div(&y)?;
    let z2 = z.mul(&z);
    // sum_{j=1..16} B_2j / ((2j)(2j-1)) y^(1-2j)
    let mut zodd = z.clone();
    for j in 1..=16usize {
        let b = bern(j);
        let coeff = AppFloat::from_bigint(b.numer().clone())
            .div_int(b.denom(), w)
            .div_i64((2 * j as i64) * (2 * j as i64 - 1));
        s = s.add(&coeff.mul(&zodd));
        zodd = zodd.mul(&z2);
    }
    // remainder bound |B_34|/(34*33) y^-33
    let z33 = z.pow_int(33)?.abs_upper();
    let rem = z33.mul(&Mag::from_f64(2577687858367.0 / 6.0 / (34.0 * 33.0) + 1.0));
    s = s.add_error(rem);
    Ok(s.sub(&ln(&p)?).with_prec(prec))
}

/// Gamma on balls avoiding poles; negative arguments via reflection.
pub fn gamma(x: &AppFloat) -> Result<AppFloat> {
    if x.abs_lower().is_zero() && x.sign_of_mid() <= 0 {
        return Err(Error::PoleArgument);
    }
    if x.sign_of_mid() > 0 {
        if x.abs_lower().is_zero() {
            return Err(Error::PoleArgument);
        }
        return exp(&lngamma(x)?);
    }
    // x < 0: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let one_minus = AppFloat::from_int(1).sub(&x.at_prec(prec + 16));
    let s = sin_pi(x)?;
    if s.abs_lower().is_zero() {
        return Err(Error::PoleArgument);
    }
    pi(prec + 16)
        .div(&s.mul(&exp(&lngamma(&one_minus)?)?))
        .map(|v| v.with_prec(prec))
}

/// Digamma on balls with a positive lower bound.
pub fn digamma(x: &AppFloat) -> Result<AppFloat> {
    if x.sign_of_mid() <= 0 || x.abs_lower().is_zero() {
        return Err(Error::PoleArgument);
    }
    let prec = if x.prec() == super::float::PREC_EXACT {
        256
    } else {
        x.prec()
    };
    let w = prec + 32;
    let xf = x.to_f64();
    let target = stirling_target(w);
    let shift = if xf < target { (target - xf).ceil() as i64 } else { 0 };
    let xw = x.at_prec(w);
    let y = xw.add(&AppFloat::from_int(shift));
    let mut s = ln(&y)?;
    let z = AppFloat::from_int(1).div(&y)?;
    s = s.sub(&z.div_i64(2));
    let z2 = z.mul(&z);
    let mut zpow = z2.clone();
    for j in 1..=16usize {
        let b = bern(j);
        let coeff = AppFloat::from_bigint(b.numer().clone())
            .div_int(b.denom(), w)
            .div_i64(2 * j as i64);
        s = s.sub(&coeff.mul(&zpow));
        zpow = zpow.mul(&z2);
    }
    let z34 = z.pow_int(34)?.abs_upper();
    s = s.add_error(z34.mul(&Mag::from_f64(2577687858367.0 / 6.0 / 34.0 + 1.0)));
    // psi(x) = psi(y) - sum 1/(x+i)
    for i in 0..shift {
        s = s.sub(&AppFloat::from_int(1).div(&xw.add(&AppFloat::from_int(i)))?);
    }
    Ok(s.with_prec(prec))
}

pub fn euler_gamma(prec: u32) -> AppFloat {
    cached(3, prec, || {
        digamma(&AppFloat::from_int(1).at_prec(prec + 16))
            .expect("digamma(1) is regular")
            .neg()
            .with_prec(prec)
    })
}

/// x^y for x with positive lower bound.
pub fn pow(x: &AppFloat, y: &AppFloat) -> Result<AppFloat> {
    exp(&ln(x)?.mul(y))
}

/// Pochhammer (s)_k on balls.
pub fn pochhammer(s: &AppFloat, k: u32) -> AppFloat {
    let mut acc = AppFloat::from_int(1);
    for i in 0..k {
        acc = acc.mul(&s.add(&AppFloat::from_int(i as i64)));
    }
    acc
}

/// Hurwitz zeta for real s with lower bound > 1.02 and integer base
/// a >= 2, by Euler-Maclaurin at a shifted base.
pub fn hurwitz_zeta(s: &AppFloat, a: u64) -> Result<AppFloat> {
    if a < 2 {
        return Err(Error::Precision("hurwitz base too small".to_string()));
    }
    let sf = s.to_f64();
    if !(sf > 1.02) {
        return Err(Error::Precision(format!(
            "hurwitz zeta needs s > 1.02, got {sf}"
        )));
    }
    let prec = if s.prec() == super::float::PREC_EXACT {
        256
    } else {
        s.prec()
    };
    let w = prec + 32;
    let sw = s.at_prec(w);
    // explicit terms until the base is comfortably large
    let base = a.max(64);
    let mut sum = AppFloat::zero();
    let is_int_s = sf.fract() == 0.0 && s.rad().is_zero() && sf < 64.0;
    for n in a..base {
        let term = if is_int_s {
            AppFloat::from_int(1)
                .div_int(&BigInt::from(n).pow(sf as u32), w)
        } else {
            exp(&ln(&AppFloat::from_int(n as i64).at_prec(w))?.mul(&sw).neg())?
        };
        sum = sum.add(&term);
    }
    let bf = AppFloat::from_int(base as i64).at_prec(w);
    let ln_b = ln(&bf)?;
    // b^(1-s)/(s-1)
    let b_pow = |t: &AppFloat| -> Result<AppFloat> { exp(&ln_b.mul(t)) };
    let one = AppFloat::from_int(1);
    sum = sum.add(&b_pow(&one.sub(&sw))?.div(&sw.sub(&one))?);
    let b_neg_s = b_pow(&sw.neg())?;
    sum = sum.add(&b_neg_s.div_i64(2));
    // sum_j B_2j/(2j)! (s)_{2j-1} b^{-s-2j+1}
    let inv_b = AppFloat::from_int(1).div(&bf)?;
    let inv_b2 = inv_b.mul(&inv_b);
    let mut bpow = b_neg_s.mul(&inv_b);
    let mut poch = AppFloat::from_int(1);
    let mut built = 0i64;
    let jmax = 15usize;
    for j in 1..=jmax {
        while built < 2 * j as i64 - 1 {
            poch = poch.mul(&sw.add(&AppFloat::from_int(built)));
            built += 1;
        }
        let b = bern(j);
        let mut f2j = BigInt::one();
        for i in 1..=2 * j as i64 {
            f2j *= i;
        }
        let coeff = AppFloat::from_bigint(b.numer().clone())
            .div_int(&(b.denom() * &f2j), w);
        sum = sum.add(&coeff.mul(&poch).mul(&bpow));
        bpow = bpow.mul(&inv_b2);
    }
    // remainder: |B_32|/32! (s)_31 b^(-s-31)
    let poch31 = pochhammer(&sw, 31).abs_upper();
    let mut f32 = BigInt::one();
    for i in 1..=32i64 {
        f32 *= i;
    }
    let b32 = AppFloat::from_int(7709321041217).div_int(&(BigInt::from(510) * f32), w);
    let rem = b32
        .abs_upper()
        .mul(&poch31)
        .mul(&bpow.abs_upper());
    Ok(sum.add_error(rem).with_prec(prec))
}

/// zeta(n) for integer n >= 2.
pub fn zeta_int(n: u32, prec: u32) -> AppFloat {
    assert!(n >= 2);
    cached(
        (100 + n.min(100)) as u8,
        prec,
        || {
            let w = prec + 32;
            let mut sum = AppFloat::zero();
            for k in 1..200u64 {
                sum = sum.add(
                    &AppFloat::from_int(1).div_int(&BigInt::from(k).pow(n), w),
                );
            }
            let tail = hurwitz_zeta(
                &AppFloat::from_int(n as i64).at_prec(w),
                200,
            )
            .expect("integer s >= 2 is in range");
            sum.add(&tail).with_prec(prec)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn assert_matches_decimal(x: &AppFloat, s: &str, tol: f64) {
        let want = AppFloat::parse_decimal(s, 256).unwrap();
        let d = x.sub(&want);
        assert!(
            d.abs_upper_f64() < tol,
            "value {} vs {} (diff {})",
            x.to_decimal(35),
            s,
            d.abs_upper_f64()
        );
    }

    #[test]
    fn pi_ln2_gamma_digits() {
        let p = pi(200);
        assert_matches_decimal(&p, "3.14159265358979323846264338328", 1e-28);
        assert!(p.rad_f64() < 1e-55);
        let l = ln2(200);
        assert_matches_decimal(&l, "0.693147180559945309417232121458", 1e-28);
        let g = euler_gamma(200);
        assert_matches_decimal(&g, "0.577215664901532860606512090082", 1e-28);
    }

    #[test]
    fn exp_ln_contain_inverses() {
        let x = AppFloat::from_rational(&BigRational::new(7.into(), 5.into()), 200);
        let e = exp(&x).unwrap();
        assert_matches_decimal(&exp(&AppFloat::from_int(1).at_prec(200)).unwrap(),
            "2.71828182845904523536028747135", 1e-28);
        let back = ln(&e).unwrap();
        assert!(back.sub(&x).contains_zero());
        assert!(back.sub(&x).abs_upper_f64() < 1e-55);
        // exp(x) * exp(-x) contains 1
        let p = e.mul(&exp(&x.neg()).unwrap());
        assert!(p.sub(&AppFloat::from_int(1)).contains_zero());
    }

    #[test]
    fn sin_values() {
        let one = AppFloat::from_int(1).at_prec(200);
        assert_matches_decimal(&sin(&one).unwrap(),
            "0.841470984807896506652502321630", 1e-28);
        // sin(pi) straddles zero
        let sp = sin(&pi(200)).unwrap();
        assert!(sp.contains_zero());
        assert!(sp.abs_upper_f64() < 1e-55);
        // sin(pi/2)=1
        let half = AppFloat::from_rational(&BigRational::new(1.into(), 2.into()), 200);
        let s = sin_pi(&half).unwrap();
        assert!(s.sub(&AppFloat::from_int(1)).contains_zero());
    }

    #[test]
    fn gamma_and_digamma() {
        // Gamma(5) = 24
        let g5 = gamma(&AppFloat::from_int(5).at_prec(200)).unwrap();
        assert!(g5.sub(&AppFloat::from_int(24)).contains_zero());
        assert!(g5.rad_f64() < 1e-50);
        // Gamma(1/2)^2 = pi
        let half = AppFloat::from_rational(&BigRational::new(1.into(), 2.into()), 200);
        let gh = gamma(&half).unwrap();
        assert!(gh.mul(&gh).sub(&pi(200)).contains_zero());
        // reflection at 1/4: Gamma(x)Gamma(1-x) = pi/sin(pi x)
        let q = AppFloat::from_rational(&BigRational::new(1.into(), 4.into()), 200);
        let lhs = gamma(&q).unwrap().mul(&gamma(&AppFloat::from_int(1).sub(&q)).unwrap());
        let rhs = pi(200).div(&sin_pi(&q).unwrap()).unwrap();
        assert!(lhs.sub(&rhs).contains_zero());
        assert!(lhs.sub(&rhs).abs_upper_f64() < 1e-50);
        // negative argument via reflection: Gamma(-1/2) = -2 sqrt(pi)
        let gneg = gamma(&half.neg()).unwrap();
        let want = gh.mul_int(-2);
        assert!(gneg.sub(&want).contains_zero());
        // digamma recurrence psi(x+1) - psi(x) = 1/x
        let x = AppFloat::from_rational(&BigRational::new(3.into(), 7.into()), 200);
        let d = digamma(&x.add(&AppFloat::from_int(1))).unwrap()
            .sub(&digamma(&x).unwrap());
        let inv = AppFloat::from_int(1).div(&x).unwrap();
        assert!(d.sub(&inv).contains_zero());
        assert!(d.sub(&inv).abs_upper_f64() < 1e-50);
        // psi(1/2) = -gamma - 2 ln 2
        let dh = digamma(&half).unwrap();
        let want = euler_gamma(200).neg().sub(&ln2(200).mul_int(2));
        assert!(dh.sub(&want).contains_zero());
    }

    #[test]
    fn zeta_values() {
        // zeta(2) = pi^2/6
        let z2 = zeta_int(2, 200);
        let p = pi(200);
        let want = p.mul(&p).div_i64(6);
        assert!(z2.sub(&want).contains_zero());
        assert!(z2.sub(&want).abs_upper_f64() < 1e-55);
        let z3 = zeta_int(3, 200);
        assert_matches_decimal(&z3, "1.20205690315959428539973816151", 1e-28);
        // Hurwitz consistency: zeta(3) = sum_{1..9} + zeta_H(3, 10)
        let mut head = AppFloat::zero();
        for k in 1..10i64 {
            head = head.add(&AppFloat::from_int(1).div_int(&BigInt::from(k).pow(3), 232));
        }
        let t = hurwitz_zeta(&AppFloat::from_int(3).at_prec(232), 10).unwrap();
        assert!(head.add(&t).sub(&z3).contains_zero());
        // non-integer s against direct summation
        let s = AppFloat::from_rational(&BigRational::new(5.into(), 2.into()), 200);
        let hz = hurwitz_zeta(&s, 3).unwrap();
        let mut direct = AppFloat::zero();
        for n in 3..4000i64 {
            direct = direct.add(&pow(&AppFloat::from_int(n).at_prec(200), &s.neg()).unwrap());
        }
        // truncation of the direct sum is about 4000^-1.5/1.5 ~ 2.6e-6
        assert!(hz.sub(&direct).abs_upper_f64() < 3e-6);
        assert!(hz.to_f64() > direct.to_f64());
    }

    #[test]
    fn pow_basic() {
        let x = AppFloat::from_int(2).at_prec(200);
        let y = AppFloat::from_rational(&BigRational::new(1.into(), 2.into()), 200);
        let r = pow(&x, &y).unwrap();
        assert!(r.mul(&r).sub(&AppFloat::from_int(2)).contains_zero());
    }
}
