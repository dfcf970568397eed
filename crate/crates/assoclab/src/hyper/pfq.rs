//! (q+1)Fq values at and inside the unit argument.
//!
//! At z = 1 the term t_m with t_0 = 1 and
//! t_{m+1}/t_m = prod(u_i + m) / (prod(l_j + m) (1 + m)) decays like
//! C m^(-A), A = 1 + sum(l) - sum(u). The code sums M terms directly,
//! then matches the exact term recurrence order by order in 1/m to get
//! the asymptotic expansion t_m = C m^(-A) (1 + e_1/m + ...) and sums
//! the tail with Hurwitz zeta values. The expansion coefficients are
//! exact rationals; only the final summation rounds.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::float::AppFloat;
use crate::series::mag::Mag;
use crate::series::mseries::MSeries;
use crate::series::transcend::{digamma, gamma, hurwitz_zeta, ln, pow};
use crate::tolerances;

/// Direct terms before switching to the asymptotic tail.
const DIRECT_TERMS: u64 = 10_000;
/// Asymptotic orders matched; the first omitted order sets the tail
/// radius.
const ASYMP_ORDER: u32 = 8;

fn is_nonpositive_int(r: &BigRational) -> bool {
    r.is_integer() && !r.numer().is_positive()
}

fn check_lower(lower: &[BigRational]) -> Result<()> {
    for l in lower {
        if is_nonpositive_int(l) {
            return Err(Error::ParameterPole(format!(
                "lower parameter {l} hits a pole of the term recurrence"
            )));
        }
    }
    Ok(())
}

/// sigma = sum(lower) - sum(upper); the tail exponent is A = 1 + sigma.
pub fn convergence_margin(upper: &[BigRational], lower: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for l in lower {
        s += l;
    }
    for u in upper {
        s -= u;
    }
    s
}

/// Exact asymptotic matching: returns e_1..=e_k with
/// t_m = C m^(-A) (1 + e_1/m + ... + e_k/m^k + O(m^(-k-1))).
fn asymptotic_coeffs(
    upper: &[BigRational],
    lower: &[BigRational],
    a_exp: &BigRational,
    k: u32,
) -> Vec<BigRational> {
    let trunc = k + 2;
    let one_plus = |c: &BigRational| -> MSeries<BigRational> {
        let mut m = MSeries::constant(BigRational::one(), trunc);
        m.add_to(vec![1], c);
        m
    };
    // R(x) at x = 1/m: prod(1 + u x) / (prod(1 + l x) (1 + x))
    let mut num = MSeries::constant(BigRational::one(), trunc);
    for u in upper {
        num = num.mul_ms(&one_plus(u));
    }
    let mut den = one_plus(&BigRational::one());
    for l in lower {
        den = den.mul_ms(&one_plus(l));
    }
    let r = num.mul_ms(&den.inv().expect("unit constant term"));
    // H = log R + A log(1 + x); matching gives sum_k c_k x^k with
    // log t_m ~ log C - A log m + sum c_k m^(-k).
    let mut log1p = MSeries::zero_t(trunc);
    for n in 1..=trunc {
        let c = BigRational::new(
            if n % 2 == 0 { -BigInt::one() } else { BigInt::one() },
            n.into(),
        );
        log1p.add_to(vec![n as u8], &c);
    }
    let h = r.log().expect("unit constant term").add_ms(&log1p.scale(a_exp));
    // coefficient of x^n: sum_{j<=n-1} c_j binom(-j, n-j) = H_n
    let mut cs: Vec<BigRational> = vec![BigRational::zero(); trunc as usize + 1];
    for n in 2..=trunc as usize {
        let mut acc = h.coeff(&[n as u8]);
        for (j, cj) in cs.iter().enumerate().take(n - 1).skip(1) {
            // binom(-j, n-j)
            let mut b = BigRational::one();
            for i in 0..(n - j) {
                b *= BigRational::new(BigInt::from(-(j as i64) - i as i64), 1.into());
                b /= BigRational::new(BigInt::from(i as i64 + 1), 1.into());
            }
            acc -= b * cj;
        }
        cs[n - 1] = -acc / BigRational::new(BigInt::from(n as i64 - 1), 1.into());
    }
    // E = exp(sum c_k x^k); e_k are its coefficients
    let mut csum = MSeries::zero_t(k + 1);
    for (j, cj) in cs.iter().enumerate().skip(1).take(k as usize) {
        csum.add_to(vec![j as u8], cj);
    }
    let e = csum.exp().expect("zero constant term");
    (1..=k).map(|j| e.coeff(&[j as u8])).collect()
}

/// One multiplicative step of the term recurrence at index m.
fn term_step(t: &AppFloat, upper: &[BigRational], lower: &[BigRational], m: i64) -> AppFloat {
    let mut num = BigInt::one();
    let mut den = BigInt::from(m + 1);
    for u in upper {
        // u + m = (numer + denom m)/denom
        num *= u.numer() + u.denom() * m;
        den *= u.denom();
    }
    for l in lower {
        den *= l.numer() + l.denom() * m;
        num *= l.denom();
    }
    let prec = t.prec();
    t.mul(&AppFloat::from_bigint(num)).div_int(&den, prec)
}

/// (q+1)Fq at z = 1. Terminating series (a nonpositive-integer upper
/// parameter) sum exactly; otherwise the convergence margin
/// sigma = sum(l) - sum(u) must be at least 3/10.
pub fn pfq_at_1(upper: &[BigRational], lower: &[BigRational], prec: u32) -> Result<AppFloat> {
    pfq_at_1_with_cutoff(upper, lower, prec, DIRECT_TERMS)
}

/// Same sum with an explicit direct-term cut-off; exposed so the tail
/// model can be regression-tested against itself at several cut-offs.
pub fn pfq_at_1_with_cutoff(
    upper: &[BigRational],
    lower: &[BigRational],
    prec: u32,
    cutoff: u64,
) -> Result<AppFloat> {
    assert!(cutoff >= 64, "tail model expects a large cut-off");
    if upper.len() != lower.len() + 1 {
        return Err(Error::Dimension(format!(
            "unit-argument series needs q+1 upper and q lower parameters, got {}F{}",
            upper.len(),
            lower.len()
        )));
    }
    check_lower(lower)?;
    let terminating = upper.iter().any(is_nonpositive_int);
    let sigma = convergence_margin(upper, lower);
    if !terminating && sigma.to_f64().unwrap_or(0.0) < tolerances::MARGIN_SIGMA {
        return Err(Error::Margin(format!(
            "sigma = {sigma} is below the required margin {}",
            tolerances::MARGIN_SIGMA
        )));
    }
    let work = prec + 32;
    let mut t = AppFloat::from_int(1).at_prec(work);
    let mut sum = t.clone();
    for m in 0..cutoff as i64 {
        t = term_step(&t, upper, lower, m);
        if t.is_exact_zero() {
            return Ok(sum.at_prec(prec));
        }
        sum = sum.add(&t);
    }
    if terminating {
        return Err(Error::Precision(
            "terminating series did not end inside the direct window".to_string(),
        ));
    }
    // t now holds t_M with M = cutoff
    let a_exp = sigma + BigRational::one();
    let es = asymptotic_coeffs(upper, lower, &a_exp, ASYMP_ORDER + 1);
    let m_big = cutoff;
    let a_f = AppFloat::from_rational(&a_exp, work);
    // C = t_M M^A / E(1/M)
    let m_pow_a = pow(&AppFloat::from_int(m_big as i64).at_prec(work), &a_f)?;
    let inv_m = AppFloat::from_int(1).div_int(&BigInt::from(m_big), work);
    let mut e_at_m = AppFloat::from_int(1);
    let mut p = AppFloat::from_int(1);
    for e in es.iter().take(ASYMP_ORDER as usize) {
        p = p.mul(&inv_m);
        e_at_m = e_at_m.add(&AppFloat::from_rational(e, work).mul(&p));
    }
    let c = t.mul(&m_pow_a).div(&e_at_m)?;
    // tail = C (zeta(A, M) + sum e_k zeta(A+k, M)), minus t_M which the
    // direct sum already holds
    let zeta_a = hurwitz_zeta(&a_f, m_big)?;
    let mut tail = zeta_a.clone();
    for (k, e) in es.iter().enumerate().take(ASYMP_ORDER as usize) {
        let s = a_f.add(&AppFloat::from_int(k as i64 + 1));
        tail = tail.add(&AppFloat::from_rational(e, work).mul(&hurwitz_zeta(&s, m_big)?));
    }
    let mut out = sum.add(&c.mul(&tail)).sub(&t);
    // model error: the omitted zeta orders contribute e_9 zeta(A+9, M),
    // and calibrating C at m = M shifts it by about e_9 M^-9, which
    // multiplies the whole tail zeta(A, M); safety factor 8 covers the
    // higher omitted orders and the E ratio across the tail
    let last = &es[ASYMP_ORDER as usize];
    let zeta_hi = hurwitz_zeta(&a_f.add(&AppFloat::from_int(ASYMP_ORDER as i64 + 1)), m_big)?;
    let shift = AppFloat::from_int(1)
        .div_int(&BigInt::from(m_big).pow(ASYMP_ORDER + 1), 64)
        .abs_upper()
        .mul(&zeta_a.abs_upper());
    let omitted = c
        .abs_upper()
        .mul(&AppFloat::from_rational(last, 64).abs_upper())
        .mul(&zeta_hi.abs_upper().add(&shift))
        .mul(&Mag::from_u64(8));
    out = out.add_error(omitted);
    Ok(out.at_prec(prec))
}

/// d/dz of a (q+1)Fq at z = 1 via the parameter-shift identity
/// d/dz F(u; l; z) = (prod u / prod l) F(u+1; l+1; z).
pub fn pfq_dz_at_1(upper: &[BigRational], lower: &[BigRational], prec: u32) -> Result<AppFloat> {
    check_lower(lower)?;
    let mut factor = BigRational::one();
    for u in upper {
        factor *= u;
    }
    for l in lower {
        factor /= l;
    }
    let up: Vec<BigRational> = upper.iter().map(|u| u + BigRational::one()).collect();
    let lo: Vec<BigRational> = lower.iter().map(|l| l + BigRational::one()).collect();
    let base = pfq_at_1(&up, &lo, prec + 8)?;
    Ok(base.mul(&AppFloat::from_rational(&factor, prec + 8)).at_prec(prec))
}

fn series_at_x(
    upper: &[BigRational],
    lower: &[BigRational],
    x: &BigRational,
    prec: u32,
    include_unit: bool,
) -> Result<AppFloat> {
    if upper.len() > lower.len() + 1 {
        return Err(Error::Dimension(
            "series needs p <= q+1 parameters".to_string(),
        ));
    }
    check_lower(lower)?;
    let terminating = upper.iter().any(is_nonpositive_int);
    let half = BigRational::new(1.into(), 2.into());
    if !terminating && x.abs() > half {
        return Err(Error::Margin(format!(
            "series argument {x} outside |x| <= 1/2; use the connection formula"
        )));
    }
    let work = prec + 32;
    let xf = AppFloat::from_rational(x, work);
    // past m0 the term ratio |t_{m+1} x / t_m| stays below cap: each
    // upper factor is at most m (1 + |u|/m0), the explicit (m + 1) and
    // positive lower factors are at least m, negative lower factors at
    // least m (1 - |l|/m0); double m0 until cap is comfortably under 1
    let ratio_cap = |m0: i64| -> f64 {
        let mut cap = 0.5f64;
        for u in upper {
            cap *= 1.0 + u.abs().to_f64().unwrap_or(1.0) / m0 as f64;
        }
        for l in lower {
            if l.is_negative() {
                cap /= 1.0 - l.abs().to_f64().unwrap_or(1.0) / m0 as f64;
            }
        }
        cap
    };
    let mut m0 = 8i64;
    for p in upper.iter().chain(lower) {
        let b = (p.abs().to_f64().unwrap_or(1.0).ceil() as i64 + 1) * 2;
        m0 = m0.max(b);
    }
    while m0 < 1 << 21 && !(ratio_cap(m0) < 0.9) {
        m0 *= 2;
    }
    let cap = ratio_cap(m0);
    if !(cap > 0.0 && cap < 0.9) {
        return Err(Error::Margin(format!(
            "tail ratio bound {cap} too close to 1"
        )));
    }
    let mut t = AppFloat::from_int(1).at_prec(work);
    let mut xpow = t.clone();
    let mut sum = if include_unit {
        t.clone()
    } else {
        AppFloat::zero()
    };
    let target = Mag::pow2(-(prec as i64) - 24);
    let mut m = 0i64;
    let tail_base;
    loop {
        t = term_step(&t, upper, lower, m);
        m += 1;
        xpow = xpow.mul(&xf);
        let term = t.mul(&xpow);
        if t.is_exact_zero() {
            return Ok(sum.at_prec(prec));
        }
        sum = sum.add(&term);
        if !terminating && m >= m0 && !term.abs_upper().cmp_ge(&target) {
            tail_base = term.abs_upper();
            break;
        }
        if m > 2_000_000 {
            return Err(Error::Precision(
                "series at |x| <= 1/2 did not reach the target term size".to_string(),
            ));
        }
    }
    let tail = tail_base.mul(&Mag::from_f64(cap / (1.0 - cap)));
    Ok(sum.add_error(tail).at_prec(prec))
}

/// Series evaluation at rational x: |x| <= 1/2, except that terminating
/// series (a nonpositive-integer upper parameter) sum exactly anywhere.
pub fn pfq_at_x(
    upper: &[BigRational],
    lower: &[BigRational],
    x: &BigRational,
    prec: u32,
) -> Result<AppFloat> {
    series_at_x(upper, lower, x, prec, true)
}

/// The series minus its leading 1, summed from m = 1. Keeps full
/// relative accuracy when the whole sum is 1 + O(x) with tiny x.
pub fn pfq_minus_one(
    upper: &[BigRational],
    lower: &[BigRational],
    x: &BigRational,
    prec: u32,
) -> Result<AppFloat> {
    series_at_x(upper, lower, x, prec, false)
}

/// Digamma at rational points, memoized per thread: the logarithmic
/// connection below asks for the same two values at every quadrature
/// node.
fn digamma_cached(r: &BigRational, prec: u32) -> Result<AppFloat> {
    thread_local! {
        static PSI: RefCell<HashMap<(BigRational, u32), AppFloat>> =
            RefCell::new(HashMap::new());
    }
    PSI.with(|cell| {
        if let Some(v) = cell.borrow().get(&(r.clone(), prec)) {
            return Ok(v.clone());
        }
        let v = digamma(&AppFloat::from_rational(r, prec))?;
        cell.borrow_mut()
            .insert((r.clone(), prec), v.clone());
        Ok(v)
    })
}

/// 2F1(a, b; a+b+1; 1-y) for 0 < y < 1 by the logarithmic connection
/// at unit parameter excess:
/// G(c)/(G(a+1)G(b+1))
///   - y G(c)/(G(a)G(b)) sum_n r_n y^n (k_n - log y),
/// r_n = (a+1)_n (b+1)_n/(n!(n+1)!),
/// k_n = psi(n+1) + psi(n+2) - psi(a+n+1) - psi(b+n+1).
fn connection_unit_excess(
    a: &BigRational,
    b: &BigRational,
    y: &BigRational,
    prec: u32,
) -> Result<AppFloat> {
    let one = BigRational::one();
    if is_nonpositive_int(&(a + &one)) || is_nonpositive_int(&(b + &one)) {
        return Err(Error::ParameterPole(
            "logarithmic connection needs a, b > -1 or termination".to_string(),
        ));
    }
    let work = prec + 32;
    let c = a + b + &one;
    let g = |r: &BigRational| gamma(&AppFloat::from_rational(r, work));
    let gc = g(&c)?;
    let head = gc.div(&g(&(a + &one))?.mul(&g(&(b + &one))?))?;
    let scale = gc.div(&g(a)?.mul(&g(b)?))?;
    let yf = AppFloat::from_rational(y, work);
    let ln_y = ln(&yf)?;
    // k_0 and its increments are exact rationals around two psi values
    let mut k = digamma_cached(&one, work)?
        .add(&digamma_cached(&BigRational::from_integer(2.into()), work)?)
        .sub(&digamma_cached(&(a + &one), work)?)
        .sub(&digamma_cached(&(b + &one), work)?);
    // rho carries (a+1)_n (b+1)_n y^n / (n!(n+1)!) as one running product
    let mut rho = AppFloat::from_int(1).at_prec(work);
    let mut sum = AppFloat::zero();
    let target = Mag::pow2(-(work as i64) - 8);
    let mut n = 0i64;
    let last;
    loop {
        let term = rho.mul(&k.sub(&ln_y));
        sum = sum.add(&term);
        if n >= 16 && !term.abs_upper().cmp_ge(&target) {
            last = term.abs_upper();
            break;
        }
        if n > 1_000_000 {
            return Err(Error::Precision(
                "logarithmic connection series stalled".to_string(),
            ));
        }
        let mut num = (a.numer() + a.denom() * (n + 1)) * (b.numer() + b.denom() * (n + 1));
        let mut den = a.denom() * b.denom() * (n + 1) * (n + 2);
        num *= y.numer();
        den *= y.denom();
        rho = rho.mul(&AppFloat::from_bigint(num)).div_int(&den, work);
        let inc = BigRational::new(BigInt::one(), (n + 1).into())
            + BigRational::new(BigInt::one(), (n + 2).into())
            - BigRational::new(a.denom().clone(), a.numer() + a.denom() * (n + 1))
            - BigRational::new(b.denom().clone(), b.numer() + b.denom() * (n + 1));
        k = k.add(&AppFloat::from_rational(&inc, work));
        n += 1;
    }
    // ratio bound 0.95 in the |y| <= 1/2 window once n >= 16
    let tail = last.mul(&Mag::from_u64(19));
    let sum = sum.add_error(tail);
    Ok(head.sub(&yf.mul(&scale).mul(&sum)).at_prec(prec))
}

/// 2F1(a, b; c; x) for rational 0 <= x <= 1: series up to 1/2 (or
/// anywhere when terminating), the two-term connection formula on
/// (1/2, 1), the logarithmic connection when c - a - b = 1, and the
/// unit-argument formula at 1.
pub fn gauss_2f1(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    x: &BigRational,
    prec: u32,
) -> Result<AppFloat> {
    let half = BigRational::new(1.into(), 2.into());
    if x.is_negative() || x > &BigRational::one() {
        return Err(Error::Margin(format!("argument {x} outside [0, 1]")));
    }
    if x == &BigRational::one() {
        return pfq_at_1(
            &[a.clone(), b.clone()],
            std::slice::from_ref(c),
            prec,
        );
    }
    let terminating = is_nonpositive_int(a) || is_nonpositive_int(b);
    if x <= &half || terminating {
        return pfq_at_x(
            &[a.clone(), b.clone()],
            std::slice::from_ref(c),
            x,
            prec,
        );
    }
    let cab = c - a - b;
    let y = BigRational::one() - x;
    if cab == BigRational::one() {
        return connection_unit_excess(a, b, &y, prec);
    }
    if cab.is_integer() {
        return Err(Error::ParameterPole(format!(
            "connection formula degenerates: c - a - b = {cab} is an integer"
        )));
    }
    let work = prec + 16;
    let g = |r: &BigRational| gamma(&AppFloat::from_rational(r, work));
    let f1 = g(c)?
        .mul(&g(&cab)?)
        .div(&g(&(c - a))?.mul(&g(&(c - b))?))?
        .mul(&pfq_at_x(
            &[a.clone(), b.clone()],
            &[BigRational::one() - &cab],
            &y,
            work,
        )?);
    let f2 = g(c)?
        .mul(&g(&-&cab)?)
        .div(&g(a)?.mul(&g(b)?))?
        .mul(&pow(
            &AppFloat::from_rational(&y, work),
            &AppFloat::from_rational(&cab, work),
        )?)
        .mul(&pfq_at_x(
            &[c - a, c - b],
            &[BigRational::one() + &cab],
            &y,
            work,
        )?);
    Ok(f1.add(&f2).at_prec(prec))
}

/// Derivative at z = 0 of 3F2(a, -a, z; 1+b, 1-b; 1) in its third upper
/// parameter slot: sum_{m>=1} (a)_m(-a)_m/(m (1+b)_m (1-b)_m), summed
/// as a 4F3 at the unit argument.
pub fn d3f2_dz(a: &BigRational, b: &BigRational, prec: u32) -> Result<AppFloat> {
    let half = BigRational::new(1.into(), 2.into());
    if a.abs() > half || b.abs() > half {
        return Err(Error::Margin(format!(
            "derivative sum needs |a|, |b| <= 1/2, got a = {a}, b = {b}"
        )));
    }
    if a.is_zero() {
        return Ok(AppFloat::zero());
    }
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let factor = -(a * a) / ((&one + b) * (&one - b));
    let up = [one.clone(), one.clone(), &one + a, &one - a];
    let lo = [two.clone(), &two + b, &two - b];
    let v = pfq_at_1(&up, &lo, prec + 8)?;
    Ok(v.mul(&AppFloat::from_rational(&factor, prec + 8)).at_prec(prec))
}
