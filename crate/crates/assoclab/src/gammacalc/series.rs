//! Power series derived from the coefficient table: the log-gamma
//! coefficients a_n and the beta, digamma, and sine series they
//! generate.
//!
//! a_n is defined operationally: B'(x, y) = 1 - y f(-x, -y), where f is
//! the commutative image of the series of coefficients c(w 1), and
//! a_n = -[x^(n-1) y] log B' / n. The numeric relation
//! a_n = (-1)^n zeta(n)/n is pinned by tests against an independently
//! built vector, never assumed by the extraction.

use crate::associator::KzTable;
use crate::error::{Error, Result};
use crate::series::float::AppFloat;
use crate::series::mseries::MSeries;
use crate::series::nc::NCSeries;
use crate::series::scalar::ScalarRing;
use crate::series::transcend::zeta_int;

/// Taylor coefficients of log G(1 + x) = sum_{n >= 2} a_n x^n.
#[derive(Clone, Debug)]
pub struct ACoeffs {
    pub weight: u32,
    pub prec: u32,
    vals: Vec<AppFloat>,
}

impl ACoeffs {
    pub fn a(&self, n: u32) -> &AppFloat {
        &self.vals[n as usize]
    }

    /// Coefficient vector [0, 0, a_2, ..., a_trunc] for composition
    /// into series; errors past the known weight.
    pub fn coeff_vec(&self, trunc: u32) -> Result<Vec<AppFloat>> {
        if trunc > self.weight {
            return Err(Error::Truncation(format!(
                "degree {trunc} exceeds extracted weight {}",
                self.weight
            )));
        }
        Ok(self.vals[..=trunc as usize].to_vec())
    }

    /// Independent construction a_n = (-1)^n zeta(n)/n used as the
    /// oracle for the table extraction.
    pub fn from_zetas(weight: u32, prec: u32) -> ACoeffs {
        let mut vals = vec![AppFloat::zero(), AppFloat::zero()];
        for n in 2..=weight {
            let z = zeta_int(n, prec).div_i64(n as i64);
            vals.push(if n % 2 == 1 { z.neg() } else { z });
        }
        ACoeffs { weight, prec, vals }
    }
}

/// B'(x, y) = 1 - y f(-x, -y) as a series in (x, y), where f is the
/// commutative image of the coefficients c(w 1) of any two-letter
/// series, indexed by letter counts of w.
pub fn b_prime_of_series<S: ScalarRing>(series: &NCSeries<S>, trunc: u32) -> MSeries<S> {
    let mut out = MSeries::zero_t(trunc);
    out.add_to(vec![], &S::one());
    for (w, c) in series.iter() {
        if w.last() != Some(true) || w.weight() > trunc {
            continue;
        }
        let v = w.prefix(w.len() - 1);
        let ones = v.depth();
        let zeros = v.len() - ones;
        // sign (-1)^len(v) from the substitution, times the leading -y
        let signed = if v.len() % 2 == 0 { c.neg() } else { c.clone() };
        out.add_to(vec![zeros as u8, (ones + 1) as u8], &signed);
    }
    out
}

/// B' read off a coefficient table.
pub fn b_prime_from_table(table: &KzTable) -> MSeries<AppFloat> {
    b_prime_of_series(&table.as_series(), table.weight)
}

/// B' built from the coefficients alone:
/// exp(g(x) + g(y) - g(x + y)) with g(t) = sum a_n t^n.
pub fn b_prime_from_coeffs(a: &ACoeffs, trunc: u32) -> Result<MSeries<AppFloat>> {
    let coeffs = a.coeff_vec(trunc)?;
    let x = MSeries::var(0, trunc);
    let y = MSeries::var(1, trunc);
    let gx = crate::series::mseries::compose_1var(&coeffs, &x)?;
    let gy = crate::series::mseries::compose_1var(&coeffs, &y)?;
    let gxy = crate::series::mseries::compose_1var(&coeffs, &x.add_ms(&y))?;
    gx.add_ms(&gy).sub_ms(&gxy).exp()
}

/// a_n = -[x^(n-1) y] log B' / n for n = 2..=weight.
pub fn extract_gamma_coeffs(table: &KzTable) -> Result<ACoeffs> {
    let lg = b_prime_from_table(table).log()?;
    let mut vals = vec![AppFloat::zero(), AppFloat::zero()];
    for n in 2..=table.weight {
        let key: Vec<u8> = vec![(n - 1) as u8, 1];
        let cf = lg.coeff(&key);
        vals.push(cf.neg().div_i64(n as i64));
    }
    Ok(ACoeffs {
        weight: table.weight,
        prec: table.prec,
        vals,
    })
}

/// log G(1 + t) = sum_{n=2}^{trunc} a_n t^n as a one-variable series.
pub fn log_gamma_series(a: &ACoeffs, trunc: u32) -> Result<MSeries<AppFloat>> {
    let coeffs = a.coeff_vec(trunc)?;
    crate::series::mseries::compose_1var(&coeffs, &MSeries::var(0, trunc))
}

/// psi(1 + t) = d/dt log G(1 + t) = sum_{n=2} n a_n t^(n-1), valid to
/// degree weight - 1.
pub fn psi_series(a: &ACoeffs, trunc: u32) -> Result<MSeries<AppFloat>> {
    if trunc + 1 > a.weight {
        return Err(Error::Truncation(format!(
            "digamma series degree {trunc} needs a-coefficients past weight {}",
            a.weight
        )));
    }
    let mut out = MSeries::zero_t(trunc);
    for n in 2..=(trunc + 1) {
        out.add_to(vec![(n - 1) as u8], &a.a(n).mul_int(n as i64));
    }
    Ok(out)
}

/// s(z) = z exp(-2 sum_k a_{2k} z^{2k}); its numeric specialization is
/// sin(pi z)/pi. Valid to degree weight + 1.
pub fn s_series(a: &ACoeffs, trunc: u32) -> Result<MSeries<AppFloat>> {
    if trunc > a.weight + 1 {
        return Err(Error::Truncation(format!(
            "sine series degree {trunc} needs a-coefficients past weight {}",
            a.weight
        )));
    }
    let mut expo = MSeries::zero_t(trunc);
    let mut k = 2;
    while k + 1 <= trunc && k <= a.weight {
        expo.add_to(vec![k as u8], &a.a(k).mul_int(-2));
        k += 2;
    }
    Ok(expo.exp()?.mul_monomial(0, 1))
}

/// Numeric s(z) for |z| <= 3/4 with the series tail folded into the
/// radius: beyond 2k = K the summand magnitudes are below
/// 2 |z|^(K+2) / (1 - z^2) since |a_{2k}| < 0.83.
pub fn s_numeric(a: &ACoeffs, z: &AppFloat) -> Result<AppFloat> {
    if z.abs_upper_f64() > 0.75 {
        return Err(Error::Margin(format!(
            "sine series argument {} too large for the tail bound",
            z.to_decimal(5)
        )));
    }
    let mut expo = AppFloat::zero();
    let mut zpow = z.mul(z);
    let z2 = zpow.clone();
    let mut k = 2;
    while k <= a.weight {
        expo = expo.add(&a.a(k).mul(&zpow).mul_int(-2));
        zpow = zpow.mul(&z2);
        k += 2;
    }
    // tail of the exponent sum
    let tail = zpow.abs_upper().mul(&crate::series::mag::Mag::from_u64(8));
    let expo = expo.add_error(tail);
    Ok(crate::series::transcend::exp(&expo)?.mul(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::associator::build_kz;
    use crate::series::transcend::{pi, sin};
    use once_cell::sync::Lazy;

    static TABLE: Lazy<KzTable> = Lazy::new(|| build_kz(8, 45).expect("weight-8 build"));
    static A: Lazy<ACoeffs> = Lazy::new(|| extract_gamma_coeffs(&TABLE).expect("extraction"));

    #[test]
    fn extracted_coefficients_match_zeta_oracle() {
        let oracle = ACoeffs::from_zetas(8, TABLE.prec);
        for n in 2..=8 {
            let d = A.a(n).sub(oracle.a(n));
            assert!(
                d.abs_upper_f64() < 1e-38,
                "a_{n} residual {}",
                d.abs_upper_f64()
            );
        }
    }

    #[test]
    fn beta_series_factorizes_through_the_coefficients() {
        let from_table = b_prime_from_table(&TABLE);
        let from_coeffs = b_prime_from_coeffs(&A, 8).unwrap();
        let diff = from_table.sub_ms(&from_coeffs);
        let worst = diff.max_by_measure(|c| c.abs_upper_f64());
        assert!(worst < 1e-36, "worst coefficient residual {worst}");
    }

    #[test]
    fn digamma_series_is_the_log_derivative() {
        let lg = log_gamma_series(&A, 8).unwrap();
        let ps = psi_series(&A, 7).unwrap();
        for n in 1..=7u8 {
            let d = ps
                .coeff(&[n])
                .sub(&lg.coeff(&[n + 1]).mul_int(n as i64 + 1));
            assert!(d.is_exact_zero() || d.abs_upper_f64() < 1e-44);
        }
    }

    #[test]
    fn sine_series_specializes_to_sin() {
        // series evaluation at z = 1/10 against sin(pi z)/pi
        let s = s_series(&A, 9).unwrap();
        let prec = TABLE.prec;
        let z = AppFloat::from_rational(&num_rational::BigRational::new(1.into(), 10.into()), prec);
        let val = s.eval(&[z.clone()]).unwrap();
        let want = sin(&pi(prec).mul(&z)).unwrap().div(&pi(prec)).unwrap();
        // truncation past degree 9 is about pi^10/11! * 1e-10
        assert!(val.sub(&want).abs_upper_f64() < 1e-12);

        // tail-bounded numeric evaluation at z = 1/100
        let z2 = AppFloat::from_rational(&num_rational::BigRational::new(1.into(), 100.into()), prec);
        let val2 = s_numeric(&A, &z2).unwrap();
        let want2 = sin(&pi(prec).mul(&z2)).unwrap().div(&pi(prec)).unwrap();
        let d = val2.sub(&want2);
        assert!(d.contains_zero(), "ball must contain the true value");
        assert!(d.abs_upper_f64() < 1e-14);
    }
}
