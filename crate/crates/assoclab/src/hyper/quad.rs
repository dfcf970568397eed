//! Tanh-sinh quadrature over (0,1) and the ordered simplex
//! 0 < t2 < t1 < 1, used as integral cross-checks independent of the
//! series machinery.
//!
//! Nodes x = 1/(1 + exp(-pi sinh t)) cluster doubly exponentially at
//! both endpoints; the complement 1 - x and the logs of both are
//! carried alongside x so algebraic endpoint factors lose no accuracy.
//! Sums run in f64 with compensated accumulation; the reported radius
//! is the last level-to-level difference.

use std::cell::RefCell;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::pfq::{gauss_2f1, pfq_minus_one};
use crate::error::{Error, Result};
use crate::series::float::AppFloat;
use crate::series::mag::Mag;

/// One abscissa on (0, 1): position, complement, weight, logs.
#[derive(Clone, Copy)]
struct Node {
    x: f64,
    xc: f64,
    w: f64,
    lx: f64,
    lxc: f64,
}

/// Cap on |pi/2 sinh(kh)| keeping exp(-2s) a normal f64.
const SMAX: f64 = 340.0;

fn node_at(t: f64) -> Node {
    let s = std::f64::consts::FRAC_PI_2 * t.sinh();
    let e = (-2.0 * s.abs()).exp();
    let d = 1.0 + e;
    let big = 1.0 / d;
    let small = e / d;
    let lbig = -e.ln_1p();
    let lsmall = -2.0 * s.abs() - e.ln_1p();
    let w = std::f64::consts::PI * t.cosh() * big * small;
    if s >= 0.0 {
        Node { x: big, xc: small, w, lx: lbig, lxc: lsmall }
    } else {
        Node { x: small, xc: big, w, lx: lsmall, lxc: lbig }
    }
}

fn level_nodes(level: u32) -> Vec<Node> {
    let h = 0.5f64.powi(level as i32);
    let kmax = ((2.0 * SMAX / std::f64::consts::PI).asinh() / h).floor() as i64;
    (-kmax..=kmax).map(|k| node_at(k as f64 * h)).collect()
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, v: f64) {
        if !v.is_finite() {
            return;
        }
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Integrate f over (0, 1); f receives (x, 1-x). Levels double the node
/// density until the level-to-level difference meets rel_tol; returns
/// (value, error estimate).
pub fn tanh_sinh(f: &mut dyn FnMut(f64, f64) -> f64, rel_tol: f64, max_level: u32) -> (f64, f64) {
    let mut prev = f64::NAN;
    let mut best = 0.0f64;
    let mut err = f64::INFINITY;
    for level in 2..=max_level {
        let h = 0.5f64.powi(level as i32);
        let mut acc = Kahan::default();
        for nd in level_nodes(level) {
            acc.add(nd.w * f(nd.x, nd.xc));
        }
        best = h * acc.sum;
        let floor = 4.0 * f64::EPSILON * best.abs();
        if prev.is_finite() {
            err = (best - prev).abs().max(floor);
            if err <= rel_tol * best.abs() + floor {
                return (best, err);
            }
        }
        prev = best;
    }
    (best, err)
}

/// Tensor tanh-sinh over (0,1)^2.
fn square_quad(
    g: &mut dyn FnMut(&Node, &Node) -> f64,
    rel_tol: f64,
    max_level: u32,
) -> (f64, f64) {
    let mut prev = f64::NAN;
    let mut best = 0.0f64;
    let mut err = f64::INFINITY;
    for level in 3..=max_level {
        let h = 0.5f64.powi(level as i32);
        let nodes = level_nodes(level);
        let mut acc = Kahan::default();
        for nu in &nodes {
            let mut row = Kahan::default();
            for nv in &nodes {
                row.add(nv.w * g(nu, nv));
            }
            acc.add(nu.w * row.sum);
        }
        best = h * h * acc.sum;
        let floor = 8.0 * f64::EPSILON * best.abs();
        if prev.is_finite() {
            err = (best - prev).abs().max(floor);
            if err <= rel_tol * best.abs() + floor {
                return (best, err);
            }
        }
        prev = best;
    }
    (best, err)
}

/// Even simplex integral: density
/// (t1 t2)^(a-1) ((1-t1)(1-t2))^(b-1) (t1-t2)^(2c) over 0 < t2 < t1 < 1.
pub fn selberg_even_quad(a: f64, b: f64, c: f64) -> Result<AppFloat> {
    simplex_density_quad(a, b, 2.0 * c)
}

/// Odd variant: one extra factor (t1 - t2).
pub fn selberg_odd_quad(a: f64, b: f64, c: f64) -> Result<AppFloat> {
    simplex_density_quad(a, b, 2.0 * c + 1.0)
}

fn simplex_density_quad(a: f64, b: f64, p: f64) -> Result<AppFloat> {
    if !(a > 0.0 && b > 0.0 && p > -1.0 && 2.0 * a + p > 0.0) {
        return Err(Error::NonIntegrable(format!(
            "simplex density needs a, b > 0, p > -1, 2a + p > 0; got a = {a}, b = {b}, p = {p}"
        )));
    }
    // t1 = u, t2 = uv maps the simplex onto the square, Jacobian u:
    // u^(2a+p-1) v^(a-1) (1-u)^(b-1) (1-uv)^(b-1) (1-v)^p,
    // with 1 - uv = (1-u) + u(1-v) evaluated cancellation-free.
    let eu = 2.0 * a + p - 1.0;
    let mut g = |nu: &Node, nv: &Node| {
        let luv = (nu.xc + nu.x * nv.xc).ln();
        (eu * nu.lx + (b - 1.0) * (nu.lxc + luv) + (a - 1.0) * nv.lx + p * nv.lxc).exp()
    };
    let (v, err) = square_quad(&mut g, 1e-12, 7);
    Ok(AppFloat::from_f64_exact(v).add_error(Mag::from_f64(err)))
}

/// phi(a, b) = int_0^1 F(-b,b;1;1-w) (F(a,-a;1;w) - 1) dw/w for
/// |a|, |b| <= 1/2. The second factor is summed without its leading 1
/// so the integrand stays fully accurate as w -> 0.
pub fn phi_integral(a: &BigRational, b: &BigRational, prec: u32) -> Result<AppFloat> {
    let half = BigRational::new(1.into(), 2.into());
    if a.abs() > half || b.abs() > half {
        return Err(Error::Margin(format!(
            "integral needs |a|, |b| <= 1/2, got a = {a}, b = {b}"
        )));
    }
    if a.is_zero() {
        return Ok(AppFloat::zero());
    }
    let wk = 96u32;
    let one = BigRational::one();
    let na = -a.clone();
    let nb = -b.clone();
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let mut f = |x: f64, _xc: f64| -> f64 {
        let eval = || -> Result<f64> {
            let wr = BigRational::from_float(x).expect("finite node");
            let wc = &one - &wr;
            let wf = AppFloat::from_rational(&wr, wk);
            let grown = if wr <= half {
                pfq_minus_one(
                    &[a.clone(), na.clone()],
                    std::slice::from_ref(&one),
                    &wr,
                    wk,
                )?
            } else {
                gauss_2f1(a, &na, &one, &wr, wk)?.sub(&AppFloat::from_int(1))
            };
            let left = gauss_2f1(&nb, b, &one, &wc, wk)?;
            Ok(left.mul(&grown.div(&wf)?).to_f64())
        };
        match eval() {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        }
    };
    let (v, err) = tanh_sinh(&mut f, 1e-11, 8);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(AppFloat::from_f64_exact(v)
        .add_error(Mag::from_f64(err))
        .at_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::transcend::{gamma, pi, zeta_int};

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn one_dimensional_endpoint_singularities() {
        let (v, e) = tanh_sinh(&mut |x, _| x.powf(-0.5), 1e-13, 10);
        assert!((v - 2.0).abs() < 1e-11, "sqrt integral {v} err {e}");
        let (v, _) = tanh_sinh(&mut |x, _| -x.ln(), 1e-13, 10);
        assert!((v - 1.0).abs() < 1e-12, "log integral {v}");
        // int x^(-1/4) (1-x)^(-1/2) = G(3/4)G(1/2)/G(5/4)
        let (v, _) = tanh_sinh(&mut |x, xc| x.powf(-0.25) * xc.powf(-0.5), 1e-13, 10);
        let g = |x: BigRational| gamma(&AppFloat::from_rational(&x, 96)).unwrap();
        let want = g(r(3, 4)).mul(&g(r(1, 2))).div(&g(r(5, 4))).unwrap().to_f64();
        assert!((v - want).abs() < 1e-11, "beta integral {v} vs {want}");
    }

    #[test]
    fn simplex_rational_reference_values() {
        // pure (t1-t2)^p over the simplex: 1/((p+1)(p+2))
        let v = selberg_even_quad(1.0, 1.0, 0.5).unwrap();
        assert!(
            v.sub(&AppFloat::from_rational(&r(1, 6), 64)).abs_upper_f64() < 1e-9,
            "p = 1 case"
        );
        let v = selberg_even_quad(1.0, 1.0, 1.0).unwrap();
        assert!(
            v.sub(&AppFloat::from_rational(&r(1, 12), 64)).abs_upper_f64() < 1e-9,
            "p = 2 case"
        );
        let v = selberg_odd_quad(1.0, 1.0, 0.0).unwrap();
        assert!(
            v.sub(&AppFloat::from_rational(&r(1, 6), 64)).abs_upper_f64() < 1e-9,
            "odd p = 1 case"
        );
        assert!(matches!(
            selberg_even_quad(0.0, 1.0, 0.5),
            Err(Error::NonIntegrable(_))
        ));
    }

    #[test]
    fn simplex_splits_into_beta_squares_at_zero_exponent() {
        // p = 0: the density factorizes, S = B(a,b)^2/2; at a = 1/2,
        // b = 3/2, B = pi/2, so the integral is pi^2/8
        let v = selberg_even_quad(0.5, 1.5, 0.0).unwrap();
        let want = pi(96).mul(&pi(96)).div_i64(8);
        assert!(
            v.sub(&want).abs_upper_f64() < 1e-9,
            "difference {}",
            v.sub(&want).abs_upper_f64()
        );
    }

    #[test]
    fn phi_small_parameter_behavior() {
        let z = phi_integral(&BigRational::zero(), &r(1, 10), 64).unwrap();
        assert!(z.is_exact_zero(), "vanishes identically at a = 0");
        // leading order -zeta(3) a^2, corrections O(a^2 (a^2 + b^2))
        let a = r(1, 1000);
        let v = phi_integral(&a, &a, 64).unwrap();
        let lead = zeta_int(3, 96)
            .mul(&AppFloat::from_rational(&(&a * &a), 96))
            .neg();
        assert!(
            v.sub(&lead).abs_upper_f64() < 1e-11,
            "difference {}",
            v.sub(&lead).abs_upper_f64()
        );
    }
}
