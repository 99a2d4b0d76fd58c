//! Bracketed one-dimensional search: golden-section minimisation and
//! bisection root finding.

use crate::error::{Error, Result};
use crate::Real;

const MAX_ITER: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMin<T> {
    pub argmin: T,
    pub value: T,
    pub evaluations: usize,
}

fn finite<T: Real>(x: T, fx: T) -> Result<T> {
    if fx.is_finite() {
        Ok(fx)
    } else {
        Err(Error::NonFinite { at: x.as_f64() })
    }
}

fn bracket<T: Real>(lo: T, hi: T, tol: T) -> Result<(T, T)> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(Error::spec("interval", format!("[{lo}, {hi}] is not a bounded interval")));
    }
    if !(tol > T::zero()) {
        return Err(Error::spec("tolerance", "must be positive"));
    }
    Ok((lo, hi))
}

/// Golden-section search for the minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is no wider than `tol`. The end points are
/// evaluated too, so a monotone objective returns the exact boundary.
pub fn minimize_scalar<T, F>(mut f: F, lo: T, hi: T, tol: T) -> Result<ScalarMin<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = bracket(lo, hi, tol)?;
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut evals = 0;
    let mut eval = |x: T| {
        evals += 1;
        finite(x, f(x))
    };

    let f_lo = eval(a)?;
    let f_hi = eval(b)?;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = eval(c)?;
    let mut fd = eval(d)?;
    let mut iter = 0;
    while b - a > tol && iter < MAX_ITER {
        iter += 1;
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(d)?;
        }
    }
    let mid = (a + b) / T::lit(2.0);
    let f_mid = eval(mid)?;

    let mut best = (mid, f_mid);
    for cand in [(lo, f_lo), (hi, f_hi)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    Ok(ScalarMin { argmin: best.0, value: best.1, evaluations: evals })
}

/// Bisection for `f(x) = target` on `[lo, hi]` where `f − target` changes
/// sign across the interval. Stops when the bracket is no wider than `tol`.
pub fn find_root<T, F>(mut f: F, target: T, lo: T, hi: T, tol: T) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let (mut a, mut b) = bracket(lo, hi, tol)?;
    let mut g = |x: T| finite(x, f(x)).map(|fx| fx - target);
    let ga = g(a)?;
    let gb = g(b)?;
    if ga == T::zero() {
        return Ok(a);
    }
    if gb == T::zero() {
        return Ok(b);
    }
    if ga.signum() == gb.signum() {
        return Err(Error::Infeasible(format!("target {target} is not bracketed by [{lo}, {hi}]")));
    }
    let rising = gb > ga;
    let mut iter = 0;
    while b - a > tol && iter < MAX_ITER {
        iter += 1;
        let mid = a + (b - a) / T::lit(2.0);
        let gm = g(mid)?;
        if gm == T::zero() {
            return Ok(mid);
        }
        if (gm > T::zero()) == rising {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(a + (b - a) / T::lit(2.0))
}
