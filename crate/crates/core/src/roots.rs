//! Bracketed scalar root refinement.

use crate::error::{Error, Result};
use crate::num::Real;

/// Refines a root of `f` inside `[lo, hi]`, where `f(lo)` and `f(hi)` have
/// opposite signs (or one of them vanishes).
///
/// Brent's method: inverse quadratic / secant steps, falling back to
/// bisection whenever the interpolated step leaves the bracket or converges
/// too slowly. Stops when the bracket is narrower than `rel_tol * |x|`.
pub(crate) fn brent<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, rel_tol: T) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootRefinement(format!(
            "no sign change on [{}, {}]",
            lo.as_f64(),
            hi.as_f64()
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    let two = T::two();
    let half = T::half();

    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = two * T::epsilon() * b.abs() + half * rel_tol * b.abs().max(T::min_positive_value());
        let m = half * (c - b);
        if m.abs() <= tol || fb == T::zero() {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * m * s;
                q = T::one() - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (two * m * qa * (qa - r) - (b - a) * (r - T::one()));
                q = (qa - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            } else {
                p = -p;
            }
            let bound1 = T::lit(3.0) * m * q - (tol * q).abs();
            let bound2 = (e * q).abs();
            if two * p < bound1.min(bound2) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        if d.abs() > tol {
            b = b + d;
        } else {
            b = b + if m > T::zero() { tol } else { -tol };
        }
        fb = f(b);
    }
    Err(Error::RootRefinement("iteration limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_root() {
        let r = brent(|x: f64| x.cos(), 1.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn handles_flat_regions_and_endpoints() {
        let r = brent(|x: f64| (x - 0.3).powi(5), 0.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-3);
        assert_eq!(brent(|x: f64| x, 0.0, 1.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn rejects_missing_bracket() {
        assert!(brent(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn reaches_relative_tolerance() {
        let target = 0.123_456_789_012_345_f64;
        let r = brent(|x| (x - target) * (1.0 + x * x), 0.0, 1.0, 1e-13).unwrap();
        assert!(((r - target) / target).abs() < 1e-13);
    }
}
