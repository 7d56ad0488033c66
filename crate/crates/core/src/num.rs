//! Scalar abstraction.
//!
//! Every numerical routine in the crate is written against [`Real`], so the
//! same code runs in `f64` (the production scalar) and `f32` (useful for
//! smoke-testing precision sensitivity). Tolerances that only make sense at
//! double precision are clamped against the scalar's epsilon through
//! [`Real::tol`].

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point scalar usable throughout the solver.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self;

    /// Lossy conversion back to `f64` for reporting.
    fn as_f64(self) -> f64;

    /// `requested` clamped from below by a small multiple of the machine epsilon.
    fn tol(requested: f64) -> Self {
        Self::lit(requested).max(Self::epsilon() * Self::lit(64.0))
    }

    fn two() -> Self {
        Self::lit(2.0)
    }

    fn half() -> Self {
        Self::lit(0.5)
    }
}

macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            #[inline]
            fn lit(x: f64) -> Self {
                x as $t
            }

            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// Relative equality used for parameter-class checks (equal masses, equal barriers).
pub(crate) fn nearly_equal<T: Real>(x: T, y: T) -> bool {
    (x - y).abs() <= T::tol(1e-12) * x.abs().max(y.abs())
}

/// `(sinh x - x) / x^3`, accurate near zero.
pub(crate) fn sinh_minus_id_over_cube<T: Real>(x: T) -> T {
    if x.abs() < T::half() {
        series_odd_remainder(x * x, T::one())
    } else {
        (x.sinh() - x) / (x * x * x)
    }
}

/// `(x - sin x) / x^3`, accurate near zero.
pub(crate) fn id_minus_sin_over_cube<T: Real>(x: T) -> T {
    if x.abs() < T::half() {
        series_odd_remainder(x * x, -T::one())
    } else {
        (x - x.sin()) / (x * x * x)
    }
}

// sum_{n>=1} sign^(n+1) x^(2n-2) / (2n+1)!, i.e. 1/6 + sign x^2/120 + ...
fn series_odd_remainder<T: Real>(x2: T, sign: T) -> T {
    let mut term = T::lit(1.0 / 6.0);
    let mut sum = term;
    for n in 2..12 {
        let n = T::lit(n as f64);
        term = term * sign * x2 / ((T::two() * n) * (T::two() * n + T::one()));
        sum = sum + term;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainders_match_direct_evaluation_away_from_zero() {
        for &x in &[0.49_f64, 0.51, 0.8, 2.0] {
            let direct = (x.sinh() - x) / x.powi(3);
            assert!((sinh_minus_id_over_cube(x) - direct).abs() < 1e-13);
            let direct = (x - x.sin()) / x.powi(3);
            assert!((id_minus_sin_over_cube(x) - direct).abs() < 1e-13);
        }
        assert!((sinh_minus_id_over_cube(0.0_f64) - 1.0 / 6.0).abs() < 1e-16);
        // continuity across the series switch
        let lo = sinh_minus_id_over_cube(0.5_f64 - 1e-12);
        let hi = sinh_minus_id_over_cube(0.5_f64 + 1e-12);
        assert!((lo - hi).abs() < 1e-13, "{lo:e} {hi:e}");
    }

    #[test]
    fn tolerance_is_clamped_for_single_precision() {
        assert_eq!(<f64 as Real>::tol(1e-12), 1e-12);
        assert!(<f32 as Real>::tol(1e-12) > 1e-6);
    }
}
