//! The eight interface equations of the piecewise wavefunction.
//!
//! Unknowns are ordered `(A1, B1, C1, B2, B3, A2, C2, B4)`. Rows are
//!
//! | row | interface   | condition                              |
//! |-----|-------------|----------------------------------------|
//! | 0   | `x = 0`     | `-A1 k/m0 + B1 χc/mc = 0` (flux)       |
//! | 1   | `x = 0`     | `B1 - C1 = 0` (value)                  |
//! | 2   | `x = a`     | value                                  |
//! | 3   | `x = a`     | flux                                   |
//! | 4   | `x = a+b`   | value                                  |
//! | 5   | `x = a+b`   | flux                                   |
//! | 6   | `x = 2a+b`  | `-B4 + C2 = 0` (value)                 |
//! | 7   | `x = 2a+b`  | `-A2 k/m0 + B4 χc/mc = 0` (flux)       |
//!
//! With this ordering and the exponential barrier basis the determinant
//! obeys `D = -m0⁻⁴ mc⁻² mb⁻² e^{-2bχb} Ds Da` with the sign as written.

use crate::num::Real;
use crate::params::WellParams;

pub(crate) const N_COEFFS: usize = 8;
pub(crate) type Matrix8<T> = [[T; N_COEFFS]; N_COEFFS];

/// Basis for the two barrier amplitudes `B2`, `B3`.
///
/// `Exponential` is the natural ansatz `B2 e^{χ(a-x)} + B3 e^{-χ(a+b-x)}`,
/// valid for χ > 0. `Centered` uses `B2 u(s) + B3 v(s)` with `s = x - a - b/2`,
/// `u = C(s) - S(s)/ℓ`, `v = C(s) + S(s)/ℓ`, `ℓ = a + b/2`, where
/// `C, S = cosh χs, sinh(χs)/χ` (evanescent) or `cos κs, sin(κs)/κ`
/// (propagating). It stays well conditioned through `E = V_b`. In both bases
/// the mirror `x -> 2a+b-x` swaps the two basis functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BarrierBasis<T> {
    Exponential { chi: T },
    Centered { q: T, evanescent: bool, ell: T },
}

impl<T: Real> BarrierBasis<T> {
    /// Values and derivatives `(u, u', v, v')` at position `x` inside the barrier.
    pub(crate) fn eval(&self, params: &WellParams<T>, x: T) -> (T, T, T, T) {
        match *self {
            BarrierBasis::Exponential { chi } => {
                let u = (chi * (params.a() - x)).exp();
                let v = (-chi * (params.a() + params.b() - x)).exp();
                (u, -chi * u, v, chi * v)
            }
            BarrierBasis::Centered { q, evanescent, ell } => {
                let s = x - params.center();
                let (c, dc, sq, dsq) = centered_pair(q, evanescent, s);
                (c - sq / ell, dc - dsq / ell, c + sq / ell, dc + dsq / ell)
            }
        }
    }
}

/// `(C(s), C'(s), S(s), S'(s))` for the centered barrier basis.
fn centered_pair<T: Real>(q: T, evanescent: bool, s: T) -> (T, T, T, T) {
    let x = q * s;
    if evanescent {
        let sinhc = if x == T::zero() { s } else { x.sinh() / q };
        (x.cosh(), q * x.sinh(), sinhc, x.cosh())
    } else {
        let sinc = if x == T::zero() { s } else { x.sin() / q };
        (x.cos(), -q * x.sin(), sinc, x.cos())
    }
}

/// Assembles the 8×8 interface matrix at well wavevector `k` and cladding
/// decay constant `chi_c`.
pub(crate) fn interface_matrix<T: Real>(
    params: &WellParams<T>,
    k: T,
    chi_c: T,
    basis: &BarrierBasis<T>,
) -> Matrix8<T> {
    let (a, b) = (params.a(), params.b());
    let (m0, mb, mc) = (params.m0(), params.mb(), params.mc());
    let (sin_ak, cos_ak) = (a * k).sin_cos();
    let (u_l, du_l, v_l, dv_l) = basis.eval(params, a);
    let (u_r, du_r, v_r, dv_r) = basis.eval(params, a + b);
    let z = T::zero();

    // columns:  A1            B1        C1             B2           B3           A2             C2             B4
    [
        [-k / m0, chi_c / mc, z, z, z, z, z, z],
        [z, T::one(), -T::one(), z, z, z, z, z],
        [sin_ak, z, cos_ak, -u_l, -v_l, z, z, z],
        [k * cos_ak / m0, z, -k * sin_ak / m0, -du_l / mb, -dv_l / mb, z, z, z],
        [z, z, z, u_r, v_r, -sin_ak, -cos_ak, z],
        [z, z, z, du_r / mb, dv_r / mb, k * cos_ak / m0, -k * sin_ak / m0, z],
        [z, z, z, z, z, z, T::one(), -T::one()],
        [z, z, z, z, z, -k / m0, z, chi_c / mc],
    ]
}
