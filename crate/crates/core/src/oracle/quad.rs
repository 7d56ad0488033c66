//! Adaptive Gauss-Kronrod quadrature over the five layers.

use crate::eigenstates::BoundState;
use crate::error::{Error, Result};
use crate::num::Real;

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point
// Gauss weights on the odd-indexed nodes.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tail cut-off: `|ψ|` below this fraction of its peak is dropped.
const TAIL_FRACTION: f64 = 1e-16;
const MAX_DEPTH: u32 = 48;

/// Accuracy settings for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    /// Absolute tolerance per region.
    pub abs_tol: T,
    /// Each region is first split into this many equal panels.
    pub min_panels: usize,
}

impl<T: Real> Default for Quadrature<T> {
    fn default() -> Self {
        Quadrature { abs_tol: T::lit(1e-13), min_panels: 2 }
    }
}

impl<T: Real> Quadrature<T> {
    /// Twice the panels and half the tolerance.
    pub fn refined(&self) -> Self {
        Quadrature { abs_tol: self.abs_tol * T::half(), min_panels: self.min_panels * 2 }
    }
}

fn kronrod<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let c = (a + b) * T::half();
    let h = (b - a) * T::half();
    let fc = f(c);
    let mut k = fc * T::lit(WK[7]);
    let mut g = fc * T::lit(WG[3]);
    for i in 0..7 {
        let dx = h * T::lit(XK[i]);
        let pair = f(c - dx) + f(c + dx);
        k = k + pair * T::lit(WK[i]);
        if i % 2 == 1 {
            g = g + pair * T::lit(WG[i / 2]);
        }
    }
    (k * h, (k - g).abs() * h)
}

fn adapt<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T, depth: u32) -> T {
    let (k, err) = kronrod(f, a, b);
    let floor = T::epsilon() * T::lit(50.0) * k.abs();
    if err <= tol.max(floor) || depth >= MAX_DEPTH {
        return k;
    }
    let m = (a + b) * T::half();
    adapt(f, a, m, tol * T::half(), depth + 1) + adapt(f, m, b, tol * T::half(), depth + 1)
}

/// `∫_a^b f` to absolute tolerance `q.abs_tol`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, q: &Quadrature<T>) -> T {
    if b <= a {
        return T::zero();
    }
    let n = q.min_panels.max(1);
    let step = (b - a) / T::lit(n as f64);
    let tol = q.abs_tol / T::lit(n as f64);
    (0..n)
        .map(|i| {
            let lo = a + step * T::lit(i as f64);
            let hi = if i + 1 == n { b } else { lo + step };
            adapt(&f, lo, hi, tol, 0)
        })
        .fold(T::zero(), |s, v| s + v)
}

/// Distance beyond the outer interfaces where `|ψ|` drops below
/// `1e-16` of its peak.
pub fn tail_length<T: Real>(state: &BoundState<T>) -> T {
    let c = &state.coeffs;
    let peak = (c.a1 * c.a1 + c.c1 * c.c1).sqrt().max(c.b1.abs()).max(c.b2.abs() + c.b3.abs());
    let edge = c.b1.abs();
    if edge == T::zero() || peak == T::zero() {
        return T::zero();
    }
    let len = ((edge / peak).ln() - T::lit(TAIL_FRACTION).ln()) / state.level.waves.chi_c;
    len.max(T::zero())
}

/// Integrals of `f` over the five layers (left cladding, left well, barrier,
/// right well, right cladding), the claddings truncated at `tail`.
pub fn integrate_regions<T: Real, F: Fn(T) -> T>(
    f: F,
    state_params: &crate::params::WellParams<T>,
    tail: T,
    q: &Quadrature<T>,
) -> [T; 5] {
    let [x0, x1, x2, x3] = state_params.interfaces();
    [
        integrate(&f, x0 - tail, x0, q),
        integrate(&f, x0, x1, q),
        integrate(&f, x1, x2, q),
        integrate(&f, x2, x3, q),
        integrate(&f, x3, x3 + tail, q),
    ]
}

fn check_pair<T: Real>(i: &BoundState<T>, j: &BoundState<T>) -> Result<()> {
    if i.params != j.params {
        return Err(Error::ParameterMismatch);
    }
    Ok(())
}

/// `∫ ψ_i(x) w(x) ψ_j(x) dx`, layer by layer.
pub fn quad_weighted<T: Real, W: Fn(T) -> T>(
    i: &BoundState<T>,
    j: &BoundState<T>,
    weight: W,
    q: &Quadrature<T>,
) -> Result<[T; 5]> {
    check_pair(i, j)?;
    let tail = tail_length(i).max(tail_length(j));
    Ok(integrate_regions(|x| i.psi(x) * weight(x) * j.psi(x), &i.params, tail, q))
}

/// `∫|ψ|²` with [`Quadrature::default`] settings.
pub fn quad_norm<T: Real>(state: &BoundState<T>) -> T {
    quad_norm_with(state, &Quadrature::default())
}

pub fn quad_norm_with<T: Real>(state: &BoundState<T>, q: &Quadrature<T>) -> T {
    let tail = tail_length(state);
    integrate_regions(|x| state.psi(x) * state.psi(x), &state.params, tail, q)
        .iter()
        .fold(T::zero(), |s, v| s + *v)
}

/// `∫ ψ_i ψ_j`.
pub fn quad_overlap<T: Real>(i: &BoundState<T>, j: &BoundState<T>) -> Result<T> {
    Ok(quad_weighted(i, j, |_| T::one(), &Quadrature::default())?.iter().fold(T::zero(), |s, v| s + *v))
}
