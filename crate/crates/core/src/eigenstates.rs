//! Normalised bound-state wavefunctions.
//!
//! The piecewise form is
//!
//! ```text
//! x < 0          B1 e^{χc x}
//! 0 <= x <= a    A1 sin kx + C1 cos kx
//! a < x < a+b    B2 e^{χb(a-x)} + B3 e^{-χb(a+b-x)}
//! a+b <= x <= L  A2 sin k(L-x) + C2 cos k(L-x)
//! x > L          B4 e^{-χc(x-L)}
//! ```
//!
//! with `L = 2a+b`. The right-hand pieces are written in the mirrored
//! coordinate, so the parity structure is `A2 = ±A1`, `C2 = ±C1`, `B4 = ±B1`,
//! `B3 = ±B2`.
//!
//! In the evanescent regime the coefficients come from closed forms. Above
//! the barrier (and at `χb -> 0`, where the two barrier exponentials
//! coincide) the interface system is solved for its null vector instead, with
//! the barrier written in a centred basis (see [`BarrierBasis`]).
//!
//! Sign convention: `ψ(a/2) > 0`.

use crate::error::{Error, Result};
use crate::linalg::{mat_vec, null_vector};
use crate::matching::{interface_matrix, BarrierBasis, N_COEFFS};
use crate::num::{sinh_minus_id_over_cube, Real};
use crate::params::{BarrierMode, Region, WellParams};
use crate::spectrum::{find_levels, parity_residual, Level, Parity};

/// Relative residual above which an energy is not accepted as a root.
const ROOT_RESIDUAL: f64 = 1e-8;
/// Interface residual a closed-form sign choice must reach.
const SIGN_RESIDUAL: f64 = 1e-8;
/// Below this `bχb` the exponential barrier basis is too degenerate to use.
const EXPONENTIAL_BASIS_MIN: f64 = 1e-3;

/// The eight amplitudes of the piecewise wavefunction (nm^-1/2).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoefficientSet<T> {
    pub a1: T,
    pub a2: T,
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
    pub c1: T,
    pub c2: T,
}

impl<T: Real> CoefficientSet<T> {
    /// Unknown-vector order `(A1, B1, C1, B2, B3, A2, C2, B4)`.
    pub fn to_array(&self) -> [T; N_COEFFS] {
        [self.a1, self.b1, self.c1, self.b2, self.b3, self.a2, self.c2, self.b4]
    }

    pub fn from_array(v: [T; N_COEFFS]) -> Self {
        let [a1, b1, c1, b2, b3, a2, c2, b4] = v;
        CoefficientSet { a1, a2, b1, b2, b3, b4, c1, c2 }
    }

    pub fn scaled(&self, f: T) -> Self {
        Self::from_array(self.to_array().map(|c| c * f))
    }

    pub fn max_abs(&self) -> T {
        self.to_array().iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    /// Whether the mirror relations of `parity` hold exactly.
    pub fn has_parity(&self, parity: Parity) -> bool {
        let p = parity.sign::<T>();
        self.a2 == p * self.a1 && self.c2 == p * self.c1 && self.b4 == p * self.b1 && self.b3 == p * self.b2
    }

    /// Forces the mirror relations by averaging each pair.
    fn project(&self, parity: Parity) -> Self {
        let p = parity.sign::<T>();
        let h = T::half();
        let a1 = (self.a1 + p * self.a2) * h;
        let c1 = (self.c1 + p * self.c2) * h;
        let b1 = (self.b1 + p * self.b4) * h;
        let b2 = (self.b2 + p * self.b3) * h;
        CoefficientSet { a1, a2: p * a1, b1, b2, b3: p * b2, b4: p * b1, c1, c2: p * c1 }
    }
}

/// A level together with its normalised wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState<T> {
    pub level: Level<T>,
    pub coeffs: CoefficientSet<T>,
    pub params: WellParams<T>,
    /// Basis the barrier amplitudes `B2`, `B3` refer to.
    pub basis: BarrierBasis<T>,
}

impl<T: Real> BoundState<T> {
    /// Closed form where available, otherwise the interface null vector.
    pub fn new(level: Level<T>, params: &WellParams<T>) -> Result<Self> {
        match coefficients(&level, params) {
            Ok(coeffs) => Ok(BoundState {
                level,
                coeffs,
                params: *params,
                basis: BarrierBasis::Exponential { chi: level.waves.barrier.magnitude() },
            }),
            Err(Error::RegimeUnsupported(_)) => linear_solve(&level, params),
            Err(e) => Err(e),
        }
    }

    pub fn parity(&self) -> Parity {
        self.level.parity
    }

    pub fn energy(&self) -> T {
        self.level.energy
    }

    pub fn psi(&self, x: T) -> T {
        eval_psi(x, self)
    }

    pub fn dpsi(&self, x: T) -> T {
        eval_dpsi(x, self)
    }

    /// `(1/m) dψ/dx`, continuous across every interface.
    pub fn flux(&self, x: T) -> T {
        eval_dpsi(x, self) / self.params.mass(self.params.region_of(x))
    }

    /// Same state with all amplitudes multiplied by `f`.
    pub fn scaled(&self, f: T) -> Self {
        BoundState { coeffs: self.coeffs.scaled(f), ..*self }
    }
}

/// Solves all bound levels and their wavefunctions.
pub fn bound_states<T: Real>(params: &WellParams<T>, max_levels: Option<usize>) -> Result<Vec<BoundState<T>>> {
    find_levels(params, max_levels)?.into_iter().map(|l| BoundState::new(l, params)).collect()
}

fn check_root<T: Real>(level: &Level<T>, params: &WellParams<T>) -> Result<()> {
    let residual = parity_residual(level.energy, level.parity, params)?;
    if residual > T::tol(ROOT_RESIDUAL) {
        return Err(Error::NotARoot { energy: level.energy.as_f64(), residual: residual.as_f64() });
    }
    Ok(())
}

/// Normalisation constant `C2` (positive before the sign convention is applied) from the closed
/// forms `C2 = k mc / sqrt(G1 + G2)` resp. `k mc / sqrt(H1 + H2)`.
fn normalization<T: Real>(parity: Parity, params: &WellParams<T>, k: T, chi_c: T, chi: T) -> T {
    let (a, b) = (params.a(), params.b());
    let (m0, mb, mc) = (params.m0(), params.mb(), params.mc());
    let (k2, chi2) = (k * k, chi * chi);
    let big_k = k2 * mc * mc + chi_c * chi_c * m0 * m0;
    // G1 = H1: well plus cladding part
    let g1 = (k2 * mc * mc * (T::one() + a * chi_c) + m0 * chi_c * chi_c * (mc + m0 * a * chi_c)) / chi_c;
    let x = b * chi;
    let e = (-x).exp();
    let (num, den) = match parity {
        Parity::Symmetric => (
            T::two() * b * k2 * mb * e + (k2 * mb + chi2 * m0) * (-(-x * T::two()).exp_m1() / chi),
            T::two() * e * (k2 * mb * mb - chi2 * m0 * m0) + (k2 * mb * mb + chi2 * m0 * m0) * (T::one() + e * e),
        ),
        Parity::Antisymmetric if x < T::half() => {
            // same ratio multiplied through by e^{x}/2, without cancellation
            let sinhc = if x == T::zero() { T::one() } else { x.sinh() / x };
            let sh = (x * T::half()).sinh();
            (
                k2 * mb * b * x * x * sinh_minus_id_over_cube(x) + chi2 * m0 * b * sinhc,
                k2 * mb * mb * T::two() * sh * sh + chi2 * m0 * m0 * (T::one() + x.cosh()),
            )
        }
        Parity::Antisymmetric => (
            -T::two() * b * k2 * mb * e + (k2 * mb + chi2 * m0) * (-(-x * T::two()).exp_m1() / chi),
            T::two() * e * (chi2 * m0 * m0 - k2 * mb * mb) + (k2 * mb * mb + chi2 * m0 * m0) * (T::one() + e * e),
        ),
    };
    let g2 = mb * big_k * num / den;
    k * mc / (g1 + g2).sqrt()
}

/// Closed-form normalised coefficients of an evanescent-regime level.
///
/// The sign of `B2`, `B3` relative to the rest is fixed by requiring the
/// interface equations at `x = a` and `x = a+b` to hold; exactly one choice
/// does.
pub fn coefficients<T: Real>(level: &Level<T>, params: &WellParams<T>) -> Result<CoefficientSet<T>> {
    let chi = match level.waves.barrier {
        BarrierMode::Evanescent { chi_b } if chi_b > T::zero() => chi_b,
        _ => return Err(Error::RegimeUnsupported("closed forms need E < V_b".into())),
    };
    let b = params.b();
    if level.parity == Parity::Antisymmetric && b > T::zero() && b * chi < T::lit(1e-4) {
        return Err(Error::RegimeUnsupported("barrier exponentials degenerate (bχb < 1e-4)".into()));
    }
    check_root(level, params)?;

    let (m0, mb, mc) = (params.m0(), params.mb(), params.mc());
    let (k, chi_c) = (level.waves.k, level.waves.chi_c);
    let c2 = normalization(level.parity, params, k, chi_c, chi);
    let e = (-b * chi).exp();
    let big_k = k * k * mc * mc + chi_c * chi_c * m0 * m0;
    let (plus, minus) = (T::one() + e, -(-b * chi).exp_m1());
    let (kt, ct) = match level.parity {
        Parity::Symmetric => (plus, minus),
        Parity::Antisymmetric => (minus, plus),
    };
    let bmag = mb * big_k.sqrt() / (mc * (k * k * mb * mb * kt * kt + chi * chi * m0 * m0 * ct * ct).sqrt());
    let a1 = c2 * chi_c * m0 / (k * mc);

    let p = level.parity.sign::<T>();
    let build = |s: T| CoefficientSet {
        a1: p * a1,
        a2: a1,
        b1: p * c2,
        b2: p * s * c2 * bmag,
        b3: s * c2 * bmag,
        b4: c2,
        c1: p * c2,
        c2,
    };
    let basis = BarrierBasis::Exponential { chi };
    let passes = |c: &CoefficientSet<T>| {
        let r = residuals_with(params, level, c, &basis);
        r[2..6].iter().all(|v| *v < T::tol(SIGN_RESIDUAL))
    };
    let (plus_set, minus_set) = (build(T::one()), build(-T::one()));
    let coeffs = match (passes(&plus_set), passes(&minus_set)) {
        (true, false) => plus_set,
        (false, true) => minus_set,
        (ok_p, ok_m) => {
            return Err(Error::Numerical(format!(
                "barrier sign ambiguous for {} (+: {ok_p}, -: {ok_m})",
                level.label()
            )))
        }
    };
    Ok(apply_sign_convention(coeffs, params, k))
}

/// `C2` of a symmetric level for `m0 = mb = mc`:
///
/// ```text
/// C2s = k sqrt(χb / ((k² + χc²)(a χb + χb/χc + R)))
/// R   = [2b k² χb e + (k² + χb²)(1 - e²)] / [2e(k² - χb²) + (k² + χb²)(1 + e²)]
/// ```
///
/// with `e = e^{-bχb}`. For antisymmetric levels `2b k² χb e -> -2b k² χb e`
/// and `k² - χb² -> χb² - k²`.
pub fn normalization_equal_mass<T: Real>(level: &Level<T>, params: &WellParams<T>) -> Result<T> {
    if !params.has_equal_masses() {
        return Err(Error::PreconditionViolated("equal-mass normalisation needs m0 = mb = mc".into()));
    }
    let chi = match level.waves.barrier {
        BarrierMode::Evanescent { chi_b } if chi_b > T::zero() => chi_b,
        _ => return Err(Error::RegimeUnsupported("closed forms need E < V_b".into())),
    };
    let (k, chi_c, a, b) = (level.waves.k, level.waves.chi_c, params.a(), params.b());
    let (k2, chi2) = (k * k, chi * chi);
    let e = (-b * chi).exp();
    let p = level.parity.sign::<T>();
    let r = (p * T::two() * b * k2 * chi * e + (k2 + chi2) * (T::one() - e * e))
        / (p * T::two() * e * (k2 - chi2) + (k2 + chi2) * (T::one() + e * e));
    Ok(k * (chi / ((k2 + chi_c * chi_c) * (a * chi + chi / chi_c + r))).sqrt())
}

/// Flips the overall sign so that `ψ(a/2) > 0`.
fn apply_sign_convention<T: Real>(c: CoefficientSet<T>, params: &WellParams<T>, k: T) -> CoefficientSet<T> {
    let (s, co) = (params.a() * k * T::half()).sin_cos();
    let mid = c.a1 * s + c.c1 * co;
    let reference = if mid != T::zero() { mid } else { c.a1 };
    if reference < T::zero() {
        c.scaled(-T::one())
    } else {
        c
    }
}

/// Barrier basis used by the null-vector solve.
fn solve_basis<T: Real>(level: &Level<T>, params: &WellParams<T>) -> BarrierBasis<T> {
    match level.waves.barrier {
        BarrierMode::Evanescent { chi_b } if params.b() * chi_b >= T::lit(EXPONENTIAL_BASIS_MIN) => {
            BarrierBasis::Exponential { chi: chi_b }
        }
        mode => BarrierBasis::Centered {
            q: mode.magnitude(),
            evanescent: mode.is_evanescent(),
            ell: params.center(),
        },
    }
}

/// Coefficients from the null vector of the interface system, projected onto
/// the level's parity and normalised with the analytic region integrals.
///
/// Valid in every regime, including `V_b < E < V_c`.
pub fn linear_solve<T: Real>(level: &Level<T>, params: &WellParams<T>) -> Result<BoundState<T>> {
    check_root(level, params)?;
    let basis = solve_basis(level, params);
    let m = interface_matrix(params, level.waves.k, level.waves.chi_c, &basis);
    let raw = CoefficientSet::from_array(null_vector(m)).project(level.parity);
    let norm = analytic_norm(&raw, params, level, &basis);
    if !(norm > T::zero() && norm.is_finite()) {
        return Err(Error::Numerical(format!("null vector of {} has norm {}", level.label(), norm)));
    }
    let coeffs = apply_sign_convention(raw.scaled(norm.sqrt().recip()), params, level.waves.k);
    Ok(BoundState { level: *level, coeffs, params: *params, basis })
}

/// `∫|ψ|²` from closed-form region integrals.
fn analytic_norm<T: Real>(c: &CoefficientSet<T>, params: &WellParams<T>, level: &Level<T>, basis: &BarrierBasis<T>) -> T {
    let (a, b) = (params.a(), params.b());
    let (k, chi_c) = (level.waves.k, level.waves.chi_c);
    let half = T::half();
    let cladding = (c.b1 * c.b1 + c.b4 * c.b4) / (T::two() * chi_c);
    let well = |amp_s: T, amp_c: T| {
        let s2 = (T::two() * a * k).sin() / (T::lit(4.0) * k);
        let sa = (a * k).sin();
        amp_s * amp_s * (a * half - s2) + amp_c * amp_c * (a * half + s2) + amp_s * amp_c * sa * sa / k
    };
    let barrier = match *basis {
        BarrierBasis::Exponential { chi } => {
            let e = (-b * chi).exp();
            let span = if chi == T::zero() { b } else { -(-T::two() * b * chi).exp_m1() / (T::two() * chi) };
            (c.b2 * c.b2 + c.b3 * c.b3) * span + T::two() * c.b2 * c.b3 * b * e
        }
        BarrierBasis::Centered { q, evanescent, ell } => {
            let x = b * q;
            let (even, odd) = if evanescent {
                let sinhc = if x == T::zero() { T::one() } else { x.sinh() / x };
                (b * half * (T::one() + sinhc), b * b * b * half * sinh_minus_id_over_cube(x))
            } else {
                let sinc = if x == T::zero() { T::one() } else { x.sin() / x };
                (b * half * (T::one() + sinc), b * b * b * half * crate::num::id_minus_sin_over_cube(x))
            };
            let sym = c.b2 + c.b3;
            let anti = (c.b3 - c.b2) / ell;
            sym * sym * even + anti * anti * odd
        }
    };
    cladding + well(c.a1, c.c1) + well(c.a2, c.c2) + barrier
}

fn residuals_with<T: Real>(
    params: &WellParams<T>,
    level: &Level<T>,
    coeffs: &CoefficientSet<T>,
    basis: &BarrierBasis<T>,
) -> [T; N_COEFFS] {
    let m = interface_matrix(params, level.waves.k, level.waves.chi_c, basis);
    let v = coeffs.to_array();
    let r = mat_vec(&m, &v);
    let scale = coeffs.max_abs();
    std::array::from_fn(|i| {
        let row = m[i].iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        r[i].abs() / (row * scale)
    })
}

/// Residuals of the eight interface equations, each divided by the largest
/// matrix entry of its row and the largest coefficient.
///
/// Row order: flux and value at `x = 0`, value and flux at `a`, value and
/// flux at `a+b`, value and flux at `2a+b`.
pub fn boundary_residuals<T: Real>(state: &BoundState<T>) -> [T; N_COEFFS] {
    residuals_with(&state.params, &state.level, &state.coeffs, &state.basis)
}

/// `(value, derivative)` of ψ at `x`.
fn eval_both<T: Real>(x: T, state: &BoundState<T>) -> (T, T) {
    let p = &state.params;
    let c = &state.coeffs;
    let (k, chi_c) = (state.level.waves.k, state.level.waves.chi_c);
    let l = p.total_width();
    match p.region_of(x) {
        Region::LeftCladding => {
            let v = c.b1 * (chi_c * x).exp();
            (v, chi_c * v)
        }
        Region::LeftWell => {
            let (s, co) = (k * x).sin_cos();
            (c.a1 * s + c.c1 * co, k * (c.a1 * co - c.c1 * s))
        }
        Region::Barrier => {
            let (u, du, v, dv) = state.basis.eval(p, x);
            (c.b2 * u + c.b3 * v, c.b2 * du + c.b3 * dv)
        }
        Region::RightWell => {
            let (s, co) = (k * (l - x)).sin_cos();
            (c.a2 * s + c.c2 * co, -k * (c.a2 * co - c.c2 * s))
        }
        Region::RightCladding => {
            let v = c.b4 * (-chi_c * (x - l)).exp();
            (v, -chi_c * v)
        }
    }
}

/// ψ(x) (nm^-1/2), defined on the whole axis.
pub fn eval_psi<T: Real>(x: T, state: &BoundState<T>) -> T {
    eval_both(x, state).0
}

/// dψ/dx (nm^-3/2). At an interface the value from the region that owns
/// the point is returned.
pub fn eval_dpsi<T: Real>(x: T, state: &BoundState<T>) -> T {
    eval_both(x, state).1
}
