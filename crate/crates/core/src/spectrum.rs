//! Spectrum determinants and bound-state root finding.
//!
//! The symmetric and antisymmetric determinants `Ds`, `Da` contain
//! `e^{bχb}`, which overflows for wide barriers. Everything here is evaluated
//! after multiplying through by `e^{-bχb}`; in the barrier that amounts to
//! replacing `cosh(bχ/2)`, `sinh(bχ/2)` by their rescaled forms
//! `(1 ± e^{-bχ})/2`.
//!
//! Above the barrier (`V_b < E < V_c`) `χb` becomes `iκb`. The continuation
//! is written out in real arithmetic: `cosh(bχ/2) -> cos(bκ/2)`,
//! `χ sinh(bχ/2) -> -κ sin(bκ/2)`, `sinh(bχ/2)/χ -> sin(bκ/2)/κ`, and the
//! rescaling factor continues as 1.
//!
//! Root finding works on the reduced parity functions
//!
//! ```text
//! Fs = -k m0 (χc mb c + mc sχ) cos ak + (k² mb mc c - χc m0² sχ) sin ak
//! Ga =  k m0 (χc mb s/χ + mc c) cos ak + (χc m0² c - k² mb mc s/χ) sin ak
//! ```
//!
//! (`c`, `sχ`, `s/χ` the rescaled barrier factors) with
//! `e^{-bχ} Ds = 2 Fs` and `e^{-bχ} Da = -2 χ Ga`. `Ga` drops the spurious
//! zero of `Da` at `E = V_b`, where the two barrier exponentials coincide.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matching::{interface_matrix, BarrierBasis};
use crate::num::Real;
use crate::params::{wavenumbers, wavenumbers_unchecked, BarrierMode, WaveNumbers, WellParams};
use crate::roots::brent;

/// Mirror parity about the structure centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Symmetric,
    Antisymmetric,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Symmetric, Parity::Antisymmetric];

    /// `'s'` or `'a'`, as in the level labels `1s`, `2a`.
    pub fn letter(self) -> char {
        match self {
            Parity::Symmetric => 's',
            Parity::Antisymmetric => 'a',
        }
    }

    /// `+1` for symmetric, `-1` for antisymmetric.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Parity::Symmetric => T::one(),
            Parity::Antisymmetric => -T::one(),
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A refined bound-state root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level<T> {
    /// 1-based index in the merged, energy-sorted spectrum.
    pub n: usize,
    pub parity: Parity,
    /// Energy above the well bottom (eV).
    pub energy: T,
    pub waves: WaveNumbers<T>,
}

impl<T: Real> Level<T> {
    pub fn k(&self) -> T {
        self.waves.k
    }

    /// Label such as `1s` or `2a`.
    pub fn label(&self) -> String {
        format!("{}{}", self.n, self.parity.letter())
    }
}

/// Rescaled barrier factors shared by all determinant forms.
#[derive(Debug, Clone, Copy)]
struct BarrierFactors<T> {
    /// cosh(bχ/2)·e^{-bχ/2}, or cos(bκ/2).
    c: T,
    /// χ sinh(bχ/2)·e^{-bχ/2}, or -κ sin(bκ/2).
    s_times: T,
    /// sinh(bχ/2)·e^{-bχ/2}/χ, or sin(bκ/2)/κ.
    s_over: T,
}

impl<T: Real> BarrierFactors<T> {
    fn new(b: T, mode: BarrierMode<T>) -> Self {
        let half = T::half();
        match mode {
            BarrierMode::Evanescent { chi_b: chi } => {
                let e = (-b * chi).exp();
                let s_over = if chi == T::zero() {
                    b * half
                } else {
                    -(-b * chi).exp_m1() / (T::two() * chi)
                };
                BarrierFactors { c: (T::one() + e) * half, s_times: chi * chi * s_over, s_over }
            }
            BarrierMode::Propagating { kappa_b: kappa } => {
                let x = b * kappa * half;
                let s_over = if kappa == T::zero() { b * half } else { x.sin() / kappa };
                BarrierFactors { c: x.cos(), s_times: -kappa * kappa * s_over, s_over }
            }
        }
    }
}

/// Reduced parity function and the magnitude of its largest term.
fn reduced<T: Real>(parity: Parity, params: &WellParams<T>, w: &WaveNumbers<T>) -> (T, T) {
    let (m0, mb, mc) = (params.m0(), params.mb(), params.mc());
    let (k, chi_c) = (w.k, w.chi_c);
    let f = BarrierFactors::new(params.b(), w.barrier);
    let (sin_ak, cos_ak) = (params.a() * k).sin_cos();
    let (cos_coeff, sin_coeff) = match parity {
        Parity::Symmetric => (
            -k * m0 * (chi_c * mb * f.c + mc * f.s_times),
            k * k * mb * mc * f.c - chi_c * m0 * m0 * f.s_times,
        ),
        Parity::Antisymmetric => (
            k * m0 * (chi_c * mb * f.s_over + mc * f.c),
            chi_c * m0 * m0 * f.c - k * k * mb * mc * f.s_over,
        ),
    };
    let value = cos_coeff * cos_ak + sin_coeff * sin_ak;
    (value, cos_coeff.abs().max(sin_coeff.abs()))
}

/// Overflow-safe spectrum determinant.
///
/// For `E <= V_b` returns `e^{-bχb} D_parity(E)`; above the barrier returns the
/// real continuation (`2 Fs`, resp. `-2 κ Ga`), so the function is real and
/// continuous across `E = V_b` and has the same zeros as `D_parity`.
pub fn det_scaled<T: Real>(energy: T, parity: Parity, params: &WellParams<T>) -> Result<T> {
    let w = wavenumbers(energy, params)?;
    let (g, _) = reduced(parity, params, &w);
    Ok(match parity {
        Parity::Symmetric => T::two() * g,
        Parity::Antisymmetric => -T::two() * w.barrier.magnitude() * g,
    })
}

/// Simplified determinant for `V_b = V_c`, `mb = mc` (χc = χb = χ), scaled
/// by `e^{-bχ}`:
///
/// ```text
/// -2kχ m0 mb cos ak + [±(k² mb² + χ² m0²) e^{-bχ} + (k² mb² - χ² m0²)] sin ak
/// ```
///
/// with `+` for symmetric and `-` for antisymmetric states. The sign flips
/// only the first bracket term; this is what the general determinants reduce
/// to.
pub fn det_special_equal_barrier<T: Real>(
    energy: T,
    parity: Parity,
    params: &WellParams<T>,
) -> Result<T> {
    if !params.has_equal_barriers() {
        return Err(Error::PreconditionViolated(
            "equal-barrier determinant needs V_b = V_c and mb = mc".into(),
        ));
    }
    let w = wavenumbers(energy, params)?;
    let chi = w.chi_c;
    let (k, m0, mb) = (w.k, params.m0(), params.mb());
    let e = (-params.b() * chi).exp();
    let (sin_ak, cos_ak) = (params.a() * k).sin_cos();
    let plus = k * k * mb * mb + chi * chi * m0 * m0;
    let minus = k * k * mb * mb - chi * chi * m0 * m0;
    Ok(-T::two() * k * chi * m0 * mb * cos_ak + (parity.sign::<T>() * plus * e + minus) * sin_ak)
}

/// Equal-mass, equal-barrier form
/// `2 cos ak + (ξ - 1/ξ) sin ak ± (ξ + 1/ξ) sin ak e^{-χb}`, `ξ = χ/k`,
/// with `+` for antisymmetric and `-` for symmetric states.
pub fn det_equal_mass<T: Real>(energy: T, parity: Parity, params: &WellParams<T>) -> Result<T> {
    if !(params.has_equal_barriers() && params.has_equal_masses()) {
        return Err(Error::PreconditionViolated(
            "equal-mass determinant needs m0 = mb = mc and V_b = V_c".into(),
        ));
    }
    let w = wavenumbers(energy, params)?;
    let xi = w.chi_c / w.k;
    let (sin_ak, cos_ak) = (params.a() * w.k).sin_cos();
    let tail = (xi + xi.recip()) * sin_ak * (-w.chi_c * params.b()).exp();
    Ok(T::two() * cos_ak + (xi - xi.recip()) * sin_ak - parity.sign::<T>() * tail)
}

/// Determinant of the full 8×8 interface system (evanescent regime).
///
/// Column order `(A1, B1, C1, B2, B3, A2, C2, B4)`; see [`crate::matching`]
/// for the row order. Only `e^{-bχb}` enters the matrix, so the value is
/// finite for any barrier width.
pub fn det_full_matrix<T: Real>(energy: T, params: &WellParams<T>) -> Result<T> {
    if !(energy > T::zero() && energy < params.vb()) {
        return Err(Error::EnergyOutOfRange {
            energy: energy.as_f64(),
            lo: 0.0,
            hi: params.vb().as_f64(),
        });
    }
    let w = wavenumbers(energy, params)?;
    let basis = BarrierBasis::Exponential { chi: w.barrier.magnitude() };
    Ok(linalg::determinant(interface_matrix(params, w.k, w.chi_c, &basis)))
}

/// Right-hand side of the factorisation identity,
/// `-m0⁻⁴ mc⁻² mb⁻² (e^{-bχb} Ds)(e^{-bχb} Da)`.
pub fn det_factorized<T: Real>(energy: T, params: &WellParams<T>) -> Result<T> {
    let ds = det_scaled(energy, Parity::Symmetric, params)?;
    let da = det_scaled(energy, Parity::Antisymmetric, params)?;
    let (m0, mb, mc) = (params.m0(), params.mb(), params.mc());
    Ok(-ds * da / (m0.powi(4) * mc.powi(2) * mb.powi(2)))
}

/// Relative residual `|F(E)| / max term` of the reduced parity function.
pub fn parity_residual<T: Real>(energy: T, parity: Parity, params: &WellParams<T>) -> Result<T> {
    let w = wavenumbers(energy, params)?;
    let (value, scale) = reduced(parity, params, &w);
    Ok(if scale == T::zero() { value.abs() } else { value.abs() / scale })
}

/// Number of scan samples over `(0, k_max]` for one parity.
fn scan_samples<T: Real>(params: &WellParams<T>) -> usize {
    // at least 40 samples per π/L of the fastest phase; the barrier phase is
    // weighted by sqrt(mb/m0) because κb grows faster than k above V_b.
    let stretch = (params.mb() / params.m0()).sqrt().max(T::one());
    let length = params.a() * T::two() + params.b() * stretch;
    let per = T::lit(40.0) * params.k_max() * length / T::PI();
    per.ceil().as_f64().max(256.0) as usize
}

fn scan_parity<T: Real>(params: &WellParams<T>, parity: Parity, samples: usize) -> Result<Vec<T>> {
    let k_max = params.k_max();
    let f = |k: T| {
        let w = wavenumbers_unchecked(params.energy_of_k(k), params);
        reduced(parity, params, &w).0
    };
    let rel_tol = T::tol(1e-12) * T::lit(0.5);
    let mut roots = Vec::new();
    let n = T::lit(samples as f64);
    let mut k_prev = k_max / n;
    let mut f_prev = f(k_prev);
    if f_prev == T::zero() {
        roots.push(k_prev);
    }
    for i in 2..=samples {
        let k = if i == samples { k_max } else { k_max * T::lit(i as f64) / n };
        let fk = f(k);
        if fk == T::zero() {
            if i < samples {
                roots.push(k);
            }
        } else if f_prev != T::zero() && fk.signum() != f_prev.signum() {
            roots.push(brent(f, k_prev, k, rel_tol)?);
        }
        k_prev = k;
        f_prev = fk;
    }
    // E = V_c itself is a threshold, not a bound state.
    roots.retain(|&k| k < k_max * (T::one() - T::epsilon() * T::lit(8.0)));
    Ok(roots)
}

fn has_close_pair<T: Real>(roots: &[T]) -> bool {
    roots.windows(2).any(|w| (w[1] - w[0]).abs() < T::tol(1e-9))
}

/// All bound levels `0 < E < V_c`, merged over both parities, sorted by
/// energy and numbered from 1.
///
/// Each parity is scanned separately on a uniform `k` grid, so near-degenerate
/// symmetric/antisymmetric pairs of wide barriers never compete for one
/// bracket. Roots within `1e-9 nm⁻¹` of each other inside one parity are
/// treated as a scan artifact and trigger a rescan at double density.
pub fn find_levels<T: Real>(params: &WellParams<T>, max_levels: Option<usize>) -> Result<Vec<Level<T>>> {
    let mut found: Vec<(T, Parity)> = Vec::new();
    for parity in Parity::BOTH {
        let mut samples = scan_samples(params);
        let mut roots = scan_parity(params, parity, samples)?;
        let mut attempts = 0;
        while has_close_pair(&roots) && attempts < 4 {
            samples *= 2;
            attempts += 1;
            roots = scan_parity(params, parity, samples)?;
        }
        roots.dedup_by(|a, b| (*a - *b).abs() < T::tol(1e-9));
        found.extend(roots.into_iter().map(|k| (k, parity)));
    }
    found.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    let mut levels = Vec::with_capacity(found.len());
    for (k, parity) in found {
        let energy = params.energy_of_k(k);
        let Ok(waves) = wavenumbers(energy, params) else { continue };
        levels.push(Level { n: levels.len() + 1, parity, energy, waves });
    }
    if levels.is_empty() {
        return Err(Error::NoBoundStates);
    }
    if let Some(max) = max_levels {
        levels.truncate(max);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::RawParams;

    fn gaas(b: f64) -> WellParams<f64> {
        RawParams::gaas(b).validate().unwrap()
    }

    fn direct_scaled_det(energy: f64, parity: Parity, p: &WellParams<f64>) -> f64 {
        // e^{-bχ} D written straight from the determinant formulas
        let w = wavenumbers(energy, p).unwrap();
        let (k, xc, x) = (w.k, w.chi_c, w.barrier.magnitude());
        let (m0, mb, mc) = (p.m0(), p.mb(), p.mc());
        let e = (-p.b() * x).exp();
        let (s, c) = (p.a() * k).sin_cos();
        match parity {
            Parity::Symmetric => {
                -k * m0 * ((xc * mb - x * mc) * e + (xc * mb + x * mc)) * c
                    + ((k * k * mb * mc + x * xc * m0 * m0) * e + (k * k * mb * mc - x * xc * m0 * m0)) * s
            }
            Parity::Antisymmetric => {
                k * m0 * ((xc * mb - x * mc) * e - (xc * mb + x * mc)) * c
                    - ((k * k * mb * mc + x * xc * m0 * m0) * e - (k * k * mb * mc - x * xc * m0 * m0)) * s
            }
        }
    }

    #[test]
    fn scaled_det_matches_direct_formula() {
        let raw = RawParams { vb: 0.12, vc: 0.2, mb: 0.08, mc: 0.09, ..RawParams::gaas(3.0) };
        let p = raw.validate().unwrap();
        for &e in &[0.01, 0.04, 0.07, 0.11] {
            for parity in Parity::BOTH {
                let got = det_scaled(e, parity, &p).unwrap();
                let want = direct_scaled_det(e, parity, &p);
                assert!((got - want).abs() < 1e-13 * want.abs().max(1e-3), "{parity} {e}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn zero_width_barrier_reduces_to_single_well_conditions() {
        // equal masses, V_b = V_c, b = 0: tan(ak) = ξ (s), cot(ak) = -ξ (a)
        let p: WellParams<f64> = RawParams::gaas_equal_mass(0.0).validate().unwrap();
        for &e in &[0.01, 0.05, 0.09, 0.15] {
            let w = wavenumbers(e, &p).unwrap();
            let xi = w.chi_c / w.k;
            let ak = p.a() * w.k;
            let ds = det_scaled(e, Parity::Symmetric, &p).unwrap();
            let da = det_scaled(e, Parity::Antisymmetric, &p).unwrap();
            // Ds ∝ k sin ak - χ cos ak, Da ∝ -(k cos ak + χ sin ak)
            let m = p.m0();
            assert!((ds - 2.0 * w.k * m * m * (w.k * ak.sin() - w.chi_c * ak.cos())).abs() < 1e-14);
            assert!((da + 2.0 * w.chi_c * m * m * (w.k * ak.cos() + w.chi_c * ak.sin())).abs() < 1e-14);
            let _ = xi;
        }
    }

    #[test]
    fn equal_barrier_form_is_the_general_one() {
        let p = gaas(5.0);
        for i in 1..200 {
            let e = p.vc() * i as f64 / 200.0;
            for parity in Parity::BOTH {
                let general = det_scaled(e, parity, &p).unwrap();
                let special = det_special_equal_barrier(e, parity, &p).unwrap();
                assert!((general - special).abs() < 1e-13 * general.abs().max(1e-4));
            }
        }
        let raw = RawParams { vb: 0.1, ..RawParams::gaas(5.0) };
        assert!(matches!(
            det_special_equal_barrier(0.05, Parity::Symmetric, &raw.validate().unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn equal_mass_form_has_the_same_sign_pattern() {
        let p = RawParams::gaas_equal_mass(4.0).validate().unwrap();
        for i in 1..400 {
            let e = p.vc() * i as f64 / 400.0;
            for parity in Parity::BOTH {
                let general = det_scaled(e, parity, &p).unwrap();
                let eq10 = det_equal_mass(e, parity, &p).unwrap();
                // Eq. (10) = e^{-bχ} D / (-k χ m²) for both parities
                let w = wavenumbers(e, &p).unwrap();
                let factor = -w.k * w.chi_c * p.m0() * p.m0();
                assert!((general - factor * eq10).abs() < 1e-12 * general.abs().max(1e-5));
            }
        }
        assert!(det_equal_mass(0.05, Parity::Symmetric, &gaas(4.0)).is_err());
    }

    #[test]
    fn factorization_identity_at_50_mev() {
        let p = gaas(5.0);
        let full = det_full_matrix(0.05, &p).unwrap();
        let fact = det_factorized(0.05, &p).unwrap();
        assert!(((full - fact) / full).abs() < 1e-8, "{full} vs {fact}");
    }

    #[test]
    fn full_determinant_vanishes_at_levels() {
        let p = gaas(5.0);
        let far = det_full_matrix(0.03, &p).unwrap().abs();
        for level in find_levels(&p, None).unwrap() {
            let d = det_full_matrix(level.energy, &p).unwrap();
            assert!(d.abs() < 1e-9 * far, "{} {d}", level.label());
        }
        assert!(det_full_matrix(p.vb(), &p).is_err());
    }

    #[test]
    fn full_determinant_is_finite_for_wide_barriers() {
        let p = gaas(400.0);
        let full = det_full_matrix(0.05, &p).unwrap();
        let fact = det_factorized(0.05, &p).unwrap();
        assert!(full.is_finite() && fact.is_finite());
        assert!(((full - fact) / full).abs() < 1e-8);
    }

    #[test]
    fn continuity_across_barrier_top() {
        let raw = RawParams { vb: 0.1, ..RawParams::gaas(5.0) };
        let p: WellParams<f64> = raw.validate().unwrap();
        for parity in Parity::BOTH {
            let at = det_scaled(p.vb(), parity, &p).unwrap();
            // right-hand limit from the propagating formula at κ = 0
            let w = wavenumbers_unchecked(p.vb(), &p);
            let w_right = WaveNumbers { barrier: BarrierMode::Propagating { kappa_b: 0.0 }, ..w };
            let (g, _) = reduced(parity, &p, &w_right);
            let right = match parity {
                Parity::Symmetric => 2.0 * g,
                Parity::Antisymmetric => 0.0,
            };
            assert!((at - right).abs() < 1e-10);

            let gap = |eps: f64| {
                (det_scaled(p.vb() - eps, parity, &p).unwrap() - det_scaled(p.vb() + eps, parity, &p).unwrap())
                    .abs()
            };
            let (g6, g8) = (gap(1e-6), gap(1e-8));
            // the e^{-bχ} rescaling is non-analytic in E at V_b, so the gap
            // closes like sqrt(ε)
            assert!(g8 < g6 / 5.0 && g8 < 1e-2, "{parity}: {g6} {g8}");
        }
    }

    #[test]
    fn parity_alternates_and_ground_state_is_symmetric() {
        for &b in &[0.0, 1.0, 5.0, 15.0, 40.0] {
            let levels = find_levels(&gaas(b), None).unwrap();
            for (i, l) in levels.iter().enumerate() {
                let expect = if i % 2 == 0 { Parity::Symmetric } else { Parity::Antisymmetric };
                assert_eq!(l.parity, expect, "b = {b}, level {}", l.n);
                assert_eq!(l.n, i + 1);
                assert!(l.energy > 0.0 && l.energy < 0.1671);
            }
        }
    }

    #[test]
    fn levels_are_refined_roots() {
        let p = gaas(5.0);
        for l in find_levels(&p, None).unwrap() {
            assert!(parity_residual(l.energy, l.parity, &p).unwrap() < 1e-11);
            // relative 1e-12 in k: neighbours one tolerance away bracket the root
            let k = l.k();
            let fk = |k: f64| {
                let w = wavenumbers_unchecked(p.energy_of_k(k), &p);
                reduced(l.parity, &p, &w).0
            };
            assert!(fk(k * (1.0 - 1e-12)).signum() != fk(k * (1.0 + 1e-12)).signum());
        }
    }

    #[test]
    fn splitting_shrinks_with_barrier_width() {
        let gap = |b: f64| {
            let l = find_levels(&gaas(b), Some(2)).unwrap();
            l[1].energy - l[0].energy
        };
        assert!(gap(15.0) < gap(1.0));
    }

    #[test]
    fn propagating_regime_levels_are_found() {
        // low central barrier: upper levels sit above V_b
        let raw = RawParams { vb: 0.03, vc: 0.25, ..RawParams::gaas(4.0) };
        let p = raw.validate().unwrap();
        let levels = find_levels(&p, None).unwrap();
        assert!(levels.iter().any(|l| !l.waves.barrier.is_evanescent()));
        for l in &levels {
            assert!(parity_residual(l.energy, l.parity, &p).unwrap() < 1e-10);
        }
    }

    #[test]
    fn max_levels_truncates() {
        let levels = find_levels(&gaas(5.0), Some(1)).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].label(), "1s");
    }

    #[test]
    fn single_precision_spectrum() {
        let p: WellParams<f32> = RawParams::gaas(5.0).validate().unwrap();
        let l32 = find_levels(&p, None).unwrap();
        let l64 = find_levels(&gaas(5.0), None).unwrap();
        assert_eq!(l32.len(), l64.len());
        for (a, b) in l32.iter().zip(&l64) {
            assert!(((a.energy as f64 - b.energy) / b.energy).abs() < 1e-4);
        }
    }

    #[test]
    fn both_ground_levels_approach_the_isolated_well() {
        use crate::oracle::single_well_levels;
        let p = gaas(15.0);
        let iso = single_well_levels(p.a(), p.vc(), p.mc(), p.vb(), p.mb(), p.m0(), p.hbar2_2me())[0];
        let levels = find_levels(&p, Some(2)).unwrap();
        for l in &levels {
            assert!((l.energy - iso).abs() < 1e-4, "{}: {} vs {iso}", l.label(), l.energy);
        }
    }

    mod properties {
        use super::*;
        use crate::params::strategies::raw_params;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn levels_are_ordered_roots_with_alternating_parity(raw in raw_params()) {
                let p = raw.validate().unwrap();
                let levels = find_levels(&p, None).unwrap();
                prop_assert!(!levels.is_empty());
                for (n, l) in levels.iter().enumerate() {
                    let want = if n % 2 == 0 { Parity::Symmetric } else { Parity::Antisymmetric };
                    prop_assert_eq!(l.parity, want);
                    prop_assert!(l.energy > 0.0 && l.energy < p.vc());
                    prop_assert!(parity_residual(l.energy, l.parity, &p).unwrap() < 1e-9);
                }
                prop_assert!(levels.windows(2).all(|w| w[0].energy < w[1].energy));
            }

            #[test]
            fn factorization_holds_below_the_barrier(raw in raw_params(), t in 0.001f64..0.999) {
                let p = raw.validate().unwrap();
                let e = p.vb() * t;
                let full = det_full_matrix(e, &p).unwrap();
                let fact = det_factorized(e, &p).unwrap();
                prop_assert!(((full - fact) / full).abs() < 1e-8, "{} vs {}", full, fact);
            }

            #[test]
            fn splitting_shrinks_as_the_barrier_widens(raw in raw_params(), db in 0.5f64..5.0) {
                let p = raw.validate().unwrap();
                let wider = p.with_b(p.b() + db).unwrap();
                let gap = |q: &WellParams<f64>| {
                    let l = find_levels(q, Some(2)).unwrap();
                    l.get(1).map(|u| u.energy - l[0].energy)
                };
                if let (Some(g0), Some(g1)) = (gap(&p), gap(&wider)) {
                    prop_assert!(g1 < g0, "{} -> {}", g0, g1);
                }
            }
        }
    }
}
