//! Finite-difference eigensolver for `-C d/dx[(1/m) dψ/dx] + V ψ = E ψ`.
//!
//! Finite-volume stencil on a uniform grid with the four interfaces placed
//! on nodes. Every cell face then lies inside a single layer, so the face
//! mass is the layer mass and flux continuity `(1/m)ψ'` is built into the
//! discretisation. A node sitting on an interface takes the average of the
//! two half-cell potentials. Dirichlet walls close the padded domain.

use super::tridiag::SymTridiag;
use crate::error::{Error, Result};
use crate::num::Real;
use crate::params::WellParams;

/// Decay lengths of cladding kept on each side of the structure.
pub const MIN_DECAY_LENGTHS: f64 = 12.0;
/// Largest change under `h -> h/2` accepted by [`fd_levels_extrapolated`].
pub const MAX_HALVING_CHANGE: f64 = 1e-7;

/// Uniform grid over `[x0, x1]` with `n` interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdGrid<T> {
    pub x0: T,
    pub x1: T,
    pub n: usize,
    pub h: T,
}

fn steps_of<T: Real>(len: T, h: T, what: &str) -> Result<usize> {
    let r = len / h;
    let n = r.round();
    if (r - n).abs() > T::tol(1e-9) * r.max(T::one()) {
        return Err(Error::IncommensurateGrid(format!("{what} = {} is not a multiple of h = {}", len.as_f64(), h.as_f64())));
    }
    Ok(n.as_f64() as usize)
}

impl<T: Real> FdGrid<T> {
    /// Grid of spacing `h` covering `[-pad, 2a+b+pad]`; `a`, `b` and `pad`
    /// must be multiples of `h`.
    pub fn new(params: &WellParams<T>, h: T, pad: T) -> Result<Self> {
        if !(h > T::zero()) || pad < T::zero() {
            return Err(Error::PreconditionViolated("grid needs h > 0 and pad >= 0".into()));
        }
        steps_of(params.a(), h, "a")?;
        steps_of(params.b(), h, "b")?;
        let np = steps_of(pad, h, "pad")?;
        let total = steps_of(params.total_width(), h, "2a+b")? + 2 * np;
        if total < 2 {
            return Err(Error::PreconditionViolated("grid has no interior nodes".into()));
        }
        Ok(FdGrid { x0: -pad, x1: params.total_width() + pad, n: total - 1, h })
    }

    /// Cladding padding on each side.
    pub fn pad(&self) -> T {
        -self.x0
    }

    /// Position of interior node `i` (0-based).
    pub fn node(&self, i: usize) -> T {
        self.x0 + self.h * T::lit((i + 1) as f64)
    }

    /// Same domain at half the spacing.
    pub fn halved(&self) -> Self {
        FdGrid { n: 2 * self.n + 1, h: self.h * T::half(), ..*self }
    }
}

/// One finite-difference eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct FdLevel<T> {
    pub energy: T,
    /// Node positions, walls excluded.
    pub x: Vec<T>,
    /// Eigenvector, unit trapezoidal norm, positive at the node nearest `a/2`.
    pub psi: Vec<T>,
}

fn assemble<T: Real>(params: &WellParams<T>, grid: &FdGrid<T>) -> SymTridiag<T> {
    let c = params.hbar2_2me();
    let h = grid.h;
    let h2 = h * h;
    let half = T::half();
    // properties of the cell [x - h/2, x + h/2] halves
    let layer = |x: T| {
        let r = params.region_of(x);
        (params.mass(r), params.potential(r))
    };
    let n = grid.n;
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let x = grid.node(i);
        let (ml, vl) = layer(x - h * half);
        let (mr, vr) = layer(x + h * half);
        diag.push(c / h2 * (ml.recip() + mr.recip()) + (vl + vr) * half);
        if i + 1 < n {
            off.push(-c / (h2 * mr));
        }
    }
    SymTridiag { diag, off }
}

/// Lowest `count` eigenpairs below `V_c` on `grid`.
///
/// Fails with `DomainTooShort` when the padding is under twelve cladding
/// decay lengths of any returned level.
pub fn fd_spectrum<T: Real>(params: &WellParams<T>, grid: &FdGrid<T>, count: usize) -> Result<Vec<FdLevel<T>>> {
    let m = assemble(params, grid);
    let vc = params.vc();
    let below = m.count_below(vc).min(count);
    // V >= 0 and the kinetic part is positive definite
    let lo = T::zero().min(-vc);
    let tol = vc * T::tol(1e-15);
    let mut out = Vec::with_capacity(below);
    for j in 0..below {
        let energy = m.eigenvalue(j, lo, vc, tol);
        let chi_c = (params.mc() * (vc - energy) / params.hbar2_2me()).sqrt();
        let needed = T::lit(MIN_DECAY_LENGTHS) / chi_c;
        if grid.pad() < needed {
            return Err(Error::DomainTooShort {
                pad: grid.pad().as_f64(),
                needed: needed.as_f64(),
                energy: energy.as_f64(),
            });
        }
        let mut psi = m.eigenvector(energy);
        let sum = psi.iter().fold(T::zero(), |s, v| s + *v * *v) * grid.h;
        let scale = sum.sqrt().recip();
        let probe = ((params.a() * T::half() - grid.x0) / grid.h).round().as_f64() as usize - 1;
        let sign = if psi[probe] < T::zero() { -T::one() } else { T::one() };
        psi.iter_mut().for_each(|v| *v = *v * scale * sign);
        let x = (0..grid.n).map(|i| grid.node(i)).collect();
        out.push(FdLevel { energy, x, psi });
    }
    Ok(out)
}

/// Eigenvalues only; cheaper than [`fd_spectrum`] (no eigenvectors).
pub fn fd_energies<T: Real>(params: &WellParams<T>, grid: &FdGrid<T>, count: usize) -> Vec<T> {
    let m = assemble(params, grid);
    let vc = params.vc();
    let below = m.count_below(vc).min(count);
    let tol = vc * T::tol(1e-15);
    (0..below).map(|j| m.eigenvalue(j, T::zero().min(-vc), vc, tol)).collect()
}

/// Smallest padding (a multiple of `h`) that keeps twelve decay lengths of a
/// level at `energy`.
pub fn padding_for<T: Real>(params: &WellParams<T>, energy: T, h: T) -> T {
    let chi_c = (params.mc() * (params.vc() - energy) / params.hbar2_2me()).sqrt();
    let needed = T::lit(MIN_DECAY_LENGTHS) / chi_c;
    (needed / h).ceil() * h
}

/// Richardson-extrapolated eigenvalues `(4 E(h/2) - E(h)) / 3`.
///
/// `pad` is enlarged as needed to hold twelve decay lengths of the highest
/// level. Fails with `GridTooCoarse` if halving `h` moves any eigenvalue by
/// more than `1e-7` eV.
pub fn fd_levels_extrapolated<T: Real>(params: &WellParams<T>, h: T, pad: T, count: usize) -> Result<Vec<T>> {
    let mut pad = pad;
    let mut coarse;
    loop {
        let grid = FdGrid::new(params, h, pad)?;
        coarse = fd_energies(params, &grid, count);
        let Some(&top) = coarse.last() else { return Err(Error::NoBoundStates) };
        let need = padding_for(params, top, h);
        if need <= pad {
            break;
        }
        pad = need;
    }
    let fine = fd_energies(params, &FdGrid::new(params, h, pad)?.halved(), count);
    let n = coarse.len().min(fine.len());
    let three = T::lit(3.0);
    let mut out = Vec::with_capacity(n);
    for (c, f) in coarse.iter().zip(&fine).take(n) {
        let change = (*f - *c).abs();
        if change > T::lit(MAX_HALVING_CHANGE) {
            return Err(Error::GridTooCoarse { energy: f.as_f64(), change: change.as_f64() });
        }
        out.push((T::lit(4.0) * *f - *c) / three);
    }
    Ok(out)
}

/// Observed order of accuracy per level from spacings `h`, `h/2`, `h/4`:
/// `log2((E_h - E_{h/2}) / (E_{h/2} - E_{h/4}))`.
pub fn convergence_order<T: Real>(params: &WellParams<T>, h: T, pad: T, count: usize) -> Result<Vec<T>> {
    let g1 = FdGrid::new(params, h, pad)?;
    let g2 = g1.halved();
    let g4 = g2.halved();
    let (e1, e2, e4) = (fd_energies(params, &g1, count), fd_energies(params, &g2, count), fd_energies(params, &g4, count));
    Ok(e1
        .iter()
        .zip(&e2)
        .zip(&e4)
        .map(|((a, b), c)| ((*a - *b) / (*b - *c)).abs().log2())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::single_well::single_well_levels;
    use crate::params::RawParams;

    fn gaas(b: f64) -> WellParams<f64> {
        RawParams::gaas(b).validate().unwrap()
    }

    #[test]
    fn grid_rejects_incommensurate_layers() {
        let p = RawParams { a: 6.003, ..RawParams::gaas(5.0) }.validate().unwrap();
        assert!(matches!(FdGrid::new(&p, 0.01, 12.0), Err(Error::IncommensurateGrid(_))));
        let g = FdGrid::new(&gaas(5.0), 0.01, 12.0).unwrap();
        assert_eq!(g.n, 4099);
        assert!((g.node(g.n - 1) - (g.x1 - g.h)).abs() < 1e-12);
        assert_eq!(g.halved().n, 8199);
    }

    #[test]
    fn flat_barrier_is_a_single_wide_well() {
        // V_b = 0 with equal well/barrier mass: one well of width 2a+b
        let raw = RawParams { vb: 0.0, mb: 0.067, ..RawParams::gaas(5.0) };
        let p: WellParams<f64> = WellParams::from_raw_unchecked(raw);
        let wide = single_well_levels(p.total_width(), p.vc(), p.mc(), p.vc(), p.mc(), p.m0(), p.hbar2_2me());
        let fd = fd_levels_extrapolated(&p, 0.01, 12.0, wide.len()).unwrap();
        assert_eq!(fd.len(), wide.len());
        for (f, w) in fd.iter().zip(&wide) {
            assert!((f - w).abs() < 1e-6, "{f} vs {w}");
        }
    }

    #[test]
    fn hard_wall_limit() {
        // at 10 eV the cladding still leaks ~0.2 nm per side: compare with the
        // exact finite well instead of the hard wall
        let raw = RawParams { vb: 10.0, vc: 10.0, ..RawParams::gaas(5.0) };
        let p: WellParams<f64> = raw.validate().unwrap();
        let grid = FdGrid::new(&p, 0.005, 3.0).unwrap();
        let e1 = fd_spectrum(&p, &grid, 1).unwrap()[0].energy;
        let exact = single_well_levels(6.0, 10.0, p.mc(), 10.0, p.mc(), p.m0(), p.hbar2_2me())[0];
        assert!(((e1 - exact) / exact).abs() < 1e-4, "{e1} vs {exact}");
        let hard = p.hbar2_2me() * std::f64::consts::PI.powi(2) / (p.m0() * 36.0);
        assert!((e1 - hard) / hard < -0.1);

        let raw = RawParams { vb: 1e3, vc: 1e3, ..RawParams::gaas(5.0) };
        let p: WellParams<f64> = raw.validate().unwrap();
        let grid = FdGrid::new(&p, 0.001, 0.5).unwrap();
        let e1 = fd_spectrum(&p, &grid, 1).unwrap()[0].energy;
        assert!(((e1 - hard) / hard).abs() < 0.02, "{e1} vs {hard}");
    }

    #[test]
    fn second_order_convergence() {
        for order in convergence_order(&gaas(5.0), 0.04, 12.0, 2).unwrap() {
            assert!((1.9..=2.1).contains(&order), "{order}");
        }
    }

    #[test]
    fn eigenvectors_are_normalised_and_signed() {
        let p = gaas(5.0);
        let grid = FdGrid::new(&p, 0.01, 30.0).unwrap();
        for (j, lvl) in fd_spectrum(&p, &grid, 2).unwrap().iter().enumerate() {
            let norm: f64 = lvl.psi.iter().map(|v| v * v).sum::<f64>() * grid.h;
            assert!((norm - 1.0).abs() < 1e-12);
            let probe = lvl.x.iter().position(|x| (x - 3.0).abs() < 1e-9).unwrap();
            assert!(lvl.psi[probe] > 0.0);
            // parity about the centre alternates
            let mirrored = lvl.psi[lvl.psi.len() - 1 - probe];
            let want = if j % 2 == 0 { lvl.psi[probe] } else { -lvl.psi[probe] };
            assert!((mirrored - want).abs() < 1e-8);
        }
    }

    #[test]
    fn short_domain_is_reported() {
        let p = gaas(5.0);
        let grid = FdGrid::new(&p, 0.01, 3.0).unwrap();
        assert!(matches!(fd_spectrum(&p, &grid, 1), Err(Error::DomainTooShort { .. })));
    }

    #[test]
    fn coarse_grid_is_reported() {
        assert!(matches!(
            fd_levels_extrapolated(&gaas(5.0), 0.5, 12.0, 2),
            Err(Error::GridTooCoarse { .. })
        ));
    }
}
