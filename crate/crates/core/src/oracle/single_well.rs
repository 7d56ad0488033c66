//! Bound levels of one square well between two barriers.
//!
//! With `ψ = sin(kx + φ)` inside a well `[0, w]`, flux matching at both
//! walls gives the phase condition
//!
//! ```text
//! k w + atan(k m_l / (m_w χ_l)) + atan(k m_r / (m_w χ_r)) = n π,   n = 1, 2, ...
//! ```
//!
//! whose left side increases strictly with `k`, so every level has its own
//! bracket.

use crate::num::Real;

/// Energies (eV, ascending) of the well of width `w` (nm) and mass `m_well`,
/// bounded by barriers `(v_left, m_left)` and `(v_right, m_right)`.
/// `c` is ħ²/2mₑ in eV·nm².
pub fn single_well_levels<T: Real>(w: T, v_left: T, m_left: T, v_right: T, m_right: T, m_well: T, c: T) -> Vec<T> {
    let top = v_left.min(v_right);
    let energy = |k: T| c * k * k / m_well;
    let phase = |k: T| {
        let e = energy(k);
        let chi_l = (m_left * (v_left - e).max(T::zero()) / c).sqrt();
        let chi_r = (m_right * (v_right - e).max(T::zero()) / c).sqrt();
        k * w + (k * m_left).atan2(m_well * chi_l) + (k * m_right).atan2(m_well * chi_r)
    };
    let k_max = (m_well * top / c).sqrt();
    let total = phase(k_max);
    let mut out = Vec::new();
    let mut n = 1;
    while T::PI() * T::lit(n as f64) < total {
        let target = T::PI() * T::lit(n as f64);
        let (mut lo, mut hi) = (T::zero(), k_max);
        for _ in 0..200 {
            let mid = (lo + hi) * T::half();
            if mid <= lo || mid >= hi {
                break;
            }
            if phase(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(energy((lo + hi) * T::half()));
        n += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deep_well_approaches_hard_wall() {
        let c = 0.038_099_82;
        let levels = single_well_levels(6.0, 1e5, 0.067, 1e5, 0.067, 0.067, c);
        let hard = c * std::f64::consts::PI.powi(2) / (0.067 * 36.0);
        assert!(((levels[0] - hard) / hard).abs() < 0.01);
        assert!(((levels[1] - 4.0 * hard) / (4.0 * hard)).abs() < 0.01);
    }

    #[test]
    fn symmetric_well_matches_tangent_condition() {
        // even states: k tan(kw/2) = χ (equal masses)
        let c = 0.038_099_82;
        let (w, v, m): (f64, f64, f64) = (6.0, 0.1671, 0.067);
        let levels = single_well_levels(w, v, m, v, m, m, c);
        assert!(levels.len() >= 2);
        let e = levels[0];
        let k = (m * e / c).sqrt();
        let chi = (m * (v - e) / c).sqrt();
        assert!((k * (k * w / 2.0).tan() - chi).abs() < 1e-10);
    }

    #[test]
    fn shallow_well_always_binds_once() {
        let levels = single_well_levels(0.5, 1e-3, 0.067, 1e-3, 0.067, 0.067, 0.038_099_82);
        assert_eq!(levels.len(), 1);
    }
}
