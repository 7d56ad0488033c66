//! Well geometry, material parameters and the energy <-> wavevector map.
//!
//! Units: lengths in nm, energies in eV, masses in units of the free electron
//! mass. The only physical constant is [`HBAR2_OVER_2ME`].

use crate::error::{Error, Result};
use crate::num::{nearly_equal, Real};

/// ħ²/(2 m_e) in eV·nm².
///
/// From CODATA 2018: ħc = 197.326 980 4 eV·nm and m_e c² = 510 998.950 eV,
/// so (ħc)²/(2 m_e c²) = 0.038 099 82 eV·nm².
pub const HBAR2_OVER_2ME: f64 = 0.038_099_82;

/// Unvalidated parameter record, as read from a config file or flags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams<T> {
    /// Well width (nm).
    pub a: T,
    /// Central barrier width (nm).
    pub b: T,
    /// Central barrier height (eV).
    pub vb: T,
    /// Confining barrier height (eV).
    pub vc: T,
    /// Effective mass inside the wells (m_e).
    pub m0: T,
    /// Effective mass in the central barrier (m_e).
    pub mb: T,
    /// Effective mass in the confining barriers (m_e).
    pub mc: T,
}

impl<T: Real> RawParams<T> {
    /// GaAs/Ga0.8Al0.2As double well: a = 6 nm, V_b = V_c = 0.1671 eV,
    /// m0 = 0.067, m_b = m_c = 0.0836, with the given barrier width.
    pub fn gaas(b: T) -> Self {
        Self {
            a: T::lit(6.0),
            b,
            vb: T::lit(0.1671),
            vc: T::lit(0.1671),
            m0: T::lit(0.067),
            mb: T::lit(0.0836),
            mc: T::lit(0.0836),
        }
    }

    /// Same geometry and barrier height as [`RawParams::gaas`] but with the
    /// well mass used everywhere.
    pub fn gaas_equal_mass(b: T) -> Self {
        Self {
            mb: T::lit(0.067),
            mc: T::lit(0.067),
            ..Self::gaas(b)
        }
    }

    pub fn validate(self) -> Result<WellParams<T>> {
        validate(self)
    }
}

/// Validated double-well parameters.
///
/// Invariants: `a > 0`, `b >= 0`, all masses positive, `0 < V_b <= V_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellParams<T> {
    a: T,
    b: T,
    vb: T,
    vc: T,
    m0: T,
    mb: T,
    mc: T,
    hbar2_2me: T,
}

/// Checks the parameter invariants and returns the validated record.
pub fn validate<T: Real>(raw: RawParams<T>) -> Result<WellParams<T>> {
    let finite = |name: &'static str, v: T| -> Result<()> {
        if v.is_finite() {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!("{name} is not finite")))
        }
    };
    for (name, v) in [
        ("a", raw.a),
        ("b", raw.b),
        ("vb", raw.vb),
        ("vc", raw.vc),
        ("m0", raw.m0),
        ("mb", raw.mb),
        ("mc", raw.mc),
    ] {
        finite(name, v)?;
    }
    if raw.a <= T::zero() {
        return Err(Error::NonPositiveDimension { name: "a", value: raw.a.as_f64() });
    }
    if raw.b < T::zero() {
        return Err(Error::NonPositiveDimension { name: "b", value: raw.b.as_f64() });
    }
    for (name, m) in [("m0", raw.m0), ("mb", raw.mb), ("mc", raw.mc)] {
        if m <= T::zero() {
            return Err(Error::NonPositiveMass { name, value: m.as_f64() });
        }
    }
    for (name, v) in [("vb", raw.vb), ("vc", raw.vc)] {
        if v <= T::zero() {
            return Err(Error::NonPositivePotential { name, value: v.as_f64() });
        }
    }
    if raw.vb > raw.vc {
        return Err(Error::BarrierAboveConfinement { vb: raw.vb.as_f64(), vc: raw.vc.as_f64() });
    }
    Ok(WellParams::from_raw_unchecked(raw))
}

impl<T: Real> WellParams<T> {
    /// Builds parameters without checking invariants.
    ///
    /// Meant for limit studies the validated type excludes (for example a
    /// vanishing central barrier, `V_b = 0`, fed to the finite-difference
    /// oracle). The spectrum routines assume validated input.
    pub fn from_raw_unchecked(raw: RawParams<T>) -> Self {
        Self {
            a: raw.a,
            b: raw.b,
            vb: raw.vb,
            vc: raw.vc,
            m0: raw.m0,
            mb: raw.mb,
            mc: raw.mc,
            hbar2_2me: T::lit(HBAR2_OVER_2ME),
        }
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn vb(&self) -> T {
        self.vb
    }
    pub fn vc(&self) -> T {
        self.vc
    }
    pub fn m0(&self) -> T {
        self.m0
    }
    pub fn mb(&self) -> T {
        self.mb
    }
    pub fn mc(&self) -> T {
        self.mc
    }

    /// ħ²/(2 m_e) used by this parameter set (eV·nm²).
    pub fn hbar2_2me(&self) -> T {
        self.hbar2_2me
    }

    /// Replaces the kinetic constant. Test hook for sensitivity checks of the
    /// validation suite; physical callers never need it.
    #[doc(hidden)]
    pub fn with_hbar2_2me(mut self, c: T) -> Self {
        self.hbar2_2me = c;
        self
    }

    pub fn to_raw(&self) -> RawParams<T> {
        RawParams {
            a: self.a,
            b: self.b,
            vb: self.vb,
            vc: self.vc,
            m0: self.m0,
            mb: self.mb,
            mc: self.mc,
        }
    }

    /// Copy with a different central barrier width.
    pub fn with_b(&self, b: T) -> Result<Self> {
        let raw = RawParams { b, ..self.to_raw() };
        Ok(validate(raw)?.with_hbar2_2me(self.hbar2_2me))
    }

    /// Copy with a different well width.
    pub fn with_a(&self, a: T) -> Result<Self> {
        let raw = RawParams { a, ..self.to_raw() };
        Ok(validate(raw)?.with_hbar2_2me(self.hbar2_2me))
    }

    /// Copy with a different central barrier height.
    pub fn with_vb(&self, vb: T) -> Result<Self> {
        let raw = RawParams { vb, ..self.to_raw() };
        Ok(validate(raw)?.with_hbar2_2me(self.hbar2_2me))
    }

    /// Midpoint of the structure, `a + b/2`.
    pub fn center(&self) -> T {
        self.a + self.b * T::half()
    }

    /// Outer width `2a + b`.
    pub fn total_width(&self) -> T {
        self.a + self.a + self.b
    }

    /// `m0 = mb = mc`.
    pub fn has_equal_masses(&self) -> bool {
        nearly_equal(self.m0, self.mb) && nearly_equal(self.mb, self.mc)
    }

    /// `V_b = V_c` and `mb = mc`: the structure is built from two materials.
    pub fn has_equal_barriers(&self) -> bool {
        nearly_equal(self.vb, self.vc) && nearly_equal(self.mb, self.mc)
    }

    pub fn region_of(&self, x: T) -> Region {
        if x < T::zero() {
            Region::LeftCladding
        } else if x <= self.a {
            Region::LeftWell
        } else if x < self.a + self.b {
            Region::Barrier
        } else if x <= self.total_width() {
            Region::RightWell
        } else {
            Region::RightCladding
        }
    }

    pub fn potential(&self, region: Region) -> T {
        match region {
            Region::LeftCladding | Region::RightCladding => self.vc,
            Region::LeftWell | Region::RightWell => T::zero(),
            Region::Barrier => self.vb,
        }
    }

    pub fn mass(&self, region: Region) -> T {
        match region {
            Region::LeftCladding | Region::RightCladding => self.mc,
            Region::LeftWell | Region::RightWell => self.m0,
            Region::Barrier => self.mb,
        }
    }

    /// Interface positions `0, a, a+b, 2a+b`.
    pub fn interfaces(&self) -> [T; 4] {
        [T::zero(), self.a, self.a + self.b, self.total_width()]
    }

    /// Energy of a well wavevector, `E = C k² / m0`.
    pub fn energy_of_k(&self, k: T) -> T {
        self.hbar2_2me * k * k / self.m0
    }

    /// Well wavevector of an energy, `k = sqrt(m0 E / C)`.
    pub fn k_of_energy(&self, energy: T) -> T {
        (self.m0 * energy / self.hbar2_2me).sqrt()
    }

    /// Largest well wavevector of a bound state (at `E = V_c`).
    pub fn k_max(&self) -> T {
        self.k_of_energy(self.vc)
    }
}

/// The five layers of the structure, left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    LeftCladding,
    LeftWell,
    Barrier,
    RightWell,
    RightCladding,
}

/// Behaviour of the wavefunction inside the central barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BarrierMode<T> {
    /// `E <= V_b`: decay constant χ_b (nm⁻¹). `E = V_b` maps here with χ_b = 0.
    Evanescent { chi_b: T },
    /// `E > V_b`: propagating wavevector κ_b (nm⁻¹).
    Propagating { kappa_b: T },
}

impl<T: Real> BarrierMode<T> {
    /// χ_b for the evanescent branch, κ_b for the propagating one.
    pub fn magnitude(&self) -> T {
        match *self {
            BarrierMode::Evanescent { chi_b } => chi_b,
            BarrierMode::Propagating { kappa_b } => kappa_b,
        }
    }

    pub fn is_evanescent(&self) -> bool {
        matches!(self, BarrierMode::Evanescent { .. })
    }
}

/// Wavevectors of a trial energy in all three materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers<T> {
    /// Propagating wavevector inside the wells (nm⁻¹).
    pub k: T,
    /// Decay constant in the confining barriers (nm⁻¹).
    pub chi_c: T,
    pub barrier: BarrierMode<T>,
}

/// Wavevectors for a bound-state energy `0 < E < V_c`.
pub fn wavenumbers<T: Real>(energy: T, params: &WellParams<T>) -> Result<WaveNumbers<T>> {
    if !(energy > T::zero() && energy < params.vc) {
        return Err(Error::EnergyOutOfRange {
            energy: energy.as_f64(),
            lo: 0.0,
            hi: params.vc.as_f64(),
        });
    }
    Ok(wavenumbers_unchecked(energy, params))
}

/// Same as [`wavenumbers`] but accepts the closed interval `[0, V_c]`
/// (used at scan endpoints).
pub(crate) fn wavenumbers_unchecked<T: Real>(energy: T, params: &WellParams<T>) -> WaveNumbers<T> {
    let c = params.hbar2_2me;
    let k = (params.m0 * energy.max(T::zero()) / c).sqrt();
    let chi_c = (params.mc * (params.vc - energy).max(T::zero()) / c).sqrt();
    let barrier = if energy <= params.vb {
        BarrierMode::Evanescent { chi_b: (params.mb * (params.vb - energy) / c).sqrt() }
    } else {
        BarrierMode::Propagating { kappa_b: (params.mb * (energy - params.vb) / c).sqrt() }
    };
    WaveNumbers { k, chi_c, barrier }
}

pub mod config {
    //! `key = value` parameter files.
    //!
    //! Recognised keys: `a_nm`, `b_nm`, `vb_ev`, `vc_ev`, `m0`, `mb`, `mc`.
    //! Blank lines and `#` comments (full-line or trailing) are ignored.

    use std::fmt;

    use super::RawParams;

    pub const KEYS: [&str; 7] = ["a_nm", "b_nm", "vb_ev", "vc_ev", "m0", "mb", "mc"];

    #[derive(Debug, Clone, PartialEq)]
    pub enum ConfigError {
        Syntax { line: usize, text: String },
        UnknownKey { line: usize, key: String },
        BadValue { line: usize, key: String, value: String },
        Duplicate { line: usize, key: String },
        Missing(Vec<&'static str>),
    }

    impl fmt::Display for ConfigError {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match self {
                ConfigError::Syntax { line, text } => {
                    write!(f, "line {line}: expected `key = value`, found `{text}`")
                }
                ConfigError::UnknownKey { line, key } => write!(
                    f,
                    "line {line}: unknown key `{key}` (expected one of {})",
                    KEYS.join(", ")
                ),
                ConfigError::BadValue { line, key, value } => {
                    write!(f, "line {line}: `{key}` has non-numeric value `{value}`")
                }
                ConfigError::Duplicate { line, key } => {
                    write!(f, "line {line}: `{key}` set more than once")
                }
                ConfigError::Missing(keys) => {
                    write!(f, "missing required parameters: {}", keys.join(", "))
                }
            }
        }
    }

    impl std::error::Error for ConfigError {}

    /// Partially specified parameters; later sources override earlier ones.
    #[derive(Debug, Clone, Default, PartialEq)]
    pub struct ParamConfig {
        pub a_nm: Option<f64>,
        pub b_nm: Option<f64>,
        pub vb_ev: Option<f64>,
        pub vc_ev: Option<f64>,
        pub m0: Option<f64>,
        pub mb: Option<f64>,
        pub mc: Option<f64>,
    }

    impl ParamConfig {
        pub fn parse(text: &str) -> Result<Self, ConfigError> {
            let mut cfg = ParamConfig::default();
            for (idx, raw_line) in text.lines().enumerate() {
                let line = idx + 1;
                let content = raw_line.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    continue;
                }
                let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                    line,
                    text: content.to_string(),
                })?;
                let key = key.trim();
                let value = value.trim();
                let slot = cfg.slot_mut(key).ok_or_else(|| ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })?;
                if slot.is_some() {
                    return Err(ConfigError::Duplicate { line, key: key.to_string() });
                }
                let parsed: f64 = value.parse().map_err(|_| ConfigError::BadValue {
                    line,
                    key: key.to_string(),
                    value: value.to_string(),
                })?;
                *slot = Some(parsed);
            }
            Ok(cfg)
        }

        fn slot_mut(&mut self, key: &str) -> Option<&mut Option<f64>> {
            Some(match key {
                "a_nm" => &mut self.a_nm,
                "b_nm" => &mut self.b_nm,
                "vb_ev" => &mut self.vb_ev,
                "vc_ev" => &mut self.vc_ev,
                "m0" => &mut self.m0,
                "mb" => &mut self.mb,
                "mc" => &mut self.mc,
                _ => return None,
            })
        }

        /// Values set in `other` win.
        pub fn overridden_by(&self, other: &ParamConfig) -> ParamConfig {
            ParamConfig {
                a_nm: other.a_nm.or(self.a_nm),
                b_nm: other.b_nm.or(self.b_nm),
                vb_ev: other.vb_ev.or(self.vb_ev),
                vc_ev: other.vc_ev.or(self.vc_ev),
                m0: other.m0.or(self.m0),
                mb: other.mb.or(self.mb),
                mc: other.mc.or(self.mc),
            }
        }

        pub fn resolve(&self) -> Result<RawParams<f64>, ConfigError> {
            let fields = [
                self.a_nm, self.b_nm, self.vb_ev, self.vc_ev, self.m0, self.mb, self.mc,
            ];
            let missing: Vec<&'static str> = KEYS
                .iter()
                .zip(fields.iter())
                .filter(|(_, v)| v.is_none())
                .map(|(k, _)| *k)
                .collect();
            if !missing.is_empty() {
                return Err(ConfigError::Missing(missing));
            }
            Ok(RawParams {
                a: fields[0].unwrap(),
                b: fields[1].unwrap(),
                vb: fields[2].unwrap(),
                vc: fields[3].unwrap(),
                m0: fields[4].unwrap(),
                mb: fields[5].unwrap(),
                mc: fields[6].unwrap(),
            })
        }
    }
}
