//! Bound states of a symmetric square double quantum well with
//! position-dependent effective mass.
//!
//! The structure is a well of width `a`, a central barrier of width `b` and
//! height `V_b`, a second well of width `a`, with confining barriers of height
//! `V_c` on both sides. The left well starts at `x = 0`.
//!
//! * [`spectrum`] finds the bound levels from the parity determinants.
//! * [`eigenstates`] builds normalised piecewise wavefunctions.
//! * [`dipole`] computes optical dipole matrix elements.
//! * [`oracle`] is an independent finite-difference and quadrature
//!   reference used for validation.
//!
//! All routines are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the production scalar.

pub mod eigenstates;
pub mod dipole;
pub mod error;
mod linalg;
mod matching;
pub mod num;
pub mod oracle;
pub mod params;
mod roots;
pub mod spectrum;

pub use dipole::{DipoleBreakdown, Transition};
pub use eigenstates::{bound_states, BoundState, CoefficientSet};
pub use error::{Error, Result};
pub use matching::BarrierBasis;
pub use num::Real;
pub use params::{BarrierMode, RawParams, Region, WaveNumbers, WellParams, HBAR2_OVER_2ME};
pub use spectrum::{find_levels, Level, Parity};

pub type WellParams64 = WellParams<f64>;
pub type WellParams32 = WellParams<f32>;
pub type Level64 = Level<f64>;
pub type Level32 = Level<f32>;
pub type BoundState64 = BoundState<f64>;
pub type BoundState32 = BoundState<f32>;
