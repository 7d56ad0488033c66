//! Independent reference computations.
//!
//! Nothing here calls [`crate::spectrum`] or [`crate::eigenstates`] to
//! produce its numbers: the finite-difference solver and the single-well
//! roots work from the parameters alone, and the quadrature only evaluates
//! wavefunctions pointwise.

pub mod fd;
pub mod quad;
pub mod single_well;
mod tridiag;

pub use fd::{convergence_order, fd_levels_extrapolated, fd_spectrum, FdGrid, FdLevel};
pub use quad::{quad_norm, quad_overlap, Quadrature};
pub use single_well::single_well_levels;
