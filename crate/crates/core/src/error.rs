use thiserror::Error;

/// Errors produced by the double-well solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive dimension: {name} = {value} nm")]
    NonPositiveDimension { name: &'static str, value: f64 },

    #[error("non-positive effective mass: {name} = {value} m_e")]
    NonPositiveMass { name: &'static str, value: f64 },

    #[error("non-positive potential: {name} = {value} eV")]
    NonPositivePotential { name: &'static str, value: f64 },

    #[error("central barrier V_b = {vb} eV exceeds confinement V_c = {vc} eV")]
    BarrierAboveConfinement { vb: f64, vc: f64 },

    #[error("energy {energy} eV outside the admissible range ({lo}, {hi}) eV")]
    EnergyOutOfRange { energy: f64, lo: f64, hi: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no bound states for these parameters")]
    NoBoundStates,

    #[error("root refinement failed: {0}")]
    RootRefinement(String),

    #[error("energy {energy} eV is not a root: scaled determinant residual {residual:e}")]
    NotARoot { energy: f64, residual: f64 },

    #[error("closed-form coefficients unsupported: {0}")]
    RegimeUnsupported(String),

    #[error("states belong to different well parameters")]
    ParameterMismatch,

    #[error("finite-difference grid too coarse: halving h moved E = {energy} eV by {change:e} eV")]
    GridTooCoarse { energy: f64, change: f64 },

    #[error("finite-difference domain too short: padding {pad} nm < {needed} nm for E = {energy} eV")]
    DomainTooShort { pad: f64, needed: f64, energy: f64 },

    #[error("cannot place interfaces on grid nodes: {0}")]
    IncommensurateGrid(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
