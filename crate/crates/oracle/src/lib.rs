//! Brute-force gl(n) oracle over exact rationals: classical Pieri sets, explicit simple
//! modules, transition maps between finite truncations and exhaustion paths.

pub mod exhaustion;
pub mod finite;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod transition;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("size bound exceeded: {0}")]
    SizeBound(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("the larger diagram does not contain the smaller one")]
    NotContaining,
    #[error("no Pieri element lies above the given weight")]
    NoneAbove,
    #[error("highest weight space has dimension {0}, expected 1")]
    MultiplicityNotOne(usize),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("not a step: {0}")]
    NotAStep(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Core(#[from] glinf_core::Error),
}

pub type Result<T> = std::result::Result<T, OracleError>;
