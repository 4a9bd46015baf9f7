use thiserror::Error;

use crate::profile::{ClassKey, Side};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("class values must strictly decrease from left to right (violated at {0})")]
    NonDecreasingValues(String),
    #[error("class {0} is empty")]
    EmptyClass(String),
    #[error("{0} tail has an invalid step {1}")]
    BadTailStep(Side, i64),
    #[error("{0} tail lists no shapes")]
    EmptyTail(Side),
    #[error("profile has no classes")]
    EmptyProfile,
    #[error("no class {0} in this profile")]
    NoSuchClass(ClassKey),
    #[error("delta vector sums to {0}, expected 0")]
    NonZeroSum(i64),
    #[error("profile has plain classes; a split profile is required")]
    NotFockProfile,
    #[error("module does not fit the profile: {0}")]
    ShapeMismatch(String),
    #[error("the A-set of the Fock module is finite")]
    ANotInfinite,
    #[error("the complement B of the Fock module is finite")]
    BNotInfinite,
    #[error("degree {d} needs at least {d} indices, profile has {size}")]
    TooSmallForD { d: u32, size: u64 },
    #[error("module is not a highest weight module for this order")]
    NotHighestWeight,
    #[error("dual module needs strictly increasing class values ({0})")]
    NotDualizable(String),
    #[error("dual module specs must go through dual_reduction first")]
    DualNeedsReduction,
    #[error("element exceeds the capacity of class {0}")]
    CapacityExceeded(ClassKey),
    #[error("element kind does not match the module")]
    ElementKindMismatch,
    #[error("unsupported hypothesis: {0}")]
    UnsupportedHypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
