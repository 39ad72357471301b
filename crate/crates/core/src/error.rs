use alloc::vec::Vec;

use thiserror::Error;

use crate::weights::WeightVector;

/// A summand that could not be evaluated within the configured basis-size cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnfinishedOrbit {
    pub weight: WeightVector,
    pub basis_size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight entries sum to {actual}, expected {expected}")]
    WeightSumMismatch { expected: u32, actual: u32 },

    #[error("weight entry {value} at position {position} is outside 1..={n}")]
    EntryOutOfRange { position: usize, value: i64, n: usize },

    #[error("ambient dimension {n} is outside the supported range 1..={max}")]
    AmbientOutOfRange { n: usize, max: usize },

    #[error("({row},{col}) is not a strictly upper-triangular position")]
    InvalidGenerator { row: u8, col: u8 },

    #[error("matrix shape mismatch: {0}")]
    DimensionMismatch(&'static str),

    #[error("boundary composition is nonzero at degree {degree}")]
    NotAComplex { degree: i32 },

    #[error("map does not commute with the boundaries at degree {degree}")]
    NotAChainMap { degree: i32 },

    #[error("weight vector has distinct entries; duality applies to torsion summands only")]
    NotTorsion,

    #[error("cell {cell} at degree {degree} appears in more than one matched pair")]
    DuplicateMatch { degree: i32, cell: usize },

    #[error("matched edge {upper} -> {lower} at degree {degree} has non-invertible weight {coefficient}")]
    NonInvertibleEdge { degree: i32, upper: usize, lower: usize, coefficient: i64 },

    #[error("matching creates a directed cycle between degrees {degree} and {}", degree - 1)]
    DirectedCycle { degree: i32, cycle: Vec<(i32, usize)> },

    #[error("weight vector does not fit the pattern {0}")]
    PatternMismatch(&'static str),

    #[error("weight vector has no entry equal to 1 or n")]
    NoExtreme,

    #[error("{} summand(s) exceed the basis-size cap of {cap}", unfinished.len())]
    ResourceLimitExceeded { cap: u64, unfinished: Vec<UnfinishedOrbit> },

    #[error("integer coefficient overflow")]
    CoefficientOverflow,

    #[error("no reference table for n = {n}")]
    UnknownN { n: usize },

    #[error("malformed reference data at line {line}")]
    ReferenceData { line: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
