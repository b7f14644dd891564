use thiserror::Error;

/// Errors from constructing or manipulating model values.
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("interval end {end} precedes start {start}")]
    InvalidInterval { start: i64, end: i64 },
    #[error("relation arguments out of order: left start {left} > right start {right}")]
    UnorderedArguments { left: i64, right: i64 },
    #[error("variable name {0:?} is empty or contains a reserved character")]
    BadVariableName(String),
    #[error("pattern needs at least one state")]
    EmptyPattern,
    #[error("pattern of size {size} needs {expected} relation entries, got {got}")]
    RelationCountMismatch { size: usize, expected: usize, got: usize },
    #[error("relation matrix is incoherent at states ({i},{j}): co-occur after before in row {i}")]
    IncoherentRelations { i: usize, j: usize },
    #[error("cannot drop state {j} from a pattern of size {size}")]
    BadDropIndex { j: usize, size: usize },
    #[error("cannot take subpatterns of a size-1 pattern")]
    NoSubpatterns,
    #[error("state sequence invalid: {0}")]
    InvalidMss(String),
}

/// Errors from decoding a textual pattern key.
#[derive(Debug, Error, PartialEq)]
pub enum KeyError {
    #[error("pattern key must be wrapped in '<' and '>'")]
    Unbracketed,
    #[error("pattern key is missing the '|' separator")]
    MissingSeparator,
    #[error("empty state list")]
    NoStates,
    #[error("malformed state token {0:?}")]
    BadState(String),
    #[error("unknown symbol token {0:?}")]
    BadSymbol(String),
    #[error("bad relation character {0:?}")]
    BadRelation(char),
    #[error("{got} relation entries for {states} states (expected {expected})")]
    WrongRelationCount { states: usize, expected: usize, got: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors from the abstraction pipeline.
#[derive(Debug, Error, PartialEq)]
pub enum AbstractionError {
    #[error("series {0:?} has no samples")]
    EmptySeries(String),
    #[error("series {variable:?}: ticks not strictly increasing at sample {index}")]
    UnorderedTicks { variable: String, index: usize },
    #[error("series {variable:?}: non-finite value at sample {index}")]
    NonFiniteValue { variable: String, index: usize },
    #[error("cannot compute thresholds over an empty population")]
    EmptyPopulation,
    #[error("non-finite value in threshold population")]
    NonFinitePopulation,
    #[error("percentiles must be non-decreasing and within [0, 1]")]
    BadPercentiles,
    #[error("segmentation parameters must be finite and non-negative")]
    BadSegmentationParams,
}

/// Errors from validating a mining configuration.
#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("theta must lie in [0, 1], got {0}")]
    ThetaOutOfRange(f64),
    #[error("max pattern size must be at least 1")]
    ZeroMaxSize,
    #[error("theta = 0 without a size or time bound never terminates")]
    UnboundedZeroTheta,
}
