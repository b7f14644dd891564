//! Frequent temporal pattern mining over labeled multivariate time series.
//!
//! Numeric series are abstracted into symbolic state intervals; a state
//! sequence per record then feeds one of two level-wise miners that return
//! every temporal pattern reaching a per-class support threshold. The
//! baseline miner re-verifies each candidate against the records; the
//! extended-vertical-list miner stores verified positions with links into
//! each pattern's parent list and only re-checks the relations a verified
//! suffix cannot vouch for. Both return identical pattern sets — the second
//! trades memory for verification speed.

pub mod abstraction;
pub mod candidate;
pub mod dataset;
pub mod error;
pub mod evl;
pub mod ftpm;
pub mod mining;
pub mod model;
pub mod oracle;
pub mod pattern;
#[cfg(test)]
mod testfix;

pub use dataset::{ClassId, Dataset, Record, RecordId};
pub use error::{AbstractionError, ConfigError, KeyError, ModelError};
pub use mining::{Completion, LevelStats, MinedPattern, MiningConfig, MiningResult};
pub use model::{
    relation, Alphabet, Mss, Pos, State, StateInterval, Symbol, TemporalRelation, VarId,
    VariableTable,
};
pub use pattern::{parse_pattern_key, pattern_key, TemporalPattern};
