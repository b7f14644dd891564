//! Configuration, frequency test, and result types shared by both miners.

use std::time::Duration;

use crate::dataset::RecordId;
use crate::error::ConfigError;
use crate::pattern::TemporalPattern;

/// Serialized width of one record-id slot in the analytic memory estimates.
pub const ID_SLOT_BYTES: u64 = 8;
/// Serialized width of one starting-position entry.
pub const POS_ENTRY_BYTES: u64 = 4;
/// Serialized width of one parent-index entry.
pub const IND_ENTRY_BYTES: u64 = 4;

#[derive(Debug, Clone)]
pub struct MiningConfig {
    pub theta: f64,
    /// Largest pattern size to mine; `None` runs until no new patterns.
    pub max_size: Option<usize>,
    pub time_limit: Option<Duration>,
    /// Keep every pattern's vertical list alive instead of releasing lists
    /// that can no longer be reached from the frontier's ancestor chains.
    pub retain_evls: bool,
}

impl MiningConfig {
    pub fn new(theta: f64) -> Result<Self, ConfigError> {
        if !theta.is_finite() || !(0.0..=1.0).contains(&theta) {
            return Err(ConfigError::ThetaOutOfRange(theta));
        }
        // The zero-theta/bound interplay is checked in `validate` once the
        // builder calls have finished shaping the run.
        Ok(MiningConfig { theta, max_size: None, time_limit: None, retain_evls: false })
    }

    pub fn with_max_size(mut self, max_size: usize) -> Result<Self, ConfigError> {
        if max_size == 0 {
            return Err(ConfigError::ZeroMaxSize);
        }
        self.max_size = Some(max_size);
        Ok(self)
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_retained_evls(mut self) -> Self {
        self.retain_evls = true;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.theta.is_finite() || self.theta < 0.0 || self.theta > 1.0 {
            return Err(ConfigError::ThetaOutOfRange(self.theta));
        }
        if let Some(0) = self.max_size {
            return Err(ConfigError::ZeroMaxSize);
        }
        if self.theta == 0.0 && self.max_size.is_none() && self.time_limit.is_none() {
            return Err(ConfigError::UnboundedZeroTheta);
        }
        Ok(())
    }
}

/// Frequent in some class: per-class support meets `theta * |class|`,
/// compared as reals with `>=` so both miners agree bit-for-bit.
pub fn is_frequent(supports: &[u32], class_counts: &[usize], theta: f64) -> bool {
    supports
        .iter()
        .zip(class_counts)
        .any(|(&s, &n)| f64::from(s) >= theta * n as f64)
}

/// Counters for one mined pattern size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStats {
    pub size: usize,
    pub candidates: u64,
    /// Rejected before any per-record verification ran.
    pub pruned: u64,
    pub ftps: u64,
    pub millis: u64,
}

/// Why the level loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    /// A level produced no new frequent patterns.
    Exhausted,
    /// The configured maximum pattern size was mined to the end.
    SizeLimit,
    /// The time budget ran out; results cover completed levels only.
    TimeLimit,
}

impl Completion {
    pub fn is_partial(self) -> bool {
        matches!(self, Completion::TimeLimit)
    }
}

/// A frequent pattern with its per-class supports and sorted record ids.
#[derive(Debug, Clone)]
pub struct MinedPattern {
    pub pattern: TemporalPattern,
    pub supports: Vec<u32>,
    pub ids: Vec<RecordId>,
}

/// Everything one miner run produces.
#[derive(Debug, Clone)]
pub struct MiningResult {
    pub patterns: Vec<MinedPattern>,
    pub levels: Vec<LevelStats>,
    /// Analytic structure size: id slots for the baseline, id+pos+ind slots
    /// for the vertical-list miner, accumulated over every accepted pattern.
    pub memory_bytes: u64,
    pub completion: Completion,
    pub deepest_complete_size: usize,
}

impl MiningResult {
    pub fn is_partial(&self) -> bool {
        self.completion.is_partial()
    }

    pub fn total_millis(&self) -> u64 {
        self.levels.iter().map(|l| l.millis).sum()
    }
}

pub(crate) fn intersect_sorted(a: &[RecordId], b: &[RecordId]) -> Vec<RecordId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn intersect_sorted_pos(a: &[u32], b: &[u32]) -> Vec<u32> {
    intersect_sorted(a, b)
}
