//! Base vocabulary: abstraction symbols, interned variables, state intervals,
//! the two temporal relations, and validated multivariate state sequences.

use std::collections::HashMap;

use crate::error::ModelError;

/// Which alphabet a symbol belongs to. A symbol belongs to exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Value,
    Trend,
}

/// Abstraction symbol: five value bands plus three trend directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    VeryLow,
    Low,
    Normal,
    High,
    VeryHigh,
    Steady,
    Increasing,
    Decreasing,
}

impl Symbol {
    pub const VALUES: [Symbol; 5] = [
        Symbol::VeryLow,
        Symbol::Low,
        Symbol::Normal,
        Symbol::High,
        Symbol::VeryHigh,
    ];
    pub const TRENDS: [Symbol; 3] = [Symbol::Steady, Symbol::Increasing, Symbol::Decreasing];

    pub fn alphabet(self) -> Alphabet {
        match self {
            Symbol::VeryLow | Symbol::Low | Symbol::Normal | Symbol::High | Symbol::VeryHigh => {
                Alphabet::Value
            }
            Symbol::Steady | Symbol::Increasing | Symbol::Decreasing => Alphabet::Trend,
        }
    }

    /// Short token used by the textual pattern key and the native file format.
    pub fn token(self) -> &'static str {
        match self {
            Symbol::VeryLow => "VL",
            Symbol::Low => "L",
            Symbol::Normal => "N",
            Symbol::High => "H",
            Symbol::VeryHigh => "VH",
            Symbol::Steady => "ST",
            Symbol::Increasing => "INC",
            Symbol::Decreasing => "DEC",
        }
    }

    pub fn from_token(token: &str) -> Option<Symbol> {
        Some(match token {
            "VL" => Symbol::VeryLow,
            "L" => Symbol::Low,
            "N" => Symbol::Normal,
            "H" => Symbol::High,
            "VH" => Symbol::VeryHigh,
            "ST" => Symbol::Steady,
            "INC" => Symbol::Increasing,
            "DEC" => Symbol::Decreasing,
            _ => return None,
        })
    }
}

/// Interned variable identifier; resolve the label through a [`VariableTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Characters with structural meaning in the pattern key grammar; variable
/// names must avoid them so keys stay bijective.
const RESERVED: [char; 5] = ['<', '>', '=', ',', '|'];

/// Interning table mapping variable labels to dense ids.
#[derive(Debug, Clone, Default)]
pub struct VariableTable {
    names: Vec<String>,
    ids: HashMap<String, VarId>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Intern a label, returning the existing id when already present.
    pub fn intern(&mut self, name: &str) -> Result<VarId, ModelError> {
        if let Some(&id) = self.ids.get(name) {
            return Ok(id);
        }
        if name.is_empty() || name.chars().any(|c| RESERVED.contains(&c) || c.is_whitespace()) {
            return Err(ModelError::BadVariableName(name.to_string()));
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn get(&self, name: &str) -> Option<VarId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }
}

/// A (variable, symbol) pair: one abstracted state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub var: VarId,
    pub symbol: Symbol,
}

impl State {
    pub fn new(var: VarId, symbol: Symbol) -> Self {
        State { var, symbol }
    }
}

/// A state holding over a closed tick range `[start, end]`, `start <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StateInterval {
    pub var: VarId,
    pub symbol: Symbol,
    pub start: i64,
    pub end: i64,
}

impl StateInterval {
    pub fn new(var: VarId, symbol: Symbol, start: i64, end: i64) -> Result<Self, ModelError> {
        if end < start {
            return Err(ModelError::InvalidInterval { start, end });
        }
        Ok(StateInterval { var, symbol, start, end })
    }

    pub fn state(&self) -> State {
        State { var: self.var, symbol: self.symbol }
    }
}

/// The two relations between intervals ordered by start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalRelation {
    Before,
    CoOccur,
}

impl TemporalRelation {
    pub fn as_char(self) -> char {
        match self {
            TemporalRelation::Before => 'b',
            TemporalRelation::CoOccur => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'b' => Some(TemporalRelation::Before),
            'c' => Some(TemporalRelation::CoOccur),
            _ => None,
        }
    }
}

/// Relation between two intervals; requires `a.start <= b.start`.
///
/// `a` is before `b` exactly when `a` ends strictly before `b` starts;
/// everything else (including a shared boundary tick) co-occurs.
pub fn relation(a: &StateInterval, b: &StateInterval) -> Result<TemporalRelation, ModelError> {
    if a.start > b.start {
        return Err(ModelError::UnorderedArguments { left: a.start, right: b.start });
    }
    Ok(relation_ordered(a, b))
}

pub(crate) fn relation_ordered(a: &StateInterval, b: &StateInterval) -> TemporalRelation {
    debug_assert!(a.start <= b.start);
    if a.end < b.start {
        TemporalRelation::Before
    } else {
        TemporalRelation::CoOccur
    }
}

/// 1-based position of an interval within an MSS.
pub type Pos = u32;

/// Multivariate state sequence: intervals sorted by start, with strict
/// separation and symbol alternation inside each variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mss {
    intervals: Vec<StateInterval>,
}

impl Mss {
    pub fn new(intervals: Vec<StateInterval>) -> Result<Self, ModelError> {
        let mut last_per_var: HashMap<VarId, &StateInterval> = HashMap::new();
        for (i, iv) in intervals.iter().enumerate() {
            if iv.end < iv.start {
                return Err(ModelError::InvalidInterval { start: iv.start, end: iv.end });
            }
            if i > 0 && intervals[i - 1].start > iv.start {
                return Err(ModelError::InvalidMss(format!(
                    "intervals not sorted by start at position {}",
                    i + 1
                )));
            }
            if let Some(prev) = last_per_var.get(&iv.var) {
                if prev.end >= iv.start {
                    return Err(ModelError::InvalidMss(format!(
                        "variable {} overlaps or touches at position {}",
                        iv.var.index(),
                        i + 1
                    )));
                }
                if prev.symbol == iv.symbol {
                    return Err(ModelError::InvalidMss(format!(
                        "variable {} repeats symbol at position {}",
                        iv.var.index(),
                        i + 1
                    )));
                }
            }
            last_per_var.insert(iv.var, iv);
        }
        Ok(Mss { intervals })
    }

    pub fn empty() -> Self {
        Mss { intervals: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[StateInterval] {
        &self.intervals
    }

    /// Interval at a 1-based position.
    pub fn interval_at(&self, pos: Pos) -> &StateInterval {
        &self.intervals[(pos - 1) as usize]
    }

    /// Ascending 1-based positions of every interval, grouped by state.
    pub fn state_positions(&self) -> HashMap<State, Vec<Pos>> {
        let mut map: HashMap<State, Vec<Pos>> = HashMap::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            map.entry(iv.state()).or_default().push((i + 1) as Pos);
        }
        map
    }
}
