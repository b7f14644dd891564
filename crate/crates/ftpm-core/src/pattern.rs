//! Temporal patterns: an ordered state list plus the upper-triangular
//! relation matrix, with the derived quantities the miners rely on.

use crate::error::{KeyError, ModelError};
use crate::model::{State, Symbol, TemporalRelation, VariableTable};

/// Ordered states `S1..Sk` with relations `R(i,j)` for `i < j`, stored
/// row-major: (1,2), (1,3), …, (1,k), (2,3), …, (k−1,k).
///
/// Construction enforces coherence: within a row, once a relation turns
/// `Before` it stays `Before` for every later column. That is forced by the
/// start ordering of any realisation, so incoherent matrices match nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TemporalPattern {
    states: Vec<State>,
    rels: Vec<TemporalRelation>,
}

impl TemporalPattern {
    pub fn new(states: Vec<State>, rels: Vec<TemporalRelation>) -> Result<Self, ModelError> {
        let k = states.len();
        if k == 0 {
            return Err(ModelError::EmptyPattern);
        }
        let expected = k * (k - 1) / 2;
        if rels.len() != expected {
            return Err(ModelError::RelationCountMismatch { size: k, expected, got: rels.len() });
        }
        let p = TemporalPattern { states, rels };
        for i in 1..k {
            let mut seen_before = false;
            for j in (i + 1)..=k {
                match p.rel(i, j) {
                    TemporalRelation::Before => seen_before = true,
                    TemporalRelation::CoOccur if seen_before => {
                        return Err(ModelError::IncoherentRelations { i, j });
                    }
                    TemporalRelation::CoOccur => {}
                }
            }
        }
        Ok(p)
    }

    pub fn singleton(state: State) -> Self {
        TemporalPattern { states: vec![state], rels: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn first_state(&self) -> State {
        self.states[0]
    }

    pub fn relations(&self) -> &[TemporalRelation] {
        &self.rels
    }

    /// Relation between states `i` and `j`, 1-based, `i < j`.
    pub fn rel(&self, i: usize, j: usize) -> TemporalRelation {
        debug_assert!(1 <= i && i < j && j <= self.size());
        self.rels[Self::rel_index(self.size(), i, j)]
    }

    fn rel_index(k: usize, i: usize, j: usize) -> usize {
        // Entries before row i: (i−1)·k − i·(i−1)/2; then j − i − 1 within it.
        (i - 1) * k - i * (i - 1) / 2 + (j - i - 1)
    }

    /// Remove state `j` (1-based), restricting the matrix to the survivors.
    pub fn drop_state(&self, j: usize) -> Result<Self, ModelError> {
        let k = self.size();
        if k <= 1 || j == 0 || j > k {
            return Err(ModelError::BadDropIndex { j, size: k });
        }
        let mut states = Vec::with_capacity(k - 1);
        let kept: Vec<usize> = (1..=k).filter(|&s| s != j).collect();
        for &s in &kept {
            states.push(self.states[s - 1]);
        }
        let mut rels = Vec::with_capacity((k - 1) * (k - 2) / 2);
        for a in 0..kept.len() {
            for b in (a + 1)..kept.len() {
                rels.push(self.rel(kept[a], kept[b]));
            }
        }
        // Restriction of a coherent matrix stays coherent.
        Ok(TemporalPattern { states, rels })
    }

    /// The size-(k−1) subpattern obtained by dropping the first state.
    pub fn parent(&self) -> Result<Self, ModelError> {
        self.drop_state(1)
    }

    /// All k subpatterns of size k−1, in drop order j = 1..k (multiset:
    /// identical states can yield identical entries).
    pub fn subpatterns(&self) -> Result<Vec<Self>, ModelError> {
        let k = self.size();
        if k <= 1 {
            return Err(ModelError::NoSubpatterns);
        }
        (1..=k).map(|j| self.drop_state(j)).collect()
    }

    /// Smallest c ≥ 1 such that every state up to c is strictly before every
    /// state after c (vacuous at c = k).
    pub fn chain_length(&self) -> usize {
        let k = self.size();
        // Prefix c qualifies exactly when no row i ≤ c co-occurs past column c.
        let mut furthest_co_occur = 0usize;
        for c in 1..k {
            let mut row_last = c;
            for j in (c + 1)..=k {
                if self.rel(c, j) == TemporalRelation::CoOccur {
                    row_last = j;
                }
            }
            furthest_co_occur = furthest_co_occur.max(row_last);
            if furthest_co_occur <= c {
                return c;
            }
        }
        k
    }

    /// How many leading states an EVL verification must place explicitly:
    /// chain + 1 when the chain is proper, otherwise the full size.
    pub fn exposure(&self) -> usize {
        let k = self.size();
        let c = self.chain_length();
        if c < k {
            c + 1
        } else {
            k
        }
    }
}

/// Canonical textual key: `<VAR=SYM,…|rels>` with row-major relation chars.
pub fn pattern_key(p: &TemporalPattern, vars: &VariableTable) -> String {
    let mut out = String::from("<");
    for (i, s) in p.states().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(vars.name(s.var));
        out.push('=');
        out.push_str(s.symbol.token());
    }
    out.push('|');
    for r in p.relations() {
        out.push(r.as_char());
    }
    out.push('>');
    out
}

/// Decode a canonical key, interning unseen variables into `vars`.
pub fn parse_pattern_key(key: &str, vars: &mut VariableTable) -> Result<TemporalPattern, KeyError> {
    let inner = key
        .strip_prefix('<')
        .and_then(|s| s.strip_suffix('>'))
        .ok_or(KeyError::Unbracketed)?;
    let (state_part, rel_part) = inner.split_once('|').ok_or(KeyError::MissingSeparator)?;
    if state_part.is_empty() {
        return Err(KeyError::NoStates);
    }
    let mut states = Vec::new();
    for token in state_part.split(',') {
        let (var, sym) = token.split_once('=').ok_or_else(|| KeyError::BadState(token.into()))?;
        let symbol = Symbol::from_token(sym).ok_or_else(|| KeyError::BadSymbol(sym.into()))?;
        let var = vars.intern(var).map_err(KeyError::Model)?;
        states.push(State::new(var, symbol));
    }
    let mut rels = Vec::new();
    for c in rel_part.chars() {
        rels.push(TemporalRelation::from_char(c).ok_or(KeyError::BadRelation(c))?);
    }
    let k = states.len();
    let expected = k * (k - 1) / 2;
    if rels.len() != expected {
        return Err(KeyError::WrongRelationCount { states: k, expected, got: rels.len() });
    }
    TemporalPattern::new(states, rels).map_err(KeyError::Model)
}
