//! Level-wise candidate generation shared by both miners.

use crate::model::{State, TemporalRelation};
use crate::pattern::TemporalPattern;

/// Prepend each frequent singleton state to each size-k frequent pattern,
/// once per coherent first row. Coherent first rows are exactly the vectors
/// `c^a b^(k−a)`, so every (state, pattern) pair yields k+1 candidates whose
/// parent is the pattern it was built from. The output is duplicate-free by
/// construction: a candidate determines its first state, its parent, and its
/// first row.
///
/// Order is deterministic: singletons outer, patterns inner, then a = 0..k.
pub fn create_candidates(
    new_ftps: &[TemporalPattern],
    singletons: &[State],
) -> Vec<TemporalPattern> {
    let mut out = Vec::new();
    for &s in singletons {
        for p0 in new_ftps {
            let k = p0.size();
            for co_occurs in 0..=k {
                let mut states = Vec::with_capacity(k + 1);
                states.push(s);
                states.extend_from_slice(p0.states());
                let mut rels = Vec::with_capacity((k + 1) * k / 2);
                rels.extend(std::iter::repeat_n(TemporalRelation::CoOccur, co_occurs));
                rels.extend(std::iter::repeat_n(TemporalRelation::Before, k - co_occurs));
                rels.extend_from_slice(p0.relations());
                out.push(
                    TemporalPattern::new(states, rels)
                        .expect("prepending a coherent first row keeps the matrix coherent"),
                );
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::TemporalRelation::{Before as B, CoOccur as C};
    use crate::model::{Symbol, VariableTable};

    #[test]
    fn pair_of_singletons_yields_two_candidates() {
        let mut vars = VariableTable::new();
        let s = State::new(vars.intern("HR").unwrap(), Symbol::Normal);
        let p0 = TemporalPattern::singleton(State::new(vars.intern("BP").unwrap(), Symbol::Low));
        let cands = create_candidates(std::slice::from_ref(&p0), &[s]);
        assert_eq!(cands.len(), 2);
        assert!(cands.iter().all(|c| c.first_state() == s && c.parent().unwrap() == p0));
        let rels: Vec<_> = cands.iter().map(|c| c.relations().to_vec()).collect();
        assert!(rels.contains(&vec![B]));
        assert!(rels.contains(&vec![C]));
    }

    #[test]
    fn size_two_base_yields_three_first_rows() {
        let mut vars = VariableTable::new();
        let s = State::new(vars.intern("X").unwrap(), Symbol::High);
        let a = State::new(vars.intern("A").unwrap(), Symbol::Low);
        let b = State::new(vars.intern("B").unwrap(), Symbol::Low);
        let p0 = TemporalPattern::new(vec![a, b], vec![B]).unwrap();
        let cands = create_candidates(std::slice::from_ref(&p0), &[s]);
        assert_eq!(cands.len(), 3);
        let first_rows: Vec<Vec<_>> =
            cands.iter().map(|c| vec![c.rel(1, 2), c.rel(1, 3)]).collect();
        assert!(first_rows.contains(&vec![C, C]));
        assert!(first_rows.contains(&vec![C, B]));
        assert!(first_rows.contains(&vec![B, B]));
        // The incoherent row (b, c) must never appear.
        assert!(!first_rows.contains(&vec![B, C]));
        assert!(cands.iter().all(|c| c.parent().unwrap() == p0));
    }

    #[test]
    fn candidate_list_is_duplicate_free() {
        let mut vars = VariableTable::new();
        let a = State::new(vars.intern("A").unwrap(), Symbol::Low);
        let b = State::new(vars.intern("B").unwrap(), Symbol::Low);
        let bases = vec![
            TemporalPattern::new(vec![a, b], vec![B]).unwrap(),
            TemporalPattern::new(vec![a, b], vec![C]).unwrap(),
            TemporalPattern::new(vec![b, a], vec![B]).unwrap(),
        ];
        let cands = create_candidates(&bases, &[a, b]);
        assert_eq!(cands.len(), 2 * 3 * 3);
        let unique: std::collections::HashSet<_> = cands.iter().cloned().collect();
        assert_eq!(unique.len(), cands.len());
    }
}
