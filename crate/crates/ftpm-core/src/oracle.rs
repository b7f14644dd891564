//! Reference containment checks by plain exhaustive backtracking, plus a
//! brute-force enumeration miner. Nothing here is shared with the level-wise
//! miners' verification code, so the two can be checked against each other.

use std::collections::BTreeSet;

use crate::dataset::Dataset;
use crate::mining::is_frequent;
use crate::model::{relation_ordered, Mss, Pos, State, TemporalRelation};
use crate::pattern::TemporalPattern;

fn relations_ok(z: &Mss, p: &TemporalPattern, chosen: &[Pos], pos: Pos) -> bool {
    let j = chosen.len() + 1;
    chosen.iter().enumerate().all(|(idx, &earlier)| {
        relation_ordered(z.interval_at(earlier), z.interval_at(pos)) == p.rel(idx + 1, j)
    })
}

fn extend(z: &Mss, p: &TemporalPattern, chosen: &mut Vec<Pos>) -> bool {
    if chosen.len() == p.size() {
        return true;
    }
    let state = p.states()[chosen.len()];
    let from = chosen.last().copied().unwrap_or(0) + 1;
    for pos in from..=(z.len() as Pos) {
        if z.interval_at(pos).state() != state || !relations_ok(z, p, chosen, pos) {
            continue;
        }
        chosen.push(pos);
        if extend(z, p, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Does `z` contain `p`: a strictly increasing position mapping matching
/// every state and every relation entry?
pub fn contains(z: &Mss, p: &TemporalPattern) -> bool {
    extend(z, p, &mut Vec::new())
}

fn count_from(z: &Mss, p: &TemporalPattern, chosen: &mut Vec<Pos>) -> u64 {
    if chosen.len() == p.size() {
        return 1;
    }
    let state = p.states()[chosen.len()];
    let from = chosen.last().copied().unwrap_or(0) + 1;
    let mut total = 0;
    for pos in from..=(z.len() as Pos) {
        if z.interval_at(pos).state() != state || !relations_ok(z, p, chosen, pos) {
            continue;
        }
        chosen.push(pos);
        total += count_from(z, p, chosen);
        chosen.pop();
    }
    total
}

/// Number of distinct position mappings of `p` into `z`.
pub fn count_occurrences(z: &Mss, p: &TemporalPattern) -> u64 {
    count_from(z, p, &mut Vec::new())
}

/// Ascending first-state positions from which a full mapping of `p` exists.
pub fn starting_positions(z: &Mss, p: &TemporalPattern) -> Vec<Pos> {
    let first = p.first_state();
    (1..=(z.len() as Pos))
        .filter(|&pos| z.interval_at(pos).state() == first && extend(z, p, &mut vec![pos]))
        .collect()
}

/// Every coherent relation matrix for `k` states: each row is a co-occur
/// prefix followed by a before suffix, rows independent.
pub fn coherent_matrices(k: usize) -> Vec<Vec<TemporalRelation>> {
    let mut out = vec![Vec::new()];
    for i in 1..k {
        let row_len = k - i;
        let mut next = Vec::with_capacity(out.len() * (row_len + 1));
        for prefix in &out {
            for co in 0..=row_len {
                let mut m = prefix.clone();
                m.extend(std::iter::repeat_n(TemporalRelation::CoOccur, co));
                m.extend(std::iter::repeat_n(TemporalRelation::Before, row_len - co));
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// All coherent patterns over `states` (with repetition) up to `max_size`,
/// in deterministic order.
pub fn enumerate_patterns(states: &[State], max_size: usize) -> Vec<TemporalPattern> {
    let mut out = Vec::new();
    for k in 1..=max_size {
        let matrices = coherent_matrices(k);
        let mut tuple: Vec<State> = Vec::with_capacity(k);
        fill(states, k, &mut tuple, &matrices, &mut out);
    }
    return out;

    fn fill(
        states: &[State],
        k: usize,
        tuple: &mut Vec<State>,
        matrices: &[Vec<TemporalRelation>],
        out: &mut Vec<TemporalPattern>,
    ) {
        if tuple.len() == k {
            for m in matrices {
                out.push(TemporalPattern::new(tuple.clone(), m.clone()).unwrap());
            }
            return;
        }
        for &s in states {
            tuple.push(s);
            fill(states, k, tuple, matrices, out);
            tuple.pop();
        }
    }
}

/// States occurring anywhere in the dataset, sorted.
pub fn observed_states(d: &Dataset) -> Vec<State> {
    let mut set = BTreeSet::new();
    for rec in d.records() {
        for iv in rec.mss.intervals() {
            set.insert(iv.state());
        }
    }
    set.into_iter().collect()
}

/// Reference miner: enumerate every coherent pattern over observed states and
/// keep those frequent in at least one class. Exponential — test sizes only.
pub fn mine_by_enumeration(
    d: &Dataset,
    theta: f64,
    max_size: usize,
) -> Vec<(TemporalPattern, Vec<u32>)> {
    let states = observed_states(d);
    enumerate_patterns(&states, max_size)
        .into_iter()
        .filter_map(|p| {
            let mut supports = vec![0u32; d.num_classes()];
            for rec in d.records() {
                if contains(&rec.mss, &p) {
                    supports[rec.class.index()] += 1;
                }
            }
            is_frequent(&supports, d.class_counts(), theta).then_some((p, supports))
        })
        .collect()
}
