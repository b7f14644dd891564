//! Baseline level-wise miner over vertical id lists. Candidates are pruned
//! through their size-k subpatterns' id lists, then every surviving record is
//! re-verified from scratch by indexed backtracking.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use crate::candidate::create_candidates;
use crate::dataset::{Dataset, Record, RecordId};
use crate::error::ConfigError;
use crate::mining::{
    intersect_sorted, is_frequent, Completion, LevelStats, MinedPattern, MiningConfig,
    MiningResult, ID_SLOT_BYTES,
};
use crate::model::{relation_ordered, Pos, State};
use crate::pattern::TemporalPattern;

/// Frequent single states with their sorted id lists, in state order.
pub fn find_size1_ftps(d: &Dataset, theta: f64) -> Vec<(State, Vec<RecordId>)> {
    let mut ids_by_state: BTreeMap<State, Vec<RecordId>> = BTreeMap::new();
    for (id, rec) in d.records().iter().enumerate() {
        for state in rec.states() {
            ids_by_state.entry(state).or_default().push(id as RecordId);
        }
    }
    ids_by_state
        .into_iter()
        .map(|(state, mut ids)| {
            ids.sort_unstable();
            (state, ids)
        })
        .filter(|(_, ids)| is_frequent(&d.support_counts(ids), d.class_counts(), theta))
        .collect()
}

/// Intersection of all size-k subpatterns' id lists, or `None` when some
/// subpattern is not frequent (so the candidate cannot be either).
pub fn potential_ids(
    candidate: &TemporalPattern,
    prev_level: &HashMap<TemporalPattern, Vec<RecordId>>,
) -> Option<Vec<RecordId>> {
    let subs = candidate.subpatterns().expect("candidates have size >= 2");
    let mut ids: Option<Vec<RecordId>> = None;
    for sub in &subs {
        let list = prev_level.get(sub)?;
        ids = Some(match ids {
            None => list.clone(),
            Some(acc) => intersect_sorted(&acc, list),
        });
    }
    ids
}

/// Backtracking containment over the record's per-state position index:
/// positions strictly increase, each placement is checked against every
/// earlier placement, first failure moves to the next position.
fn record_contains(rec: &Record, p: &TemporalPattern) -> bool {
    let lists: Vec<&[Pos]> = p.states().iter().map(|&s| rec.positions_of(s)).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return false;
    }
    let mut chosen: Vec<Pos> = Vec::with_capacity(p.size());
    extend(rec, p, &lists, &mut chosen)
}

fn extend(rec: &Record, p: &TemporalPattern, lists: &[&[Pos]], chosen: &mut Vec<Pos>) -> bool {
    let depth = chosen.len();
    if depth == p.size() {
        return true;
    }
    let min_pos = chosen.last().copied().unwrap_or(0);
    let list = lists[depth];
    let from = list.partition_point(|&q| q <= min_pos);
    'next: for &pos in &list[from..] {
        for (i, &earlier) in chosen.iter().enumerate() {
            let got = relation_ordered(rec.mss.interval_at(earlier), rec.mss.interval_at(pos));
            if got != p.rel(i + 1, depth + 1) {
                continue 'next;
            }
        }
        chosen.push(pos);
        if extend(rec, p, lists, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Mine all frequent temporal patterns level-wise with id-list pruning and
/// per-record backtracking verification.
pub fn mine_ftpm(d: &Dataset, cfg: &MiningConfig) -> Result<MiningResult, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let over_budget = |now: Instant| cfg.time_limit.is_some_and(|lim| now - start >= lim);

    let mut levels: Vec<LevelStats> = Vec::new();
    let mut patterns: Vec<MinedPattern> = Vec::new();
    let mut memory_bytes: u64 = 0;

    let level_start = Instant::now();
    let singles = find_size1_ftps(d, cfg.theta);
    let observed: u64 = {
        let mut set = std::collections::BTreeSet::new();
        for rec in d.records() {
            set.extend(rec.states());
        }
        set.len() as u64
    };
    let singleton_states: Vec<State> = singles.iter().map(|(s, _)| *s).collect();
    let mut prev_level: HashMap<TemporalPattern, Vec<RecordId>> = HashMap::new();
    let mut new_ftps: Vec<TemporalPattern> = Vec::new();
    for (state, ids) in singles {
        let p = TemporalPattern::singleton(state);
        memory_bytes += ids.len() as u64 * ID_SLOT_BYTES;
        patterns.push(MinedPattern {
            pattern: p.clone(),
            supports: d.support_counts(&ids),
            ids: ids.clone(),
        });
        prev_level.insert(p.clone(), ids);
        new_ftps.push(p);
    }
    levels.push(LevelStats {
        size: 1,
        candidates: observed,
        pruned: 0,
        ftps: new_ftps.len() as u64,
        millis: level_start.elapsed().as_millis() as u64,
    });

    let mut size = 1usize;
    let completion = loop {
        if new_ftps.is_empty() {
            break Completion::Exhausted;
        }
        if cfg.max_size == Some(size) {
            break Completion::SizeLimit;
        }
        if over_budget(Instant::now()) {
            break Completion::TimeLimit;
        }

        let level_start = Instant::now();
        let candidates = create_candidates(&new_ftps, &singleton_states);
        let mut pruned: u64 = 0;
        let mut accepted: Vec<(TemporalPattern, Vec<RecordId>)> = Vec::new();
        let mut timed_out = false;
        for cand in &candidates {
            if over_budget(Instant::now()) {
                timed_out = true;
                break;
            }
            let Some(p_ids) = potential_ids(cand, &prev_level) else {
                pruned += 1;
                continue;
            };
            if !is_frequent(&d.support_counts(&p_ids), d.class_counts(), cfg.theta) {
                pruned += 1;
                continue;
            }
            let verified: Vec<RecordId> = p_ids
                .into_iter()
                .filter(|&id| record_contains(d.record(id), cand))
                .collect();
            if is_frequent(&d.support_counts(&verified), d.class_counts(), cfg.theta) {
                accepted.push((cand.clone(), verified));
            }
        }
        if timed_out {
            break Completion::TimeLimit;
        }

        size += 1;
        levels.push(LevelStats {
            size,
            candidates: candidates.len() as u64,
            pruned,
            ftps: accepted.len() as u64,
            millis: level_start.elapsed().as_millis() as u64,
        });
        prev_level.clear();
        new_ftps.clear();
        for (p, ids) in accepted {
            memory_bytes += ids.len() as u64 * ID_SLOT_BYTES;
            patterns.push(MinedPattern {
                pattern: p.clone(),
                supports: d.support_counts(&ids),
                ids: ids.clone(),
            });
            prev_level.insert(p.clone(), ids);
            new_ftps.push(p);
        }
    };

    Ok(MiningResult {
        patterns,
        levels,
        memory_bytes,
        completion,
        deepest_complete_size: size,
    })
}
