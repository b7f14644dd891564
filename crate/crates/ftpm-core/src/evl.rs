//! Level-wise miner over extended vertical lists. Instead of re-verifying
//! candidates from scratch, each frequent pattern stores, per record, its
//! verified starting positions plus links into its parent pattern's list;
//! verification walks those links and only re-checks relations for the few
//! leading states not already covered by a verified suffix.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use crate::candidate::create_candidates;
use crate::dataset::{Dataset, RecordId};
use crate::error::ConfigError;
use crate::mining::{
    intersect_sorted_pos, is_frequent, Completion, LevelStats, MinedPattern, MiningConfig,
    MiningResult, ID_SLOT_BYTES, IND_ENTRY_BYTES, POS_ENTRY_BYTES,
};
use crate::model::{relation_ordered, Mss, Pos, State};
use crate::pattern::TemporalPattern;

/// One record's slice of a pattern's extended vertical list.
///
/// `pos` holds ascending 1-based starting positions of the pattern's first
/// state; `ind[i]` is the 1-based index into the *parent* pattern's `pos`
/// list (same record) from which a verified continuation starts. Size-1
/// patterns have no parent and an empty `ind`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordEvl {
    pub record: RecordId,
    pub pos: Vec<Pos>,
    pub ind: Vec<u32>,
}

/// A pattern's extended vertical list across records, ascending by id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EvlList {
    pub records: Vec<RecordEvl>,
}

impl EvlList {
    pub fn record(&self, id: RecordId) -> Option<&RecordEvl> {
        self.records
            .binary_search_by_key(&id, |r| r.record)
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn ids(&self) -> Vec<RecordId> {
        self.records.iter().map(|r| r.record).collect()
    }

    /// Analytic size: one id slot per record plus fixed-width entries.
    pub fn bytes(&self) -> u64 {
        self.records
            .iter()
            .map(|r| {
                ID_SLOT_BYTES
                    + r.pos.len() as u64 * POS_ENTRY_BYTES
                    + r.ind.len() as u64 * IND_ENTRY_BYTES
            })
            .sum()
    }
}

/// All extended vertical lists currently alive, keyed by pattern.
#[derive(Debug, Default)]
pub struct EvlStore {
    map: HashMap<TemporalPattern, EvlList>,
}

impl EvlStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, p: &TemporalPattern) -> Option<&EvlList> {
        self.map.get(p)
    }

    pub fn insert(&mut self, p: TemporalPattern, list: EvlList) {
        self.map.insert(p, list);
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn patterns(&self) -> impl Iterator<Item = &TemporalPattern> {
        self.map.keys()
    }

    /// Total analytic size of every stored list.
    pub fn memory_estimate(&self) -> u64 {
        self.map.values().map(EvlList::bytes).sum()
    }

    /// Drop lists that verification can never touch again: anything outside
    /// the frontier patterns' ancestor chains. Future candidates descend
    /// parent links starting from a frontier pattern, so those chains are the
    /// complete reachable set.
    pub fn retain_reachable(&mut self, frontier: &[TemporalPattern]) {
        let mut keep: HashSet<TemporalPattern> = HashSet::new();
        for p in frontier {
            let mut cur = p.clone();
            while keep.insert(cur.clone()) {
                match cur.parent() {
                    Ok(next) => cur = next,
                    Err(_) => break,
                }
            }
        }
        self.map.retain(|p, _| keep.contains(p));
    }
}

/// Vertical lists for every observed state (unfiltered), in state order.
/// Positions come from the per-record index; `ind` stays empty.
pub fn evl_size1(d: &Dataset) -> Vec<(State, EvlList)> {
    let mut by_state: BTreeMap<State, EvlList> = BTreeMap::new();
    for (id, rec) in d.records().iter().enumerate() {
        let mut states: Vec<State> = rec.states().collect();
        states.sort_unstable();
        for state in states {
            by_state.entry(state).or_default().records.push(RecordEvl {
                record: id as RecordId,
                pos: rec.positions_of(state).to_vec(),
                ind: Vec::new(),
            });
        }
    }
    by_state.into_iter().collect()
}

/// Candidate admission: intersect the size-k subpatterns' id lists, then per
/// record intersect the starting positions of the k subpatterns that share
/// the candidate's first state (drop-j, j ≥ 2), link each surviving position
/// to the first parent position after it, and re-check potential frequency.
/// `None` means the candidate was pruned before any verification.
pub fn find_potential_positions_and_indices(
    d: &Dataset,
    candidate: &TemporalPattern,
    store: &EvlStore,
    theta: f64,
) -> Option<EvlList> {
    let subs = candidate.subpatterns().expect("candidates have size >= 2");
    let mut lists: Vec<&EvlList> = Vec::with_capacity(subs.len());
    for sub in &subs {
        lists.push(store.get(sub)?);
    }
    let mut p_ids: Option<Vec<RecordId>> = None;
    for list in &lists {
        let ids = list.ids();
        p_ids = Some(match p_ids {
            None => ids,
            Some(acc) => crate::mining::intersect_sorted(&acc, &ids),
        });
    }
    let p_ids = p_ids.expect("size >= 2 patterns have subpatterns");
    if !is_frequent(&d.support_counts(&p_ids), d.class_counts(), theta) {
        return None;
    }

    let parent_list = lists[0];
    let mut records = Vec::new();
    for id in p_ids {
        let mut positions: Option<Vec<Pos>> = None;
        for list in &lists[1..] {
            let rec = list.record(id).expect("id came from this list's intersection");
            positions = Some(match positions {
                None => rec.pos.clone(),
                Some(acc) => intersect_sorted_pos(&acc, &rec.pos),
            });
        }
        let positions = positions.expect("size >= 2 candidates have drop-j subpatterns");
        let parent_pos = &parent_list.record(id).expect("id is in the parent list").pos;
        let mut pos = Vec::with_capacity(positions.len());
        let mut ind = Vec::with_capacity(positions.len());
        for p in positions {
            let link = parent_pos.partition_point(|&q| q <= p);
            if link < parent_pos.len() {
                pos.push(p);
                ind.push((link + 1) as u32);
            }
        }
        if !pos.is_empty() {
            records.push(RecordEvl { record: id, pos, ind });
        }
    }
    let list = EvlList { records };
    if !is_frequent(&d.support_counts(&list.ids()), d.class_counts(), theta) {
        return None;
    }
    Some(list)
}

/// Walk the ancestor levels to verify one candidate start.
///
/// `levels[depth]` is the record's list for the candidate's (depth+1)-th
/// ancestor; `chosen` holds the positions already placed for original states
/// 1..chosen.len(). Scanning this level from `start` (1-based), a position is
/// accepted when its relation to every chosen position matches `original`'s
/// matrix; with more states left to place the walk descends into the entry's
/// `ind` link, and a dead end advances to the next position here. Returns the
/// first index *at this level* from which the whole remainder verifies.
pub fn search(
    levels: &[&RecordEvl],
    mss: &Mss,
    depth: usize,
    start: u32,
    chosen: &mut Vec<Pos>,
    original: &TemporalPattern,
    remaining: usize,
) -> Option<u32> {
    debug_assert!(remaining >= 1 && depth + remaining <= levels.len());
    let level = levels[depth];
    let placing = chosen.len() + 1;
    let mut i = start.max(1);
    'scan: while (i as usize) <= level.pos.len() {
        let q = level.pos[(i - 1) as usize];
        for (a, &earlier) in chosen.iter().enumerate() {
            let got = relation_ordered(mss.interval_at(earlier), mss.interval_at(q));
            if got != original.rel(a + 1, placing) {
                i += 1;
                continue 'scan;
            }
        }
        if remaining == 1 {
            return Some(i);
        }
        chosen.push(q);
        let deeper = search(
            levels,
            mss,
            depth + 1,
            level.ind[(i - 1) as usize],
            chosen,
            original,
            remaining - 1,
        );
        chosen.pop();
        if deeper.is_some() {
            return Some(i);
        }
        i += 1;
    }
    None
}

/// A mining run's result together with the surviving vertical lists.
#[derive(Debug)]
pub struct EvlMineOutput {
    pub result: MiningResult,
    pub store: EvlStore,
}

/// Mine all frequent temporal patterns level-wise, verifying candidates
/// through extended vertical lists instead of from-scratch backtracking.
pub fn mine_evl(d: &Dataset, cfg: &MiningConfig) -> Result<EvlMineOutput, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let over_budget = |now: Instant| cfg.time_limit.is_some_and(|lim| now - start >= lim);

    let mut levels_out: Vec<LevelStats> = Vec::new();
    let mut patterns: Vec<MinedPattern> = Vec::new();
    let mut memory_bytes: u64 = 0;
    let mut store = EvlStore::new();

    let level_start = Instant::now();
    let all_singles = evl_size1(d);
    let observed = all_singles.len() as u64;
    let mut frontier: Vec<TemporalPattern> = Vec::new();
    let mut singleton_states: Vec<State> = Vec::new();
    for (state, list) in all_singles {
        let ids = list.ids();
        if !is_frequent(&d.support_counts(&ids), d.class_counts(), cfg.theta) {
            continue;
        }
        let p = TemporalPattern::singleton(state);
        memory_bytes += list.bytes();
        patterns.push(MinedPattern {
            pattern: p.clone(),
            supports: d.support_counts(&ids),
            ids,
        });
        store.insert(p.clone(), list);
        frontier.push(p);
        singleton_states.push(state);
    }
    levels_out.push(LevelStats {
        size: 1,
        candidates: observed,
        pruned: 0,
        ftps: frontier.len() as u64,
        millis: level_start.elapsed().as_millis() as u64,
    });

    let mut size = 1usize;
    let completion = loop {
        if frontier.is_empty() {
            break Completion::Exhausted;
        }
        if cfg.max_size == Some(size) {
            break Completion::SizeLimit;
        }
        if over_budget(Instant::now()) {
            break Completion::TimeLimit;
        }

        let level_start = Instant::now();
        let candidates = create_candidates(&frontier, &singleton_states);
        let mut pruned: u64 = 0;
        let mut accepted: Vec<(TemporalPattern, EvlList)> = Vec::new();
        let mut timed_out = false;
        for cand in &candidates {
            if over_budget(Instant::now()) {
                timed_out = true;
                break;
            }
            let Some(potential) =
                find_potential_positions_and_indices(d, cand, &store, cfg.theta)
            else {
                pruned += 1;
                continue;
            };

            let remaining = cand.exposure() - 1;
            let mut ancestor_patterns = Vec::with_capacity(remaining);
            let mut cur = cand.parent().expect("candidates have size >= 2");
            ancestor_patterns.push(cur.clone());
            for _ in 1..remaining {
                cur = cur.parent().expect("exposure never walks past the last state");
                ancestor_patterns.push(cur.clone());
            }
            let ancestor_lists: Vec<&EvlList> = ancestor_patterns
                .iter()
                .map(|p| store.get(p).expect("ancestor lists stay reachable"))
                .collect();

            let mut verified = EvlList::default();
            for entry in &potential.records {
                let mss = &d.record(entry.record).mss;
                let rec_levels: Vec<&RecordEvl> = ancestor_lists
                    .iter()
                    .map(|l| l.record(entry.record).expect("linked records exist at every level"))
                    .collect();
                let mut pos = Vec::new();
                let mut ind = Vec::new();
                for (i, &p) in entry.pos.iter().enumerate() {
                    let mut chosen = vec![p];
                    if let Some(vi) =
                        search(&rec_levels, mss, 0, entry.ind[i], &mut chosen, cand, remaining)
                    {
                        pos.push(p);
                        ind.push(vi);
                    }
                }
                if !pos.is_empty() {
                    verified.records.push(RecordEvl { record: entry.record, pos, ind });
                }
            }

            let ids = verified.ids();
            let supports = d.support_counts(&ids);
            if is_frequent(&supports, d.class_counts(), cfg.theta) {
                accepted.push((cand.clone(), verified));
            }
        }
        if timed_out {
            break Completion::TimeLimit;
        }

        size += 1;
        levels_out.push(LevelStats {
            size,
            candidates: candidates.len() as u64,
            pruned,
            ftps: accepted.len() as u64,
            millis: level_start.elapsed().as_millis() as u64,
        });
        frontier.clear();
        for (p, list) in accepted {
            memory_bytes += list.bytes();
            patterns.push(MinedPattern {
                pattern: p.clone(),
                supports: d.support_counts(&list.ids()),
                ids: list.ids(),
            });
            store.insert(p.clone(), list);
            frontier.push(p);
        }
        if !cfg.retain_evls {
            store.retain_reachable(&frontier);
        }
    };

    Ok(EvlMineOutput {
        result: MiningResult {
            patterns,
            levels: levels_out,
            memory_bytes,
            completion,
            deepest_complete_size: size,
        },
        store,
    })
}
