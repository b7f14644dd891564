//! Randomized invariants: pattern algebra, containment, abstraction shape,
//! and agreement of the two miners with the brute-force reference.

use std::collections::{BTreeMap, BTreeSet};

use ftpm_core::abstraction::{
    build_mss, compute_thresholds, trend_abstract, value_abstract, RawSeries, SegmentationParams,
    DEFAULT_PERCENTILES,
};
use ftpm_core::model::relation;
use ftpm_core::{
    candidate, evl, ftpm, oracle, pattern_key, Dataset, MiningConfig, Mss, Pos, State,
    StateInterval, Symbol, TemporalPattern, TemporalRelation, VariableTable,
};
use proptest::prelude::*;

const SYMS: [Symbol; 3] = [Symbol::Low, Symbol::Normal, Symbol::High];

/// Raw per-record layout: for each variable, (gap, length, symbol pick) runs.
type RawRecord = Vec<Vec<(i64, i64, usize)>>;

fn materialize(vars: &mut VariableTable, raw: &RawRecord) -> Mss {
    let mut intervals = Vec::new();
    for (vi, chain) in raw.iter().enumerate() {
        let var = vars.intern(&format!("v{vi}")).unwrap();
        let mut cursor = 0i64;
        let mut prev: Option<usize> = None;
        for &(gap, len, sym) in chain {
            let mut si = sym % SYMS.len();
            if prev == Some(si) {
                si = (si + 1) % SYMS.len();
            }
            let start = cursor + gap;
            let end = start + len;
            intervals.push(StateInterval::new(var, SYMS[si], start, end).unwrap());
            cursor = end;
            prev = Some(si);
        }
    }
    intervals.sort_by_key(|iv| iv.start);
    Mss::new(intervals).unwrap()
}

fn arb_raw_record(max_ivs: usize) -> impl Strategy<Value = RawRecord> {
    proptest::collection::vec(
        proptest::collection::vec((1i64..=3, 0i64..=3, 0usize..SYMS.len()), 0..=max_ivs),
        1..=2,
    )
}

fn arb_mss(max_ivs: usize) -> impl Strategy<Value = (VariableTable, Mss)> {
    arb_raw_record(max_ivs).prop_map(|raw| {
        let mut vars = VariableTable::new();
        let z = materialize(&mut vars, &raw);
        (vars, z)
    })
}

/// Read the pattern realized by a strictly increasing position pick.
fn pattern_at(z: &Mss, positions: &[Pos]) -> TemporalPattern {
    let states: Vec<State> = positions.iter().map(|&p| z.interval_at(p).state()).collect();
    let mut rels = Vec::new();
    for i in 0..positions.len() {
        for j in (i + 1)..positions.len() {
            rels.push(
                relation(z.interval_at(positions[i]), z.interval_at(positions[j])).unwrap(),
            );
        }
    }
    // Realized matrices must always be coherent.
    TemporalPattern::new(states, rels).unwrap()
}

fn arb_pattern(max_k: usize) -> impl Strategy<Value = (VariableTable, TemporalPattern)> {
    let all: Vec<Symbol> = Symbol::VALUES.iter().chain(Symbol::TRENDS.iter()).copied().collect();
    let n_syms = all.len();
    (1..=max_k)
        .prop_flat_map(move |k| {
            (
                proptest::collection::vec((0usize..3, 0usize..n_syms), k),
                proptest::collection::vec(0usize..=max_k, k.saturating_sub(1)),
            )
        })
        .prop_map(move |(picks, row_cos)| {
            let mut vars = VariableTable::new();
            let ids: Vec<_> = (0..3).map(|i| vars.intern(&format!("v{i}")).unwrap()).collect();
            let states: Vec<State> =
                picks.iter().map(|&(v, s)| State::new(ids[v], all[s])).collect();
            let k = states.len();
            let mut rels = Vec::new();
            for (row, &pick) in row_cos.iter().enumerate() {
                let row_len = k - 1 - row;
                let co = pick % (row_len + 1);
                for j in 0..row_len {
                    rels.push(if j < co {
                        TemporalRelation::CoOccur
                    } else {
                        TemporalRelation::Before
                    });
                }
            }
            (vars, TemporalPattern::new(states, rels).unwrap())
        })
}

/// Direct restatement of the chain definition, as a cross-check.
fn naive_chain(p: &TemporalPattern) -> usize {
    let k = p.size();
    'outer: for c in 1..k {
        for i in 1..=c {
            for j in (c + 1)..=k {
                if p.rel(i, j) != TemporalRelation::Before {
                    continue 'outer;
                }
            }
        }
        return c;
    }
    k
}

proptest! {
    #[test]
    fn realized_patterns_are_contained_and_inherited(
        (  _vars, z) in arb_mss(5),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..=4),
    ) {
        prop_assume!(!z.is_empty());
        let positions: Vec<Pos> = picks
            .iter()
            .map(|ix| (ix.index(z.len()) + 1) as Pos)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let p = pattern_at(&z, &positions);
        prop_assert!(oracle::contains(&z, &p));

        if p.size() >= 2 {
            let own = oracle::starting_positions(&z, &p);
            for (idx, sub) in p.subpatterns().unwrap().into_iter().enumerate() {
                prop_assert!(oracle::contains(&z, &sub));
                if idx >= 1 {
                    // Dropping a non-first state keeps the first state, so
                    // every start of the whole pattern starts the subpattern.
                    let sub_starts: BTreeSet<Pos> =
                        oracle::starting_positions(&z, &sub).into_iter().collect();
                    for s in &own {
                        prop_assert!(sub_starts.contains(s));
                    }
                }
            }
        }
    }

    #[test]
    fn keys_round_trip((vars, p) in arb_pattern(5)) {
        let key = pattern_key(&p, &vars);
        let mut same = vars.clone();
        prop_assert_eq!(ftpm_core::parse_pattern_key(&key, &mut same).unwrap(), p.clone());
        let mut fresh = VariableTable::new();
        let q = ftpm_core::parse_pattern_key(&key, &mut fresh).unwrap();
        prop_assert_eq!(pattern_key(&q, &fresh), key);
    }

    #[test]
    fn drop_state_commutes((_vars, p) in arb_pattern(5), a in 1usize..=5, b in 1usize..=5) {
        prop_assume!(p.size() >= 3);
        let (j1, j2) = (a.min(b), a.max(b));
        prop_assume!(j1 < j2 && j2 <= p.size());
        let left = p.drop_state(j2).unwrap().drop_state(j1).unwrap();
        let right = p.drop_state(j1).unwrap().drop_state(j2 - 1).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn chain_matches_naive_definition((_vars, p) in arb_pattern(6)) {
        let c = p.chain_length();
        prop_assert_eq!(c, naive_chain(&p));
        prop_assert!(1 <= c && c <= p.size());
        let e = p.exposure();
        if c < p.size() {
            prop_assert_eq!(e, c + 1);
        } else {
            prop_assert_eq!(e, p.size());
        }
    }

    #[test]
    fn candidates_extend_each_base((vars, p) in arb_pattern(4), sym in 0usize..8) {
        let all: Vec<Symbol> =
            Symbol::VALUES.iter().chain(Symbol::TRENDS.iter()).copied().collect();
        let s = State::new(vars.get("v0").unwrap(), all[sym]);
        let cands = candidate::create_candidates(std::slice::from_ref(&p), &[s]);
        prop_assert_eq!(cands.len(), p.size() + 1);
        let mut keys = BTreeSet::new();
        for c in &cands {
            prop_assert_eq!(c.size(), p.size() + 1);
            prop_assert_eq!(c.first_state(), s);
            prop_assert_eq!(c.parent().unwrap(), p.clone());
            keys.insert(pattern_key(c, &vars));
        }
        prop_assert_eq!(keys.len(), cands.len());
    }

    #[test]
    fn value_spans_tile_the_series(
        raw in proptest::collection::vec((1i64..=3, -50i32..=50), 1..=12),
    ) {
        let mut tick = 0i64;
        let samples: Vec<(i64, f64)> = raw
            .iter()
            .map(|&(gap, v)| {
                tick += gap;
                (tick, f64::from(v) / 4.0)
            })
            .collect();
        let series = RawSeries::new("s", samples.clone()).unwrap();
        let values: Vec<f64> = samples.iter().map(|&(_, v)| v).collect();
        let t = compute_thresholds(&values, &DEFAULT_PERCENTILES).unwrap();
        prop_assert!(t[0] <= t[1] && t[1] <= t[2] && t[2] <= t[3]);

        let spans = value_abstract(&series, &t);
        prop_assert_eq!(spans.first().unwrap().start, samples[0].0);
        prop_assert_eq!(spans.last().unwrap().end, samples.last().unwrap().0);
        for w in spans.windows(2) {
            prop_assert!(w[0].end < w[1].start);
            prop_assert_ne!(w[0].symbol, w[1].symbol);
        }
        for &(tk, v) in &samples {
            let covering: Vec<_> =
                spans.iter().filter(|s| s.start <= tk && tk <= s.end).collect();
            prop_assert_eq!(covering.len(), 1);
            prop_assert_eq!(covering[0].symbol, ftpm_core::abstraction::band(v, &t));
        }
    }

    #[test]
    fn trend_spans_tile_the_series(
        raw in proptest::collection::vec((1i64..=3, -50i32..=50), 1..=10),
        max_error in prop_oneof![Just(0.0), Just(0.5), Just(10.0)],
    ) {
        let mut tick = 0i64;
        let samples: Vec<(i64, f64)> = raw
            .iter()
            .map(|&(gap, v)| {
                tick += gap;
                (tick, f64::from(v) / 4.0)
            })
            .collect();
        let series = RawSeries::new("s", samples.clone()).unwrap();
        let params = SegmentationParams::new(max_error, 0.25).unwrap();
        let spans = trend_abstract(&series, &params);
        prop_assert_eq!(spans.first().unwrap().start, samples[0].0);
        prop_assert_eq!(spans.last().unwrap().end, samples.last().unwrap().0);
        for w in spans.windows(2) {
            prop_assert!(w[0].end < w[1].start);
            prop_assert_ne!(w[0].symbol, w[1].symbol);
        }
    }

    #[test]
    fn exact_lines_become_one_trend_span(
        gaps in proptest::collection::vec(1i64..=3, 2..=10),
        slope_pick in 0usize..3,
        intercept in -5i64..=5,
    ) {
        let slopes = [-1.0, 0.0, 1.0];
        let expected = [Symbol::Decreasing, Symbol::Steady, Symbol::Increasing];
        let slope = slopes[slope_pick];
        let mut tick = 0i64;
        let samples: Vec<(i64, f64)> = gaps
            .iter()
            .map(|&g| {
                tick += g;
                (tick, slope * tick as f64 + intercept as f64)
            })
            .collect();
        let series = RawSeries::new("s", samples).unwrap();
        let params = SegmentationParams::new(0.0, 0.25).unwrap();
        let spans = trend_abstract(&series, &params);
        prop_assert_eq!(spans.len(), 1);
        prop_assert_eq!(spans[0].symbol, expected[slope_pick]);
    }

    #[test]
    fn assembly_ignores_variable_order(
        raw_a in proptest::collection::vec((1i64..=3, -50i32..=50), 1..=8),
        raw_b in proptest::collection::vec((1i64..=3, -50i32..=50), 1..=8),
    ) {
        let build = |raw: &[(i64, i32)], name: &str| {
            let mut tick = 0i64;
            let samples: Vec<(i64, f64)> = raw
                .iter()
                .map(|&(gap, v)| {
                    tick += gap;
                    (tick, f64::from(v) / 4.0)
                })
                .collect();
            let series = RawSeries::new(name, samples).unwrap();
            let values: Vec<f64> = series.samples().iter().map(|&(_, v)| v).collect();
            let t = compute_thresholds(&values, &DEFAULT_PERCENTILES).unwrap();
            value_abstract(&series, &t)
        };
        let spans_a = build(&raw_a, "a");
        let spans_b = build(&raw_b, "b");
        let fingerprint = |order: &[(String, Vec<ftpm_core::abstraction::SymbolSpan>)]| {
            let mut vars = VariableTable::new();
            let z = build_mss(&mut vars, order).unwrap();
            z.intervals()
                .iter()
                .map(|iv| (iv.start, iv.end, vars.name(iv.var).to_string(), iv.symbol))
                .collect::<Vec<_>>()
        };
        let fwd = fingerprint(&[("a".into(), spans_a.clone()), ("b".into(), spans_b.clone())]);
        let rev = fingerprint(&[("b".into(), spans_b), ("a".into(), spans_a)]);
        prop_assert_eq!(fwd, rev);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn miners_agree_with_brute_force(
        raws in proptest::collection::vec(arb_raw_record(4), 1..=4),
        classes in 1usize..=2,
        theta in prop_oneof![Just(0.4), Just(0.7), Just(1.0)],
    ) {
        let mut vars = VariableTable::new();
        let labeled: Vec<(Mss, String)> = raws
            .iter()
            .enumerate()
            .map(|(i, raw)| (materialize(&mut vars, raw), format!("c{}", i % classes)))
            .collect();
        let d = Dataset::new(vars, labeled);
        let cfg = MiningConfig::new(theta).unwrap().with_max_size(3).unwrap();

        let base = ftpm::mine_ftpm(&d, &cfg).unwrap();
        let retained = evl::mine_evl(&d, &cfg.clone().with_retained_evls()).unwrap();
        let released = evl::mine_evl(&d, &cfg).unwrap();

        let summarize = |r: &ftpm_core::MiningResult| {
            r.patterns
                .iter()
                .map(|m| (pattern_key(&m.pattern, d.vars()), (m.supports.clone(), m.ids.clone())))
                .collect::<BTreeMap<_, _>>()
        };
        let b = summarize(&base);
        let e = summarize(&retained.result);
        prop_assert_eq!(&b, &e);
        prop_assert_eq!(&b, &summarize(&released.result));
        // Vertical lists add pos/ind entries on top of the id slots the
        // baseline keeps, so the estimates relate but never dip below.
        prop_assert!(released.result.memory_bytes >= base.memory_bytes);
        prop_assert_eq!(retained.result.memory_bytes, released.result.memory_bytes);

        let reference: BTreeMap<String, Vec<u32>> = oracle::mine_by_enumeration(&d, theta, 3)
            .into_iter()
            .map(|(p, supports)| (pattern_key(&p, d.vars()), supports))
            .collect();
        let mined_supports: BTreeMap<String, Vec<u32>> =
            b.iter().map(|(k, (s, _))| (k.clone(), s.clone())).collect();
        prop_assert_eq!(mined_supports, reference);

        let level_shape = |r: &ftpm_core::MiningResult| {
            r.levels
                .iter()
                .map(|l| (l.size, l.candidates, l.pruned, l.ftps))
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(level_shape(&retained.result), level_shape(&released.result));

        // Stored lists in retain mode are exactly the verified starts, with
        // links pointing at the first later parent start.
        for p in retained.store.patterns() {
            let list = retained.store.get(p).unwrap();
            let mut seen: Vec<u32> = Vec::new();
            for entry in &list.records {
                seen.push(entry.record);
                let rec = d.record(entry.record);
                prop_assert_eq!(
                    entry.pos.clone(),
                    oracle::starting_positions(&rec.mss, p),
                    "pos list must equal reference starts"
                );
                prop_assert!(entry.pos.windows(2).all(|w| w[0] < w[1]));
                if p.size() == 1 {
                    prop_assert!(entry.ind.is_empty());
                } else {
                    prop_assert_eq!(entry.ind.len(), entry.pos.len());
                    let parent = p.parent().unwrap();
                    let plist = retained.store.get(&parent).unwrap();
                    let pentry = plist.record(entry.record).unwrap();
                    for (i, &ind) in entry.ind.iter().enumerate() {
                        prop_assert!(ind >= 1 && (ind as usize) <= pentry.pos.len());
                        prop_assert!(pentry.pos[(ind - 1) as usize] > entry.pos[i]);
                    }
                }
            }
            prop_assert!(seen.windows(2).all(|w| w[0] < w[1]));
            // No record with an occurrence may be missing from the list.
            for (id, rec) in d.records().iter().enumerate() {
                let has = !oracle::starting_positions(&rec.mss, p).is_empty();
                prop_assert_eq!(seen.contains(&(id as u32)), has);
            }
        }
    }
}
