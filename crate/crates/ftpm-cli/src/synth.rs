//! Seeded synthetic dataset generator. Records are random background
//! intervals; optionally a chosen pattern is realized inside a share of the
//! first class's records so its frequency there is known by construction.

use anyhow::{bail, ensure, Context, Result};
use ftpm_core::{
    oracle, parse_pattern_key, Dataset, Mss, StateInterval, Symbol, TemporalPattern,
    TemporalRelation, VariableTable,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub seed: u64,
    pub records: usize,
    pub variables: usize,
    pub alphabet: usize,
    pub intervals: usize,
    pub classes: usize,
    pub plant: Option<String>,
    pub plant_rate: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 1,
            records: 20,
            variables: 2,
            alphabet: 3,
            intervals: 10,
            classes: 2,
            plant: None,
            plant_rate: 0.8,
        }
    }
}

#[derive(Debug)]
pub struct SynthOutput {
    pub dataset: Dataset,
    pub planted_pattern: Option<TemporalPattern>,
    pub planted_records: usize,
}

/// Realize `p` as intervals after tick `base`: state i starts at
/// `base + 10·i` and ends at `base + 10·mᵢ + 5`, where `mᵢ` is the last
/// column state i co-occurs with (or i itself). Row coherence makes the
/// co-occur columns of a row contiguous, so this meets every matrix entry.
fn realize(p: &TemporalPattern, base: i64) -> Vec<StateInterval> {
    let k = p.size();
    (1..=k)
        .map(|i| {
            let m = (i + 1..=k)
                .filter(|&j| p.rel(i, j) == TemporalRelation::CoOccur)
                .max()
                .unwrap_or(i);
            let s = p.states()[i - 1];
            StateInterval::new(s.var, s.symbol, base + 10 * i as i64, base + 10 * m as i64 + 5)
                .expect("realized bounds are ordered")
        })
        .collect()
}

fn other_symbol(avoid: &[Symbol]) -> Symbol {
    Symbol::VALUES
        .iter()
        .chain(Symbol::TRENDS.iter())
        .copied()
        .find(|s| !avoid.contains(s))
        .expect("eight symbols always leave a spare")
}

pub fn generate(cfg: &SynthConfig) -> Result<SynthOutput> {
    ensure!(cfg.records >= 1, "need at least one record");
    ensure!(cfg.variables >= 1, "need at least one variable");
    ensure!(
        (1..=Symbol::VALUES.len()).contains(&cfg.alphabet),
        "alphabet must pick 1..=5 symbols"
    );
    ensure!(cfg.classes >= 1, "need at least one class");
    ensure!(
        cfg.plant_rate.is_finite() && (0.0..=1.0).contains(&cfg.plant_rate),
        "plant rate must lie in [0, 1]"
    );

    let mut vars = VariableTable::new();
    for v in 0..cfg.variables {
        vars.intern(&format!("v{v}")).unwrap();
    }
    let plant: Option<TemporalPattern> = match &cfg.plant {
        None => None,
        Some(key) => {
            let p = parse_pattern_key(key, &mut vars)
                .with_context(|| format!("plant pattern {key:?}"))?;
            if vars.len() != cfg.variables {
                bail!("plant pattern {key:?} names variables outside v0..v{}", cfg.variables - 1);
            }
            for i in 1..=p.size() {
                for j in (i + 1)..=p.size() {
                    let same_var = p.states()[i - 1].var == p.states()[j - 1].var;
                    if same_var && p.rel(i, j) == TemporalRelation::CoOccur {
                        bail!(
                            "plant pattern {key:?} needs two intervals of one variable to \
                             overlap, which no valid record allows"
                        );
                    }
                }
            }
            Some(p)
        }
    };

    let class_of = |r: usize| r % cfg.classes;
    let class0_count = (0..cfg.records).filter(|&r| class_of(r) == 0).count();
    let planted_records = match &plant {
        Some(_) => (cfg.plant_rate * class0_count as f64).round() as usize,
        None => 0,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut labeled: Vec<(Mss, String)> = Vec::with_capacity(cfg.records);
    let mut planted_so_far = 0usize;
    for r in 0..cfg.records {
        let mut intervals: Vec<StateInterval> = Vec::new();
        let mut cursor = vec![0i64; cfg.variables];
        let mut prev_sym: Vec<Option<usize>> = vec![None; cfg.variables];
        for _ in 0..cfg.intervals {
            let v = rng.gen_range(0..cfg.variables);
            let mut sym = rng.gen_range(0..cfg.alphabet);
            if prev_sym[v] == Some(sym) {
                sym = (sym + 1) % cfg.alphabet;
            }
            if prev_sym[v] == Some(sym) {
                continue; // one-symbol alphabet cannot extend this variable
            }
            let start = cursor[v] + rng.gen_range(1..=4);
            let end = start + rng.gen_range(0..=5);
            let var = vars.get(&format!("v{v}")).unwrap();
            intervals.push(StateInterval::new(var, Symbol::VALUES[sym], start, end).unwrap());
            cursor[v] = end;
            prev_sym[v] = Some(sym);
        }

        let wants_plant = plant.is_some() && class_of(r) == 0 && planted_so_far < planted_records;
        if wants_plant {
            let p = plant.as_ref().unwrap();
            let base = intervals.iter().map(|iv| iv.end).max().unwrap_or(0);
            let realized = realize(p, base);

            // Mend same-variable seams: equal symbols may not sit adjacent,
            // so wedge a one-tick spacer interval between them.
            let mut spacers: Vec<StateInterval> = Vec::new();
            for v in 0..cfg.variables {
                let var = vars.get(&format!("v{v}")).unwrap();
                let mine: Vec<&StateInterval> =
                    realized.iter().filter(|iv| iv.var == var).collect();
                if let Some(first) = mine.first() {
                    let last_bg = intervals.iter().rev().find(|iv| iv.var == var);
                    if let Some(bg) = last_bg {
                        if bg.symbol == first.symbol {
                            let sym = other_symbol(&[bg.symbol]);
                            spacers
                                .push(StateInterval::new(var, sym, base + 5, base + 5).unwrap());
                        }
                    }
                }
                for w in mine.windows(2) {
                    if w[0].symbol == w[1].symbol {
                        let sym = other_symbol(&[w[0].symbol]);
                        let at = w[0].end + 2;
                        spacers.push(StateInterval::new(var, sym, at, at).unwrap());
                    }
                }
            }
            intervals.extend(realized);
            intervals.extend(spacers);
            planted_so_far += 1;
        }

        intervals.sort_by_key(|iv| iv.start);
        let mss = Mss::new(intervals).with_context(|| format!("generated record {r}"))?;
        if wants_plant {
            let p = plant.as_ref().unwrap();
            ensure!(oracle::contains(&mss, p), "planted pattern missing from record {r}");
        }
        labeled.push((mss, format!("c{}", class_of(r))));
    }

    Ok(SynthOutput {
        dataset: Dataset::new(vars, labeled),
        planted_pattern: plant,
        planted_records: planted_so_far,
    })
}
