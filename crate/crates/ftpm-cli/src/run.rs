//! Command implementations behind the CLI surface.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, ensure, Context, Result};
use clap::Args;
use ftpm_core::abstraction::SegmentationParams;
use ftpm_core::{evl, ftpm, Dataset, MiningConfig, MiningResult};

use crate::prepare::{self, AbstractionOptions};
use crate::{native, report, synth, ucr};

#[derive(Args, Debug)]
pub struct MineArgs {
    /// Input data file
    #[arg(long)]
    pub input: PathBuf,
    /// Input layout: auto (by extension), ucr, or mss
    #[arg(long, default_value = "auto")]
    pub format: String,
    /// Column separator for ucr input: auto, tab, comma, or space
    #[arg(long, default_value = "auto")]
    pub delimiter: String,
    /// Minimum per-class support ratio in [0, 1]
    #[arg(long)]
    pub theta: f64,
    /// Stop after mining patterns of this size
    #[arg(long = "max-k")]
    pub max_k: Option<usize>,
    /// Which miner to run: ftpm, evl, or both (differential)
    #[arg(long, default_value = "both")]
    pub algorithm: String,
    /// Abstractions for numeric input: value and/or trend, comma-separated
    #[arg(long, default_value = "value")]
    pub abstraction: String,
    /// Four band percentiles, comma-separated
    #[arg(long, default_value = "0.10,0.25,0.75,0.90")]
    pub percentiles: String,
    /// Per-sample residual budget for trend segmentation
    #[arg(long = "seg-max-error", default_value_t = 0.2)]
    pub seg_max_error: f64,
    /// Slope magnitude under which a trend segment counts as steady
    #[arg(long = "steady-slope", default_value_t = 0.1)]
    pub steady_slope: f64,
    /// Wall-clock budget in seconds; partial levels are discarded
    #[arg(long = "time-limit-s")]
    pub time_limit_s: Option<f64>,
    /// Write the pattern listing here
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write run statistics (JSON) here
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Keep every vertical list alive instead of releasing unreachable ones
    #[arg(long = "retain-evl")]
    pub retain_evl: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Seed for the deterministic generator
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of records
    #[arg(long, default_value_t = 20)]
    pub records: usize,
    /// Number of variables (named v0, v1, …)
    #[arg(long, default_value_t = 2)]
    pub variables: usize,
    /// Symbols drawn per variable (1..=5)
    #[arg(long, default_value_t = 3)]
    pub alphabet: usize,
    /// Background intervals per record
    #[arg(long, default_value_t = 10)]
    pub intervals: usize,
    /// Number of classes (labels c0, c1, …)
    #[arg(long, default_value_t = 2)]
    pub classes: usize,
    /// Pattern key to realize inside class-c0 records
    #[arg(long)]
    pub plant: Option<String>,
    /// Share of class-c0 records that receive the planted pattern
    #[arg(long = "plant-rate", default_value_t = 0.8)]
    pub plant_rate: f64,
    /// Where to write the generated record file
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct DiffArgs {
    /// First pattern listing
    pub left: PathBuf,
    /// Second pattern listing
    pub right: PathBuf,
}

fn parse_percentiles(spec: &str) -> Result<[f64; 4]> {
    let parts: Vec<f64> = spec
        .split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad percentile {t:?}")))
        .collect::<Result<_>>()?;
    ensure!(parts.len() == 4, "need exactly four percentiles, got {}", parts.len());
    Ok([parts[0], parts[1], parts[2], parts[3]])
}

fn load_dataset(args: &MineArgs) -> Result<Dataset> {
    let format = match args.format.as_str() {
        "auto" => {
            if args.input.extension().is_some_and(|e| e == "json") {
                "mss"
            } else {
                "ucr"
            }
        }
        other => other,
    };
    match format {
        "mss" => native::load(&args.input),
        "ucr" => {
            let delim = ucr::Delimiter::parse(&args.delimiter)?;
            let rows = ucr::load(&args.input, delim)?;
            let (value, trend) = AbstractionOptions::parse_kinds(&args.abstraction)?;
            let opts = AbstractionOptions {
                value,
                trend,
                percentiles: parse_percentiles(&args.percentiles)?,
                segmentation: SegmentationParams::new(args.seg_max_error, args.steady_slope)?,
            };
            prepare::abstract_records(&prepare::from_univariate(rows)?, &opts)
        }
        other => bail!("unknown format {other:?} (expected auto, ucr, or mss)"),
    }
}

fn build_config(args: &MineArgs) -> Result<MiningConfig> {
    let mut cfg = MiningConfig::new(args.theta)?;
    if let Some(k) = args.max_k {
        cfg = cfg.with_max_size(k)?;
    }
    if let Some(secs) = args.time_limit_s {
        ensure!(secs.is_finite() && secs >= 0.0, "time limit must be a non-negative number");
        cfg = cfg.with_time_limit(Duration::from_secs_f64(secs));
    }
    if args.retain_evl {
        cfg = cfg.with_retained_evls();
    }
    cfg.validate()?;
    Ok(cfg)
}

type PatternFingerprint = BTreeSet<(String, Vec<u32>, Vec<u32>)>;

fn fingerprint(r: &MiningResult, d: &Dataset, through_size: usize) -> PatternFingerprint {
    r.patterns
        .iter()
        .filter(|m| m.pattern.size() <= through_size)
        .map(|m| {
            (ftpm_core::pattern_key(&m.pattern, d.vars()), m.supports.clone(), m.ids.clone())
        })
        .collect()
}

pub fn cmd_mine(args: &MineArgs) -> Result<i32> {
    let d = load_dataset(args)?;
    let cfg = build_config(args)?;
    println!(
        "loaded {} records, {} classes, {} variables",
        d.len(),
        d.num_classes(),
        d.vars().len()
    );

    match args.algorithm.as_str() {
        "ftpm" => {
            let r = ftpm::mine_ftpm(&d, &cfg)?;
            print!("{}", report::human_table("ftpm", &r));
            if let Some(path) = &args.output {
                report::write_lines(path, &report::pattern_lines(&r, &d))?;
            }
            if let Some(path) = &args.stats {
                report::write_json(path, &report::stats_json("ftpm", &r, &d, &cfg))?;
            }
            Ok(0)
        }
        "evl" => {
            let r = evl::mine_evl(&d, &cfg)?.result;
            print!("{}", report::human_table("evl", &r));
            if let Some(path) = &args.output {
                report::write_lines(path, &report::pattern_lines(&r, &d))?;
            }
            if let Some(path) = &args.stats {
                report::write_json(path, &report::stats_json("evl", &r, &d, &cfg))?;
            }
            Ok(0)
        }
        "both" => {
            let b = ftpm::mine_ftpm(&d, &cfg)?;
            let e = evl::mine_evl(&d, &cfg)?.result;
            print!("{}", report::human_table("ftpm", &b));
            print!("{}", report::human_table("evl", &e));

            // Under a wall-clock budget the two runs may complete different
            // depths; the differential claim covers the shared depth.
            let depth = b.deepest_complete_size.min(e.deepest_complete_size);
            let truncated =
                depth < b.deepest_complete_size || depth < e.deepest_complete_size;
            let same = fingerprint(&b, &d, depth) == fingerprint(&e, &d, depth);
            if truncated {
                println!(
                    "verdict: {} (compared through size {depth})",
                    if same { "identical" } else { "different" }
                );
            } else {
                println!("verdict: {}", if same { "identical" } else { "different" });
            }

            if let Some(path) = &args.output {
                report::write_lines(path, &report::pattern_lines(&b, &d))?;
            }
            if let Some(path) = &args.stats {
                let combined = serde_json::json!({
                    "baseline": report::stats_json("ftpm", &b, &d, &cfg),
                    "evl": report::stats_json("evl", &e, &d, &cfg),
                    "verdict": if same { "identical" } else { "different" },
                    "compared_through_size": depth,
                });
                report::write_json(path, &combined)?;
            }
            Ok(if same { 0 } else { 1 })
        }
        other => bail!("unknown algorithm {other:?} (expected ftpm, evl, or both)"),
    }
}

pub fn cmd_gen(args: &GenArgs) -> Result<i32> {
    let cfg = synth::SynthConfig {
        seed: args.seed,
        records: args.records,
        variables: args.variables,
        alphabet: args.alphabet,
        intervals: args.intervals,
        classes: args.classes,
        plant: args.plant.clone(),
        plant_rate: args.plant_rate,
    };
    let out = synth::generate(&cfg)?;
    native::save(&args.output, &out.dataset)?;
    println!(
        "wrote {} records ({} planted) to {}",
        out.dataset.len(),
        out.planted_records,
        args.output.display()
    );
    Ok(0)
}

pub fn cmd_diff(args: &DiffArgs) -> Result<i32> {
    let a = report::read_lines(&args.left)?;
    let b = report::read_lines(&args.right)?;
    let (same, details) = diff_named(&a, &b, args);
    for line in &details {
        println!("{line}");
    }
    println!("verdict: {}", if same { "identical" } else { "different" });
    Ok(if same { 0 } else { 1 })
}

fn diff_named(a: &[String], b: &[String], args: &DiffArgs) -> (bool, Vec<String>) {
    let name_a = args.left.display().to_string();
    let name_b = args.right.display().to_string();
    report::diff_lines(a, b, &name_a, &name_b)
}
