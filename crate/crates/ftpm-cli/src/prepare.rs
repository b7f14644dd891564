//! Turn labeled numeric series into a mining-ready dataset: thresholds are
//! pooled per base variable across all records, then each record's series
//! are banded and/or segmented and assembled into one state sequence.

use anyhow::{bail, Context, Result};
use ftpm_core::abstraction::{
    build_mss, compute_thresholds, trend_abstract, value_abstract, RawSeries, SegmentationParams,
    SymbolSpan,
};
use ftpm_core::{Dataset, Mss, VariableTable};

#[derive(Debug, Clone)]
pub struct AbstractionOptions {
    pub value: bool,
    pub trend: bool,
    pub percentiles: [f64; 4],
    pub segmentation: SegmentationParams,
}

impl AbstractionOptions {
    /// Parse the comma-separated selection, e.g. "value" or "value,trend".
    pub fn parse_kinds(spec: &str) -> Result<(bool, bool)> {
        let mut value = false;
        let mut trend = false;
        for kind in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match kind {
                "value" => value = true,
                "trend" => trend = true,
                other => bail!("unknown abstraction {other:?} (expected value and/or trend)"),
            }
        }
        if !value && !trend {
            bail!("at least one abstraction kind is required");
        }
        Ok((value, trend))
    }
}

/// Abstract one base series under a variable called `<name>.val` and/or
/// `<name>.trend`, using thresholds computed elsewhere (usually pooled).
fn abstract_series(
    series: &RawSeries,
    thresholds: &[f64; 4],
    opts: &AbstractionOptions,
) -> Vec<(String, Vec<SymbolSpan>)> {
    let mut out = Vec::new();
    if opts.value {
        out.push((format!("{}.val", series.name()), value_abstract(series, thresholds)));
    }
    if opts.trend {
        out.push((format!("{}.trend", series.name()), trend_abstract(series, &opts.segmentation)));
    }
    out
}

/// Abstract a whole dataset of labeled records, each a bundle of named
/// series. Threshold pooling is per base name across every record.
pub fn abstract_records(
    records: &[(String, Vec<RawSeries>)],
    opts: &AbstractionOptions,
) -> Result<Dataset> {
    let mut names: Vec<String> = Vec::new();
    for (_, bundle) in records {
        for s in bundle {
            if !names.iter().any(|n| n == s.name()) {
                names.push(s.name().to_string());
            }
        }
    }
    let mut thresholds = Vec::with_capacity(names.len());
    for name in &names {
        let pool: Vec<f64> = records
            .iter()
            .flat_map(|(_, bundle)| bundle.iter().filter(|s| s.name() == name))
            .flat_map(|s| s.samples().iter().map(|&(_, v)| v))
            .collect();
        let t = compute_thresholds(&pool, &opts.percentiles)
            .with_context(|| format!("thresholds for variable {name:?}"))?;
        thresholds.push(t);
    }

    let mut vars = VariableTable::new();
    let mut labeled: Vec<(Mss, String)> = Vec::with_capacity(records.len());
    for (i, (class, bundle)) in records.iter().enumerate() {
        let mut per_var: Vec<(String, Vec<SymbolSpan>)> = Vec::new();
        for s in bundle {
            let t = &thresholds[names.iter().position(|n| n == s.name()).unwrap()];
            per_var.extend(abstract_series(s, t, opts));
        }
        let mss = build_mss(&mut vars, &per_var)
            .with_context(|| format!("record {} after abstraction", i + 1))?;
        labeled.push((mss, class.clone()));
    }
    Ok(Dataset::new(vars, labeled))
}

/// Lift univariate rows (class, samples) into single-series bundles named "s".
pub fn from_univariate(rows: Vec<(String, Vec<f64>)>) -> Result<Vec<(String, Vec<RawSeries>)>> {
    rows.into_iter()
        .enumerate()
        .map(|(i, (class, values))| {
            let samples = values.into_iter().enumerate().map(|(t, v)| (t as i64, v)).collect();
            let series = RawSeries::new("s", samples)
                .with_context(|| format!("record {}", i + 1))?;
            Ok((class, vec![series]))
        })
        .collect()
}
