//! On-disk state-sequence format: JSON records carrying a class label and a
//! list of `[variable, symbol, start, end]` intervals. Interval order in the
//! file is free; loading sorts canonically and validates structure.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ftpm_core::abstraction::{build_mss, SymbolSpan};
use ftpm_core::{Dataset, Mss, Symbol, VariableTable};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct NativeFile {
    pub records: Vec<NativeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NativeRecord {
    pub class: String,
    pub intervals: Vec<(String, String, i64, i64)>,
}

pub fn load(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let file: NativeFile = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a valid record file", path.display()))?;
    dataset_from(file)
}

pub fn dataset_from(file: NativeFile) -> Result<Dataset> {
    let mut vars = VariableTable::new();
    let mut labeled: Vec<(Mss, String)> = Vec::with_capacity(file.records.len());
    for (i, rec) in file.records.iter().enumerate() {
        // Group spans per variable so assembly can check each variable's
        // separation and alternation; assembly re-sorts globally.
        let mut per_var: Vec<(String, Vec<SymbolSpan>)> = Vec::new();
        for (var, sym, start, end) in &rec.intervals {
            let Some(symbol) = Symbol::from_token(sym) else {
                bail!("record {}: unknown symbol token {:?}", i + 1, sym);
            };
            let span = SymbolSpan { symbol, start: *start, end: *end };
            match per_var.iter_mut().find(|(name, _)| name == var) {
                Some((_, spans)) => spans.push(span),
                None => per_var.push((var.clone(), vec![span])),
            }
        }
        for (_, spans) in &mut per_var {
            spans.sort_by_key(|s| (s.start, s.end));
        }
        let mss = build_mss(&mut vars, &per_var)
            .with_context(|| format!("record {} is not a valid state sequence", i + 1))?;
        labeled.push((mss, rec.class.clone()));
    }
    Ok(Dataset::new(vars, labeled))
}

pub fn save(path: &Path, d: &Dataset) -> Result<()> {
    let records = (0..d.len() as u32)
        .map(|id| {
            let rec = d.record(id);
            NativeRecord {
                class: d.class_label(rec.class.index()).to_string(),
                intervals: rec
                    .mss
                    .intervals()
                    .iter()
                    .map(|iv| {
                        (
                            d.vars().name(iv.var).to_string(),
                            iv.symbol.token().to_string(),
                            iv.start,
                            iv.end,
                        )
                    })
                    .collect(),
            }
        })
        .collect();
    let text = serde_json::to_string_pretty(&NativeFile { records })?;
    fs::write(path, text + "\n")
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
