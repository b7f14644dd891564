//! Result rendering: canonical pattern listings, per-level summary tables,
//! machine-readable stats, and set comparison of two listings.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ftpm_core::{pattern_key, Completion, Dataset, MiningConfig, MiningResult};
use serde_json::json;

/// One line per pattern: `KEY<TAB>label:count,label:count`, all classes in
/// dataset order, lines sorted by (size, key). Byte-stable across runs.
pub fn pattern_lines(result: &MiningResult, d: &Dataset) -> Vec<String> {
    let mut rows: Vec<(usize, String)> = result
        .patterns
        .iter()
        .map(|m| {
            let key = pattern_key(&m.pattern, d.vars());
            let counts = d
                .class_labels()
                .iter()
                .zip(&m.supports)
                .map(|(label, count)| format!("{label}:{count}"))
                .collect::<Vec<_>>()
                .join(",");
            (m.pattern.size(), format!("{key}\t{counts}"))
        })
        .collect();
    rows.sort();
    rows.into_iter().map(|(_, line)| line).collect()
}

pub fn write_lines(path: &Path, lines: &[String]) -> Result<()> {
    let mut text = lines.join("\n");
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn completion_name(c: Completion) -> &'static str {
    match c {
        Completion::Exhausted => "exhausted",
        Completion::SizeLimit => "size_limit",
        Completion::TimeLimit => "time_limit",
    }
}

/// Stats for one mining run. Everything except the "timing" subobject is
/// deterministic for a given input and configuration.
pub fn stats_json(
    algorithm: &str,
    result: &MiningResult,
    d: &Dataset,
    cfg: &MiningConfig,
) -> serde_json::Value {
    json!({
        "algorithm": algorithm,
        "theta": cfg.theta,
        "max_size": cfg.max_size,
        "records": d.len(),
        "classes": d
            .class_labels()
            .iter()
            .zip(d.class_counts())
            .map(|(label, count)| json!({"label": label, "records": count}))
            .collect::<Vec<_>>(),
        "patterns": result.patterns.len(),
        "completion": completion_name(result.completion),
        "deepest_complete_size": result.deepest_complete_size,
        "memory_bytes": result.memory_bytes,
        "levels": result
            .levels
            .iter()
            .map(|l| json!({
                "size": l.size,
                "candidates": l.candidates,
                "pruned": l.pruned,
                "ftps": l.ftps,
            }))
            .collect::<Vec<_>>(),
        "timing": {
            "total_ms": result.total_millis(),
            "level_ms": result.levels.iter().map(|l| l.millis).collect::<Vec<_>>(),
        },
    })
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Per-level table for the terminal.
pub fn human_table(algorithm: &str, result: &MiningResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[{algorithm}]");
    let _ = writeln!(out, "{:>5} {:>12} {:>10} {:>10} {:>10}", "size", "candidates", "pruned", "ftps", "ms");
    for l in &result.levels {
        let _ = writeln!(
            out,
            "{:>5} {:>12} {:>10} {:>10} {:>10}",
            l.size, l.candidates, l.pruned, l.ftps, l.millis
        );
    }
    let _ = writeln!(
        out,
        "patterns: {}  completion: {}  deepest complete size: {}  memory est: {} bytes",
        result.patterns.len(),
        completion_name(result.completion),
        result.deepest_complete_size,
        result.memory_bytes,
    );
    out
}

/// Compare two listings as line sets. Returns whether they match and a
/// human-readable account of the first differences.
pub fn diff_lines(a: &[String], b: &[String], name_a: &str, name_b: &str) -> (bool, Vec<String>) {
    let sa: BTreeSet<&String> = a.iter().collect();
    let sb: BTreeSet<&String> = b.iter().collect();
    if sa == sb {
        return (true, Vec::new());
    }
    let mut report = Vec::new();
    for line in sa.difference(&sb).take(20) {
        report.push(format!("only in {name_a}: {line}"));
    }
    for line in sb.difference(&sa).take(20) {
        report.push(format!("only in {name_b}: {line}"));
    }
    (false, report)
}

pub fn read_lines(path: &Path) -> Result<Vec<String>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(text.lines().map(str::to_string).collect())
}
