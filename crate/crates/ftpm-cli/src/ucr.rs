//! Reader for the classic time-series classification text layout: one record
//! per line, integer class label first, then the equally-long sample vector.
//! Tab, comma, or general whitespace separated.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Auto,
    Tab,
    Comma,
    Space,
}

impl Delimiter {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Delimiter::Auto,
            "tab" => Delimiter::Tab,
            "comma" => Delimiter::Comma,
            "space" => Delimiter::Space,
            other => bail!("unknown delimiter {other:?} (expected auto, tab, comma, or space)"),
        })
    }
}

fn split(line: &str, delim: Delimiter) -> Vec<&str> {
    match delim {
        Delimiter::Tab => line.split('\t').map(str::trim).filter(|t| !t.is_empty()).collect(),
        Delimiter::Comma => line.split(',').map(str::trim).filter(|t| !t.is_empty()).collect(),
        Delimiter::Space | Delimiter::Auto => line.split_whitespace().collect(),
    }
}

fn sniff(line: &str) -> Delimiter {
    if line.contains('\t') {
        Delimiter::Tab
    } else if line.contains(',') {
        Delimiter::Comma
    } else {
        Delimiter::Space
    }
}

/// Load labeled sample vectors. Labels are validated as integers but kept
/// verbatim as class names; every line must carry the same number of values.
pub fn load(path: &Path, delim: Delimiter) -> Result<Vec<(String, Vec<f64>)>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    parse(&text, delim).with_context(|| format!("in {}", path.display()))
}

pub fn parse(text: &str, delim: Delimiter) -> Result<Vec<(String, Vec<f64>)>> {
    let mut out: Vec<(String, Vec<f64>)> = Vec::new();
    let mut width: Option<usize> = None;
    let mut effective = delim;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if effective == Delimiter::Auto {
            effective = sniff(line);
        }
        let tokens = split(line, effective);
        if tokens.len() < 2 {
            bail!("line {}: need a label and at least one value", lineno + 1);
        }
        let label = tokens[0];
        if label.parse::<i64>().is_err() {
            bail!("line {}: class label {:?} is not an integer", lineno + 1, label);
        }
        let mut values = Vec::with_capacity(tokens.len() - 1);
        for tok in &tokens[1..] {
            let v: f64 = tok
                .parse()
                .map_err(|_| anyhow::anyhow!("line {}: bad value {:?}", lineno + 1, tok))?;
            if !v.is_finite() {
                bail!("line {}: non-finite value {:?}", lineno + 1, tok);
            }
            values.push(v);
        }
        match width {
            None => width = Some(values.len()),
            Some(w) if w != values.len() => {
                bail!("line {}: {} values where earlier lines had {}", lineno + 1, values.len(), w)
            }
            Some(_) => {}
        }
        out.push((label.to_string(), values));
    }
    if out.is_empty() {
        bail!("no records found");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tab_separated_lines() {
        let text = "1\t0.5\t0.7\t0.9\n-1\t1.5\t1.7\t1.9\n";
        let rows = parse(text, Delimiter::Auto).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].0, "1");
        assert_eq!(rows[1].0, "-1");
        assert_eq!(rows[0].1, vec![0.5, 0.7, 0.9]);
    }

    #[test]
    fn sniffs_comma_and_space() {
        let rows = parse("2,1.0,2.0\n2,3.0,4.0\n", Delimiter::Auto).unwrap();
        assert_eq!(rows[0].1, vec![1.0, 2.0]);
        let rows = parse("  3   1.0 2.0  \n", Delimiter::Auto).unwrap();
        assert_eq!(rows[0].0, "3");
    }

    #[test]
    fn label_kept_verbatim() {
        let rows = parse("-1\t5\t6\n", Delimiter::Auto).unwrap();
        assert_eq!(rows[0].0, "-1");
    }

    #[test]
    fn rejects_ragged_rows_naming_line() {
        let err = parse("1\t1\t2\n1\t3\n", Delimiter::Auto).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn rejects_non_numeric_values_naming_line() {
        let err = parse("1\t1\t2\n1\tx\t4\n", Delimiter::Auto).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn rejects_non_integer_labels() {
        let err = parse("1.5\t1\t2\n", Delimiter::Auto).unwrap_err();
        assert!(err.to_string().contains("label"), "{err}");
    }

    #[test]
    fn rejects_empty_input() {
        assert!(parse("\n\n", Delimiter::Auto).is_err());
    }

    #[test]
    fn skips_blank_lines() {
        let rows = parse("1\t1\t2\n\n1\t3\t4\n\n", Delimiter::Auto).unwrap();
        assert_eq!(rows.len(), 2);
    }
}
