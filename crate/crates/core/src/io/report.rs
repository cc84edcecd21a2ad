use std::fmt::Write;

use crate::classification::CensusReport;
use crate::error::{Error, Result};
use crate::inversion::AttackTrace;
use crate::transform::QString;

use super::text::{format_leaders, format_qstring, parse_qstring};

/// Attack record fields as read back from text.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackRecord {
    pub guesses: u64,
    pub lookups: u64,
    pub elapsed_ms: f64,
    pub preimages: Vec<QString>,
}

/// Line-oriented attack record. Warnings are written as `#` comments.
pub fn format_attack_trace(t: &AttackTrace) -> String {
    let mut out = String::new();
    for w in &t.warnings {
        writeln!(out, "# warning: {w}").unwrap();
    }
    writeln!(out, "preimages {}", t.preimages.len()).unwrap();
    writeln!(out, "guesses {}", t.guesses).unwrap();
    writeln!(out, "lookups {}", t.lookups).unwrap();
    writeln!(out, "elapsed_ms {:.3}", t.elapsed.as_secs_f64() * 1000.0).unwrap();
    for p in &t.preimages {
        writeln!(out, "{}", format_qstring(p)).unwrap();
    }
    out
}

pub fn parse_attack_record(order: usize, text: &str) -> Result<AttackRecord> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'));
    let mut field = |key: &str| -> Result<(usize, String)> {
        let (line, l) = lines
            .next()
            .ok_or_else(|| Error::syntax(0, format!("missing `{key}`")))?;
        match l.split_once(' ') {
            Some((k, v)) if k == key => Ok((line, v.trim().to_string())),
            _ => Err(Error::syntax(line, format!("expected `{key}`"))),
        }
    };
    let num = |(line, v): (usize, String)| {
        v.parse::<u64>()
            .map_err(|_| Error::syntax(line, format!("invalid number `{v}`")))
    };
    let count = num(field("preimages")?)?;
    let guesses = num(field("guesses")?)?;
    let lookups = num(field("lookups")?)?;
    let (line, v) = field("elapsed_ms")?;
    let elapsed_ms = v
        .parse()
        .map_err(|_| Error::syntax(line, format!("invalid number `{v}`")))?;
    let preimages = lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| {
            parse_qstring(order, l).map_err(|e| match e {
                Error::Syntax { message, .. } => Error::syntax(line, message),
                e => e,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if preimages.len() as u64 != count {
        return Err(Error::syntax(
            0,
            format!("expected {count} preimages, found {}", preimages.len()),
        ));
    }
    Ok(AttackRecord {
        guesses,
        lookups,
        elapsed_ms,
        preimages,
    })
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parameter header, then `index label witness period_at_k` per quasigroup.
pub fn format_census(r: &CensusReport) -> String {
    let s = &r.settings;
    let mut out = String::new();
    writeln!(out, "# census of order-4 quasigroups").unwrap();
    writeln!(out, "# n {}", s.search.n).unwrap();
    writeln!(out, "# max_leader_len {}", s.search.max_len).unwrap();
    writeln!(out, "# alphabet {}", s.search.alphabet.name()).unwrap();
    writeln!(out, "# budget {}", s.search.budget.0).unwrap();
    writeln!(out, "# alpha {}", s.alpha).unwrap();
    writeln!(out, "# iterations {}", s.iterations).unwrap();
    writeln!(out, "# width {}", s.width).unwrap();
    let motif: Vec<String> = s.motif.iter().map(|v| v.to_string()).collect();
    writeln!(out, "# motif {}", motif.join(" ")).unwrap();
    match &s.leaders {
        None => writeln!(out, "# period_leaders all").unwrap(),
        Some(l) => {
            let l: Vec<usize> = l.iter().map(|&v| v as usize).collect();
            writeln!(out, "# period_leaders {}", list(&l)).unwrap()
        }
    }
    writeln!(out, "# threshold {}", s.threshold()).unwrap();
    writeln!(out, "# fractal {}", r.fractal_set.len()).unwrap();
    writeln!(out, "# non_fractal {}", r.non_fractal_set.len()).unwrap();
    writeln!(out, "# published_stated {}", r.published_stated_count).unwrap();
    writeln!(out, "# published_printed {}", r.published_printed_count).unwrap();
    writeln!(
        out,
        "# missing_from_computed {}",
        list(&r.missing_from_computed)
    )
    .unwrap();
    writeln!(out, "# extra_in_computed {}", list(&r.extra_in_computed)).unwrap();
    writeln!(
        out,
        "# classifier_disagreements {}",
        list(&r.classifier_disagreements)
    )
    .unwrap();
    writeln!(out, "# index label witness period_at_k").unwrap();
    for e in &r.entries {
        let w = e.witness.as_ref().map_or("-".to_string(), format_leaders);
        writeln!(out, "{} {} {} {}", e.index, e.label, w, e.period_at_k).unwrap();
    }
    out
}

/// JSON export carrying the same fields as [`format_census`].
pub fn census_to_json(r: &CensusReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn census_from_json(text: &str) -> Result<CensusReport> {
    serde_json::from_str(text).map_err(|e| Error::syntax(e.line(), e.to_string()))
}
