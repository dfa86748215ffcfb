//! On-disk formats: Hildebrand table JSON, trace CSV/JSON, report JSON.
//!
//! All writers are deterministic: identical inputs produce identical
//! bytes. Rational values travel as exact `num/den` strings; floats are
//! rendered with 12 significant digits in CSV and as plain JSON numbers
//! elsewhere.

use anyhow::{bail, Context};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use ramanujan_core::arith::Factorizer;
use ramanujan_core::expansion::{ExpansionReport, PartialSumTrace};
use ramanujan_core::hildebrand::{index_to_support, HildebrandTable};

use crate::specs::parse_rational;

#[derive(Debug, Serialize, Deserialize)]
struct TableFile {
    function: String,
    bound: u64,
    entries: Vec<TableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TableEntry {
    m: u64,
    support: u64,
    value: String,
}

/// Serializes a table to the JSON layout
/// `{"function", "bound", "entries": [{"m", "support", "value"}]}`.
pub fn table_to_json(ctx: &Factorizer, table: &HildebrandTable) -> anyhow::Result<String> {
    let mut entries = Vec::with_capacity(table.bound() as usize);
    for (m, value) in table.iter() {
        entries.push(TableEntry {
            m,
            support: index_to_support(ctx, m)?,
            value: value.to_string(),
        });
    }
    let file = TableFile {
        function: table.source().to_string(),
        bound: table.bound(),
        entries,
    };
    Ok(serde_json::to_string_pretty(&file)? + "\n")
}

/// Parses and validates a table JSON document.
pub fn table_from_json(ctx: &Factorizer, text: &str) -> anyhow::Result<HildebrandTable> {
    let file: TableFile = serde_json::from_str(text).context("malformed table JSON")?;
    if file.entries.len() as u64 != file.bound {
        bail!(
            "table claims bound {} but carries {} entries",
            file.bound,
            file.entries.len()
        );
    }
    let mut values: Vec<BigRational> = Vec::with_capacity(file.entries.len());
    for (i, entry) in file.entries.iter().enumerate() {
        let m = i as u64 + 1;
        if entry.m != m {
            bail!("table entries out of order: expected m={m}, found m={}", entry.m);
        }
        let support = index_to_support(ctx, m)?;
        if entry.support != support {
            bail!("entry m={m} declares support {}, expected {support}", entry.support);
        }
        values.push(
            parse_rational(&entry.value)
                .with_context(|| format!("value of entry m={m}"))?,
        );
    }
    Ok(HildebrandTable::from_entries(&file.function, values))
}

/// `f64` with 12 significant digits, scientific notation.
pub fn sig12(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v }; // collapse -0
    format!("{v:.11e}")
}

/// Trace as CSV: `x,signed_sum,abs_sum`, one row per checkpoint. Exact
/// traces carry an extra `exact` column with the signed sum as
/// `num/den`.
pub fn trace_to_csv(trace: &PartialSumTrace) -> String {
    let exact = trace.checkpoints.iter().all(|cp| cp.exact.is_some());
    let mut out = String::new();
    out.push_str(if exact {
        "x,signed_sum,abs_sum,exact\n"
    } else {
        "x,signed_sum,abs_sum\n"
    });
    for cp in &trace.checkpoints {
        out.push_str(&format!("{},{},{}", cp.x, sig12(cp.signed), sig12(cp.abs)));
        if exact {
            out.push_str(&format!(",{}", cp.exact.as_ref().unwrap().signed));
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
struct TraceJson<'a> {
    coefficient: &'a str,
    argument: u64,
    checkpoints: Vec<TraceCheckpointJson>,
}

#[derive(Debug, Serialize)]
struct TraceCheckpointJson {
    x: u64,
    signed_sum: f64,
    abs_sum: f64,
    exact: Option<String>,
}

/// Trace as JSON, mirroring the CSV columns.
pub fn trace_to_json(trace: &PartialSumTrace) -> anyhow::Result<String> {
    let doc = TraceJson {
        coefficient: &trace.coefficient,
        argument: trace.argument,
        checkpoints: trace
            .checkpoints
            .iter()
            .map(|cp| TraceCheckpointJson {
                x: cp.x,
                signed_sum: cp.signed,
                abs_sum: cp.abs,
                exact: cp.exact.as_ref().map(|p| p.signed.to_string()),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

#[derive(Debug, Serialize)]
struct ReportJson<'a> {
    coefficient: &'a str,
    target: &'a str,
    x_max: u64,
    all_certified: bool,
    results: Vec<ReportRowJson>,
}

#[derive(Debug, Serialize)]
struct ReportRowJson {
    a: u64,
    partial_sum: f64,
    target_value: f64,
    residual: f64,
    tail_bound: Option<f64>,
    certified: bool,
    status: &'static str,
}

/// Certification report as JSON.
pub fn report_to_json(report: &ExpansionReport) -> anyhow::Result<String> {
    let doc = ReportJson {
        coefficient: &report.coefficient,
        target: &report.target,
        x_max: report.x_max,
        all_certified: report.all_certified(),
        results: report
            .rows
            .iter()
            .map(|row| ReportRowJson {
                a: row.argument,
                partial_sum: row.partial_sum,
                target_value: row.target_value,
                residual: row.residual,
                tail_bound: row.tail_bound,
                certified: row.certified,
                status: match (row.certified, row.tail_bound) {
                    (true, _) => "certified",
                    (false, Some(_)) => "uncertified (residual exceeds tail bound)",
                    (false, None) => "uncertified (no tail bound)",
                },
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
