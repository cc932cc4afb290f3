//! Report rendering: structured JSON records, CSV, and Markdown tables
//! for every analysis the crate produces.

use serde::Serialize;

use crate::crossval::{HeuristicSeries, RepairabilityTable};
use crate::concrete::SweepRow;
use crate::error::{Error, Result};
use crate::stats::FrequencyTable;

/// The three output formats every command supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    /// One JSON object per line.
    #[default]
    Records,
    Csv,
    Markdown,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<OutputFormat> {
        match s {
            "json" | "records" => Ok(OutputFormat::Records),
            "csv" => Ok(OutputFormat::Csv),
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            other => Err(Error::Config(format!(
                "unknown format '{other}' (expected json, csv, or md)"
            ))),
        }
    }
}

/// Serializes records as JSON lines, one object per line.
pub fn json_records<T: Serialize>(records: &[T]) -> Result<String> {
    let mut out = String::new();
    for record in records {
        out.push_str(
            &serde_json::to_string(record)
                .map_err(|e| Error::Config(format!("cannot serialize record: {e}")))?,
        );
        out.push('\n');
    }
    Ok(out)
}

/// Serializes records as CSV with a header row.
pub fn csv_records<T: Serialize>(records: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for record in records {
        writer
            .serialize(record)
            .map_err(|e| Error::Config(format!("cannot serialize record: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("cannot flush records: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv is not utf-8: {e}")))
}

/// A plain pipe table; cell text is escaped.
pub fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let escape = |s: &str| s.replace('|', "\\|");
    let mut out = String::new();
    out.push('|');
    for h in headers {
        out.push_str(&format!(" {} |", escape(h)));
    }
    out.push_str("\n|");
    for _ in headers {
        out.push_str(" --- |");
    }
    out.push('\n');
    for row in rows {
        out.push('|');
        for cell in row {
            out.push_str(&format!(" {} |", escape(cell)));
        }
        out.push('\n');
    }
    out
}

/// The cross-validation matrix as a Markdown table: one row per
/// held-out project, the median in bold with the evaluated count in
/// brackets, `-` for cells with nothing to evaluate.
pub fn markdown_repairability(table: &RepairabilityTable) -> String {
    let mut headers: Vec<String> = vec!["project".into()];
    headers.extend(table.sizes.iter().map(|s| format!("size {s}")));
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = table
        .projects
        .iter()
        .enumerate()
        .map(|(i, project)| {
            let mut row = vec![project.clone()];
            for cell in &table.cells[i] {
                row.push(match cell.median {
                    None => "-".to_string(),
                    Some(median) if cell.skipped == 0 => {
                        format!("**{median}** ({})", cell.evaluated)
                    }
                    Some(median) => {
                        format!("**{median}** ({}, {} skipped)", cell.evaluated, cell.skipped)
                    }
                });
            }
            row
        })
        .collect();
    markdown_table(&header_refs, &rows)
}

/// One point of a heuristic-comparison series, flattened for CSV and
/// record output: x = shape size, y = median attempts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub heuristic: crate::corpus::Heuristic,
    pub size: u32,
    pub median: Option<crate::repair::MedianAttempts>,
}

pub fn series_points(series: &[HeuristicSeries]) -> Vec<SeriesPoint> {
    let mut points = Vec::new();
    for s in series {
        for (i, &size) in s.sizes.iter().enumerate() {
            points.push(SeriesPoint {
                heuristic: s.heuristic,
                size,
                median: s.medians[i],
            });
        }
    }
    points
}

/// The operator sweep as a Markdown table, times rendered as integers
/// or the infinity sign.
pub fn markdown_sweep(rows: &[SweepRow]) -> String {
    let table_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format!("{}", r.operators.insert),
                format!("{}", r.operators.delete),
                format!("{}", r.operators.swap),
                format!("{:.3e}", r.probability),
                r.time.to_string(),
            ]
        })
        .collect();
    markdown_table(
        &["p_insert", "p_delete", "p_swap", "probability", "attempts"],
        &table_rows,
    )
}

/// A frequency table's rows as Markdown, most frequent first.
pub fn markdown_frequencies(table: &FrequencyTable, top: usize) -> String {
    let rows: Vec<Vec<String>> = table
        .top(top)
        .into_iter()
        .map(|r| {
            vec![
                r.feature,
                r.alpha.to_string(),
                r.chi.map_or_else(|| "-".to_string(), |c| format!("{c:.4}")),
            ]
        })
        .collect();
    markdown_table(&["action", "count", "share"], &rows)
}
