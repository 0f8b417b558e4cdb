//! Attack report files and result tables.

use std::fmt::Write as _;
use std::path::Path;

use anontext_core::AttackReport;
use serde::Serialize;

use crate::atomic::write_atomic;
use crate::error::Result;

/// Row labels of the result table, in order.
pub const ROW_LABELS: [&str; 3] = ["found", "a/o sim", "avg-sim"];

#[derive(Serialize)]
struct Summary<'a> {
    id: &'a str,
    found: f64,
    ao_sim: f64,
    avg_sim: f64,
    documents: usize,
}

#[derive(Serialize)]
struct Row<'a> {
    id: &'a str,
    top1: &'a str,
    found: bool,
    own_sim: f64,
    own_rank: usize,
    avg_sim: f64,
}

/// JSON lines: a `summary` record followed by one record per anonymized
/// document, in corpus order.
pub fn report_to_jsonl(report: &AttackReport) -> String {
    let mut out = serde_json::to_string(&Summary {
        id: "summary",
        found: report.found,
        ao_sim: report.ao_sim,
        avg_sim: report.avg_sim,
        documents: report.per_doc.len(),
    })
    .expect("summary serializes");
    out.push('\n');
    for d in &report.per_doc {
        let row = Row {
            id: &d.anon_id,
            top1: &d.top1,
            found: d.found,
            own_sim: d.own_sim,
            own_rank: d.own_rank,
            avg_sim: d.avg_sim,
        };
        out.push_str(&serde_json::to_string(&row).expect("rows serialize"));
        out.push('\n');
    }
    out
}

pub fn write_report(report: &AttackReport, path: &Path) -> Result<()> {
    write_atomic(path, report_to_jsonl(report).as_bytes())
}

/// Fixed-width table with one column per `(heading, report)`. A `None`
/// report (a failed cell) prints as `-`.
pub fn format_table(columns: &[(String, Option<&AttackReport>)]) -> String {
    const VALUE_WIDTH: usize = 8;
    let label_width = ROW_LABELS.iter().map(|l| l.len()).max().unwrap_or(0);
    let widths: Vec<usize> = columns.iter().map(|(h, _)| h.len().max(VALUE_WIDTH)).collect();

    let mut out = String::new();
    let _ = write!(out, "{:label_width$}", "");
    for ((heading, _), w) in columns.iter().zip(&widths) {
        let _ = write!(out, "  {heading:>w$}");
    }
    out.push('\n');
    for (row, label) in ROW_LABELS.iter().enumerate() {
        let _ = write!(out, "{label:label_width$}");
        for ((_, report), w) in columns.iter().zip(&widths) {
            let cell = match report {
                Some(r) => format!("{:.4}", [r.found, r.ao_sim, r.avg_sim][row]),
                None => "-".to_string(),
            };
            let _ = write!(out, "  {cell:>w$}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use anontext_core::DocOutcome;

    fn report() -> AttackReport {
        AttackReport::from_outcomes(vec![
            DocOutcome {
                anon_id: "a".into(),
                top1: "a".into(),
                found: true,
                own_sim: 1.0,
                own_rank: 1,
                avg_sim: 0.5,
            },
            DocOutcome {
                anon_id: "b".into(),
                top1: "a".into(),
                found: false,
                own_sim: 0.5,
                own_rank: 2,
                avg_sim: 0.25,
            },
        ])
    }

    #[test]
    fn jsonl_has_summary_then_rows() {
        let text = report_to_jsonl(&report());
        let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["id"], "summary");
        assert_eq!(lines[0]["found"], 0.5);
        assert_eq!(lines[0]["ao_sim"], 0.75);
        assert_eq!(lines[2]["own_rank"], 2);
    }

    #[test]
    fn table_rows_and_columns() {
        let r = report();
        let table = format_table(&[("ShS".into(), Some(&r)), ("RaS 20%".into(), None)]);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].contains("ShS") && lines[0].contains("RaS 20%"));
        assert!(lines[1].starts_with("found") && lines[1].contains("0.5000"));
        assert!(lines[2].starts_with("a/o sim") && lines[2].contains("0.7500"));
        assert!(lines[3].starts_with("avg-sim") && lines[3].trim_end().ends_with('-'));
        let widths: Vec<usize> = lines.iter().map(|l| l.len()).collect();
        assert!(widths.iter().all(|&w| w == widths[0]));
    }
}
