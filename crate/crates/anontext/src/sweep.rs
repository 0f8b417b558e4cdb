//! Technique sweeps: anonymize and attack once per cell, one table column
//! per cell.

use anontext_core::{AnonymizationSpec, AttackReport, Corpus, Grouping, Resources, Technique};
use rayon::ThreadPool;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::{apply_parallel, attack_parallel};
use crate::report::format_table;

/// The cells `all` expands to.
pub const DEFAULT_CELLS: [&str; 14] = [
    "dei", "mnr", "shs", "ras20", "ras100", "syr20", "syr100", "cnr", "ag2", "ag3", "ag4", "aag2", "aag3",
    "aag4",
];

/// Parses a cell name: a technique code optionally followed by its number,
/// as in `shs`, `ras20`, `syr100`, `ag3` or `aag2`. For `aagX` the repetition
/// count is `repetitions` or, when unset, `X`.
pub fn parse_cell(cell: &str, repetitions: Option<usize>, grouping: Grouping) -> Result<Technique> {
    let cell = cell.trim().to_ascii_lowercase();
    let split = cell.find(|c: char| c.is_ascii_digit()).unwrap_or(cell.len());
    let (code, number) = cell.split_at(split);
    let number: Option<usize> = if number.is_empty() {
        None
    } else {
        Some(
            number
                .parse()
                .map_err(|_| Error::config("techniques", format!("bad cell `{cell}`")))?,
        )
    };
    let t = match code {
        "ras" | "syr" => Technique::from_parts(code, number.map(|p| p as u32), None, None, grouping),
        "ag" | "agx" => Technique::from_parts("agx", None, number, None, grouping),
        "aag" | "aagx" => Technique::from_parts("aagx", None, number, repetitions.or(number), grouping),
        _ if number.is_some() => return Err(Error::config("techniques", format!("bad cell `{cell}`"))),
        _ => Technique::from_parts(code, None, None, None, grouping),
    };
    t.map_err(|e| Error::config("techniques", format!("cell `{cell}`: {e}")))
}

/// Expands `all` and rejects an empty list.
pub fn expand_cells(cells: &[String]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for c in cells {
        if c.eq_ignore_ascii_case("all") {
            out.extend(DEFAULT_CELLS.iter().map(|s| s.to_string()));
        } else {
            out.push(c.clone());
        }
    }
    if out.is_empty() {
        return Err(Error::config("techniques", "empty technique list"));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CellResult {
    pub cell: String,
    /// Table heading; the cell name when the cell did not parse.
    pub label: String,
    pub technique: Option<Technique>,
    pub anonymized: Option<Corpus>,
    pub dropped: usize,
    pub outcome: std::result::Result<AttackReport, String>,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub cells: Vec<CellResult>,
}

#[derive(Serialize)]
struct CellJson<'a> {
    cell: &'a str,
    label: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    found: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ao_sim: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    avg_sim: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    documents: Option<usize>,
    dropped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

impl SweepResult {
    pub fn failed(&self) -> impl Iterator<Item = &CellResult> {
        self.cells.iter().filter(|c| c.outcome.is_err())
    }

    pub fn any_failed(&self) -> bool {
        self.failed().next().is_some()
    }

    pub fn report(&self, label: &str) -> Option<&AttackReport> {
        self.cells.iter().find(|c| c.label == label)?.outcome.as_ref().ok()
    }

    pub fn table(&self) -> String {
        let columns: Vec<(String, Option<&AttackReport>)> = self
            .cells
            .iter()
            .map(|c| (c.label.clone(), c.outcome.as_ref().ok()))
            .collect();
        format_table(&columns)
    }

    /// One JSON record per cell.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let ok = c.outcome.as_ref().ok();
            let rec = CellJson {
                cell: &c.cell,
                label: &c.label,
                found: ok.map(|r| r.found),
                ao_sim: ok.map(|r| r.ao_sim),
                avg_sim: ok.map(|r| r.avg_sim),
                documents: ok.map(|r| r.per_doc.len()),
                dropped: c.dropped,
                error: c.outcome.as_ref().err().map(String::as_str),
            };
            out.push_str(&serde_json::to_string(&rec).expect("cells serialize"));
            out.push('\n');
        }
        out
    }
}

pub struct SweepSettings<'a> {
    pub seed: u64,
    pub grouping: Grouping,
    pub repetitions: Option<usize>,
    pub resources: &'a Resources,
    pub pool: &'a ThreadPool,
    /// Keep each cell's anonymized corpus in the result.
    pub keep_corpora: bool,
}

/// Runs every cell against `corpus`. A failing cell is recorded and the
/// sweep moves on.
pub fn run_sweep(corpus: &Corpus, cells: &[String], settings: &SweepSettings<'_>) -> SweepResult {
    let results = cells
        .iter()
        .map(|cell| {
            let technique = match parse_cell(cell, settings.repetitions, settings.grouping) {
                Ok(t) => t,
                Err(e) => {
                    return CellResult {
                        cell: cell.clone(),
                        label: cell.clone(),
                        technique: None,
                        anonymized: None,
                        dropped: 0,
                        outcome: Err(e.to_string()),
                    }
                }
            };
            let spec = AnonymizationSpec::new(technique, settings.seed);
            let run = apply_parallel(corpus, &spec, settings.resources, settings.pool)
                .map_err(|e| e.to_string())
                .and_then(|out| {
                    let report = attack_parallel(&out.corpus, corpus, settings.pool).map_err(|e| e.to_string())?;
                    Ok((out, report))
                });
            let (anonymized, dropped, outcome) = match run {
                Ok((out, report)) => (settings.keep_corpora.then_some(out.corpus), out.dropped, Ok(report)),
                Err(e) => (None, 0, Err(e)),
            };
            CellResult {
                cell: cell.clone(),
                label: technique.to_string(),
                technique: Some(technique),
                anonymized,
                dropped,
                outcome,
            }
        })
        .collect();
    SweepResult { cells: results }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::thread_pool;
    use anontext_core::{Document, TaskKind};

    #[test]
    fn cell_names() {
        let g = Grouping::Random;
        assert_eq!(parse_cell("shs", None, g).unwrap(), Technique::ShuffleSentences);
        assert_eq!(parse_cell("RaS20", None, g).unwrap().to_string(), "RaS 20%");
        assert_eq!(
            parse_cell("ag3", None, g).unwrap(),
            Technique::Aggregate { factor: 3, grouping: g }
        );
        assert_eq!(parse_cell("aag2", None, g).unwrap().repetitions(), Some(2));
        assert_eq!(parse_cell("aag2", Some(3), g).unwrap().repetitions(), Some(3));
        for bad in ["ras", "dei5", "ag1", "ras101", "xyz", "ag"] {
            assert!(parse_cell(bad, None, g).is_err(), "{bad}");
        }
    }

    #[test]
    fn empty_list_rejected() {
        assert!(expand_cells(&[]).is_err());
        assert_eq!(expand_cells(&["all".into()]).unwrap().len(), DEFAULT_CELLS.len());
    }

    #[test]
    fn failed_cell_does_not_stop_sweep() {
        let docs = (0..6)
            .map(|i| Document::new(format!("d{i}"), format!("note {i} about case {}", i * 11)))
            .collect();
        let corpus = Corpus::new(docs, TaskKind::Unlabeled).unwrap();
        let resources = Resources::builtin();
        let pool = thread_pool(2).unwrap();
        let settings = SweepSettings {
            seed: 1,
            grouping: Grouping::Random,
            repetitions: None,
            resources: &resources,
            pool: &pool,
            keep_corpora: false,
        };
        let cells: Vec<String> = ["shs", "cnr", "bogus", "ag2"].iter().map(|s| s.to_string()).collect();
        let result = run_sweep(&corpus, &cells, &settings);
        assert_eq!(result.cells.len(), 4);
        assert_eq!(result.failed().count(), 2);
        assert_eq!(result.report("ShS").unwrap().ao_sim, 1.0);
        assert!(result.report("Ag2").is_some());
        let table = result.table();
        let labels: Vec<&str> = table.lines().skip(1).map(|l| l.split("  ").next().unwrap().trim()).collect();
        assert_eq!(labels, ["found", "a/o sim", "avg-sim"]);
    }
}
