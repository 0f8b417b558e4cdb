//! Corpus files: UTF-8 JSON lines, one document per line.
//!
//! Each record is a flat object with a string `id`, a string `text`, an
//! optional `labels` array of strings and an optional `lineage` array of
//! source ids (written only when it differs from `[id]`). Any other key is
//! carried through unchanged.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anontext_core::{Corpus, Document, TaskKind};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::atomic::write_atomic;
use crate::error::{Error, Result};

fn record_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Record {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn string_array(value: Value, key: &str) -> std::result::Result<Vec<String>, String> {
    let Value::Array(items) = value else {
        return Err(format!("`{key}` must be an array of strings"));
    };
    items
        .into_iter()
        .map(|v| match v {
            Value::String(s) => Ok(s),
            _ => Err(format!("`{key}` must be an array of strings")),
        })
        .collect()
}

fn parse_record(line: &str) -> std::result::Result<Document, String> {
    let mut map: Map<String, Value> = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let id = match map.remove("id") {
        Some(Value::String(s)) => s,
        Some(_) => return Err("`id` must be a string".into()),
        None => return Err("missing `id`".into()),
    };
    let text = match map.remove("text") {
        Some(Value::String(s)) => s,
        Some(_) => return Err("`text` must be a string".into()),
        None => return Err("missing `text`".into()),
    };
    let mut doc = Document::new(id, text);
    if let Some(labels) = map.remove("labels") {
        doc.labels = string_array(labels, "labels")?;
    }
    if let Some(lineage) = map.remove("lineage") {
        doc.lineage = string_array(lineage, "lineage")?;
    }
    doc.extra = map.into_iter().map(|(k, v)| (k, v.to_string())).collect();
    Ok(doc)
}

/// Parses corpus text. `path` is only used in error messages.
pub fn parse_corpus(source: &str, task_kind: TaskKind, path: &Path) -> Result<Corpus> {
    let mut corpus = Corpus::empty(task_kind);
    for (i, line) in source.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let doc = parse_record(line).map_err(|m| record_error(path, line_no, m))?;
        corpus.push(doc).map_err(|source| Error::Corpus {
            path: path.to_path_buf(),
            line: line_no,
            source,
        })?;
    }
    Ok(corpus)
}

/// Loads a corpus file.
pub fn load_corpus(path: impl AsRef<Path>, task_kind: TaskKind) -> Result<Corpus> {
    let path = path.as_ref();
    let source = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&source, task_kind, path)
}

/// The task kind a corpus's labels support: single-label when every document
/// has exactly one label, unlabeled when none has any, multi-label otherwise.
pub fn infer_task_kind(corpus: &Corpus) -> TaskKind {
    if corpus.iter().all(|d| d.labels.len() == 1) && !corpus.is_empty() {
        TaskKind::SingleLabel
    } else if corpus.iter().all(|d| d.labels.is_empty()) {
        TaskKind::Unlabeled
    } else {
        TaskKind::MultiLabel
    }
}

/// Loads a corpus, inferring its task kind from the labels when `task_kind`
/// is `None`.
pub fn load_corpus_with(path: impl AsRef<Path>, task_kind: Option<TaskKind>) -> Result<Corpus> {
    let path = path.as_ref();
    let source = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus_with(&source, task_kind, path)
}

/// [`parse_corpus`], inferring the task kind when `task_kind` is `None`.
pub fn parse_corpus_with(source: &str, task_kind: Option<TaskKind>, path: &Path) -> Result<Corpus> {
    match task_kind {
        Some(kind) => parse_corpus(source, kind, path),
        None => {
            let loose = parse_corpus(source, TaskKind::MultiLabel, path)?;
            let kind = infer_task_kind(&loose);
            Ok(Corpus::new(loose.into_documents(), kind).expect("inferred kind fits the labels"))
        }
    }
}

#[derive(Serialize)]
struct RecordOut<'a> {
    id: &'a str,
    text: &'a str,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    labels: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    lineage: Option<&'a [String]>,
    #[serde(flatten)]
    extra: BTreeMap<&'a str, Value>,
}

/// Serializes a corpus to JSON lines.
pub fn corpus_to_jsonl(corpus: &Corpus) -> String {
    let mut out = String::new();
    for doc in corpus {
        let own_lineage = doc.lineage.len() == 1 && doc.lineage[0] == doc.id;
        let record = RecordOut {
            id: &doc.id,
            text: &doc.text,
            labels: &doc.labels,
            lineage: (!own_lineage).then_some(doc.lineage.as_slice()),
            extra: doc
                .extra
                .iter()
                .map(|(k, v)| (k.as_str(), serde_json::from_str(v).unwrap_or(Value::String(v.clone()))))
                .collect(),
        };
        out.push_str(&serde_json::to_string(&record).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// Writes a corpus atomically (temporary file, then rename).
pub fn write_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), corpus_to_jsonl(corpus).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn parse(src: &str, kind: TaskKind) -> Result<Corpus> {
        parse_corpus(src, kind, &PathBuf::from("c.jsonl"))
    }

    #[test]
    fn three_records() {
        let src = r#"{"id":"a","text":"x","labels":["L"]}
{"id":"b","text":"y","labels":["L"]}

{"id":"c","text":"z","labels":["M"],"source":"ehr","n":3}
"#;
        let c = parse(src, TaskKind::SingleLabel).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.documents()[2].extra.get("source").unwrap(), "\"ehr\"");
        assert_eq!(c.documents()[0].lineage, ["a"]);
    }

    #[test]
    fn duplicate_id_cites_line() {
        let mut src = String::new();
        for i in 0..6 {
            src.push_str(&format!("{{\"id\":\"d{i}\",\"text\":\"t\"}}\n"));
        }
        src.push_str("{\"id\":\"d2\",\"text\":\"again\"}\n");
        let err = parse(&src, TaskKind::Unlabeled).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains(":7:") && msg.contains("d2"), "{msg}");
    }

    #[test]
    fn malformed_records_cite_line() {
        for (src, needle) in [
            ("{\"id\":\"a\",\"text\":\"x\"}\nnot json\n", ":2:"),
            ("{\"text\":\"x\"}\n", "missing `id`"),
            ("{\"id\":\"a\",\"text\":3}\n", "`text` must be a string"),
            ("{\"id\":\"a\",\"text\":\"x\",\"labels\":[1]}\n", "labels"),
        ] {
            let msg = parse(src, TaskKind::Unlabeled).unwrap_err().to_string();
            assert!(msg.contains(needle), "{msg}");
        }
    }

    #[test]
    fn single_label_violation() {
        let src = "{\"id\":\"a\",\"text\":\"x\",\"labels\":[\"A\",\"B\"]}\n";
        assert!(parse(src, TaskKind::SingleLabel).is_err());
        assert!(parse(src, TaskKind::MultiLabel).is_ok());
    }

    #[test]
    fn empty_file_is_empty_corpus() {
        assert!(parse("", TaskKind::Unlabeled).unwrap().is_empty());
    }

    #[test]
    fn inference() {
        let one = parse("{\"id\":\"a\",\"text\":\"x\",\"labels\":[\"A\"]}\n", TaskKind::MultiLabel).unwrap();
        assert_eq!(infer_task_kind(&one), TaskKind::SingleLabel);
        let none = parse("{\"id\":\"a\",\"text\":\"x\"}\n", TaskKind::MultiLabel).unwrap();
        assert_eq!(infer_task_kind(&none), TaskKind::Unlabeled);
    }
}
