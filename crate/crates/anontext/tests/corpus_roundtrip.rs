use std::collections::BTreeMap;

use anontext::corpus_io::{corpus_to_jsonl, load_corpus, parse_corpus, write_corpus};
use anontext_core::{Corpus, Document, TaskKind};
use proptest::prelude::*;

fn document() -> impl Strategy<Value = (String, Vec<String>, Vec<String>, BTreeMap<String, i64>)> {
    (
        "\\PC{0,60}",
        prop::collection::vec("[A-Z ]{1,8}", 0..3),
        prop::collection::vec("[a-z0-9]{1,6}", 0..3),
        prop::collection::btree_map("x_[a-z]{1,5}", any::<i64>(), 0..3),
    )
}

proptest! {
    #[test]
    fn write_then_load_is_identity(docs in prop::collection::vec(document(), 0..12)) {
        let docs: Vec<Document> = docs
            .into_iter()
            .enumerate()
            .map(|(i, (text, labels, lineage, extra))| {
                let mut d = Document::new(format!("id-{i}"), text).with_labels(labels);
                if !lineage.is_empty() {
                    d.lineage = lineage;
                }
                d.extra = extra.into_iter().map(|(k, v)| (k, v.to_string())).collect();
                d
            })
            .collect();
        let corpus = Corpus::new(docs, TaskKind::MultiLabel).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        write_corpus(&corpus, &path).unwrap();
        let back = load_corpus(&path, TaskKind::MultiLabel).unwrap();
        prop_assert_eq!(&back, &corpus);
        prop_assert_eq!(corpus_to_jsonl(&back), corpus_to_jsonl(&corpus));
        // Only the corpus itself is left in the directory.
        prop_assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

#[test]
fn unknown_fields_survive_verbatim() {
    let src = r#"{"id":"n1","text":"BP 120/80.","meta":{"unit":"icu","beds":[1,2]},"note_type":"discharge"}
"#;
    let c = parse_corpus(src, TaskKind::Unlabeled, "x.jsonl".as_ref()).unwrap();
    let out = corpus_to_jsonl(&c);
    let a: serde_json::Value = serde_json::from_str(src.trim()).unwrap();
    let b: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn lineage_written_only_when_needed() {
    let mut merged = Document::new("a+b", "x\ny");
    merged.lineage = vec!["a".into(), "b".into()];
    let c = Corpus::new(vec![Document::new("a", "x"), merged], TaskKind::Unlabeled).unwrap();
    let out = corpus_to_jsonl(&c);
    let lines: Vec<&str> = out.lines().collect();
    assert!(!lines[0].contains("lineage"));
    assert!(lines[1].contains(r#""lineage":["a","b"]"#));
}

#[test]
fn failed_write_leaves_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing-dir").join("c.jsonl");
    let c = Corpus::new(vec![Document::new("a", "x")], TaskKind::Unlabeled).unwrap();
    assert!(write_corpus(&c, &target).is_err());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}
