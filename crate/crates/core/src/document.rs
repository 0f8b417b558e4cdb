//! Documents and corpora.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One clinical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub labels: Vec<String>,
    /// Ids of the source documents this one was built from. `[id]` for an
    /// untransformed document, the member lineages for an aggregate.
    pub lineage: Vec<String>,
    /// Record fields this crate does not interpret, kept verbatim (as encoded
    /// JSON values) so they survive a load/write round trip.
    pub extra: BTreeMap<String, String>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let id = id.into();
        Document {
            lineage: vec![id.clone()],
            id,
            text: text.into(),
            labels: Vec::new(),
            extra: BTreeMap::new(),
        }
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.labels = labels.into_iter().map(Into::into).collect();
        self
    }

    /// Same document with new text; identity, labels and lineage are kept.
    pub fn with_text(&self, text: String) -> Self {
        Document {
            text,
            ..self.clone()
        }
    }
}

/// Governs how aggregation may group documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TaskKind {
    SingleLabel,
    MultiLabel,
    Unlabeled,
}

impl TaskKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TaskKind::SingleLabel => "single-label",
            TaskKind::MultiLabel => "multi-label",
            TaskKind::Unlabeled => "unlabeled",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for TaskKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "single-label" | "single" => Ok(TaskKind::SingleLabel),
            "multi-label" | "multi" => Ok(TaskKind::MultiLabel),
            "unlabeled" | "none" => Ok(TaskKind::Unlabeled),
            _ => Err(alloc::format!("unknown task kind `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("document id must not be empty")]
    EmptyId,
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("document `{0}` has an empty lineage")]
    EmptyLineage(String),
    #[error("single-label corpus: document `{id}` has {count} labels")]
    LabelCount { id: String, count: usize },
}

/// Ordered documents with distinct ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<Document>,
    task_kind: TaskKind,
    ids: BTreeSet<String>,
}

impl Corpus {
    pub fn empty(task_kind: TaskKind) -> Self {
        Corpus {
            documents: Vec::new(),
            task_kind,
            ids: BTreeSet::new(),
        }
    }

    pub fn new(documents: Vec<Document>, task_kind: TaskKind) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::empty(task_kind);
        corpus.documents.reserve(documents.len());
        for doc in documents {
            corpus.push(doc)?;
        }
        Ok(corpus)
    }

    /// Appends a document, checking the corpus invariants.
    pub fn push(&mut self, doc: Document) -> Result<(), CorpusError> {
        if doc.id.is_empty() {
            return Err(CorpusError::EmptyId);
        }
        if doc.lineage.is_empty() {
            return Err(CorpusError::EmptyLineage(doc.id));
        }
        if self.task_kind == TaskKind::SingleLabel && doc.labels.len() != 1 {
            return Err(CorpusError::LabelCount {
                count: doc.labels.len(),
                id: doc.id,
            });
        }
        if !self.ids.insert(doc.id.clone()) {
            return Err(CorpusError::DuplicateId(doc.id));
        }
        self.documents.push(doc);
        Ok(())
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn into_documents(self) -> Vec<Document> {
        self.documents
    }

    pub fn task_kind(&self) -> TaskKind {
        self.task_kind
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.ids.contains(id)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Document> {
        self.documents.iter()
    }
}

impl<'a> IntoIterator for &'a Corpus {
    type Item = &'a Document;
    type IntoIter = core::slice::Iter<'a, Document>;

    fn into_iter(self) -> Self::IntoIter {
        self.documents.iter()
    }
}
