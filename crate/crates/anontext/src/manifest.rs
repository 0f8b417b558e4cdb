//! Run manifests: everything needed to regenerate an output corpus.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use anontext_core::{AnonymizationSpec, TaskKind};
use serde::{Deserialize, Serialize};

use crate::atomic::write_atomic;
use crate::error::Result;
use crate::resources::ResourceOrigin;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRecord {
    pub path: String,
    pub sha256: String,
    pub documents: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceRecord {
    pub source: String,
    pub sha256: String,
}

impl From<&ResourceOrigin> for ResourceRecord {
    fn from(o: &ResourceOrigin) -> Self {
        ResourceRecord {
            source: o.source.clone(),
            sha256: o.sha256.clone(),
        }
    }
}

/// Contains no timestamps or host details, so identical runs write
/// identical manifests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub technique: String,
    pub label: String,
    pub p: Option<u32>,
    pub x: Option<usize>,
    pub n: Option<usize>,
    pub grouping: Option<String>,
    pub seed: u64,
    pub task_kind: String,
    pub input: FileRecord,
    pub output: FileRecord,
    /// Input documents not represented in the output (aggregation
    /// remainders).
    pub dropped: usize,
    pub resources: BTreeMap<String, ResourceRecord>,
}

impl Manifest {
    pub fn new(
        spec: &AnonymizationSpec,
        task_kind: TaskKind,
        input: FileRecord,
        output: FileRecord,
        dropped: usize,
        resources: &BTreeMap<&'static str, ResourceOrigin>,
    ) -> Self {
        let t = &spec.technique;
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            technique: t.code().to_string(),
            label: t.to_string(),
            p: t.percent().map(|p| p.get()),
            x: t.factor(),
            n: t.repetitions(),
            grouping: t.grouping().map(|g| g.as_str().to_string()),
            seed: spec.seed,
            task_kind: task_kind.as_str().to_string(),
            input,
            output,
            dropped,
            resources: resources.iter().map(|(k, v)| (k.to_string(), v.into())).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `<output>.manifest.json`, next to the output corpus.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(OsString::from).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

pub fn write_manifest(manifest: &Manifest, output: &Path) -> Result<PathBuf> {
    let path = manifest_path(output);
    write_atomic(&path, manifest.to_json().as_bytes())?;
    Ok(path)
}
