//! Run configuration: command-line flags plus an optional `key = value` file
//! whose entries override the flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anontext_core::{Grouping, TaskKind, Technique};

use crate::error::{Error, Result};
use crate::resources::ResourcePaths;

/// Every setting a command may read. All fields are optional here; each
/// command validates the ones it needs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub originals: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub technique: Option<String>,
    pub techniques: Vec<String>,
    pub p: Option<u32>,
    pub x: Option<usize>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub grouping: Option<Grouping>,
    pub task_kind: Option<TaskKind>,
    pub resources: ResourcePaths,
    pub workers: Option<usize>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| Error::config(key, format!("cannot parse `{value}`: {e}")))
}

impl RunConfig {
    /// Parses a config file body. Relative paths are resolved against
    /// `base_dir`.
    pub fn parse(source: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg = RunConfig::default();
        for (i, raw) in source.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}", i + 1), "expected `key = value`"))?;
            cfg.set(key.trim(), value.trim(), base_dir)
                .map_err(|e| match e {
                    Error::Config { field, message } => Error::config(field, format!("line {}: {message}", i + 1)),
                    other => other,
                })?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let source = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        Self::parse(&source, base)
    }

    fn set(&mut self, key: &str, value: &str, base_dir: &Path) -> Result<()> {
        let path = || Some(base_dir.join(value));
        match key {
            "input" | "in" => self.input = path(),
            "output" | "out" => self.output = path(),
            "originals" => self.originals = path(),
            "report" => self.report = path(),
            "technique" => self.technique = Some(value.to_string()),
            "techniques" => {
                self.techniques = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            }
            "p" => self.p = Some(parse_value(key, value)?),
            "x" => self.x = Some(parse_value(key, value)?),
            "n" => self.n = Some(parse_value(key, value)?),
            "seed" => self.seed = Some(parse_value(key, value)?),
            "grouping" => self.grouping = Some(parse_value(key, value)?),
            "task_kind" => self.task_kind = Some(parse_value(key, value)?),
            "workers" => self.workers = Some(parse_value(key, value)?),
            "phi_rules" => self.resources.phi_rules = path(),
            "lexicon" => self.resources.lexicon = path(),
            "concepts" => self.resources.concepts = path(),
            "stopwords" => self.resources.stopwords = path(),
            "number_words" => self.resources.number_words = path(),
            "abbreviations" => self.resources.abbreviations = path(),
            _ => return Err(Error::config(key, "unknown key")),
        }
        Ok(())
    }

    /// `other`'s set fields replace ours.
    pub fn overridden_by(mut self, other: RunConfig) -> Self {
        fn take<T>(mine: &mut Option<T>, theirs: Option<T>) {
            if theirs.is_some() {
                *mine = theirs;
            }
        }
        take(&mut self.input, other.input);
        take(&mut self.output, other.output);
        take(&mut self.originals, other.originals);
        take(&mut self.report, other.report);
        take(&mut self.technique, other.technique);
        if !other.techniques.is_empty() {
            self.techniques = other.techniques;
        }
        take(&mut self.p, other.p);
        take(&mut self.x, other.x);
        take(&mut self.n, other.n);
        take(&mut self.seed, other.seed);
        take(&mut self.grouping, other.grouping);
        take(&mut self.task_kind, other.task_kind);
        take(&mut self.workers, other.workers);
        let (r, o) = (&mut self.resources, other.resources);
        take(&mut r.phi_rules, o.phi_rules);
        take(&mut r.lexicon, o.lexicon);
        take(&mut r.concepts, o.concepts);
        take(&mut r.stopwords, o.stopwords);
        take(&mut r.number_words, o.number_words);
        take(&mut r.abbreviations, o.abbreviations);
        self
    }

    /// The config as a `key = value` file body (only set fields).
    pub fn to_config_string(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push_str(&format!("{k} = {v}\n"));
            }
        };
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        put("input", path(&self.input));
        put("output", path(&self.output));
        put("originals", path(&self.originals));
        put("report", path(&self.report));
        put("technique", self.technique.clone());
        put("techniques", (!self.techniques.is_empty()).then(|| self.techniques.join(",")));
        put("p", self.p.map(|v| v.to_string()));
        put("x", self.x.map(|v| v.to_string()));
        put("n", self.n.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        put("grouping", self.grouping.map(|g| g.as_str().to_string()));
        put("task_kind", self.task_kind.map(|k| k.as_str().to_string()));
        put("workers", self.workers.map(|v| v.to_string()));
        for (name, p) in self.resources.iter() {
            put(name, Some(p.display().to_string()));
        }
        out
    }

    pub fn require_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::config("seed", "required for transform commands (no default seed)"))
    }

    pub fn require_path<'a>(field: &str, value: &'a Option<PathBuf>) -> Result<&'a Path> {
        value.as_deref().ok_or_else(|| Error::config(field, "required"))
    }

    /// Fails naming the first input or resource path that does not exist.
    pub fn check_paths_exist(&self) -> Result<()> {
        let inputs = [("input", &self.input), ("originals", &self.originals)];
        let named = inputs
            .iter()
            .filter_map(|(n, p)| p.as_deref().map(|p| (*n, p)))
            .chain(self.resources.iter());
        for (name, path) in named {
            if !path.exists() {
                return Err(Error::config(name, format!("{} does not exist", path.display())));
            }
        }
        Ok(())
    }

    /// Grouping for aggregation: the configured one, else by label for
    /// single-label corpora and random otherwise.
    pub fn grouping_for(&self, kind: TaskKind) -> Grouping {
        self.grouping.unwrap_or(match kind {
            TaskKind::SingleLabel => Grouping::ByLabel,
            _ => Grouping::Random,
        })
    }

    /// Builds the single technique of an `anonymize` run.
    pub fn technique_for(&self, kind: TaskKind) -> Result<Technique> {
        let code = self
            .technique
            .as_deref()
            .ok_or_else(|| Error::config("technique", "required"))?;
        Ok(Technique::from_parts(code, self.p, self.x, self.n, self.grouping_for(kind))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let src = "# run\ntechnique = ras\np = 20\nseed=7\nin = data/train.jsonl\nlexicon = syn.tsv\ngrouping = by-label\ntechniques = shs, ag2\n";
        let cfg = RunConfig::parse(src, Path::new("")).unwrap();
        assert_eq!(cfg.technique.as_deref(), Some("ras"));
        assert_eq!(cfg.p, Some(20));
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.input, Some(PathBuf::from("data/train.jsonl")));
        assert_eq!(cfg.resources.lexicon, Some(PathBuf::from("syn.tsv")));
        assert_eq!(cfg.grouping, Some(Grouping::ByLabel));
        assert_eq!(cfg.techniques, ["shs", "ag2"]);
        let again = RunConfig::parse(&cfg.to_config_string(), Path::new("")).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn relative_paths_follow_config_dir() {
        let cfg = RunConfig::parse("out = o.jsonl\n", Path::new("/runs/a")).unwrap();
        assert_eq!(cfg.output, Some(PathBuf::from("/runs/a/o.jsonl")));
    }

    #[test]
    fn errors_name_field() {
        for (src, field) in [
            ("p = lots\n", "p"),
            ("colour = red\n", "colour"),
            ("grouping = sideways\n", "grouping"),
            ("technique\n", "line 1"),
        ] {
            let msg = RunConfig::parse(src, Path::new("")).unwrap_err().to_string();
            assert!(msg.contains(field), "{msg}");
        }
    }

    #[test]
    fn file_overrides_flags() {
        let flags = RunConfig {
            seed: Some(1),
            p: Some(20),
            technique: Some("ras".into()),
            ..Default::default()
        };
        let file = RunConfig {
            seed: Some(9),
            ..Default::default()
        };
        let merged = flags.overridden_by(file);
        assert_eq!(merged.seed, Some(9));
        assert_eq!(merged.p, Some(20));
    }

    #[test]
    fn seed_is_mandatory() {
        let msg = RunConfig::default().require_seed().unwrap_err().to_string();
        assert!(msg.contains("seed"));
    }

    #[test]
    fn default_grouping_follows_task_kind() {
        let cfg = RunConfig::default();
        assert_eq!(cfg.grouping_for(TaskKind::SingleLabel), Grouping::ByLabel);
        assert_eq!(cfg.grouping_for(TaskKind::MultiLabel), Grouping::Random);
    }
}
