//! The `anontext` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anontext_core::{AnonymizationSpec, AttackReport, Corpus, Grouping, TaskKind};
use clap::{Args, Parser, Subcommand};

use crate::atomic::write_atomic;
use crate::config::RunConfig;
use crate::corpus_io::{corpus_to_jsonl, load_corpus_with, parse_corpus_with};
use crate::error::{Error, Result};
use crate::manifest::{write_manifest, FileRecord, Manifest};
use crate::parallel::{apply_parallel, attack_parallel, thread_pool};
use crate::report::{format_table, write_report};
use crate::resources::{load_resources, sha256_hex, ResourcePaths};
use crate::sweep::{expand_cells, run_sweep, SweepResult, SweepSettings};
use crate::synth::{generate, SynthConfig};

#[derive(Debug, Parser)]
#[command(name = "anontext", version, about = "Anonymize clinical text corpora and measure re-identification risk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply one technique to a corpus and write the result with a manifest.
    Anonymize(RunArgs),
    /// Link anonymized documents back to the originals.
    Attack(RunArgs),
    /// Anonymize and attack once per technique; print one table.
    Sweep(RunArgs),
    /// Write a synthetic corpus plus a matching synonym lexicon and concept
    /// dictionary.
    GenSynthetic(SynthArgs),
}

/// Flags shared by the corpus commands. Values in `--config` win.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// `key = value` file; its entries override flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input corpus (the anonymized corpus for `attack`).
    #[arg(long = "in", visible_alias = "input")]
    pub input: Option<PathBuf>,
    /// Output corpus (`anonymize`) or output directory (`sweep`).
    #[arg(long = "out", visible_alias = "output")]
    pub output: Option<PathBuf>,
    /// Original corpus (`attack`).
    #[arg(long)]
    pub originals: Option<PathBuf>,
    /// Attack report path (`attack`).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// dei, mnr, shs, ras, syr, cnr, agx or aagx.
    #[arg(long)]
    pub technique: Option<String>,
    /// Sweep cells, comma separated (`ras20`, `ag3`, ...) or `all`.
    #[arg(long, value_delimiter = ',')]
    pub techniques: Vec<String>,
    /// Percentage for RaS and SyR.
    #[arg(short = 'p', long)]
    pub p: Option<u32>,
    /// Aggregation factor.
    #[arg(short = 'x', long)]
    pub x: Option<usize>,
    /// AAgX repetitions.
    #[arg(short = 'n', long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// by-label or random.
    #[arg(long)]
    pub grouping: Option<Grouping>,
    /// single-label, multi-label or unlabeled; inferred from labels if unset.
    #[arg(long)]
    pub task_kind: Option<TaskKind>,
    #[arg(long)]
    pub phi_rules: Option<PathBuf>,
    /// Synonym lexicon.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Concept dictionary.
    #[arg(long)]
    pub concepts: Option<PathBuf>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub number_words: Option<PathBuf>,
    #[arg(long)]
    pub abbreviations: Option<PathBuf>,
    /// Worker threads; 0 or unset uses every core.
    #[arg(long)]
    pub workers: Option<usize>,
}

impl RunArgs {
    /// Flags merged with the config file, if any.
    pub fn resolve(&self) -> Result<RunConfig> {
        let flags = RunConfig {
            input: self.input.clone(),
            output: self.output.clone(),
            originals: self.originals.clone(),
            report: self.report.clone(),
            technique: self.technique.clone(),
            techniques: self.techniques.clone(),
            p: self.p,
            x: self.x,
            n: self.n,
            seed: self.seed,
            grouping: self.grouping,
            task_kind: self.task_kind,
            resources: ResourcePaths {
                phi_rules: self.phi_rules.clone(),
                lexicon: self.lexicon.clone(),
                concepts: self.concepts.clone(),
                stopwords: self.stopwords.clone(),
                number_words: self.number_words.clone(),
                abbreviations: self.abbreviations.clone(),
            },
            workers: self.workers,
        };
        match &self.config {
            Some(path) => Ok(flags.overridden_by(RunConfig::load(path)?)),
            None => Ok(flags),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    /// Output corpus.
    #[arg(long = "out")]
    pub output: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub documents: usize,
    #[arg(long, default_value_t = SynthConfig::default().vocabulary)]
    pub vocabulary: usize,
    #[arg(long, default_value_t = SynthConfig::default().topic_words)]
    pub topic_words: usize,
    #[arg(long, default_value_t = SynthConfig::default().topic_rate)]
    pub topic_rate: f64,
    #[arg(long, default_value_t = SynthConfig::default().zipf_exponent)]
    pub zipf_exponent: f64,
    /// Median document length in tokens.
    #[arg(long, default_value_t = SynthConfig::default().tokens)]
    pub tokens: usize,
    #[arg(long, default_value_t = SynthConfig::default().length_spread)]
    pub length_spread: f64,
    #[arg(long, default_value_t = SynthConfig::default().min_distinct)]
    pub min_distinct: usize,
    #[arg(long = "concept-count", default_value_t = SynthConfig::default().concepts)]
    pub concepts: usize,
    /// Synonym lexicon path; defaults to `<out>.synonyms.tsv`.
    #[arg(long)]
    pub lexicon_out: Option<PathBuf>,
    /// Concept dictionary path; defaults to `<out>.concepts.tsv`.
    #[arg(long)]
    pub concepts_out: Option<PathBuf>,
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.file_name().map(OsString::from).unwrap_or_default();
    name.push(suffix);
    path.with_file_name(name)
}

fn pool_for(cfg: &RunConfig) -> Result<rayon::ThreadPool> {
    thread_pool(cfg.workers.unwrap_or(0))
}

fn read_input(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

#[derive(Debug, Clone)]
pub struct AnonymizeOutcome {
    pub corpus: Corpus,
    pub manifest: Manifest,
    pub manifest_path: PathBuf,
}

/// Validates the config, transforms the input and writes the output corpus
/// and its manifest.
pub fn cmd_anonymize(cfg: &RunConfig) -> Result<AnonymizeOutcome> {
    let seed = cfg.require_seed()?;
    let input = RunConfig::require_path("input", &cfg.input)?;
    let output = RunConfig::require_path("output", &cfg.output)?;
    if cfg.technique.is_none() {
        return Err(Error::config("technique", "required"));
    }
    cfg.check_paths_exist()?;

    let loaded = load_resources(&cfg.resources)?;
    let source = read_input(input)?;
    let corpus = parse_corpus_with(&source, cfg.task_kind, input)?;
    let spec = AnonymizationSpec::new(cfg.technique_for(corpus.task_kind())?, seed);
    loaded.resources.check(&spec.technique)?;

    let pool = pool_for(cfg)?;
    let out = apply_parallel(&corpus, &spec, &loaded.resources, &pool)?;
    let body = corpus_to_jsonl(&out.corpus);
    write_atomic(output, body.as_bytes())?;

    let manifest = Manifest::new(
        &spec,
        corpus.task_kind(),
        FileRecord {
            path: input.display().to_string(),
            sha256: sha256_hex(source.as_bytes()),
            documents: corpus.len(),
        },
        FileRecord {
            path: output.display().to_string(),
            sha256: sha256_hex(body.as_bytes()),
            documents: out.corpus.len(),
        },
        out.dropped,
        &loaded.origins,
    );
    let manifest_path = write_manifest(&manifest, output)?;
    Ok(AnonymizeOutcome {
        corpus: out.corpus,
        manifest,
        manifest_path,
    })
}

/// Attacks `input` (anonymized) against `originals`, writes the report
/// (default `<input>.report.jsonl`) and returns it.
pub fn cmd_attack(cfg: &RunConfig) -> Result<AttackReport> {
    let input = RunConfig::require_path("input", &cfg.input)?;
    let originals_path = RunConfig::require_path("originals", &cfg.originals)?;
    cfg.check_paths_exist()?;
    let anonymized = load_corpus_with(input, None)?;
    let originals = load_corpus_with(originals_path, cfg.task_kind)?;
    let pool = pool_for(cfg)?;
    let report = attack_parallel(&anonymized, &originals, &pool)?;
    let report_path = cfg.report.clone().unwrap_or_else(|| with_suffix(input, ".report.jsonl"));
    write_report(&report, &report_path)?;
    Ok(report)
}

/// Runs every configured cell. When `output` is set it is used as a
/// directory for each cell's corpus, manifest and report plus the combined
/// `sweep.txt` and `sweep.jsonl`.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<SweepResult> {
    let seed = cfg.require_seed()?;
    let input = RunConfig::require_path("input", &cfg.input)?;
    let cells = expand_cells(&cfg.techniques)?;
    cfg.check_paths_exist()?;

    let loaded = load_resources(&cfg.resources)?;
    let source = read_input(input)?;
    let corpus = parse_corpus_with(&source, cfg.task_kind, input)?;
    let pool = pool_for(cfg)?;
    let settings = SweepSettings {
        seed,
        grouping: cfg.grouping_for(corpus.task_kind()),
        repetitions: cfg.n,
        resources: &loaded.resources,
        pool: &pool,
        keep_corpora: cfg.output.is_some(),
    };
    let mut result = run_sweep(&corpus, &cells, &settings);

    if let Some(dir) = &cfg.output {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for cell in &mut result.cells {
            let (Some(technique), Some(anonymized), Ok(report)) = (cell.technique, cell.anonymized.take(), &cell.outcome)
            else {
                continue;
            };
            let path = dir.join(format!("{}.jsonl", cell.cell.to_ascii_lowercase()));
            let body = corpus_to_jsonl(&anonymized);
            write_atomic(&path, body.as_bytes())?;
            let manifest = Manifest::new(
                &AnonymizationSpec::new(technique, seed),
                corpus.task_kind(),
                FileRecord {
                    path: input.display().to_string(),
                    sha256: sha256_hex(source.as_bytes()),
                    documents: corpus.len(),
                },
                FileRecord {
                    path: path.display().to_string(),
                    sha256: sha256_hex(body.as_bytes()),
                    documents: anonymized.len(),
                },
                cell.dropped,
                &loaded.origins,
            );
            write_manifest(&manifest, &path)?;
            write_report(report, &with_suffix(&path, ".report.jsonl"))?;
        }
        write_atomic(&dir.join("sweep.txt"), result.table().as_bytes())?;
        write_atomic(&dir.join("sweep.jsonl"), result.to_jsonl().as_bytes())?;
    }
    Ok(result)
}

/// Writes the synthetic corpus and its resources; returns their paths.
pub fn cmd_gen_synthetic(args: &SynthArgs) -> Result<[PathBuf; 3]> {
    let cfg = SynthConfig {
        documents: args.documents,
        seed: args.seed,
        vocabulary: args.vocabulary,
        topic_words: args.topic_words,
        topic_rate: args.topic_rate,
        zipf_exponent: args.zipf_exponent,
        tokens: args.tokens,
        length_spread: args.length_spread,
        min_distinct: args.min_distinct,
        concepts: args.concepts,
    };
    let data = generate(&cfg)?;
    let lexicon = args.lexicon_out.clone().unwrap_or_else(|| with_suffix(&args.output, ".synonyms.tsv"));
    let concepts = args.concepts_out.clone().unwrap_or_else(|| with_suffix(&args.output, ".concepts.tsv"));
    write_atomic(&args.output, corpus_to_jsonl(&data.corpus).as_bytes())?;
    write_atomic(&lexicon, data.lexicon.as_bytes())?;
    write_atomic(&concepts, data.concepts.as_bytes())?;
    Ok([args.output.clone(), lexicon, concepts])
}

fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Anonymize(args) => {
            let out = cmd_anonymize(&args.resolve()?)?;
            println!(
                "{}: {} documents -> {} ({} dropped); manifest {}",
                out.manifest.label,
                out.manifest.input.documents,
                out.manifest.output.documents,
                out.manifest.dropped,
                out.manifest_path.display()
            );
            Ok(0)
        }
        Command::Attack(args) => {
            let cfg = args.resolve()?;
            let report = cmd_attack(&cfg)?;
            let heading = cfg
                .input
                .as_deref()
                .and_then(Path::file_stem)
                .map_or_else(|| "attack".to_string(), |s| s.to_string_lossy().into_owned());
            print!("{}", format_table(&[(heading, Some(&report))]));
            Ok(0)
        }
        Command::Sweep(args) => {
            let result = cmd_sweep(&args.resolve()?)?;
            print!("{}", result.table());
            for cell in result.failed() {
                eprintln!("cell {} failed: {}", cell.cell, cell.outcome.as_ref().unwrap_err());
            }
            Ok(if result.any_failed() { 1 } else { 0 })
        }
        Command::GenSynthetic(args) => {
            let [corpus, lexicon, concepts] = cmd_gen_synthetic(args)?;
            println!(
                "wrote {}, {}, {}",
                corpus.display(),
                lexicon.display(),
                concepts.display()
            );
            Ok(0)
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
