//! Synthetic clinical-style corpora for tests and benchmarks.
//!
//! Documents are built from sentence templates over a pseudo-word
//! vocabulary. Word choice follows a Zipf law, every document also draws a
//! handful of topic words of its own, and lengths are log-normal, so corpora
//! look like real notes to the attack: a shared head vocabulary, distinctive
//! tails and very uneven sizes. Each document carries PHI (a name, a date, a
//! record number, sometimes an age or a phone number), numbers, number words
//! and concept mentions, and a smoking-status label.
//!
//! The generator also writes a synonym lexicon covering the general
//! vocabulary and a concept dictionary covering the mentions, so every
//! technique can run on its output.

use std::collections::HashSet;

use anontext_core::lexicon::{DEFAULT_NUMBER_WORDS, DEFAULT_STOPWORDS};
use anontext_core::sentence::DEFAULT_ABBREVIATIONS;
use anontext_core::{
    derive_seed, seeded_rng, tokenize, Corpus, DocRng, Document, PhiRuleSet, SemanticGroup, TaskKind,
    WordSet,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, LogNormal, Zipf};

use crate::error::{Error, Result};

/// Labels, with their sampling weights.
pub const LABELS: [(&str, u32); 4] = [
    ("CURRENT SMOKER", 15),
    ("PAST SMOKER", 15),
    ("NON-SMOKER", 20),
    ("UNKNOWN", 50),
];

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub documents: usize,
    pub seed: u64,
    /// Size of the shared (Zipf-distributed) vocabulary.
    pub vocabulary: usize,
    pub zipf_exponent: f64,
    /// Words drawn from a large pool for each document alone.
    pub topic_words: usize,
    /// Share of sentence words drawn from the document's topic words.
    pub topic_rate: f64,
    /// Median document length in tokens.
    pub tokens: usize,
    /// Spread (log-space standard deviation) of document lengths.
    pub length_spread: f64,
    /// Minimum distinct words per document.
    pub min_distinct: usize,
    pub concepts: usize,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            documents: 100,
            seed: 0,
            vocabulary: 600,
            zipf_exponent: 0.5,
            topic_words: 20,
            topic_rate: 0.02,
            tokens: 600,
            length_spread: 0.7,
            min_distinct: 200,
            concepts: 150,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Synthetic {
    pub corpus: Corpus,
    /// Synonym lexicon file body.
    pub lexicon: String,
    /// Concept dictionary file body.
    pub concepts: String,
}

const FREQUENT_STOPWORDS: [&str; 24] = [
    "the", "of", "and", "to", "a", "in", "with", "for", "was", "is", "on", "no", "at", "as", "by", "he",
    "she", "has", "not", "from", "this", "had", "be", "are",
];
const ONSETS: [&str; 16] = [
    "b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st",
];
const VOWELS: [&str; 5] = ["a", "e", "i", "o", "u"];
const CODAS: [&str; 5] = ["n", "r", "l", "s", "x"];
const TEMPLATE_WORDS: [&str; 20] = [
    "was", "seen", "mrn", "patient", "current", "past", "non", "smoker", "smokes", "history", "mg",
    "times", "daily", "year", "old", "call", "reports", "denies", "never", "quit",
];

struct WordFactory {
    taken: HashSet<String>,
}

impl WordFactory {
    fn new() -> Self {
        let mut taken: HashSet<String> = HashSet::new();
        let lists = [DEFAULT_STOPWORDS, DEFAULT_NUMBER_WORDS, DEFAULT_ABBREVIATIONS];
        for line in lists.iter().flat_map(|l| l.lines()) {
            let w = line.trim().trim_end_matches('.').to_lowercase();
            if !w.is_empty() && !w.starts_with('#') {
                taken.insert(w);
            }
        }
        taken.extend(PhiRuleSet::builtin().names().map(str::to_lowercase));
        taken.extend(TEMPLATE_WORDS.iter().map(|w| w.to_string()));
        WordFactory { taken }
    }

    fn fresh(&mut self, rng: &mut DocRng) -> String {
        loop {
            let syllables = rng.gen_range(2..=4);
            let mut w = String::new();
            for _ in 0..syllables {
                w.push_str(ONSETS.choose(rng).unwrap());
                w.push_str(VOWELS.choose(rng).unwrap());
                if rng.gen_bool(0.2) {
                    w.push_str(CODAS.choose(rng).unwrap());
                }
            }
            if self.taken.insert(w.clone()) {
                return w;
            }
        }
    }

    fn many(&mut self, n: usize, rng: &mut DocRng) -> Vec<String> {
        (0..n).map(|_| self.fresh(rng)).collect()
    }
}

struct Vocabulary {
    general: Vec<String>,
    topics: Vec<String>,
    mentions: Vec<String>,
    names: Vec<String>,
    zipf: Zipf<f64>,
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

fn spelled(n: u32) -> &'static str {
    ["one", "two", "three", "four", "five", "six", "seven", "eight"][(n as usize - 1) % 8]
}

impl Vocabulary {
    fn general_word(&self, rng: &mut DocRng) -> &str {
        let rank = self.zipf.sample(rng) as usize;
        &self.general[rank.clamp(1, self.general.len()) - 1]
    }

    fn sentence(&self, topics: &[&str], topic_rate: f64, rng: &mut DocRng) -> String {
        let mut words: Vec<String> = Vec::new();
        let push_plain = |words: &mut Vec<String>, rng: &mut DocRng, count: std::ops::Range<usize>| {
            for _ in 0..rng.gen_range(count) {
                let r: f64 = rng.gen();
                let w = if r < 0.3 {
                    FREQUENT_STOPWORDS.choose(rng).unwrap()
                } else if r < 0.3 + topic_rate {
                    topics.choose(rng).unwrap()
                } else {
                    self.general_word(rng)
                };
                words.push(w.to_string());
            }
        };
        match rng.gen_range(0..20) {
            0 | 1 => {
                let dose = rng.gen_range(1..100) * 5;
                push_plain(&mut words, rng, 2..3);
                words.push(format!("{dose} mg"));
                words.push(format!("{} times daily", spelled(rng.gen_range(1..5))));
            }
            2 | 3 => {
                words.push("history of".into());
                words.push(self.mentions.choose(rng).unwrap().clone());
                push_plain(&mut words, rng, 3..8);
            }
            4 => {
                words.push(format!("{}-year-old", rng.gen_range(18..95)));
                words.push("patient reports".into());
                push_plain(&mut words, rng, 3..8);
            }
            5 => {
                push_plain(&mut words, rng, 3..6);
                words.push(format!("call {}-555-{:04}", rng.gen_range(200..999), rng.gen_range(0..10000)));
            }
            _ => push_plain(&mut words, rng, 6..17),
        }
        let mut s = capitalize(&words.join(" "));
        s.push('.');
        s
    }

    fn document(&self, id: String, label: &str, cfg: &SynthConfig, rng: &mut DocRng) -> Document {
        let topics: Vec<&str> = self
            .topics
            .choose_multiple(rng, cfg.topic_words.min(self.topics.len()))
            .map(String::as_str)
            .collect();
        let target = LogNormal::new((cfg.tokens as f64).ln(), cfg.length_spread)
            .expect("valid log-normal")
            .sample(rng)
            .round() as usize;

        let first = self.names.choose(rng).unwrap();
        let last = self.names.choose(rng).unwrap();
        let mut sentences = vec![
            format!(
                "{first} {last} was seen on {:02}/{:02}/{}.",
                rng.gen_range(1..13),
                rng.gen_range(1..29),
                rng.gen_range(1990..2020)
            ),
            format!("MRN: {}.", rng.gen_range(1_000_000..10_000_000)),
        ];
        sentences.push(
            match label {
                "CURRENT SMOKER" => "Patient smokes daily.",
                "PAST SMOKER" => "Patient quit smoking years ago.",
                "NON-SMOKER" => "Patient never smoked.",
                _ => "Patient reports no concerns.",
            }
            .to_string(),
        );

        let mut tokens: usize = sentences.iter().map(|s| tokenize(s).len()).sum();
        let mut words: HashSet<String> = HashSet::new();
        while tokens < target || words.len() < cfg.min_distinct {
            let s = self.sentence(&topics, cfg.topic_rate, rng);
            tokens += tokenize(&s).len();
            words.extend(WordSet::from_text(&s).iter().map(String::from));
            sentences.push(s);
        }
        Document::new(id, sentences.join(" ")).with_labels([label])
    }
}

fn check(cfg: &SynthConfig) -> Result<()> {
    let bad = |field: &str, message: &str| Err(Error::config(field, message));
    if cfg.documents == 0 {
        return bad("documents", "must be positive");
    }
    if cfg.vocabulary < 2 * cfg.min_distinct {
        return bad("vocabulary", "must be at least twice min_distinct");
    }
    if cfg.tokens == 0 || !(cfg.length_spread >= 0.0 && cfg.length_spread.is_finite()) {
        return bad("tokens", "length must be positive with a finite spread");
    }
    if !(0.0..=0.7).contains(&cfg.topic_rate) {
        return bad("topic_rate", "must be in 0..=0.7");
    }
    if !(cfg.zipf_exponent > 0.0 && cfg.zipf_exponent.is_finite()) {
        return bad("zipf_exponent", "must be positive");
    }
    if cfg.concepts == 0 || cfg.topic_words == 0 {
        return bad("concepts", "concepts and topic words must be positive");
    }
    Ok(())
}

/// Generates a corpus and its resources. Deterministic in `cfg`.
pub fn generate(cfg: &SynthConfig) -> Result<Synthetic> {
    check(cfg)?;
    let mut rng = seeded_rng(derive_seed(cfg.seed, "vocabulary"));
    let mut factory = WordFactory::new();
    let general = factory.many(cfg.vocabulary, &mut rng);
    let topics = factory.many((cfg.documents * cfg.topic_words / 2).max(2000), &mut rng);

    let mut lexicon = String::new();
    for w in &general {
        let n = rng.gen_range(1..=3);
        lexicon.push_str(&format!("{w}\t{}\n", factory.many(n, &mut rng).join(",")));
    }

    let groups = [SemanticGroup::SignSymptom, SemanticGroup::DiseaseDisorder, SemanticGroup::Medication];
    let mut concepts = String::new();
    let mut mentions = Vec::new();
    for c in 0..cfg.concepts {
        let forms: Vec<String> = (0..rng.gen_range(2..=4))
            .map(|_| factory.many(rng.gen_range(1..=2), &mut rng).join(" "))
            .collect();
        concepts.push_str(&format!("C{c:05}\t{}\t{}\n", groups[c % 3].as_str(), forms.join("|")));
        mentions.extend(forms);
    }

    let vocab = Vocabulary {
        general,
        topics,
        mentions,
        names: PhiRuleSet::builtin().names().map(String::from).collect(),
        zipf: Zipf::new(cfg.vocabulary as u64, cfg.zipf_exponent).expect("checked parameters"),
    };
    let label_weights: Vec<u32> = LABELS.iter().map(|(_, w)| *w).collect();
    let label_dist = rand::distributions::WeightedIndex::new(&label_weights).expect("positive weights");

    let docs = (0..cfg.documents)
        .map(|i| {
            let id = format!("doc{i:05}");
            let mut rng = seeded_rng(derive_seed(cfg.seed, &id));
            let label = LABELS[label_dist.sample(&mut rng)].0;
            vocab.document(id, label, cfg, &mut rng)
        })
        .collect();
    Ok(Synthetic {
        corpus: Corpus::new(docs, TaskKind::SingleLabel).expect("ids are unique"),
        lexicon,
        concepts,
    })
}
