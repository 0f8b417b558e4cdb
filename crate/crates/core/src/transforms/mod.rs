//! The anonymization techniques.
//!
//! | family       | technique | function                |
//! |--------------|-----------|-------------------------|
//! | suppression  | DeI       | [`deidentify`]          |
//! | suppression  | MNr       | [`mask_numbers`]        |
//! | perturbation | ShS       | [`shuffle_sentences`]   |
//! | perturbation | RaS       | [`random_swap`]         |
//! | substitution | SyR       | [`synonym_replace`]     |
//! | substitution | CnR       | [`concept_replace`]     |
//! | aggregation  | AgX       | [`aggregate`]           |
//! | aggregation  | AAgX      | [`augmented_aggregate`] |
//!
//! Every function is deterministic in its inputs. Per-document techniques
//! draw from a generator seeded with `derive_seed(master_seed, doc.id)`; the
//! aggregation techniques take the master seed directly.

mod aggregation;
mod perturbation;
mod substitution;
mod suppression;

pub use aggregation::{aggregate, augmented_aggregate, Aggregated};
pub use perturbation::{random_swap, shuffle_sentences};
pub use substitution::{concept_replace, synonym_replace, synonym_replace_positions};
pub use suppression::{deidentify, mask_numbers, DEID_MASK, NUMBER_MASK};

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::document::{Corpus, CorpusError, Document};
use crate::lexicon::{ConceptDictionary, NumberWordList, PhiRuleSet, StopwordSet, SynonymLexicon};
use crate::seed::{derive_seed, seeded_rng};
use crate::sentence::AbbreviationGuard;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("unknown technique `{0}`")]
    UnknownTechnique(String),
    #[error("percentage must be in 1..=100, got {0}")]
    InvalidPercent(u32),
    #[error("aggregation factor must be at least 2, got {0}")]
    InvalidFactor(usize),
    #[error("repetitions must be at least 1, got {0}")]
    InvalidRepetitions(usize),
    #[error("technique {technique} requires parameter `{param}`")]
    MissingParameter { technique: &'static str, param: &'static str },
    #[error("technique {technique} does not take parameter `{param}`")]
    UnexpectedParameter { technique: &'static str, param: &'static str },
    #[error("unknown grouping `{0}`")]
    UnknownGrouping(String),
    #[error("technique {technique} requires resource `{resource}`")]
    MissingResource { technique: &'static str, resource: &'static str },
    #[error("technique {0} works on whole corpora, not single documents")]
    CorpusLevel(&'static str),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Share of eligible tokens, 1 to 100.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Percent(u32);

impl Percent {
    pub fn new(p: u32) -> Result<Self, SpecError> {
        if (1..=100).contains(&p) {
            Ok(Percent(p))
        } else {
            Err(SpecError::InvalidPercent(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `round(p * count / 100)`, halves rounded up.
    pub fn of(self, count: usize) -> usize {
        ((self.0 as u64 * count as u64 + 50) / 100) as usize
    }
}

/// How aggregation forms groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grouping {
    /// Only documents with exactly the same labels are merged.
    ByLabel,
    Random,
}

impl Grouping {
    pub fn as_str(self) -> &'static str {
        match self {
            Grouping::ByLabel => "by-label",
            Grouping::Random => "random",
        }
    }
}

impl core::str::FromStr for Grouping {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "by-label" | "label" => Ok(Grouping::ByLabel),
            "random" => Ok(Grouping::Random),
            _ => Err(SpecError::UnknownGrouping(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Technique {
    Deidentify,
    MaskNumbers,
    ShuffleSentences,
    RandomSwap { percent: Percent },
    SynonymReplace { percent: Percent },
    ConceptReplace,
    Aggregate { factor: usize, grouping: Grouping },
    AugmentedAggregate { factor: usize, repetitions: usize, grouping: Grouping },
}

impl Technique {
    /// Builds a technique from its short code (`dei`, `mnr`, `shs`, `ras`,
    /// `syr`, `cnr`, `agx`, `aagx`) and optional parameters, rejecting
    /// parameters the technique does not take.
    pub fn from_parts(
        code: &str,
        percent: Option<u32>,
        factor: Option<usize>,
        repetitions: Option<usize>,
        grouping: Grouping,
    ) -> Result<Self, SpecError> {
        let code = code.to_ascii_lowercase();
        let name: &'static str = match code.as_str() {
            "dei" => "DeI",
            "mnr" => "MNr",
            "shs" => "ShS",
            "ras" => "RaS",
            "syr" => "SyR",
            "cnr" => "CnR",
            "agx" | "ag" => "AgX",
            "aagx" | "aag" => "AAgX",
            _ => return Err(SpecError::UnknownTechnique(code)),
        };
        let takes_p = matches!(name, "RaS" | "SyR");
        let takes_x = matches!(name, "AgX" | "AAgX");
        let takes_n = name == "AAgX";
        for (given, takes, param) in [
            (percent.is_some(), takes_p, "p"),
            (factor.is_some(), takes_x, "x"),
            (repetitions.is_some(), takes_n, "n"),
        ] {
            if given && !takes {
                return Err(SpecError::UnexpectedParameter { technique: name, param });
            }
            if !given && takes {
                return Err(SpecError::MissingParameter { technique: name, param });
            }
        }
        let percent = percent.map(Percent::new).transpose()?;
        if let Some(x) = factor {
            if x < 2 {
                return Err(SpecError::InvalidFactor(x));
            }
        }
        if let Some(n) = repetitions {
            if n < 1 {
                return Err(SpecError::InvalidRepetitions(n));
            }
        }
        Ok(match name {
            "DeI" => Technique::Deidentify,
            "MNr" => Technique::MaskNumbers,
            "ShS" => Technique::ShuffleSentences,
            "RaS" => Technique::RandomSwap { percent: percent.unwrap() },
            "SyR" => Technique::SynonymReplace { percent: percent.unwrap() },
            "CnR" => Technique::ConceptReplace,
            "AgX" => Technique::Aggregate { factor: factor.unwrap(), grouping },
            _ => Technique::AugmentedAggregate {
                factor: factor.unwrap(),
                repetitions: repetitions.unwrap(),
                grouping,
            },
        })
    }

    pub fn code(&self) -> &'static str {
        match self {
            Technique::Deidentify => "dei",
            Technique::MaskNumbers => "mnr",
            Technique::ShuffleSentences => "shs",
            Technique::RandomSwap { .. } => "ras",
            Technique::SynonymReplace { .. } => "syr",
            Technique::ConceptReplace => "cnr",
            Technique::Aggregate { .. } => "agx",
            Technique::AugmentedAggregate { .. } => "aagx",
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Technique::Deidentify => "DeI",
            Technique::MaskNumbers => "MNr",
            Technique::ShuffleSentences => "ShS",
            Technique::RandomSwap { .. } => "RaS",
            Technique::SynonymReplace { .. } => "SyR",
            Technique::ConceptReplace => "CnR",
            Technique::Aggregate { .. } => "AgX",
            Technique::AugmentedAggregate { .. } => "AAgX",
        }
    }

    pub fn percent(&self) -> Option<Percent> {
        match *self {
            Technique::RandomSwap { percent } | Technique::SynonymReplace { percent } => Some(percent),
            _ => None,
        }
    }

    pub fn factor(&self) -> Option<usize> {
        match *self {
            Technique::Aggregate { factor, .. } | Technique::AugmentedAggregate { factor, .. } => {
                Some(factor)
            }
            _ => None,
        }
    }

    pub fn repetitions(&self) -> Option<usize> {
        match *self {
            Technique::AugmentedAggregate { repetitions, .. } => Some(repetitions),
            _ => None,
        }
    }

    pub fn grouping(&self) -> Option<Grouping> {
        match *self {
            Technique::Aggregate { grouping, .. } | Technique::AugmentedAggregate { grouping, .. } => {
                Some(grouping)
            }
            _ => None,
        }
    }

    pub fn is_corpus_level(&self) -> bool {
        matches!(self, Technique::Aggregate { .. } | Technique::AugmentedAggregate { .. })
    }
}

/// Short labels as used in result tables: `DeI`, `RaS 20%`, `Ag3`, `AAg3`.
impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Technique::RandomSwap { percent } | Technique::SynonymReplace { percent } => {
                write!(f, "{} {}%", self.name(), percent.get())
            }
            Technique::Aggregate { factor, .. } => write!(f, "Ag{factor}"),
            Technique::AugmentedAggregate { factor, .. } => write!(f, "AAg{factor}"),
            _ => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AnonymizationSpec {
    pub technique: Technique,
    pub seed: u64,
}

impl AnonymizationSpec {
    pub fn new(technique: Technique, seed: u64) -> Self {
        AnonymizationSpec { technique, seed }
    }
}

/// Linguistic resources a run may need. Techniques check for what they use
/// before touching any document.
#[derive(Debug, Clone, Default)]
pub struct Resources {
    pub phi_rules: Option<PhiRuleSet>,
    pub synonyms: Option<SynonymLexicon>,
    pub stopwords: Option<StopwordSet>,
    pub concepts: Option<ConceptDictionary>,
    pub number_words: Option<NumberWordList>,
    pub abbreviations: AbbreviationGuard,
}

impl Resources {
    /// Shipped PHI rules, stopwords, number words and abbreviations. There is
    /// no shipped synonym lexicon or concept dictionary.
    pub fn builtin() -> Self {
        Resources {
            phi_rules: Some(PhiRuleSet::builtin()),
            synonyms: None,
            stopwords: Some(StopwordSet::builtin()),
            concepts: None,
            number_words: Some(NumberWordList::builtin()),
            abbreviations: AbbreviationGuard::builtin(),
        }
    }

    /// Fails with the first resource `technique` needs but lacks.
    pub fn check(&self, technique: &Technique) -> Result<(), SpecError> {
        let missing = |resource| SpecError::MissingResource {
            technique: technique.name(),
            resource,
        };
        match technique {
            Technique::Deidentify if self.phi_rules.is_none() => Err(missing("phi_rules")),
            Technique::MaskNumbers if self.number_words.is_none() => Err(missing("number_words")),
            Technique::SynonymReplace { .. } if self.synonyms.is_none() => Err(missing("lexicon")),
            Technique::SynonymReplace { .. } if self.stopwords.is_none() => Err(missing("stopwords")),
            Technique::ConceptReplace if self.concepts.is_none() => Err(missing("concepts")),
            _ => Ok(()),
        }
    }
}

/// Uniform index below `n` (which must be positive). Draws a `u64` so the
/// stream does not depend on the platform's pointer width.
pub(crate) fn pick<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    rng.gen_range(0..n as u64) as usize
}

/// Applies a per-document technique to one document.
pub fn transform_document(
    doc: &Document,
    spec: &AnonymizationSpec,
    resources: &Resources,
) -> Result<Document, SpecError> {
    resources.check(&spec.technique)?;
    let mut rng = seeded_rng(derive_seed(spec.seed, &doc.id));
    let out = match spec.technique {
        Technique::Deidentify => deidentify(doc, resources.phi_rules.as_ref().unwrap()),
        Technique::MaskNumbers => mask_numbers(doc, resources.number_words.as_ref().unwrap()),
        Technique::ShuffleSentences => shuffle_sentences(doc, &resources.abbreviations, &mut rng),
        Technique::RandomSwap { percent } => random_swap(doc, percent, &mut rng),
        Technique::SynonymReplace { percent } => synonym_replace(
            doc,
            percent,
            resources.synonyms.as_ref().unwrap(),
            resources.stopwords.as_ref().unwrap(),
            &mut rng,
        ),
        Technique::ConceptReplace => concept_replace(doc, resources.concepts.as_ref().unwrap(), &mut rng),
        Technique::Aggregate { .. } | Technique::AugmentedAggregate { .. } => {
            return Err(SpecError::CorpusLevel(spec.technique.name()))
        }
    };
    Ok(out)
}

/// Runs `spec` over a corpus. Per-document techniques keep document order;
/// aggregation returns the merged corpus.
pub fn apply(corpus: &Corpus, spec: &AnonymizationSpec, resources: &Resources) -> Result<Aggregated, SpecError> {
    resources.check(&spec.technique)?;
    match spec.technique {
        Technique::Aggregate { factor, grouping } => aggregate(corpus, factor, grouping, spec.seed),
        Technique::AugmentedAggregate {
            factor,
            repetitions,
            grouping,
        } => augmented_aggregate(corpus, factor, repetitions, grouping, spec.seed),
        _ => {
            let docs = corpus
                .iter()
                .map(|d| transform_document(d, spec, resources))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Aggregated {
                corpus: Corpus::new(docs, corpus.task_kind())?,
                dropped: 0,
            })
        }
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
