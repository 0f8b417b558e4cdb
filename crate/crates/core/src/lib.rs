//! Deterministic anonymization transforms for clinical text, and a word-level
//! Jaccard re-identification attack to measure how well each one hides the
//! source document.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, parallel execution
//! and the command line live in the `anontext` companion crate.
//!
//! ```
//! use anontext_core::{tokenize, TokenKind};
//!
//! let tokens = tokenize("Pt. denies CP");
//! let kinds: Vec<_> = tokens.iter().map(|t| t.kind).collect();
//! assert_eq!(kinds, [TokenKind::Word, TokenKind::Punct, TokenKind::Word, TokenKind::Word]);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod attack;
pub mod document;
pub mod lexicon;
pub mod seed;
pub mod sentence;
pub mod token;
pub mod transforms;

pub use attack::{
    jaccard_similarity, rank_originals, run_attack, AttackError, AttackIndex, AttackReport,
    DocOutcome, WordSet,
};
pub use document::{Corpus, CorpusError, Document, TaskKind};
pub use lexicon::{
    match_concepts, ConceptDictionary, ConceptMatch, LexiconError, NumberWordList, PhiRuleSet,
    SemanticGroup, StopwordSet, SynonymLexicon,
};
pub use seed::{derive_seed, seeded_rng, DocRng};
pub use sentence::{split_sentences, AbbreviationGuard};
pub use token::{tokenize, Token, TokenKind};
pub use transforms::{
    aggregate, apply, augmented_aggregate, concept_replace, deidentify, mask_numbers,
    random_swap, shuffle_sentences, synonym_replace, synonym_replace_positions, transform_document,
    Aggregated, AnonymizationSpec, Grouping, Percent, Resources, SpecError, Technique,
};
