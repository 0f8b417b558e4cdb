//! Loading resource files from disk, with digests for manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anontext_core::lexicon::{DEFAULT_NUMBER_WORDS, DEFAULT_PHI_RULES, DEFAULT_STOPWORDS};
use anontext_core::sentence::DEFAULT_ABBREVIATIONS;
use anontext_core::{
    AbbreviationGuard, ConceptDictionary, LexiconError, NumberWordList, PhiRuleSet, Resources,
    StopwordSet, SynonymLexicon,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Resource file locations. Unset PHI rules, stopwords, number words and
/// abbreviations fall back to the shipped lists; the synonym lexicon and the
/// concept dictionary have no default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResourcePaths {
    pub phi_rules: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub concepts: Option<PathBuf>,
    pub stopwords: Option<PathBuf>,
    pub number_words: Option<PathBuf>,
    pub abbreviations: Option<PathBuf>,
}

impl ResourcePaths {
    /// `(field name, path)` for every path that is set.
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Path)> {
        [
            ("phi_rules", &self.phi_rules),
            ("lexicon", &self.lexicon),
            ("concepts", &self.concepts),
            ("stopwords", &self.stopwords),
            ("number_words", &self.number_words),
            ("abbreviations", &self.abbreviations),
        ]
        .into_iter()
        .filter_map(|(name, p)| p.as_deref().map(|p| (name, p)))
    }
}

/// Where a loaded resource came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResourceOrigin {
    /// The file path as given, or `builtin`.
    pub source: String,
    pub sha256: String,
}

#[derive(Debug, Clone)]
pub struct LoadedResources {
    pub resources: Resources,
    pub origins: BTreeMap<&'static str, ResourceOrigin>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn lexicon_err(path: &Path) -> impl FnOnce(LexiconError) -> Error + '_ {
    move |source| Error::Lexicon {
        path: path.to_path_buf(),
        source,
    }
}

pub fn load_phi_rules(path: &Path) -> Result<PhiRuleSet> {
    PhiRuleSet::parse(&read(path)?).map_err(lexicon_err(path))
}

pub fn load_synonym_lexicon(path: &Path) -> Result<SynonymLexicon> {
    SynonymLexicon::parse(&read(path)?).map_err(lexicon_err(path))
}

pub fn load_concept_dictionary(path: &Path) -> Result<ConceptDictionary> {
    ConceptDictionary::parse(&read(path)?).map_err(lexicon_err(path))
}

pub fn load_number_words(path: &Path) -> Result<NumberWordList> {
    NumberWordList::parse(&read(path)?).map_err(lexicon_err(path))
}

/// Reads every configured file (or shipped default) once, parses it and
/// records its digest.
pub fn load_resources(paths: &ResourcePaths) -> Result<LoadedResources> {
    let mut origins = BTreeMap::new();
    let mut source = |name: &'static str, path: Option<&Path>, builtin: Option<&str>| -> Result<Option<String>> {
        let text = match (path, builtin) {
            (Some(p), _) => read(p)?,
            (None, Some(b)) => b.to_string(),
            (None, None) => return Ok(None),
        };
        origins.insert(
            name,
            ResourceOrigin {
                source: path.map_or_else(|| "builtin".to_string(), |p| p.display().to_string()),
                sha256: sha256_hex(text.as_bytes()),
            },
        );
        Ok(Some(text))
    };
    let at = |p: &Option<PathBuf>| p.clone().unwrap_or_default();

    let phi = source("phi_rules", paths.phi_rules.as_deref(), Some(DEFAULT_PHI_RULES))?;
    let lexicon = source("lexicon", paths.lexicon.as_deref(), None)?;
    let concepts = source("concepts", paths.concepts.as_deref(), None)?;
    let stopwords = source("stopwords", paths.stopwords.as_deref(), Some(DEFAULT_STOPWORDS))?;
    let numbers = source("number_words", paths.number_words.as_deref(), Some(DEFAULT_NUMBER_WORDS))?;
    let abbreviations = source("abbreviations", paths.abbreviations.as_deref(), Some(DEFAULT_ABBREVIATIONS))?;

    let resources = Resources {
        phi_rules: phi
            .map(|t| PhiRuleSet::parse(&t).map_err(lexicon_err(&at(&paths.phi_rules))))
            .transpose()?,
        synonyms: lexicon
            .map(|t| SynonymLexicon::parse(&t).map_err(lexicon_err(&at(&paths.lexicon))))
            .transpose()?,
        stopwords: stopwords.map(|t| StopwordSet::parse(&t)),
        concepts: concepts
            .map(|t| ConceptDictionary::parse(&t).map_err(lexicon_err(&at(&paths.concepts))))
            .transpose()?,
        number_words: numbers
            .map(|t| NumberWordList::parse(&t).map_err(lexicon_err(&at(&paths.number_words))))
            .transpose()?,
        abbreviations: AbbreviationGuard::parse(&abbreviations.unwrap_or_default()),
    };
    Ok(LoadedResources { resources, origins })
}
