//! Linguistic resources: PHI rules, synonym lexicon, clinical concept
//! dictionary, stopwords and number words.
//!
//! All resources parse from plain text. Lines are 1-based in errors; blank
//! lines and lines starting with `#` are ignored by every format.

mod concepts;
mod phi;

pub use concepts::{match_concepts, Concept, ConceptDictionary, ConceptMatch, SemanticGroup};
pub use phi::{PhiRule, PhiRuleSet};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub const DEFAULT_PHI_RULES: &str = include_str!("../../data/phi_rules.txt");
pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");
pub const DEFAULT_NUMBER_WORDS: &str = include_str!("../../data/number_words.txt");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: expected {expected} tab-separated fields")]
    MissingField { line: usize, expected: usize },
    #[error("line {line}: invalid pattern: {message}")]
    InvalidPattern { line: usize, message: String },
    #[error("line {line}: empty category")]
    EmptyCategory { line: usize },
    #[error("line {line}: headword `{headword}` has no synonyms")]
    EmptySynonyms { line: usize, headword: String },
    #[error("line {line}: unknown semantic group `{group}`")]
    UnknownSemanticGroup { line: usize, group: String },
    #[error("line {line}: concept `{concept}` has no mentions")]
    EmptyMentions { line: usize, concept: String },
    #[error("line {line}: mention `{mention}` maps to both `{first}` and `{second}`")]
    ConflictingMention {
        line: usize,
        mention: String,
        first: String,
        second: String,
    },
    #[error("number word list is empty")]
    EmptyNumberWords,
}

impl LexiconError {
    pub fn line(&self) -> Option<usize> {
        match self {
            LexiconError::MissingField { line, .. }
            | LexiconError::InvalidPattern { line, .. }
            | LexiconError::EmptyCategory { line }
            | LexiconError::EmptySynonyms { line, .. }
            | LexiconError::UnknownSemanticGroup { line, .. }
            | LexiconError::EmptyMentions { line, .. }
            | LexiconError::ConflictingMention { line, .. } => Some(*line),
            LexiconError::EmptyNumberWords => None,
        }
    }
}

/// Content lines with their 1-based line numbers.
pub(crate) fn content_lines(source: &str) -> impl Iterator<Item = (usize, &str)> {
    source
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
}

fn word_set(source: &str) -> BTreeSet<String> {
    content_lines(source)
        .map(|(_, l)| l.trim().to_lowercase())
        .collect()
}

/// Words excluded from synonym replacement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordSet {
    words: BTreeSet<String>,
}

impl StopwordSet {
    pub fn parse(source: &str) -> Self {
        StopwordSet {
            words: word_set(source),
        }
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    pub fn contains(&self, word: &str) -> bool {
        if word.chars().any(char::is_uppercase) {
            self.words.contains(&word.to_lowercase())
        } else {
            self.words.contains(word)
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Spelled-out numbers masked alongside numerals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberWordList {
    words: BTreeSet<String>,
}

impl NumberWordList {
    pub fn parse(source: &str) -> Result<Self, LexiconError> {
        let words = word_set(source);
        if words.is_empty() {
            return Err(LexiconError::EmptyNumberWords);
        }
        Ok(NumberWordList { words })
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_NUMBER_WORDS).expect("shipped number words are non-empty")
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Headword to synonyms. Headwords are lowercase.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SynonymLexicon {
    entries: BTreeMap<String, Vec<String>>,
}

impl SynonymLexicon {
    /// `headword<TAB>syn1,syn2,...` per line. Repeated headwords merge their
    /// lists, dropping duplicates.
    pub fn parse(source: &str) -> Result<Self, LexiconError> {
        let mut entries: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (line, text) in content_lines(source) {
            let (head, syns) = text
                .split_once('\t')
                .ok_or(LexiconError::MissingField { line, expected: 2 })?;
            let head = head.trim().to_lowercase();
            if head.is_empty() {
                return Err(LexiconError::MissingField { line, expected: 2 });
            }
            let syns: Vec<&str> = syns
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if syns.is_empty() {
                return Err(LexiconError::EmptySynonyms {
                    line,
                    headword: head,
                });
            }
            let entry = entries.entry(head).or_default();
            for s in syns {
                if !entry.iter().any(|e| e == s) {
                    entry.push(s.to_string());
                }
            }
        }
        Ok(SynonymLexicon { entries })
    }

    /// Synonyms of `word`, looked up case-insensitively.
    pub fn synonyms(&self, word: &str) -> Option<&[String]> {
        let hit = if word.chars().any(char::is_uppercase) {
            self.entries.get(&word.to_lowercase())
        } else {
            self.entries.get(word)
        };
        hit.map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn lexicon_line() {
        let lex = SynonymLexicon::parse("pain\tache,discomfort\n").unwrap();
        assert_eq!(lex.synonyms("pain").unwrap(), ["ache", "discomfort"]);
        assert_eq!(lex.synonyms("Pain").unwrap(), ["ache", "discomfort"]);
        assert!(lex.synonyms("ache").is_none());
    }

    #[test]
    fn lexicon_merges_duplicates() {
        let lex = SynonymLexicon::parse("# c\npain\tache\n\nPAIN\tdiscomfort, ache\n").unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.synonyms("pain").unwrap(), ["ache", "discomfort"]);
    }

    #[test]
    fn lexicon_errors() {
        assert_eq!(
            SynonymLexicon::parse("pain\tache\nfever\t , \n"),
            Err(LexiconError::EmptySynonyms {
                line: 2,
                headword: "fever".into()
            })
        );
        assert_eq!(
            SynonymLexicon::parse("pain ache\n").unwrap_err().line(),
            Some(1)
        );
    }

    #[test]
    fn stopwords_case_insensitive() {
        let s = StopwordSet::parse("the\nAnd\n");
        assert!(s.contains("THE"));
        assert!(s.contains("and"));
        assert!(!s.contains("pain"));
        assert!(StopwordSet::builtin().contains("The"));
    }

    #[test]
    fn number_words() {
        let n = NumberWordList::builtin();
        for w in ["zero", "Two", "NINETY", "hundred", "billion"] {
            assert!(n.contains(w), "{w}");
        }
        assert!(!n.contains("tablet"));
        assert_eq!(
            NumberWordList::parse("# nothing\n\n"),
            Err(LexiconError::EmptyNumberWords)
        );
    }

    #[test]
    fn loading_is_deterministic() {
        let src = "b\tx,y\na\tz\n";
        assert_eq!(SynonymLexicon::parse(src), SynonymLexicon::parse(src));
        let pairs: Vec<_> = SynonymLexicon::parse(src).unwrap().iter().map(|(k, _)| k.to_string()).collect();
        assert_eq!(pairs, vec!["a", "b"]);
    }
}
