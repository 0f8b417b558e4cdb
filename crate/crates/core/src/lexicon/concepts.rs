use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use super::{content_lines, LexiconError};
use crate::token::{tokenize, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemanticGroup {
    SignSymptom,
    DiseaseDisorder,
    Medication,
}

impl SemanticGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            SemanticGroup::SignSymptom => "SIGN_SYMPTOM",
            SemanticGroup::DiseaseDisorder => "DISEASE_DISORDER",
            SemanticGroup::Medication => "MEDICATION",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "SIGN_SYMPTOM" => Some(SemanticGroup::SignSymptom),
            "DISEASE_DISORDER" => Some(SemanticGroup::DiseaseDisorder),
            "MEDICATION" => Some(SemanticGroup::Medication),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Concept {
    pub group: SemanticGroup,
    /// Mentions in stored casing. Repeats are kept: they weight the draw.
    pub mentions: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct TrieNode {
    children: BTreeMap<String, usize>,
    concept: Option<usize>,
}

/// Concepts and a token trie over their lowercase mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptDictionary {
    ids: Vec<String>,
    by_id: BTreeMap<String, usize>,
    concepts: Vec<Concept>,
    trie: Vec<TrieNode>,
}

impl Default for ConceptDictionary {
    fn default() -> Self {
        ConceptDictionary {
            ids: Vec::new(),
            by_id: BTreeMap::new(),
            concepts: Vec::new(),
            trie: alloc::vec![TrieNode::default()],
        }
    }
}

fn mention_key(mention: &str) -> Vec<String> {
    tokenize(mention)
        .iter()
        .map(|t| t.surface.to_lowercase())
        .collect()
}

impl ConceptDictionary {
    /// `concept_id<TAB>semantic_group<TAB>mention1|mention2|...` per line.
    /// A concept id may span several lines; their mentions are appended.
    pub fn parse(source: &str) -> Result<Self, LexiconError> {
        let mut dict = ConceptDictionary::default();
        for (line, text) in content_lines(source) {
            let mut fields = text.splitn(3, '\t');
            let (Some(id), Some(group), Some(mentions)) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(LexiconError::MissingField { line, expected: 3 });
            };
            let id = id.trim();
            if id.is_empty() {
                return Err(LexiconError::MissingField { line, expected: 3 });
            }
            let group = SemanticGroup::parse(group.trim()).ok_or_else(|| {
                LexiconError::UnknownSemanticGroup {
                    line,
                    group: group.trim().to_string(),
                }
            })?;
            let mentions: Vec<&str> = mentions
                .split('|')
                .map(str::trim)
                .filter(|m| !m.is_empty() && !tokenize(m).is_empty())
                .collect();
            if mentions.is_empty() {
                return Err(LexiconError::EmptyMentions {
                    line,
                    concept: id.to_string(),
                });
            }
            let index = *dict.by_id.entry(id.to_string()).or_insert_with(|| {
                dict.ids.push(id.to_string());
                dict.concepts.push(Concept {
                    group,
                    mentions: Vec::new(),
                });
                dict.ids.len() - 1
            });
            for mention in mentions {
                dict.index_mention(line, index, mention)?;
                dict.concepts[index].mentions.push(mention.to_string());
            }
        }
        Ok(dict)
    }

    fn index_mention(&mut self, line: usize, concept: usize, mention: &str) -> Result<(), LexiconError> {
        let mut node = 0;
        for part in mention_key(mention) {
            node = match self.trie[node].children.get(&part) {
                Some(&next) => next,
                None => {
                    self.trie.push(TrieNode::default());
                    let next = self.trie.len() - 1;
                    self.trie[node].children.insert(part, next);
                    next
                }
            };
        }
        match self.trie[node].concept {
            Some(existing) if existing != concept => Err(LexiconError::ConflictingMention {
                line,
                mention: mention.to_string(),
                first: self.ids[existing].clone(),
                second: self.ids[concept].clone(),
            }),
            _ => {
                self.trie[node].concept = Some(concept);
                Ok(())
            }
        }
    }

    pub fn concept(&self, id: &str) -> Option<&Concept> {
        self.by_id.get(id).map(|&i| &self.concepts[i])
    }

    /// Concept id indexed under the lowercase token sequence of `mention`.
    pub fn lookup(&self, mention: &str) -> Option<&str> {
        let mut node = 0;
        for part in mention_key(mention) {
            node = *self.trie[node].children.get(&part)?;
        }
        self.trie[node].concept.map(|c| self.ids[c].as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Concept)> {
        self.ids.iter().map(String::as_str).zip(self.concepts.iter())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn concept_at(&self, index: usize) -> (&str, &Concept) {
        (&self.ids[index], &self.concepts[index])
    }
}

/// A dictionary hit over a token range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptMatch<'d> {
    pub tokens: Range<usize>,
    pub concept_id: &'d str,
    pub concept: &'d Concept,
}

/// Leftmost-longest dictionary matching. Matches never overlap; after a match
/// the scan resumes at the token following it.
pub fn match_concepts<'d>(tokens: &[Token<'_>], dict: &'d ConceptDictionary) -> Vec<ConceptMatch<'d>> {
    let lower: Vec<String> = tokens.iter().map(|t| t.surface.to_lowercase()).collect();
    let mut matches = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut node = 0;
        let mut best: Option<(usize, usize)> = None;
        for (j, part) in lower[i..].iter().enumerate() {
            match dict.trie[node].children.get(part) {
                Some(&next) => node = next,
                None => break,
            }
            if let Some(c) = dict.trie[node].concept {
                best = Some((i + j + 1, c));
            }
        }
        match best {
            Some((end, c)) => {
                let (concept_id, concept) = dict.concept_at(c);
                matches.push(ConceptMatch {
                    tokens: i..end,
                    concept_id,
                    concept,
                });
                i = end;
            }
            None => i += 1,
        }
    }
    matches
}
