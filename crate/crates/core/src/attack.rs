//! Word-level Jaccard re-identification attack.
//!
//! The attacker holds an anonymized document and the full original corpus and
//! ranks every original by the Jaccard similarity of the two documents' word
//! sets. A word set is the set of lowercase word and number surfaces;
//! punctuation is ignored.
//!
//! Three corpus-level metrics summarize the attack:
//!
//! * `found`: share of anonymized documents whose top-ranked original is one
//!   of their sources (an aggregate has several).
//! * `ao_sim`: mean similarity between an anonymized document and its own
//!   sources, averaged over the sources.
//! * `avg_sim`: mean similarity between an anonymized document and every
//!   original, own sources included.
//!
//! Ranking ties are broken by ascending original id.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::document::{Corpus, Document};
use crate::token::tokenize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AttackError {
    #[error("the original corpus is empty")]
    EmptyOriginals,
    #[error("document `{anon}` has lineage id `{missing}` that is not in the original corpus")]
    UnknownLineage { anon: String, missing: String },
}

/// Sorted, deduplicated lowercase word and number surfaces of a text.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordSet {
    words: Vec<String>,
}

impl WordSet {
    pub fn from_text(text: &str) -> Self {
        let mut words: Vec<String> = tokenize(text)
            .into_iter()
            .filter(|t| t.is_lexical())
            .map(|t| t.surface.to_lowercase())
            .collect();
        words.sort_unstable();
        words.dedup();
        WordSet { words }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.binary_search_by(|w| w.as_str().cmp(word)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

impl<S: Into<String>> FromIterator<S> for WordSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        let mut words: Vec<String> = iter.into_iter().map(|w| w.into().to_lowercase()).collect();
        words.sort_unstable();
        words.dedup();
        WordSet { words }
    }
}

fn ratio(intersection: usize, union: usize) -> f64 {
    if union == 0 {
        1.0
    } else {
        intersection as f64 / union as f64
    }
}

/// `|a ∩ b| / |a ∪ b|`; two empty sets are identical (1.0).
pub fn jaccard_similarity(a: &WordSet, b: &WordSet) -> f64 {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.words.len() && j < b.words.len() {
        match a.words[i].cmp(&b.words[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    ratio(common, a.len() + b.len() - common)
}

/// Attack outcome for one anonymized document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocOutcome {
    pub anon_id: String,
    /// Most similar original.
    pub top1: String,
    /// Whether `top1` is one of the document's sources.
    pub found: bool,
    /// Mean similarity to the document's sources.
    pub own_sim: f64,
    /// 1-based rank of the best-ranked source.
    pub own_rank: usize,
    /// Mean similarity to all originals.
    pub avg_sim: f64,
}

/// Corpus-level attack metrics and the per-document rows they summarize.
#[derive(Debug, Clone, PartialEq)]
pub struct AttackReport {
    pub found: f64,
    pub ao_sim: f64,
    pub avg_sim: f64,
    pub per_doc: Vec<DocOutcome>,
}

impl AttackReport {
    /// Means over `per_doc`, summed in order. An empty attack reports zeros.
    pub fn from_outcomes(per_doc: Vec<DocOutcome>) -> Self {
        let n = per_doc.len();
        let mean = |f: &dyn Fn(&DocOutcome) -> f64| {
            if n == 0 {
                0.0
            } else {
                per_doc.iter().map(f).sum::<f64>() / n as f64
            }
        };
        AttackReport {
            found: mean(&|d| if d.found { 1.0 } else { 0.0 }),
            ao_sim: mean(&|d| d.own_sim),
            avg_sim: mean(&|d| d.avg_sim),
            per_doc,
        }
    }
}

/// Inverted index over the original corpus. Scoring one anonymized document
/// walks the posting lists of its words, so the cost is proportional to the
/// number of (word, original) co-occurrences rather than to all pairs.
#[derive(Debug, Clone)]
pub struct AttackIndex {
    ids: Vec<String>,
    by_id: BTreeMap<String, usize>,
    sizes: Vec<usize>,
    vocabulary: BTreeMap<String, usize>,
    postings: Vec<Vec<u32>>,
}

impl AttackIndex {
    pub fn new(originals: &Corpus) -> Result<Self, AttackError> {
        if originals.is_empty() {
            return Err(AttackError::EmptyOriginals);
        }
        let mut index = AttackIndex {
            ids: Vec::with_capacity(originals.len()),
            by_id: BTreeMap::new(),
            sizes: Vec::with_capacity(originals.len()),
            vocabulary: BTreeMap::new(),
            postings: Vec::new(),
        };
        for (d, doc) in originals.iter().enumerate() {
            let words = WordSet::from_text(&doc.text);
            index.ids.push(doc.id.clone());
            index.by_id.insert(doc.id.clone(), d);
            index.sizes.push(words.len());
            for w in words.words {
                let next = index.postings.len();
                let t = *index.vocabulary.entry(w).or_insert(next);
                if t == next {
                    index.postings.push(Vec::new());
                }
                index.postings[t].push(d as u32);
            }
        }
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, index: usize) -> &str {
        &self.ids[index]
    }

    /// Similarity of `words` to every original, in corpus order.
    pub fn similarities(&self, words: &WordSet) -> Vec<f64> {
        let mut common = vec![0u32; self.ids.len()];
        for w in words.iter() {
            if let Some(&t) = self.vocabulary.get(w) {
                for &d in &self.postings[t] {
                    common[d as usize] += 1;
                }
            }
        }
        common
            .iter()
            .zip(&self.sizes)
            .map(|(&c, &size)| {
                let c = c as usize;
                ratio(c, words.len() + size - c)
            })
            .collect()
    }

    /// Ranking order: higher similarity first, then lower id.
    fn order(&self, sims: &[f64], a: usize, b: usize) -> Ordering {
        sims[b].total_cmp(&sims[a]).then_with(|| self.ids[a].cmp(&self.ids[b]))
    }

    /// Every original as `(corpus index, similarity)`, best first.
    pub fn rank(&self, words: &WordSet) -> Vec<(usize, f64)> {
        let sims = self.similarities(words);
        let mut order: Vec<usize> = (0..sims.len()).collect();
        order.sort_unstable_by(|&a, &b| self.order(&sims, a, b));
        order.into_iter().map(|i| (i, sims[i])).collect()
    }

    /// Scores one anonymized document against the originals.
    pub fn evaluate(&self, anon: &Document) -> Result<DocOutcome, AttackError> {
        let sources = anon
            .lineage
            .iter()
            .map(|id| {
                self.by_id.get(id).copied().ok_or_else(|| AttackError::UnknownLineage {
                    anon: anon.id.clone(),
                    missing: id.clone(),
                })
            })
            .collect::<Result<Vec<usize>, _>>()?;

        let sims = self.similarities(&WordSet::from_text(&anon.text));
        let best_of = |candidates: &mut dyn Iterator<Item = usize>| {
            candidates.min_by(|&a, &b| self.order(&sims, a, b))
        };
        let top1 = best_of(&mut (0..sims.len())).expect("index is non-empty");
        let best_source = best_of(&mut sources.iter().copied()).expect("lineage is non-empty");
        let ahead = (0..sims.len())
            .filter(|&j| self.order(&sims, j, best_source) == Ordering::Less)
            .count();

        Ok(DocOutcome {
            anon_id: anon.id.clone(),
            top1: self.ids[top1].clone(),
            found: sources.contains(&top1),
            own_sim: sources.iter().map(|&s| sims[s]).sum::<f64>() / sources.len() as f64,
            own_rank: ahead + 1,
            avg_sim: sims.iter().sum::<f64>() / sims.len() as f64,
        })
    }
}

/// Originals ranked by similarity to `anon`, best first, ties by ascending id.
pub fn rank_originals(anon: &Document, originals: &Corpus) -> Result<Vec<(String, f64)>, AttackError> {
    let index = AttackIndex::new(originals)?;
    Ok(index
        .rank(&WordSet::from_text(&anon.text))
        .into_iter()
        .map(|(i, s)| (index.ids[i].clone(), s))
        .collect())
}

/// Runs the attack for every anonymized document, sequentially.
pub fn run_attack(anonymized: &Corpus, originals: &Corpus) -> Result<AttackReport, AttackError> {
    let index = AttackIndex::new(originals)?;
    let outcomes = anonymized
        .iter()
        .map(|d| index.evaluate(d))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AttackReport::from_outcomes(outcomes))
}
