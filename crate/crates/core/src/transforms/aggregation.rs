use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::seq::SliceRandom;

use super::{Grouping, SpecError};
use crate::document::{Corpus, Document, TaskKind};
use crate::seed::{derive_seed, seeded_rng};

/// Output of a corpus-level transform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Aggregated {
    pub corpus: Corpus,
    /// Input documents left out because their bucket had fewer than `X`
    /// members remaining.
    pub dropped: usize,
}

fn merge(members: &[&Document]) -> Document {
    let mut labels: Vec<String> = Vec::new();
    for label in members.iter().flat_map(|d| d.labels.iter()) {
        if !labels.contains(label) {
            labels.push(label.clone());
        }
    }
    let ids: Vec<&str> = members.iter().map(|d| d.id.as_str()).collect();
    let texts: Vec<&str> = members.iter().map(|d| d.text.as_str()).collect();
    Document {
        id: ids.join("+"),
        text: texts.join("\n"),
        labels,
        lineage: members.iter().flat_map(|d| d.lineage.iter().cloned()).collect(),
        extra: Default::default(),
    }
}

/// Merges groups of `factor` documents into one.
///
/// With [`Grouping::ByLabel`] only documents with the same labels (as a
/// multiset) share a group; with [`Grouping::Random`] the whole corpus is one
/// bucket. Each bucket is shuffled and cut into consecutive groups; a final
/// group smaller than `factor` is dropped. Buckets are visited in order of
/// their first document.
pub fn aggregate(corpus: &Corpus, factor: usize, grouping: Grouping, seed: u64) -> Result<Aggregated, SpecError> {
    if factor < 2 {
        return Err(SpecError::InvalidFactor(factor));
    }
    let docs = corpus.documents();
    let mut buckets: Vec<(Vec<&str>, Vec<usize>)> = Vec::new();
    for (i, doc) in docs.iter().enumerate() {
        let key: Vec<&str> = match grouping {
            Grouping::Random => Vec::new(),
            Grouping::ByLabel => {
                let mut k: Vec<&str> = doc.labels.iter().map(String::as_str).collect();
                k.sort_unstable();
                k
            }
        };
        match buckets.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => buckets.push((key, alloc::vec![i])),
        }
    }

    let mut rng = seeded_rng(seed);
    let mut merged = Vec::new();
    let mut dropped = 0;
    for (_, mut members) in buckets {
        members.shuffle(&mut rng);
        let groups = members.chunks_exact(factor);
        dropped += groups.remainder().len();
        for group in groups {
            let group: Vec<&Document> = group.iter().map(|&i| &docs[i]).collect();
            merged.push(merge(&group));
        }
    }

    let kind = match corpus.task_kind() {
        TaskKind::SingleLabel if merged.iter().all(|d| d.labels.len() == 1) => TaskKind::SingleLabel,
        TaskKind::SingleLabel => TaskKind::MultiLabel,
        other => other,
    };
    Ok(Aggregated {
        corpus: Corpus::new(merged, kind)?,
        dropped,
    })
}

/// Runs [`aggregate`] `repetitions` times with seeds `derive_seed(seed, "1")`,
/// `derive_seed(seed, "2")`, ... and concatenates the results. Ids of the
/// `i`-th run get the suffix `#i`.
pub fn augmented_aggregate(
    corpus: &Corpus,
    factor: usize,
    repetitions: usize,
    grouping: Grouping,
    seed: u64,
) -> Result<Aggregated, SpecError> {
    if repetitions < 1 {
        return Err(SpecError::InvalidRepetitions(repetitions));
    }
    let mut docs = Vec::new();
    let mut dropped = 0;
    let mut kind = corpus.task_kind();
    for i in 1..=repetitions {
        let round = aggregate(corpus, factor, grouping, derive_seed(seed, &i.to_string()))?;
        dropped += round.dropped;
        kind = round.corpus.task_kind().max(kind);
        docs.extend(round.corpus.into_documents().into_iter().map(|mut d| {
            d.id = alloc::format!("{}#{}", d.id, i);
            d
        }));
    }
    Ok(Aggregated {
        corpus: Corpus::new(docs, kind)?,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn corpus(labels: &[&str]) -> Corpus {
        let docs = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Document::new(format!("d{i}"), format!("text {i}")).with_labels([*l]))
            .collect();
        Corpus::new(docs, TaskKind::SingleLabel).unwrap()
    }

    #[test]
    fn eight_by_four_keeps_a_quarter() {
        let c = corpus(&["A"; 8]);
        let out = aggregate(&c, 4, Grouping::Random, 1).unwrap();
        assert_eq!(out.corpus.len(), 2);
        assert_eq!(out.dropped, 0);
        for d in out.corpus.iter() {
            assert_eq!(d.lineage.len(), 4);
            assert_eq!(d.text.lines().count(), 4);
            assert_eq!(d.id.split('+').collect::<Vec<_>>(), d.lineage);
        }
    }

    #[test]
    fn remainder_dropped() {
        let c = corpus(&["A"; 5]);
        let out = aggregate(&c, 2, Grouping::Random, 1).unwrap();
        assert_eq!(out.corpus.len(), 2);
        assert_eq!(out.dropped, 1);
    }

    #[test]
    fn by_label_groups_share_labels() {
        let c = corpus(&["A", "B", "A", "B", "A", "B"]);
        let out = aggregate(&c, 3, Grouping::ByLabel, 7).unwrap();
        assert_eq!(out.corpus.len(), 2);
        assert_eq!(out.corpus.task_kind(), TaskKind::SingleLabel);
        let labels: Vec<_> = out.corpus.iter().map(|d| d.labels.clone()).collect();
        assert_eq!(labels, vec![vec!["A".to_string()], vec!["B".to_string()]]);
    }

    #[test]
    fn random_grouping_unions_labels() {
        let c = corpus(&["A", "B", "A", "B"]);
        let out = aggregate(&c, 4, Grouping::Random, 7).unwrap();
        let mut labels = out.corpus.documents()[0].labels.clone();
        labels.sort();
        assert_eq!(labels, ["A", "B"]);
        assert_eq!(out.corpus.task_kind(), TaskKind::MultiLabel);
    }

    #[test]
    fn too_small_gives_empty_corpus() {
        let c = corpus(&["A", "B"]);
        let out = aggregate(&c, 2, Grouping::ByLabel, 7).unwrap();
        assert!(out.corpus.is_empty());
        assert_eq!(out.dropped, 2);
        assert_eq!(aggregate(&c, 1, Grouping::ByLabel, 7), Err(SpecError::InvalidFactor(1)));
    }

    #[test]
    fn augmented_repeats_with_suffixes() {
        let c = corpus(&["A"; 8]);
        let out = augmented_aggregate(&c, 4, 3, Grouping::Random, 5).unwrap();
        assert_eq!(out.corpus.len(), 6);
        assert!(out.corpus.iter().take(2).all(|d| d.id.ends_with("#1")));
        assert!(out.corpus.iter().skip(4).all(|d| d.id.ends_with("#3")));

        let single = augmented_aggregate(&c, 4, 1, Grouping::Random, 5).unwrap();
        let plain = aggregate(&c, 4, Grouping::Random, derive_seed(5, "1")).unwrap();
        let stripped: Vec<_> = single
            .corpus
            .iter()
            .map(|d| Document { id: d.id.trim_end_matches("#1").to_string(), ..d.clone() })
            .collect();
        assert_eq!(stripped, plain.corpus.into_documents());
    }
}
