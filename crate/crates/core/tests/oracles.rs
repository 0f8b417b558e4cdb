//! Properties checked against independent, deliberately naive oracles.

use std::collections::{BTreeSet, HashSet};

use anontext_core::{
    aggregate, apply, jaccard_similarity, rank_originals, run_attack, tokenize, AnonymizationSpec, Corpus,
    Document, Grouping, Percent, Resources, TaskKind, Technique, TokenKind, WordSet,
};
use proptest::prelude::*;

fn oracle_words(text: &str) -> HashSet<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| t.kind != TokenKind::Punct)
        .map(|t| t.surface.to_lowercase())
        .collect()
}

fn oracle_jaccard(a: &HashSet<String>, b: &HashSet<String>) -> f64 {
    let union: HashSet<&String> = a.union(b).collect();
    if union.is_empty() {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union.len() as f64
}

fn text() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec!["alpha", "Beta", "gamma", "x-ray", "42", "3.5", ",", "!", "delta", "EPS"]),
        0..12,
    )
    .prop_map(|w| w.join(" "))
}

fn corpus(max: usize) -> impl Strategy<Value = Corpus> {
    prop::collection::vec(text(), 1..max).prop_map(|texts| {
        let docs = texts
            .into_iter()
            .enumerate()
            .map(|(i, t)| Document::new(format!("d{:03}", (i * 37) % 1000), t))
            .collect();
        Corpus::new(docs, TaskKind::Unlabeled).unwrap()
    })
}

proptest! {
    #[test]
    fn jaccard_matches_hash_sets(a in text(), b in text()) {
        let got = jaccard_similarity(&WordSet::from_text(&a), &WordSet::from_text(&b));
        prop_assert_eq!(got, oracle_jaccard(&oracle_words(&a), &oracle_words(&b)));
    }

    #[test]
    fn jaccard_distance_is_a_metric(a in text(), b in text(), c in text()) {
        let (a, b, c) = (WordSet::from_text(&a), WordSet::from_text(&b), WordSet::from_text(&c));
        let d = |x: &WordSet, y: &WordSet| 1.0 - jaccard_similarity(x, y);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-12);
        prop_assert_eq!(d(&a, &b) == 0.0, a == b);
    }

    #[test]
    fn ranking_matches_sorting_oracle(originals in corpus(30), query in text()) {
        let got = rank_originals(&Document::new("q", query.clone()), &originals).unwrap();
        let q = oracle_words(&query);
        let mut want: Vec<(String, f64)> = originals
            .iter()
            .map(|o| (o.id.clone(), oracle_jaccard(&q, &oracle_words(&o.text))))
            .collect();
        want.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
        prop_assert_eq!(got, want);
    }

    #[test]
    fn found_counts_top1_hits(originals in corpus(20), seed in any::<u64>()) {
        let spec = AnonymizationSpec::new(Technique::RandomSwap { percent: Percent::new(100).unwrap() }, seed);
        let anon = apply(&originals, &spec, &Resources::builtin()).unwrap().corpus;
        let report = run_attack(&anon, &originals).unwrap();
        let hits = report.per_doc.iter().filter(|d| d.top1 == d.anon_id).count();
        prop_assert_eq!(report.found, hits as f64 / anon.len() as f64);
        prop_assert_eq!(report.ao_sim, 1.0);
        for row in &report.per_doc {
            prop_assert!(row.own_rank >= 1 && (row.own_rank == 1) == row.found);
        }
    }

    #[test]
    fn per_document_output_ignores_corpus_order(originals in corpus(15), seed in any::<u64>()) {
        let spec = AnonymizationSpec::new(Technique::RandomSwap { percent: Percent::new(50).unwrap() }, seed);
        let forward = apply(&originals, &spec, &Resources::builtin()).unwrap().corpus;
        let mut docs = originals.into_documents();
        docs.reverse();
        let backward = apply(&Corpus::new(docs, TaskKind::Unlabeled).unwrap(), &spec, &Resources::builtin())
            .unwrap()
            .corpus;
        let mut b = backward.into_documents();
        b.reverse();
        prop_assert_eq!(forward.into_documents(), b);
    }

    #[test]
    fn aggregation_partitions_its_input(labels in prop::collection::vec(0u8..3, 0..40), x in 2usize..5, seed in any::<u64>()) {
        let docs: Vec<Document> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| Document::new(format!("d{i}"), format!("w{i}")).with_labels([format!("L{l}")]))
            .collect();
        let c = Corpus::new(docs, TaskKind::SingleLabel).unwrap();
        let out = aggregate(&c, x, Grouping::ByLabel, seed).unwrap();
        let mut seen = BTreeSet::new();
        for d in &out.corpus {
            prop_assert_eq!(d.lineage.len(), x);
            prop_assert_eq!(d.labels.len(), 1);
            for id in &d.lineage {
                prop_assert!(seen.insert(id.clone()), "{} used twice", id);
                let src = c.iter().find(|s| &s.id == id).unwrap();
                prop_assert_eq!(&src.labels, &d.labels);
                prop_assert!(d.text.lines().any(|l| l == src.text));
            }
        }
        prop_assert_eq!(seen.len() + out.dropped, c.len());
        prop_assert!(out.dropped < 3 * x);
    }
}
