//! Random clinical-looking documents for integration tests.

#![allow(dead_code)]

use anontext_core::{Corpus, Document, TaskKind};
use rand::seq::SliceRandom;
use rand::Rng;

const WORDS: &[&str] = &[
    "patient", "denies", "chest", "pain", "fever", "cough", "history", "of", "the", "and", "with", "no",
    "acute", "distress", "lungs", "clear", "heart", "regular", "rate", "abdomen", "soft", "nontender",
    "x-ray", "patient's", "follow-up", "café", "naïve", "O'Neil", "tablet", "daily", "insulin", "bp",
];
const PIECES: &[&str] = &[
    "q4h", "2.5", "10mg", "3/14/2019", "2019-03-14", "98.6", "1,200", "555-123-4567", "(", ")", ";",
    "...", "--", "b.i.d.", "Dr.", "e.g.", "twenty-one", "Seven", "eleven", "p.o.", "#", "%", "3.a.4",
    "MRN: 12345678", "John Smith", "Mary", "age 67", "45-year-old", "1234567", "Jan 5, 2020", "O2",
    "’s", "100%",
];

/// A random text with sentences, abbreviations, glued tokens, PHI and
/// numbers.
pub fn random_text<R: Rng>(rng: &mut R) -> String {
    let sentences = rng.gen_range(1..8);
    let mut out = String::new();
    for s in 0..sentences {
        if s > 0 {
            out.push_str(if rng.gen_bool(0.2) { "\n" } else { " " });
        }
        let n = rng.gen_range(1..14);
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..n {
            let p = if rng.gen_bool(0.75) {
                WORDS.choose(rng).unwrap()
            } else {
                PIECES.choose(rng).unwrap()
            };
            parts.push(p.to_string());
        }
        let mut sentence = parts.join(if rng.gen_bool(0.9) { " " } else { "  " });
        if let Some(first) = sentence.get(..1) {
            let upper = first.to_uppercase();
            sentence.replace_range(..1, &upper);
        }
        sentence.push_str([".", "!", "?", ".", ""].choose(rng).unwrap());
        out.push_str(&sentence);
    }
    out
}

pub fn random_corpus<R: Rng>(rng: &mut R, n: usize) -> Corpus {
    let docs = (0..n)
        .map(|i| Document::new(format!("r{i:04}"), random_text(rng)))
        .collect();
    Corpus::new(docs, TaskKind::Unlabeled).unwrap()
}
