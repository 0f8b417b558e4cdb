use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::Percent;
use crate::document::Document;
use crate::sentence::{split_sentences, AbbreviationGuard};
use crate::token::{tokenize, Token};

/// Reorders the sentences uniformly at random and joins them with one space.
/// A document with fewer than two sentences is returned unchanged.
pub fn shuffle_sentences<R: Rng + ?Sized>(doc: &Document, guard: &AbbreviationGuard, rng: &mut R) -> Document {
    let spans = split_sentences(&doc.text, guard);
    if spans.len() < 2 {
        return doc.clone();
    }
    let mut sentences: Vec<&str> = spans.into_iter().map(|r| &doc.text[r]).collect();
    sentences.shuffle(rng);
    doc.with_text(sentences.join(" "))
}

/// Picks `round(p * W / 100)` of the `W` word and number units and permutes
/// them among the chosen positions. Punctuation and spacing stay in place.
///
/// A unit is usually one token. Tokens glued together without whitespace
/// (`q4h`, `3.a`, `x-5`) form a single unit, because moving one of them alone
/// could fuse it with its neighbour (`4qh`) and change the token sequence.
pub fn random_swap<R: Rng + ?Sized>(doc: &Document, percent: Percent, rng: &mut R) -> Document {
    let tokens = tokenize(&doc.text);
    let units = swap_units(&tokens);
    let k = percent.of(units.len());
    if k < 2 {
        return doc.clone();
    }
    let mut chosen: Vec<usize> = index::sample(rng, units.len(), k).into_vec();
    chosen.sort_unstable();
    let mut moved: Vec<&str> = chosen.iter().map(|&u| &doc.text[units[u].clone()]).collect();
    moved.shuffle(rng);

    let mut text = String::with_capacity(doc.text.len());
    let mut cursor = 0;
    for (&u, surface) in chosen.iter().zip(moved) {
        text.push_str(&doc.text[cursor..units[u].start]);
        text.push_str(surface);
        cursor = units[u].end;
    }
    text.push_str(&doc.text[cursor..]);
    doc.with_text(text)
}

fn is_joiner_char(s: &str) -> bool {
    matches!(s, "'" | "\u{2019}" | "-" | "." | "," | "/" | ":")
}

/// Byte spans of the swappable units, in text order.
fn swap_units(tokens: &[Token<'_>]) -> Vec<Range<usize>> {
    let mut units: Vec<Range<usize>> = Vec::new();
    // Index of the token that ended the last unit.
    let mut last: Option<usize> = None;
    for (i, t) in tokens.iter().enumerate() {
        if !t.is_lexical() {
            continue;
        }
        let glued = match last {
            Some(j) if j + 1 == i => tokens[j].end == t.start,
            Some(j) if j + 2 == i => {
                let mid = &tokens[j + 1];
                tokens[j].end == mid.start && mid.end == t.start && is_joiner_char(mid.surface)
            }
            _ => false,
        };
        match units.last_mut() {
            Some(unit) if glued => unit.end = t.end,
            _ => units.push(t.span()),
        }
        last = Some(i);
    }
    units
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::seeded_rng;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn lower_multiset(text: &str) -> Vec<String> {
        let mut v: Vec<String> = tokenize(text)
            .iter()
            .filter(|t| t.is_lexical())
            .map(|t| t.surface.to_lowercase())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn single_sentence_unchanged() {
        let doc = Document::new("d", "  Only one sentence here.\n");
        let g = AbbreviationGuard::builtin();
        assert_eq!(shuffle_sentences(&doc, &g, &mut seeded_rng(1)), doc);
    }

    #[test]
    fn two_sentences_both_orders_reachable() {
        let doc = Document::new("d", "A b. C d.");
        let g = AbbreviationGuard::builtin();
        let mut seen = alloc::collections::BTreeSet::new();
        for seed in 0..64 {
            let out = shuffle_sentences(&doc, &g, &mut seeded_rng(seed)).text;
            assert!(out == "A b. C d." || out == "C d. A b.", "{out}");
            assert_eq!(out, shuffle_sentences(&doc, &g, &mut seeded_rng(seed)).text);
            seen.insert(out);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn swap_two_words() {
        let doc = Document::new("d", "alpha beta");
        let p = Percent::new(100).unwrap();
        let mut seen = alloc::collections::BTreeSet::new();
        for seed in 0..64 {
            let out = random_swap(&doc, p, &mut seeded_rng(seed)).text;
            assert!(out == "alpha beta" || out == "beta alpha");
            seen.insert(out);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn punctuation_only_unchanged() {
        let doc = Document::new("d", "... !? ,");
        let p = Percent::new(100).unwrap();
        assert_eq!(random_swap(&doc, p, &mut seeded_rng(3)), doc);
    }

    #[test]
    fn swap_changes_only_chosen_positions() {
        let text = "aa bb cc dd ee ff gg hh ii jj";
        let doc = Document::new("d", text);
        let p = Percent::new(20).unwrap(); // k = 2 of 10
        for seed in 0..32 {
            let out = random_swap(&doc, p, &mut seeded_rng(seed)).text;
            let changed = out.split(' ').zip(text.split(' ')).filter(|(a, b)| a != b).count();
            assert!(changed == 0 || changed == 2, "{out}");
        }
    }

    #[test]
    fn glued_tokens_move_together() {
        let tokens = tokenize("q4h, 3.a.4 x-5 (b) c");
        let text = "q4h, 3.a.4 x-5 (b) c";
        let units: Vec<&str> = swap_units(&tokens).into_iter().map(|r| &text[r]).collect();
        assert_eq!(units, vec!["q4h", "3.a.4", "x-5", "b", "c"]);
    }

    proptest! {
        #[test]
        fn perturbations_preserve_token_multiset(
            text in "[A-Za-z0-9 ,.!?\n]{0,120}",
            p in 1u32..=100,
            seed: u64,
        ) {
            let doc = Document::new("d", text.clone());
            let g = AbbreviationGuard::builtin();
            let shuffled = shuffle_sentences(&doc, &g, &mut seeded_rng(seed));
            prop_assert_eq!(lower_multiset(&shuffled.text), lower_multiset(&text));
            let swapped = random_swap(&doc, Percent::new(p).unwrap(), &mut seeded_rng(seed));
            prop_assert_eq!(lower_multiset(&swapped.text), lower_multiset(&text));
            // Punctuation only moves inside glued units.
            let punct = |s: &str| -> Vec<String> {
                let mut v: Vec<String> = tokenize(s).iter().filter(|t| !t.is_lexical()).map(|t| t.surface.to_string()).collect();
                v.sort();
                v
            };
            prop_assert_eq!(punct(&swapped.text), punct(&text));
        }

        #[test]
        fn spaced_punctuation_stays_put(
            parts in proptest::collection::vec("[a-z]{1,4}|[0-9]{1,3}|[,.;!?()]", 0..40),
            p in 1u32..=100,
            seed: u64,
        ) {
            let text = parts.join(" ");
            let doc = Document::new("d", text.clone());
            let swapped = random_swap(&doc, Percent::new(p).unwrap(), &mut seeded_rng(seed)).text;
            let skeleton = |s: &str| -> Vec<Option<String>> {
                s.split(' ').map(|w| (!w.chars().next().unwrap().is_alphanumeric()).then(|| w.to_string())).collect()
            };
            if !text.is_empty() {
                prop_assert_eq!(skeleton(&swapped), skeleton(&text));
            }
        }
    }
}
