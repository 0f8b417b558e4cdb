use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use super::{pick, Percent};
use crate::document::Document;
use crate::lexicon::{match_concepts, ConceptDictionary, StopwordSet, SynonymLexicon};
use crate::token::{rebuild, tokenize, TokenKind};

/// Gives `replacement` the case of `original`'s first letter.
fn copy_initial_case(original: &str, replacement: &str) -> String {
    let mut chars = replacement.chars();
    let Some(first) = chars.next() else {
        return String::new();
    };
    let upper = original.chars().next().is_some_and(char::is_uppercase);
    let mut out = String::with_capacity(replacement.len());
    if upper {
        out.extend(first.to_uppercase());
    } else {
        out.extend(first.to_lowercase());
    }
    out.push_str(chars.as_str());
    out
}

/// Like [`synonym_replace`], also returning the indices (into the document's
/// token sequence) of the replaced tokens, ascending.
pub fn synonym_replace_positions<R: Rng + ?Sized>(
    doc: &Document,
    percent: Percent,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordSet,
    rng: &mut R,
) -> (Document, Vec<usize>) {
    let tokens = tokenize(&doc.text);
    let content: Vec<usize> = (0..tokens.len())
        .filter(|&i| tokens[i].kind == TokenKind::Word && !stopwords.contains(tokens[i].surface))
        .collect();
    let candidates: Vec<usize> = content
        .iter()
        .copied()
        .filter(|&i| lexicon.synonyms(tokens[i].surface).is_some())
        .collect();
    let count = percent.of(content.len()).min(candidates.len());
    if count == 0 {
        return (doc.clone(), Vec::new());
    }
    let mut chosen: Vec<usize> = index::sample(rng, candidates.len(), count)
        .into_iter()
        .map(|c| candidates[c])
        .collect();
    chosen.sort_unstable();

    let mut replacement: Vec<Option<String>> = alloc::vec![None; tokens.len()];
    for &i in &chosen {
        let original = tokens[i].surface;
        let synonyms = lexicon.synonyms(original).unwrap_or_default();
        let synonym = &synonyms[pick(rng, synonyms.len())];
        replacement[i] = Some(copy_initial_case(original, synonym));
    }
    let text = rebuild(&doc.text, &tokens, |i| replacement[i].as_deref());
    (doc.with_text(text), chosen)
}

/// Replaces `round(p * N / 100)` of the `N` non-stopword words (capped at the
/// number that have a lexicon entry) with a uniformly drawn synonym.
pub fn synonym_replace<R: Rng + ?Sized>(
    doc: &Document,
    percent: Percent,
    lexicon: &SynonymLexicon,
    stopwords: &StopwordSet,
    rng: &mut R,
) -> Document {
    synonym_replace_positions(doc, percent, lexicon, stopwords, rng).0
}

/// Replaces every dictionary mention with a mention of the same concept drawn
/// uniformly from its mention list (which may give back the original).
pub fn concept_replace<R: Rng + ?Sized>(doc: &Document, dict: &ConceptDictionary, rng: &mut R) -> Document {
    let tokens = tokenize(&doc.text);
    let matches = match_concepts(&tokens, dict);
    if matches.is_empty() {
        return doc.clone();
    }
    let mut text = String::with_capacity(doc.text.len());
    let mut cursor = 0;
    for m in matches {
        let start = tokens[m.tokens.start].start;
        let end = tokens[m.tokens.end - 1].end;
        let mentions = &m.concept.mentions;
        text.push_str(&doc.text[cursor..start]);
        text.push_str(&mentions[pick(rng, mentions.len())]);
        cursor = end;
    }
    text.push_str(&doc.text[cursor..]);
    doc.with_text(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::seeded_rng;
    use alloc::collections::BTreeSet;

    fn p(v: u32) -> Percent {
        Percent::new(v).unwrap()
    }

    #[test]
    fn single_candidate_single_synonym() {
        let lex = SynonymLexicon::parse("pain\tache\n").unwrap();
        let doc = Document::new("d", "severe pain today");
        let out = synonym_replace(&doc, p(100), &lex, &StopwordSet::default(), &mut seeded_rng(0));
        assert_eq!(out.text, "severe ache today");
    }

    #[test]
    fn empty_lexicon_is_identity() {
        let doc = Document::new("d", "severe pain today");
        let out = synonym_replace(&doc, p(100), &SynonymLexicon::default(), &StopwordSet::builtin(), &mut seeded_rng(0));
        assert_eq!(out, doc);
    }

    #[test]
    fn initial_case_is_copied() {
        let lex = SynonymLexicon::parse("pain\tAche\nfever\tpyrexia\n").unwrap();
        let doc = Document::new("d", "Fever and pain");
        let out = synonym_replace(&doc, p(100), &lex, &StopwordSet::builtin(), &mut seeded_rng(0));
        assert_eq!(out.text, "Pyrexia and ache");
    }

    #[test]
    fn stopwords_are_never_replaced() {
        let lex = SynonymLexicon::parse("the\tthis\npain\tache\n").unwrap();
        let doc = Document::new("d", "the pain");
        let out = synonym_replace(&doc, p(100), &lex, &StopwordSet::builtin(), &mut seeded_rng(0));
        assert_eq!(out.text, "the ache");
    }

    #[test]
    fn count_is_share_of_content_words() {
        // 10 content words, 3 with entries: p=20 -> round(2.0) = 2 replaced.
        let lex = SynonymLexicon::parse("a\tz\nb\tz\nc\tz\n").unwrap();
        let doc = Document::new("d", "a b c d e f g h i j");
        for seed in 0..16 {
            let (_, pos) = synonym_replace_positions(&doc, p(20), &lex, &StopwordSet::default(), &mut seeded_rng(seed));
            assert_eq!(pos.len(), 2);
            assert!(pos.iter().all(|&i| i < 3));
        }
        // p=100 -> 10, capped at the 3 candidates.
        let (_, pos) = synonym_replace_positions(&doc, p(100), &lex, &StopwordSet::default(), &mut seeded_rng(0));
        assert_eq!(pos, [0, 1, 2]);
    }

    #[test]
    fn concept_mentions_are_resampled() {
        let dict = ConceptDictionary::parse("C1\tDISEASE_DISORDER\tdiabetes mellitus|diabetes|DM\n").unwrap();
        let doc = Document::new("d", "has diabetes mellitus");
        let mut seen = BTreeSet::new();
        for seed in 0..64 {
            let out = concept_replace(&doc, &dict, &mut seeded_rng(seed)).text;
            assert!(
                ["has diabetes mellitus", "has diabetes", "has DM"].contains(&out.as_str()),
                "{out}"
            );
            seen.insert(out);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn concept_without_matches_is_identity() {
        let dict = ConceptDictionary::parse("C1\tDISEASE_DISORDER\tdiabetes\n").unwrap();
        let doc = Document::new("d", "no relevant history.");
        assert_eq!(concept_replace(&doc, &dict, &mut seeded_rng(1)), doc);
    }

    #[test]
    fn single_mention_concept_is_deterministic() {
        let dict = ConceptDictionary::parse("C1\tSIGN_SYMPTOM\tChest Pain\n").unwrap();
        let doc = Document::new("d", "chest pain, then CHEST PAIN again");
        let out = concept_replace(&doc, &dict, &mut seeded_rng(9));
        assert_eq!(out.text, "Chest Pain, then Chest Pain again");
    }
}
