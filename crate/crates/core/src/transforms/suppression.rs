use alloc::string::String;
use alloc::vec::Vec;

use crate::document::Document;
use crate::lexicon::{NumberWordList, PhiRuleSet};
use crate::token::{rebuild, tokenize, TokenKind};

pub const DEID_MASK: &str = "XXXX";
pub const NUMBER_MASK: &str = "XX";

// A rule could in principle match text produced by an earlier pass; stop once
// a pass changes nothing.
const MAX_DEID_PASSES: usize = 8;

/// Replaces every PHI hit with `XXXX`, one per word or number token covered
/// by the hit.
pub fn deidentify(doc: &Document, rules: &PhiRuleSet) -> Document {
    let mut text = doc.text.clone();
    for _ in 0..MAX_DEID_PASSES {
        let spans = rules.find_spans(&text);
        if spans.is_empty() {
            break;
        }
        let tokens = tokenize(&text);
        let mut out = String::with_capacity(text.len());
        let mut cursor = 0;
        for span in spans {
            let words = tokens
                .iter()
                .filter(|t| t.is_lexical() && t.start >= span.start && t.end <= span.end)
                .count()
                .max(1);
            out.push_str(&text[cursor..span.start]);
            let masks: Vec<&str> = core::iter::repeat_n(DEID_MASK, words).collect();
            out.push_str(&masks.join(" "));
            cursor = span.end;
        }
        out.push_str(&text[cursor..]);
        if out == text {
            break;
        }
        text = out;
    }
    doc.with_text(text)
}

fn is_number_word(surface: &str, numbers: &NumberWordList) -> bool {
    // Hyphenated compounds ("twenty-one") count when every part is a number word.
    surface.split('-').all(|part| numbers.contains(part))
}

/// Replaces numerals and spelled-out numbers with `XX`.
pub fn mask_numbers(doc: &Document, numbers: &NumberWordList) -> Document {
    let tokens = tokenize(&doc.text);
    let text = rebuild(&doc.text, &tokens, |i| {
        let t = &tokens[i];
        let masked = match t.kind {
            TokenKind::Number => true,
            TokenKind::Word => is_number_word(t.surface, numbers),
            TokenKind::Punct => false,
        };
        masked.then_some(NUMBER_MASK)
    });
    doc.with_text(text)
}
