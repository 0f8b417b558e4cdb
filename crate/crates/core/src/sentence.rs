//! Sentence boundary detection.
//!
//! A boundary follows a run of `.`, `!` or `?` when the next non-whitespace
//! character (after at least one whitespace character) is an uppercase letter
//! or a digit. A line break followed by such a character is a boundary too.
//! A period that ends a word from the [`AbbreviationGuard`] (`Dr.`, `b.i.d.`)
//! never ends a sentence.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

/// Abbreviations whose trailing period does not end a sentence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbbreviationGuard {
    entries: BTreeSet<String>,
}

/// Shipped default guard list.
pub const DEFAULT_ABBREVIATIONS: &str = include_str!("../data/abbreviations.txt");

impl AbbreviationGuard {
    /// One abbreviation per line, with or without its final period. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(source: &str) -> Self {
        let entries = source
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(normalize)
            .filter(|e| !e.is_empty())
            .collect();
        AbbreviationGuard { entries }
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_ABBREVIATIONS)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains(&normalize(word))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn normalize(word: &str) -> String {
    word.trim_start_matches(|c: char| !c.is_alphanumeric())
        .trim_end_matches('.')
        .to_lowercase()
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn opens_sentence(c: char) -> bool {
    c.is_uppercase() || c.is_numeric()
}

/// Byte ranges of the sentences of `text`, in order. Spans never include
/// leading or trailing whitespace; whitespace-only text has no sentences.
pub fn split_sentences(text: &str, guard: &AbbreviationGuard) -> Vec<Range<usize>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let offset = |i: usize| chars.get(i).map_or(text.len(), |&(o, _)| o);
    // Index of the next non-whitespace char at or after `i`.
    let next_visible = |mut i: usize| {
        while i < chars.len() && chars[i].1.is_whitespace() {
            i += 1;
        }
        i
    };

    let mut spans = Vec::new();
    let mut start: Option<usize> = None;
    // Char index one past the last non-whitespace char of the open sentence.
    let mut last_visible = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c == '\n' {
            if let Some(s) = start {
                let n = next_visible(i + 1);
                if n < chars.len() && opens_sentence(chars[n].1) {
                    spans.push(offset(s)..offset(last_visible));
                    start = None;
                }
            }
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let s = *start.get_or_insert(i);
        if !is_terminal(c) {
            i += 1;
            last_visible = i;
            continue;
        }
        let run_start = i;
        while i < chars.len() && is_terminal(chars[i].1) {
            i += 1;
        }
        last_visible = i;
        let followed_by_space = i < chars.len() && chars[i].1.is_whitespace();
        let n = next_visible(i);
        if !followed_by_space || n >= chars.len() || !opens_sentence(chars[n].1) {
            continue;
        }
        if i - run_start == 1 && c == '.' {
            let word_start = (s..run_start)
                .rev()
                .find(|&k| chars[k].1.is_whitespace())
                .map_or(s, |k| k + 1);
            let word = &text[offset(word_start)..offset(run_start)];
            if !word.is_empty() && guard.contains(word) {
                continue;
            }
        }
        spans.push(offset(s)..offset(i));
        start = None;
    }
    if let Some(s) = start {
        spans.push(offset(s)..offset(last_visible));
    }
    spans
}

/// Convenience for tests and callers that want the sentence strings.
pub fn sentences<'a>(text: &'a str, guard: &AbbreviationGuard) -> Vec<&'a str> {
    split_sentences(text, guard)
        .into_iter()
        .map(|r| &text[r])
        .collect()
}
