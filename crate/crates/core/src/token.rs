//! Rule-based tokenizer.
//!
//! Three token classes cover every non-whitespace character:
//!
//! * `Word`: a run of letters, allowing an apostrophe or hyphen between two
//!   letters (`patient's`, `x-ray`).
//! * `Number`: a run of digits, allowing one of `. , / - :` between two digits
//!   (`2.5`, `01/02/2010`, `10:30`).
//! * `Punct`: a run of anything else that is not whitespace.
//!
//! Whitespace produces no token, so the text between two consecutive tokens is
//! always whitespace and the original text can be rebuilt from the spans.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token<'a> {
    pub surface: &'a str,
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub start: usize,
    /// Byte offset one past the last character.
    pub end: usize,
}

impl Token<'_> {
    pub fn span(&self) -> Range<usize> {
        self.start..self.end
    }

    /// Word or number; the units the word-level techniques operate on.
    pub fn is_lexical(&self) -> bool {
        self.kind != TokenKind::Punct
    }
}

fn is_letter(c: char) -> bool {
    c.is_alphabetic()
}

fn is_digit(c: char) -> bool {
    c.is_numeric()
}

fn is_word_joiner(c: char) -> bool {
    matches!(c, '\'' | '\u{2019}' | '-')
}

fn is_number_joiner(c: char) -> bool {
    matches!(c, '.' | ',' | '/' | '-' | ':')
}

fn is_punct(c: char) -> bool {
    !c.is_whitespace() && !is_letter(c) && !is_digit(c)
}

/// Splits `text` into word, number and punctuation tokens.
pub fn tokenize(text: &str) -> Vec<Token<'_>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let offset = |i: usize| chars.get(i).map_or(text.len(), |&(o, _)| o);
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);

    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i].1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let begin = i;
        let kind = if is_letter(c) {
            i += 1;
            loop {
                match at(i) {
                    Some(n) if is_letter(n) => i += 1,
                    Some(n) if is_word_joiner(n) && at(i + 1).is_some_and(is_letter) => i += 2,
                    _ => break,
                }
            }
            TokenKind::Word
        } else if is_digit(c) {
            i += 1;
            loop {
                match at(i) {
                    Some(n) if is_digit(n) => i += 1,
                    Some(n) if is_number_joiner(n) && at(i + 1).is_some_and(is_digit) => i += 2,
                    _ => break,
                }
            }
            TokenKind::Number
        } else {
            i += 1;
            while at(i).is_some_and(is_punct) {
                i += 1;
            }
            TokenKind::Punct
        };
        let (start, end) = (offset(begin), offset(i));
        tokens.push(Token {
            surface: &text[start..end],
            kind,
            start,
            end,
        });
    }
    tokens
}

/// Rebuilds a text from `text`'s tokens, substituting `replacement(i)` for
/// token `i` when it returns `Some`. Gaps between tokens are copied verbatim.
pub(crate) fn rebuild<S, F>(text: &str, tokens: &[Token<'_>], mut replacement: F) -> String
where
    S: AsRef<str>,
    F: FnMut(usize) -> Option<S>,
{
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for (i, tok) in tokens.iter().enumerate() {
        out.push_str(&text[cursor..tok.start]);
        match replacement(i) {
            Some(r) => out.push_str(r.as_ref()),
            None => out.push_str(tok.surface),
        }
        cursor = tok.end;
    }
    out.push_str(&text[cursor..]);
    out
}
