use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use regex_automata::meta::Regex;

use super::{content_lines, LexiconError};
use crate::token::{tokenize, TokenKind};

const NAMES_DIRECTIVE: &str = "@names";

#[derive(Debug, Clone)]
pub struct PhiRule {
    pub category: String,
    pub pattern: String,
    regex: Regex,
}

impl PartialEq for PhiRule {
    fn eq(&self, other: &Self) -> bool {
        self.category == other.category && self.pattern == other.pattern
    }
}

impl Eq for PhiRule {}

/// Patterns and a name list marking protected health information.
///
/// The text format is `category<TAB>regex` per line. A line whose first
/// field is `@names` instead lists person names, comma separated; names match
/// whole word tokens with exact case.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhiRuleSet {
    rules: Vec<PhiRule>,
    names: BTreeSet<String>,
}

impl PhiRuleSet {
    pub fn parse(source: &str) -> Result<Self, LexiconError> {
        let mut set = PhiRuleSet::default();
        for (line, text) in content_lines(source) {
            let (category, pattern) = text
                .split_once('\t')
                .ok_or(LexiconError::MissingField { line, expected: 2 })?;
            let category = category.trim();
            if category.is_empty() {
                return Err(LexiconError::EmptyCategory { line });
            }
            if category == NAMES_DIRECTIVE {
                set.names.extend(
                    pattern
                        .split(',')
                        .map(str::trim)
                        .filter(|n| !n.is_empty())
                        .map(ToString::to_string),
                );
                continue;
            }
            let regex = Regex::new(pattern).map_err(|e| LexiconError::InvalidPattern {
                line,
                message: e.to_string(),
            })?;
            set.rules.push(PhiRule {
                category: category.to_string(),
                pattern: pattern.to_string(),
                regex,
            });
        }
        Ok(set)
    }

    pub fn builtin() -> Self {
        Self::parse(super::DEFAULT_PHI_RULES).expect("shipped PHI rules compile")
    }

    pub fn rules(&self) -> &[PhiRule] {
        &self.rules
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    /// Distinct rule categories, plus `NAME` when a name list is present.
    pub fn categories(&self) -> BTreeSet<&str> {
        let mut cats: BTreeSet<&str> = self.rules.iter().map(|r| r.category.as_str()).collect();
        if !self.names.is_empty() {
            cats.insert("NAME");
        }
        cats
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty() && self.names.is_empty()
    }

    /// Raw hits: every non-empty regex match and every name token, unsorted
    /// and possibly overlapping.
    pub fn raw_matches(&self, text: &str) -> Vec<(Range<usize>, &str)> {
        let mut hits = Vec::new();
        for rule in &self.rules {
            for m in rule.regex.find_iter(text) {
                if !m.is_empty() {
                    hits.push((m.range(), rule.category.as_str()));
                }
            }
        }
        if !self.names.is_empty() {
            for tok in tokenize(text) {
                if tok.kind == TokenKind::Word && self.names.contains(tok.surface) {
                    hits.push((tok.span(), "NAME"));
                }
            }
        }
        hits
    }

    /// Sorted, disjoint byte ranges covering every hit, widened so that a hit
    /// inside a token covers the whole token.
    pub fn find_spans(&self, text: &str) -> Vec<Range<usize>> {
        let hits = self.raw_matches(text);
        if hits.is_empty() {
            return Vec::new();
        }
        let tokens = tokenize(text);
        let mut spans: Vec<Range<usize>> = hits
            .into_iter()
            .map(|(r, _)| {
                let start = tokens
                    .iter()
                    .find(|t| t.end > r.start)
                    .map_or(r.start, |t| t.start.min(r.start));
                let end = tokens
                    .iter()
                    .rev()
                    .find(|t| t.start < r.end)
                    .map_or(r.end, |t| t.end.max(r.end));
                start..end
            })
            .collect();
        spans.sort_by_key(|r| (r.start, r.end));
        let mut merged: Vec<Range<usize>> = Vec::with_capacity(spans.len());
        for r in spans {
            match merged.last_mut() {
                Some(last) if r.start < last.end => last.end = last.end.max(r.end),
                _ => merged.push(r),
            }
        }
        merged
    }
}
