use std::collections::BTreeSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::parse_codepoint;
use crate::error::{read_utf8, Error, Result};

/// Ordered rewrite rules plus a set of codepoints removed outright.
///
/// Rules are tried longest source first at every position. A table is
/// rejected at construction if any rule target contains any rule source.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalizationTable {
    rules: Vec<(String, String)>,
    strip: BTreeSet<char>,
}

// Upper bound on rewrite passes. Confluent tables settle in one or two.
const MAX_PASSES: usize = 16;

impl NormalizationTable {
    pub fn new(rules: Vec<(String, String)>, strip: BTreeSet<char>) -> Result<Self> {
        let mut problems = Vec::new();
        for (source, target) in &rules {
            if source.is_empty() {
                problems.push("rule with empty source".to_string());
            }
            for (other, _) in &rules {
                if !other.is_empty() && target.contains(other.as_str()) {
                    problems.push(format!(
                        "rule target {target:?} contains rule source {other:?}"
                    ));
                }
            }
            if let Some(c) = target.chars().find(|c| strip.contains(c)) {
                problems.push(format!(
                    "rule target {target:?} contains stripped codepoint U+{:04X}",
                    c as u32
                ));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let mut rules = rules;
        // Longest source first; stable so file order breaks ties.
        rules.sort_by_key(|(s, _)| std::cmp::Reverse(s.chars().count()));
        Ok(Self { rules, strip })
    }

    /// A table that leaves every string unchanged.
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parses the `orthography.tsv` format.
    pub fn parse(text: &str, name: &str) -> Result<Self> {
        let mut rules = Vec::new();
        let mut strip = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("strip:") {
                for token in rest.split(['\t', ' ']).filter(|t| !t.is_empty()) {
                    let c = parse_codepoint(token).ok_or_else(|| {
                        Error::parse(name, line_no, format!("bad codepoint {token:?}"))
                    })?;
                    strip.insert(c);
                }
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(source), Some(target), None) = (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::parse(name, line_no, "expected source<TAB>target"));
            };
            if source.is_empty() {
                return Err(Error::parse(name, line_no, "empty rule source"));
            }
            rules.push((source.to_string(), target.to_string()));
        }
        Self::new(rules, strip)
    }

    pub fn rules(&self) -> &[(String, String)] {
        &self.rules
    }

    pub fn strip_set(&self) -> &BTreeSet<char> {
        &self.strip
    }

    pub fn normalize(&self, text: &str) -> String {
        let mut current = self.pass(text);
        for _ in 0..MAX_PASSES {
            let next = self.pass(&current);
            if next == current {
                break;
            }
            current = next;
        }
        current
    }

    pub fn is_normalized(&self, text: &str) -> bool {
        self.pass(text) == text
    }

    fn pass(&self, text: &str) -> String {
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        'outer: while let Some(c) = rest.chars().next() {
            for (source, target) in &self.rules {
                if let Some(after) = rest.strip_prefix(source.as_str()) {
                    out.push_str(target);
                    rest = after;
                    continue 'outer;
                }
            }
            if !self.strip.contains(&c) {
                out.push(c);
            }
            rest = &rest[c.len_utf8()..];
        }
        out
    }

    /// SHA-256 over a canonical rendering of the table; recorded in model
    /// files so a model can be matched to the orthography it was built with.
    pub fn checksum(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        for (s, t) in &self.rules {
            hasher.update(s.as_bytes());
            hasher.update([0u8]);
            hasher.update(t.as_bytes());
            hasher.update([1u8]);
        }
        for c in &self.strip {
            hasher.update((*c as u32).to_le_bytes());
        }
        hasher.finalize().into()
    }
}
