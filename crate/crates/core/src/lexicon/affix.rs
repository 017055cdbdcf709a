use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use super::{Pos, Trie};
use crate::error::{read_utf8, Error, Result};
use crate::orthography::NormalizationTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Prefix,
    Suffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AffixKind {
    Inflectional,
    Derivational,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Prefix => "prefix",
            Side::Suffix => "suffix",
        })
    }
}

impl fmt::Display for AffixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AffixKind::Inflectional => "inflectional",
            AffixKind::Derivational => "derivational",
        })
    }
}

/// Parts of speech an affix may attach to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct PosScope {
    pub noun: bool,
    pub verb: bool,
}

impl PosScope {
    pub fn includes(self, pos: Pos) -> bool {
        match pos {
            Pos::Noun => self.noun,
            Pos::Verb => self.verb,
            Pos::Other => false,
        }
    }
}

impl fmt::Display for PosScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.noun, self.verb) {
            (true, true) => f.write_str("noun,verb"),
            (true, false) => f.write_str("noun"),
            (false, true) => f.write_str("verb"),
            (false, false) => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffixRule {
    pub form: String,
    pub side: Side,
    pub kind: AffixKind,
    pub pos_scope: PosScope,
    pub gloss: String,
}

/// The affix grammar, indexed for suffix and prefix containment queries.
#[derive(Debug, Clone, Default)]
pub struct AffixInventory {
    rules: Vec<AffixRule>,
    // keyed on reversed form
    suffixes: Trie<usize>,
    prefixes: Trie<usize>,
}

impl AffixInventory {
    pub fn new(mut rules: Vec<AffixRule>) -> Self {
        rules.sort();
        rules.dedup();
        let mut suffixes = Trie::new();
        let mut prefixes = Trie::new();
        for (idx, rule) in rules.iter().enumerate() {
            match rule.side {
                Side::Suffix => suffixes.insert(rule.form.chars().rev(), idx),
                Side::Prefix => prefixes.insert(rule.form.chars(), idx),
            }
        }
        Self {
            rules,
            suffixes,
            prefixes,
        }
    }

    pub fn load(path: impl AsRef<Path>, table: &NormalizationTable) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Self::parse(&text, &path.display().to_string(), table)
    }

    /// Parses `affixes.tsv`: `form<TAB>side<TAB>kind<TAB>pos_scope<TAB>gloss`.
    pub fn parse(text: &str, name: &str, table: &NormalizationTable) -> Result<Self> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if !(4..=5).contains(&fields.len()) {
                return Err(Error::parse(
                    name,
                    line_no,
                    format!(
                        "expected 4 or 5 tab-separated fields, found {}",
                        fields.len()
                    ),
                ));
            }
            let form = table.normalize(fields[0].trim());
            if form.is_empty() {
                return Err(Error::parse(name, line_no, "empty affix form"));
            }
            let side = match fields[1].trim() {
                "prefix" => Side::Prefix,
                "suffix" => Side::Suffix,
                other => {
                    return Err(Error::parse(
                        name,
                        line_no,
                        format!("unknown side {other:?}"),
                    ))
                }
            };
            let kind = match fields[2].trim() {
                "inflectional" => AffixKind::Inflectional,
                "derivational" => AffixKind::Derivational,
                other => {
                    return Err(Error::parse(
                        name,
                        line_no,
                        format!("unknown kind {other:?}"),
                    ))
                }
            };
            let mut pos_scope = PosScope::default();
            for p in fields[3]
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
            {
                match p {
                    "noun" => pos_scope.noun = true,
                    "verb" => pos_scope.verb = true,
                    other => {
                        return Err(Error::parse(
                            name,
                            line_no,
                            format!("unknown pos {other:?}"),
                        ))
                    }
                }
            }
            rules.push(AffixRule {
                form,
                side,
                kind,
                pos_scope,
                gloss: fields
                    .get(4)
                    .map(|g| g.trim().to_string())
                    .unwrap_or_default(),
            });
        }
        Ok(Self::new(rules))
    }

    pub fn rules(&self) -> &[AffixRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn count(&self, side: Side, kind: AffixKind) -> usize {
        self.rules
            .iter()
            .filter(|r| r.side == side && r.kind == kind)
            .count()
    }

    pub fn counts(&self) -> BTreeMap<(Side, AffixKind), usize> {
        let mut out = BTreeMap::new();
        for r in &self.rules {
            *out.entry((r.side, r.kind)).or_default() += 1;
        }
        out
    }

    pub fn inflectional_count(&self) -> usize {
        self.rules
            .iter()
            .filter(|r| r.kind == AffixKind::Inflectional)
            .count()
    }

    /// Inflectional suffixes applicable to `pos` that `word` ends with,
    /// longest form first.
    pub fn removable_suffixes(&self, word: &str, pos: Pos) -> Vec<&AffixRule> {
        self.removable(self.suffixes.prefixes_of(word.chars().rev()), pos)
    }

    /// Inflectional prefixes applicable to `pos` that `word` starts with,
    /// longest form first.
    pub fn removable_prefixes(&self, word: &str, pos: Pos) -> Vec<&AffixRule> {
        self.removable(self.prefixes.prefixes_of(word.chars()), pos)
    }

    fn removable(&self, hits: Vec<(usize, &usize)>, pos: Pos) -> Vec<&AffixRule> {
        let mut out: Vec<&AffixRule> = hits
            .into_iter()
            .rev()
            .map(|(_, &idx)| &self.rules[idx])
            .filter(|r| r.kind == AffixKind::Inflectional && r.pos_scope.includes(pos))
            .collect();
        out.dedup_by(|a, b| a.form == b.form);
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.form, r.side, r.kind, r.pos_scope, r.gloss
            ));
        }
        out
    }
}
