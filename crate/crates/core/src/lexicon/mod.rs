//! Tagged lexicon, exception list, affix inventory and verb templates.

mod affix;
mod template;
mod trie;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub use affix::{AffixInventory, AffixKind, AffixRule, PosScope, Side};
pub use template::{
    load_templates, parse_templates, Aspect, Ending, Mood, Number, Person, PersonNumber, SlotForm,
    Tense, Transitivity, VerbTemplate, Voice,
};
pub use trie::Trie;

use crate::error::{read_utf8, Error, Result};
use crate::orthography::NormalizationTable;

/// Letters a regular infinitive ends in; the past stem drops it.
pub const INFINITIVE_FINALS: &[char] = &['ن'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pos {
    Noun,
    Verb,
    Other,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Other => "other",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LexiconEntry {
    /// Dictionary form; the infinitive for verbs.
    pub surface: String,
    pub pos: Pos,
    pub past_stem: Option<String>,
    pub present_stem: Option<String>,
    pub is_exception: bool,
    pub irregular: bool,
    pub transitivity: Transitivity,
}

impl LexiconEntry {
    pub fn noun(surface: impl Into<String>) -> Self {
        Self {
            surface: surface.into(),
            pos: Pos::Noun,
            past_stem: None,
            present_stem: None,
            is_exception: false,
            irregular: false,
            transitivity: Transitivity::Both,
        }
    }

    pub fn verb(
        infinitive: impl Into<String>,
        past: impl Into<String>,
        present: impl Into<String>,
        transitivity: Transitivity,
    ) -> Self {
        Self {
            surface: infinitive.into(),
            pos: Pos::Verb,
            past_stem: Some(past.into()),
            present_stem: Some(present.into()),
            is_exception: false,
            irregular: false,
            transitivity,
        }
    }

    pub fn stem(&self, tense: Tense) -> Option<&str> {
        match tense {
            Tense::Past => self.past_stem.as_deref(),
            Tense::Present => self.present_stem.as_deref(),
        }
    }

    fn flags(&self) -> String {
        let mut flags = Vec::new();
        match self.transitivity {
            Transitivity::Transitive => flags.push("transitive"),
            Transitivity::Intransitive => flags.push("intransitive"),
            Transitivity::Both => {}
        }
        if self.irregular {
            flags.push("irregular");
        }
        if self.is_exception {
            flags.push("exception");
        }
        flags.join(",")
    }

    /// Problems with this entry against the verb-stem invariants.
    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.pos != Pos::Verb {
            return out;
        }
        let (Some(past), Some(present)) = (&self.past_stem, &self.present_stem) else {
            out.push(format!(
                "verb {:?} lacks a past or present stem",
                self.surface
            ));
            return out;
        };
        if past.is_empty() || present.is_empty() {
            out.push(format!("verb {:?} has an empty stem", self.surface));
        }
        if !self.irregular {
            if let Some(last) = self.surface.chars().last() {
                if INFINITIVE_FINALS.contains(&last) {
                    let truncated = &self.surface[..self.surface.len() - last.len_utf8()];
                    if truncated != past {
                        out.push(format!(
                            "verb {:?}: past stem {:?} is not the infinitive minus its final letter ({:?}); flag it irregular",
                            self.surface, past, truncated
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Where a stem occurs inside a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StemHit {
    pub entry: usize,
    pub tense: Tense,
    pub start: usize,
    /// Stem length in codepoints.
    pub len: usize,
}

/// Immutable, indexed lexicon handle.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    by_surface: HashMap<String, Vec<usize>>,
    exceptions: BTreeSet<String>,
    stems: Trie<(usize, Tense)>,
    // keyed on reversed surface
    surfaces_rev: Trie<usize>,
}

impl Lexicon {
    /// Builds a handle from already-normalized entries. Validation errors
    /// list every offending verb.
    pub fn new(
        entries: Vec<LexiconEntry>,
        exceptions: impl IntoIterator<Item = String>,
    ) -> Result<Self> {
        let problems: Vec<String> = entries.iter().flat_map(LexiconEntry::violations).collect();
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        let mut entries = entries;
        entries.sort();
        entries.dedup();
        let mut exceptions: BTreeSet<String> =
            exceptions.into_iter().filter(|e| !e.is_empty()).collect();
        exceptions.extend(
            entries
                .iter()
                .filter(|e| e.is_exception)
                .map(|e| e.surface.clone()),
        );

        let mut by_surface: HashMap<String, Vec<usize>> = HashMap::new();
        let mut stems = Trie::new();
        let mut surfaces_rev = Trie::new();
        for (idx, e) in entries.iter().enumerate() {
            by_surface.entry(e.surface.clone()).or_default().push(idx);
            surfaces_rev.insert(e.surface.chars().rev(), idx);
            for tense in [Tense::Past, Tense::Present] {
                if let Some(stem) = e.stem(tense) {
                    // compounds are found through their light verb
                    let light = stem.rsplit(' ').next().unwrap_or(stem);
                    stems.insert(light.chars(), (idx, tense));
                }
            }
        }
        Ok(Self {
            entries,
            by_surface,
            exceptions,
            stems,
            surfaces_rev,
        })
    }

    pub fn load(path: impl AsRef<Path>, table: &NormalizationTable) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Self::parse(&text, &path.display().to_string(), table)
    }

    /// Parses `lexicon.tsv`:
    /// `surface<TAB>pos<TAB>past_stem<TAB>present_stem<TAB>flags`.
    pub fn parse(text: &str, name: &str, table: &NormalizationTable) -> Result<Self> {
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::parse(name, line_no, msg);
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 2 || fields.len() > 5 {
                return Err(err(format!(
                    "expected 2 to 5 tab-separated fields, found {}",
                    fields.len()
                )));
            }
            let field = |i: usize| fields.get(i).map(|f| f.trim()).unwrap_or("");
            let surface = table.normalize(field(0));
            if surface.is_empty() {
                return Err(err("empty surface".into()));
            }
            let pos = match field(1) {
                "noun" => Pos::Noun,
                "verb" => Pos::Verb,
                "other" => Pos::Other,
                other => return Err(err(format!("unknown pos {other:?}"))),
            };
            let stem = |i: usize| {
                let s = field(i);
                (!s.is_empty()).then(|| table.normalize(s))
            };
            let (past_stem, present_stem) = (stem(2), stem(3));
            if pos != Pos::Verb && (past_stem.is_some() || present_stem.is_some()) {
                return Err(err(format!("stems given for non-verb {surface:?}")));
            }
            let mut entry = LexiconEntry {
                surface,
                pos,
                past_stem,
                present_stem,
                is_exception: false,
                irregular: false,
                transitivity: Transitivity::Both,
            };
            for flag in field(4).split(',').map(str::trim).filter(|f| !f.is_empty()) {
                match flag {
                    "irregular" => entry.irregular = true,
                    "exception" => entry.is_exception = true,
                    "transitive" => entry.transitivity = Transitivity::Transitive,
                    "intransitive" => entry.transitivity = Transitivity::Intransitive,
                    other => return Err(err(format!("unknown flag {other:?}"))),
                }
            }
            entries.push(entry);
        }
        Self::new(entries, [])
    }

    /// Adds the words of an `exceptions.txt` file.
    pub fn with_exceptions_file(
        self,
        path: impl AsRef<Path>,
        table: &NormalizationTable,
    ) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Ok(self.with_exceptions_text(&text, table))
    }

    pub fn with_exceptions_text(mut self, text: &str, table: &NormalizationTable) -> Self {
        for line in text.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            self.exceptions.insert(table.normalize(word));
        }
        self
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn entry(&self, idx: usize) -> &LexiconEntry {
        &self.entries[idx]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, surface: &str) -> impl Iterator<Item = &LexiconEntry> {
        self.by_surface
            .get(surface)
            .into_iter()
            .flatten()
            .map(|&i| &self.entries[i])
    }

    pub fn contains(&self, surface: &str) -> bool {
        self.by_surface.contains_key(surface)
    }

    pub fn is_noun(&self, surface: &str) -> bool {
        self.lookup(surface).any(|e| e.pos == Pos::Noun)
    }

    pub fn is_exception(&self, word: &str) -> bool {
        self.exceptions.contains(word)
    }

    pub fn exceptions(&self) -> &BTreeSet<String> {
        &self.exceptions
    }

    pub fn verbs(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.iter().filter(|e| e.pos == Pos::Verb)
    }

    /// Every occurrence of a verb stem as a contiguous substring of `word`.
    /// A compound stem matches when its light verb occurs after the
    /// preverb and a space; `start` and `len` then cover the whole stem
    /// with the inflectional prefix counted out of `len`.
    pub fn stems_in(&self, word: &str) -> Vec<StemHit> {
        let chars: Vec<char> = word.chars().collect();
        let mut hits = Vec::new();
        for start in 0..chars.len() {
            for (len, &(entry, tense)) in self.stems.prefixes_of(chars[start..].iter().copied()) {
                if len == 0 {
                    continue;
                }
                let stem = self.entries[entry].stem(tense).unwrap_or_default();
                match stem.rfind(' ') {
                    None => hits.push(StemHit {
                        entry,
                        tense,
                        start,
                        len,
                    }),
                    Some(i) => {
                        let preverb = &stem[..=i];
                        let pv = preverb.chars().count();
                        if start >= pv && word.starts_with(preverb) {
                            hits.push(StemHit {
                                entry,
                                tense,
                                start: 0,
                                len: pv + len,
                            });
                        }
                    }
                }
            }
        }
        hits
    }

    /// Entries whose surface is a suffix of `text`, shortest first.
    pub fn surfaces_ending(&self, text: &str) -> Vec<&LexiconEntry> {
        self.surfaces_rev
            .prefixes_of(text.chars().rev())
            .into_iter()
            .map(|(_, &i)| &self.entries[i])
            .collect()
    }

    /// Canonical `lexicon.tsv` rendering; `parse` of this text reproduces
    /// the handle's entries.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.surface,
                e.pos,
                e.past_stem.as_deref().unwrap_or(""),
                e.present_stem.as_deref().unwrap_or(""),
                e.flags()
            ));
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(self.to_tsv().as_bytes())
            .map_err(|e| Error::io(path, e))
    }
}
