use std::sync::Arc;

use serde::Serialize;

use crate::lexicon::{AffixInventory, AffixRule, Lexicon, Pos, VerbTemplate};
use crate::noun::{noun_lemmatize, AnalysisTree};
use crate::verb::{verb_lemmatize, VerbFeatures};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfidenceNote {
    /// The root is a lexicon entry, an exception word, or an exact verb
    /// form match.
    LexiconMatch,
    Heuristic,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma {
    pub root: String,
    pub pos: Pos,
    pub note: ConfidenceNote,
    /// Affixes stripped on the way to a noun root, outermost first.
    pub removed: Vec<AffixRule>,
    #[serde(skip)]
    pub analysis: Option<Arc<AnalysisTree>>,
    pub verb: Option<VerbFeatures>,
}

/// Both lemmatizers over one set of loaded data.
#[derive(Debug, Clone)]
pub struct Lemmatizer {
    lexicon: Lexicon,
    affixes: AffixInventory,
    templates: Vec<VerbTemplate>,
}

impl Lemmatizer {
    pub fn new(lexicon: Lexicon, affixes: AffixInventory, templates: Vec<VerbTemplate>) -> Self {
        Self {
            lexicon,
            affixes,
            templates,
        }
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn affixes(&self) -> &AffixInventory {
        &self.affixes
    }

    pub fn templates(&self) -> &[VerbTemplate] {
        &self.templates
    }

    pub fn noun(&self, word: &str) -> Lemma {
        noun_lemmatize(word, &self.lexicon, &self.affixes)
    }

    pub fn verb(&self, word: &str) -> Option<Lemma> {
        verb_lemmatize(word, &self.lexicon, &self.templates).map(|m| Lemma {
            root: m.infinitive,
            pos: Pos::Verb,
            note: ConfidenceNote::LexiconMatch,
            removed: Vec::new(),
            analysis: None,
            verb: Some(m.features),
        })
    }

    /// Exceptions return themselves; otherwise an exact verb match is tried
    /// before noun pruning.
    pub fn lemmatize(&self, word: &str) -> Lemma {
        if self.lexicon.is_exception(word) {
            return self.noun(word);
        }
        self.verb(word).unwrap_or_else(|| self.noun(word))
    }

    /// Whether `word` is accounted for by the lexicon: listed directly,
    /// an exception, a generated verb form, or prunable to a lexicon noun.
    pub fn validates(&self, word: &str) -> bool {
        if word.is_empty() {
            return false;
        }
        self.lexicon.contains(word)
            || self.lexicon.is_exception(word)
            || self.lemmatize(word).note == ConfidenceNote::LexiconMatch
    }
}
