//! Spelling error detection and correction over the positional n-gram
//! index.
//!
//! A word is suspicious when one of its positional grams never occurs in
//! the index. The lowest-frequency gram (the culprit) is replaced by stored
//! grams of the same size and position within the distance bound, and the
//! resulting words are ranked.

mod rank;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

pub use rank::{
    compare_candidates, freq_value, rank, CorrectionCandidate, RankParams, DEFAULT_ALPHA,
    DEFAULT_MAX_DISTANCE, DEFAULT_TOP_K,
};

use crate::error::{Error, Result};
use crate::lemma::Lemmatizer;
use crate::ngram::{extract_grams, NGramIndex, PositionClass};
use crate::orthography::{weighted_edit_distance, ConfusionGroups};
use crate::scalar::Score;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    NgramOnly,
    WithLexicon,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "ngram_only" | "ngram-only" => Some(Mode::NgramOnly),
            "with_lexicon" | "with-lexicon" => Some(Mode::WithLexicon),
            _ => None,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::NgramOnly => "ngram_only",
            Mode::WithLexicon => "with_lexicon",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramFrequency {
    pub gram: String,
    pub n: usize,
    pub position: PositionClass,
    pub offset: usize,
    pub frequency: u64,
}

impl GramFrequency {
    fn key(&self) -> (u64, usize, std::cmp::Reverse<usize>) {
        (self.frequency, self.offset, std::cmp::Reverse(self.n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetectionReport {
    pub word: String,
    /// Grams of every active size, smallest size first.
    pub grams: Vec<GramFrequency>,
    pub flagged: bool,
    /// Minimum-frequency gram over all sizes; ties go to the leftmost
    /// offset, then the longer gram.
    pub culprit: Option<GramFrequency>,
    /// Minimum-frequency gram of each size (leftmost on ties).
    pub size_culprits: Vec<GramFrequency>,
    /// Lexicon verdict, present in with-lexicon mode.
    pub lexicon_valid: Option<bool>,
}

impl DetectionReport {
    pub fn has_zero_gram(&self) -> bool {
        self.grams.iter().any(|g| g.frequency == 0)
    }

    /// Culprits correction starts from: those of sizes with an unseen gram,
    /// or of every size when no gram is unseen.
    pub fn correction_sites(&self) -> Vec<&GramFrequency> {
        let zero: Vec<_> = self
            .size_culprits
            .iter()
            .filter(|c| c.frequency == 0)
            .collect();
        if zero.is_empty() {
            self.size_culprits.iter().collect()
        } else {
            zero
        }
    }
}

/// Detection for one word. Passing a lemmatizer selects with-lexicon mode:
/// a word the lexicon accounts for is never flagged and one it cannot
/// account for always is.
pub fn detect(word: &str, index: &NGramIndex, lexicon: Option<&Lemmatizer>) -> DetectionReport {
    let mut grams = Vec::new();
    let mut size_culprits = Vec::new();
    for &n in index.n_values() {
        let start = grams.len();
        for g in extract_grams(word, n) {
            let frequency = index.gram_frequency(&g.text, g.position, n);
            grams.push(GramFrequency {
                gram: g.text,
                n,
                position: g.position,
                offset: g.offset,
                frequency,
            });
        }
        if let Some(c) = grams[start..]
            .iter()
            .min_by_key(|g| (g.frequency, g.offset))
        {
            size_culprits.push(c.clone());
        }
    }
    let culprit = grams.iter().min_by_key(|g| g.key()).cloned();
    let zero = grams.iter().any(|g| g.frequency == 0);
    let lexicon_valid = lexicon.map(|l| l.validates(word));
    let flagged = match lexicon_valid {
        Some(valid) => !valid,
        None => zero,
    };
    DetectionReport {
        word: word.to_string(),
        grams,
        flagged,
        culprit,
        size_culprits,
        lexicon_valid,
    }
}

/// Replaces the `len` codepoints at `offset` in `word` with `replacement`.
pub fn splice(word: &str, offset: usize, len: usize, replacement: &str) -> String {
    let mut out = String::with_capacity(word.len() + replacement.len());
    let mut chars = word.chars();
    out.extend(chars.by_ref().take(offset));
    out.push_str(replacement);
    out.extend(chars.skip(len));
    out
}

/// Every candidate for a flagged report, sorted and de-duplicated on the
/// corrected word, without truncation.
pub fn candidate_pool<S: Score>(
    report: &DetectionReport,
    index: &NGramIndex,
    params: &RankParams<S>,
    groups: &ConfusionGroups,
) -> Vec<CorrectionCandidate<S>> {
    let mut out = Vec::new();
    for site in report.correction_sites() {
        let culprit_len = site.gram.chars().count();
        for (gram, count) in index.pool(site.n, site.position) {
            let distance = weighted_edit_distance(gram, &site.gram, groups);
            if distance >= params.max_distance {
                continue;
            }
            let freq = freq_value(count);
            out.push(CorrectionCandidate {
                replacement_gram: gram.to_string(),
                corrected_word: splice(&report.word, site.offset, culprit_len, gram),
                distance,
                freq_value: freq,
                rank: rank(distance, freq, params.alpha),
                n: site.n,
                position: site.position,
                offset: site.offset,
            });
        }
    }
    out.sort_by(compare_candidates);
    let mut seen = std::collections::HashSet::new();
    out.retain(|c| seen.insert(c.corrected_word.clone()));
    out
}

/// The top `params.top_k` candidates for a flagged report.
pub fn candidates<S: Score>(
    report: &DetectionReport,
    index: &NGramIndex,
    params: &RankParams<S>,
    groups: &ConfusionGroups,
) -> Vec<CorrectionCandidate<S>> {
    let mut pool = candidate_pool(report, index, params, groups);
    pool.truncate(params.top_k);
    pool
}

/// Ranked corrections for `word`; an unflagged word is its own single
/// suggestion. In with-lexicon mode candidates the lexicon rejects are
/// dropped before truncation.
pub fn correct<S: Score>(
    word: &str,
    index: &NGramIndex,
    params: &RankParams<S>,
    groups: &ConfusionGroups,
    lexicon: Option<&Lemmatizer>,
) -> Vec<String> {
    let report = detect(word, index, lexicon);
    if !report.flagged {
        return vec![word.to_string()];
    }
    let pool = candidate_pool(&report, index, params, groups);
    pool.into_iter()
        .map(|c| c.corrected_word)
        .filter(|w| lexicon.is_none_or(|l| !detect(w, index, Some(l)).flagged))
        .take(params.top_k)
        .collect()
}

/// A loaded checker: index, confusion groups, ranking parameters and,
/// in with-lexicon mode, the lemmatizer used for validation.
#[derive(Debug, Clone)]
pub struct SpellChecker<S = f64> {
    index: Arc<NGramIndex>,
    groups: Arc<ConfusionGroups>,
    params: RankParams<S>,
    lemmatizer: Option<Arc<Lemmatizer>>,
    max_passes: usize,
}

impl<S: Score> SpellChecker<S> {
    pub fn new(
        index: Arc<NGramIndex>,
        groups: Arc<ConfusionGroups>,
        params: RankParams<S>,
        mode: Mode,
        lemmatizer: Option<Arc<Lemmatizer>>,
    ) -> Result<Self> {
        let lemmatizer = match (mode, lemmatizer) {
            (Mode::NgramOnly, _) => None,
            (Mode::WithLexicon, Some(l)) => Some(l),
            (Mode::WithLexicon, None) => {
                return Err(Error::InvalidParam(
                    "with_lexicon mode needs a lexicon".into(),
                ))
            }
        };
        Ok(Self {
            index,
            groups,
            params,
            lemmatizer,
            max_passes: 1,
        })
    }

    /// Re-run detection on the best suggestion up to `passes` times in
    /// total, for words with more than one error. Clamped to 1..=3.
    pub fn with_passes(mut self, passes: usize) -> Self {
        self.max_passes = passes.clamp(1, 3);
        self
    }

    pub fn with_params(mut self, params: RankParams<S>) -> Self {
        self.params = params;
        self
    }

    pub fn mode(&self) -> Mode {
        if self.lemmatizer.is_some() {
            Mode::WithLexicon
        } else {
            Mode::NgramOnly
        }
    }

    pub fn params(&self) -> &RankParams<S> {
        &self.params
    }

    pub fn index(&self) -> &NGramIndex {
        &self.index
    }

    pub fn groups(&self) -> &ConfusionGroups {
        &self.groups
    }

    pub fn lemmatizer(&self) -> Option<&Lemmatizer> {
        self.lemmatizer.as_deref()
    }

    pub fn detect(&self, word: &str) -> DetectionReport {
        detect(word, &self.index, self.lemmatizer())
    }

    pub fn candidates(&self, word: &str) -> Vec<CorrectionCandidate<S>> {
        let report = self.detect(word);
        if !report.flagged {
            return Vec::new();
        }
        candidates(&report, &self.index, &self.params, &self.groups)
    }

    pub fn correct(&self, word: &str) -> Vec<String> {
        let mut suggestions = correct(
            word,
            &self.index,
            &self.params,
            &self.groups,
            self.lemmatizer(),
        );
        for _ in 1..self.max_passes {
            let Some(best) = suggestions.first() else {
                break;
            };
            if best == word || !self.detect(best).flagged {
                break;
            }
            let next = correct(
                best,
                &self.index,
                &self.params,
                &self.groups,
                self.lemmatizer(),
            );
            if next.is_empty() {
                break;
            }
            suggestions = next;
        }
        suggestions
    }

    /// Corrects many words in parallel; output order follows input order.
    pub fn correct_batch(&self, words: &[String]) -> Vec<Vec<String>> {
        words.par_iter().map(|w| self.correct(w)).collect()
    }
}
