use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use super::{extract_grams, tokenize, Document, PositionClass};
use crate::error::{Error, Result};
use crate::orthography::NormalizationTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildParams {
    pub n_values: BTreeSet<usize>,
    pub min_word_freq: u64,
}

impl Default for BuildParams {
    fn default() -> Self {
        Self {
            n_values: [3, 4, 5].into_iter().collect(),
            min_word_freq: 3,
        }
    }
}

impl BuildParams {
    pub fn new(n_values: impl IntoIterator<Item = usize>, min_word_freq: u64) -> Result<Self> {
        let n_values: BTreeSet<usize> = n_values.into_iter().collect();
        if n_values.is_empty() || n_values.contains(&0) {
            return Err(Error::InvalidParam(
                "n_values must be a non-empty set of positive sizes".into(),
            ));
        }
        if n_values.iter().any(|&n| n > u8::MAX as usize) {
            return Err(Error::InvalidParam("gram size too large".into()));
        }
        Ok(Self {
            n_values,
            min_word_freq,
        })
    }
}

pub(crate) type GramKey = (usize, PositionClass, String);

/// Gram frequencies keyed by (size, position class, gram), plus the word
/// counts they were derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramIndex {
    pub(crate) n_values: BTreeSet<usize>,
    pub(crate) min_word_freq: u64,
    pub(crate) orthography_checksum: [u8; 32],
    pub(crate) word_freq: BTreeMap<String, u64>,
    pub(crate) entries: BTreeMap<GramKey, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildStats {
    pub tokens: u64,
    pub distinct_words: usize,
    pub dropped_words: usize,
    pub grams_per_n: BTreeMap<usize, usize>,
}

/// How much one word type contributes to each of its grams.
fn gram_weight(word_count: u64) -> u64 {
    word_count
}

fn count_words(docs: &[Document], table: &NormalizationTable) -> BTreeMap<String, u64> {
    let merged = docs
        .par_iter()
        .map(|doc| {
            let normalized = table.normalize(&doc.text);
            let mut counts: HashMap<String, u64> = HashMap::new();
            for tok in tokenize(&normalized) {
                *counts.entry(tok.to_string()).or_default() += 1;
            }
            counts
        })
        .reduce(HashMap::new, |mut a, b| {
            for (w, c) in b {
                *a.entry(w).or_default() += c;
            }
            a
        });
    merged.into_iter().collect()
}

/// Builds the index. Documents are normalized and tokenized independently;
/// the result does not depend on their order.
pub fn build_index(
    docs: impl IntoIterator<Item = Result<Document>>,
    params: &BuildParams,
    table: &NormalizationTable,
) -> Result<NGramIndex> {
    let docs: Vec<Document> = docs.into_iter().collect::<Result<_>>()?;
    let word_freq = count_words(&docs, table);
    let mut index = NGramIndex {
        n_values: params.n_values.clone(),
        min_word_freq: params.min_word_freq,
        orthography_checksum: table.checksum(),
        word_freq,
        entries: BTreeMap::new(),
    };
    index.rebuild_entries();
    Ok(index)
}

impl NGramIndex {
    pub fn empty(params: &BuildParams, table: &NormalizationTable) -> Self {
        Self {
            n_values: params.n_values.clone(),
            min_word_freq: params.min_word_freq,
            orthography_checksum: table.checksum(),
            word_freq: BTreeMap::new(),
            entries: BTreeMap::new(),
        }
    }

    fn rebuild_entries(&mut self) {
        let mut entries = BTreeMap::new();
        for (word, &count) in &self.word_freq {
            if count < self.min_word_freq {
                continue;
            }
            for &n in &self.n_values {
                for g in extract_grams(word, n) {
                    *entries.entry((n, g.position, g.text)).or_insert(0) += gram_weight(count);
                }
            }
        }
        self.entries = entries;
    }

    /// Same word counts, different threshold.
    pub fn with_min_word_freq(&self, min_word_freq: u64) -> Self {
        let mut out = self.clone();
        out.min_word_freq = min_word_freq;
        out.rebuild_entries();
        out
    }

    /// Same word counts restricted to a subset of gram sizes.
    pub fn with_n_values(&self, n_values: impl IntoIterator<Item = usize>) -> Self {
        let mut out = self.clone();
        out.n_values = n_values.into_iter().collect();
        out.rebuild_entries();
        out
    }

    pub fn n_values(&self) -> &BTreeSet<usize> {
        &self.n_values
    }

    pub fn min_word_freq(&self) -> u64 {
        self.min_word_freq
    }

    pub fn orthography_checksum(&self) -> &[u8; 32] {
        &self.orthography_checksum
    }

    pub fn word_freq(&self) -> &BTreeMap<String, u64> {
        &self.word_freq
    }

    pub fn word_count(&self, word: &str) -> u64 {
        self.word_freq.get(word).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored count, 0 when absent.
    pub fn gram_frequency(&self, gram: &str, position: PositionClass, n: usize) -> u64 {
        self.entries
            .get(&(n, position, gram.to_string()))
            .copied()
            .unwrap_or(0)
    }

    /// All stored grams of one size and position class, in gram order.
    pub fn pool(&self, n: usize, position: PositionClass) -> impl Iterator<Item = (&str, u64)> {
        self.entries
            .range((n, position, String::new())..)
            .take_while(move |((m, p, _), _)| *m == n && *p == position)
            .map(|((_, _, g), &f)| (g.as_str(), f))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, PositionClass, &str, u64)> {
        self.entries
            .iter()
            .map(|((n, p, g), &f)| (*n, *p, g.as_str(), f))
    }

    pub fn stats(&self) -> BuildStats {
        let mut grams_per_n: BTreeMap<usize, usize> =
            self.n_values.iter().map(|&n| (n, 0)).collect();
        for (n, _, _) in self.entries.keys() {
            *grams_per_n.entry(*n).or_default() += 1;
        }
        BuildStats {
            tokens: self.word_freq.values().sum(),
            distinct_words: self.word_freq.len(),
            dropped_words: self
                .word_freq
                .values()
                .filter(|&&c| c < self.min_word_freq)
                .count(),
            grams_per_n,
        }
    }

    /// `gram<TAB>position<TAB>n<TAB>frequency`, one line per entry.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (n, p, g, f) in self.entries() {
            out.push_str(&format!("{g}\t{p}\t{n}\t{f}\n"));
        }
        out
    }
}
