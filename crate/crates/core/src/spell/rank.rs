use std::cmp::Ordering;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ngram::PositionClass;
use crate::orthography::EditCost;
use crate::scalar::Score;

pub const DEFAULT_ALPHA: u32 = 70;
pub const DEFAULT_MAX_DISTANCE: u32 = 3;
pub const DEFAULT_TOP_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankParams<S> {
    /// Divisor applied to candidates farther than one edit.
    pub alpha: S,
    /// Exclusive upper bound on candidate distance.
    pub max_distance: EditCost,
    pub top_k: usize,
}

impl<S: Score> Default for RankParams<S> {
    fn default() -> Self {
        Self {
            alpha: S::from_u32(DEFAULT_ALPHA).unwrap(),
            max_distance: EditCost::from_integer(DEFAULT_MAX_DISTANCE),
            top_k: DEFAULT_TOP_K,
        }
    }
}

impl<S: Score> RankParams<S> {
    pub fn new(alpha: S, max_distance: EditCost, top_k: usize) -> Result<Self> {
        if alpha.partial_cmp(&S::zero()) != Some(Ordering::Greater) {
            return Err(Error::InvalidParam(format!(
                "alpha must be positive, got {alpha:?}"
            )));
        }
        if max_distance.is_zero() {
            return Err(Error::InvalidParam("max_distance must be positive".into()));
        }
        if top_k == 0 {
            return Err(Error::InvalidParam("top_k must be at least 1".into()));
        }
        Ok(Self {
            alpha,
            max_distance,
            top_k,
        })
    }
}

/// Frequency used for ranking a replacement gram. Identity on the raw
/// positional count; swap here to rank on a normalized frequency.
pub fn freq_value(raw_count: u64) -> u64 {
    raw_count
}

/// Rank of a candidate at `distance` whose gram has frequency `freq`:
/// `freq / distance` up to one edit, `freq / ((distance - 1) * alpha)`
/// beyond. Distance zero ranks as `2 * freq`, the value of the first branch
/// at half an edit.
pub fn rank<S: Score>(distance: EditCost, freq: u64, alpha: S) -> S {
    let f = S::from_u64(freq).expect("frequency representable");
    let (num, den) = (distance.numer() as u64, distance.denom() as u64);
    if num == 0 {
        f + f
    } else if distance <= EditCost::ONE {
        f / S::from_fraction(num, den)
    } else {
        f / (S::from_fraction(num - den, den) * alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "S: Score"))]
pub struct CorrectionCandidate<S> {
    pub replacement_gram: String,
    pub corrected_word: String,
    pub distance: EditCost,
    pub freq_value: u64,
    #[serde(serialize_with = "serialize_score")]
    pub rank: S,
    pub n: usize,
    pub position: PositionClass,
    /// Codepoint offset of the replaced span.
    pub offset: usize,
}

fn serialize_score<S: Score, Ser: Serializer>(s: &S, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
    ser.serialize_f64(s.to_f64())
}

/// Suggestion order: higher rank, then smaller distance, then higher
/// frequency, then the lexicographically smaller corrected word.
pub fn compare_candidates<S: Score>(
    a: &CorrectionCandidate<S>,
    b: &CorrectionCandidate<S>,
) -> Ordering {
    b.rank
        .partial_cmp(&a.rank)
        .unwrap_or(Ordering::Equal)
        .then(a.distance.cmp(&b.distance))
        .then(b.freq_value.cmp(&a.freq_value))
        .then_with(|| a.corrected_word.cmp(&b.corrected_word))
}
