//! Lemmatization and n-gram spelling correction for Sorani Kurdish
//! written in Arabic script.
//!
//! The crate is built from tabular resources: a normalization table,
//! confusion groups, an affix inventory, a lexicon with exceptions and
//! verb templates. [`Resources`] loads all of them from a directory.

pub mod error;
pub mod eval;
pub mod lemma;
pub mod lexicon;
pub mod ngram;
pub mod noun;
pub mod orthography;
mod resources;
pub mod scalar;
pub mod spell;
pub mod verb;

use num_rational::Ratio;

pub use error::{Error, Result};
pub use lemma::{ConfidenceNote, Lemma, Lemmatizer};
pub use lexicon::{AffixInventory, Lexicon, Pos, VerbTemplate};
pub use ngram::{build_index, BuildParams, NGramIndex, PositionClass};
pub use noun::{analyze_noun, noun_lemmatize, AnalysisTree};
pub use orthography::{weighted_edit_distance, ConfusionGroups, EditCost, NormalizationTable};
pub use resources::{DataPaths, Resources};
pub use scalar::Score;
pub use spell::{CorrectionCandidate, DetectionReport, Mode, RankParams, SpellChecker};
pub use verb::{verb_lemmatize, VerbFeatures, VerbMatch};

/// Ranking score used by default.
pub type Rank = f64;
/// Exact ranking score, for tie analysis and tests.
pub type ExactRank = Ratio<i64>;

pub type Candidate = CorrectionCandidate<Rank>;
pub type ExactCandidate = CorrectionCandidate<ExactRank>;
pub type Checker = SpellChecker<Rank>;
pub type ExactChecker = SpellChecker<ExactRank>;
pub type Params = RankParams<Rank>;
