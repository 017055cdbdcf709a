//! Positional character n-gram index built from a corpus.

mod corpus;
mod index;
mod model_file;

use std::fmt;

use serde::Serialize;

pub use corpus::{read_corpus, Document};
pub use index::{build_index, BuildParams, BuildStats, NGramIndex};
pub use model_file::MODEL_VERSION;

/// Where a gram sits inside its word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PositionClass {
    Beginning,
    Middle,
    End,
}

impl PositionClass {
    pub const ALL: [PositionClass; 3] = [
        PositionClass::Beginning,
        PositionClass::Middle,
        PositionClass::End,
    ];

    /// Class of the gram of size `n` at codepoint `offset` in a word of
    /// `word_len` codepoints. A gram that is both first and last is a
    /// beginning gram.
    pub fn classify(offset: usize, n: usize, word_len: usize) -> Self {
        if offset == 0 {
            PositionClass::Beginning
        } else if offset + n >= word_len {
            PositionClass::End
        } else {
            PositionClass::Middle
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PositionClass::Beginning => "beginning",
            PositionClass::Middle => "middle",
            PositionClass::End => "end",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str() == s)
    }

    pub(crate) fn code(self) -> u8 {
        self as u8
    }

    pub(crate) fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }
}

impl fmt::Display for PositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gram {
    pub text: String,
    pub position: PositionClass,
    /// Codepoint offset in the word.
    pub offset: usize,
}

impl Gram {
    pub fn len(&self) -> usize {
        self.text.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }
}

/// All contiguous grams of size `n` in offset order. A word shorter than
/// `n` yields itself as one beginning gram.
pub fn extract_grams(word: &str, n: usize) -> Vec<Gram> {
    assert!(n >= 1, "gram size must be positive");
    let chars: Vec<char> = word.chars().collect();
    if chars.is_empty() {
        return Vec::new();
    }
    if chars.len() <= n {
        return vec![Gram {
            text: word.to_string(),
            position: PositionClass::Beginning,
            offset: 0,
        }];
    }
    chars
        .windows(n)
        .enumerate()
        .map(|(offset, w)| Gram {
            text: w.iter().collect(),
            position: PositionClass::classify(offset, n, chars.len()),
            offset,
        })
        .collect()
}

/// Splits text into word tokens on whitespace, punctuation and symbols.
/// Tokens made only of digits are dropped.
pub fn tokenize(text: &str) -> impl Iterator<Item = &str> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty() && !t.chars().all(char::is_numeric))
}
