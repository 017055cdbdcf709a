use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use super::ConfusionGroups;

/// An edit distance in units of whole edit operations, held as an exact
/// fraction so ties between candidates are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EditCost(Ratio<u32>);

impl EditCost {
    pub const ZERO: EditCost = EditCost(Ratio::new_raw(0, 1));
    pub const ONE: EditCost = EditCost(Ratio::new_raw(1, 1));

    pub fn new(numer: u32, denom: u32) -> Self {
        EditCost(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: u32) -> Self {
        EditCost(Ratio::from_integer(value))
    }

    /// Cost counted in half edits (`3` is 1.5).
    pub fn from_halves(halves: u32) -> Self {
        EditCost::new(halves, 2)
    }

    pub fn ratio(self) -> Ratio<u32> {
        self.0
    }

    pub fn numer(self) -> u32 {
        *self.0.numer()
    }

    pub fn denom(self) -> u32 {
        *self.0.denom()
    }

    pub fn is_zero(self) -> bool {
        self.numer() == 0
    }

    pub fn to_f64(self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for EditCost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Serialize for EditCost {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

pub fn weighted_edit_distance(a: &str, b: &str, groups: &ConfusionGroups) -> EditCost {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    weighted_edit_distance_chars(&a, &b, groups)
}

/// Levenshtein distance with unit insert/delete/substitute costs, except that
/// substituting within a confusion group costs the group discount.
pub fn weighted_edit_distance_chars(a: &[char], b: &[char], groups: &ConfusionGroups) -> EditCost {
    // Integer DP in units of 1/denom of an edit.
    let discount = groups.discount();
    let unit = *discount.denom();
    let near = *discount.numer();

    let mut prev: Vec<u32> = (0..=b.len() as u32).map(|j| j * unit).collect();
    let mut curr = vec![0u32; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        curr[0] = (i as u32 + 1) * unit;
        for (j, &cb) in b.iter().enumerate() {
            let sub = if ca == cb {
                0
            } else if groups.same_group(ca, cb) {
                near
            } else {
                unit
            };
            curr[j + 1] = (prev[j] + sub).min(prev[j + 1] + unit).min(curr[j] + unit);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    EditCost::new(prev[b.len()], unit)
}
