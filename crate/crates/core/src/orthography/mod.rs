//! Canonical orthography and the confusion-weighted edit distance.

mod confusion;
mod distance;
mod normalize;

pub use confusion::ConfusionGroups;
pub use distance::{weighted_edit_distance, weighted_edit_distance_chars, EditCost};
pub use normalize::NormalizationTable;

/// Parses a `U+XXXX` codepoint literal.
pub(crate) fn parse_codepoint(token: &str) -> Option<char> {
    let hex = token
        .strip_prefix("U+")
        .or_else(|| token.strip_prefix("u+"))?;
    u32::from_str_radix(hex, 16).ok().and_then(char::from_u32)
}
