use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use num_rational::Ratio;

use super::NormalizationTable;
use crate::error::{read_utf8, Error, Result};

/// Disjoint sets of confusable codepoints. Substituting one member of a
/// group for another costs `discount` instead of a full edit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionGroups {
    groups: Vec<BTreeSet<char>>,
    discount: Ratio<u32>,
    membership: HashMap<char, usize>,
}

impl Default for ConfusionGroups {
    fn default() -> Self {
        Self::empty()
    }
}

impl ConfusionGroups {
    pub fn empty() -> Self {
        Self {
            groups: Vec::new(),
            discount: Ratio::new(1, 2),
            membership: HashMap::new(),
        }
    }

    pub fn new(groups: Vec<Vec<char>>, discount: Ratio<u32>) -> Result<Self> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        let mut problems = Vec::new();
        if discount <= zero || discount >= one {
            problems.push(format!(
                "discount {discount} must lie strictly between 0 and 1"
            ));
        }
        let mut membership = HashMap::new();
        let mut sets = Vec::with_capacity(groups.len());
        for (idx, group) in groups.into_iter().enumerate() {
            let set: BTreeSet<char> = group.into_iter().collect();
            for &c in &set {
                if let Some(prev) = membership.insert(c, idx) {
                    problems.push(format!(
                        "codepoint {c} (U+{:04X}) appears in groups {} and {}",
                        c as u32,
                        prev + 1,
                        idx + 1
                    ));
                }
            }
            sets.push(set);
        }
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }
        Ok(Self {
            groups: sets,
            discount,
            membership,
        })
    }

    pub fn load(path: impl AsRef<Path>, table: &NormalizationTable) -> Result<Self> {
        let path = path.as_ref();
        let text = read_utf8(path)?;
        Self::parse(&text, &path.display().to_string(), table)
    }

    /// Parses `confusion_groups.tsv`: one tab-separated group per line and an
    /// optional `discount=` header.
    pub fn parse(text: &str, name: &str, table: &NormalizationTable) -> Result<Self> {
        let mut discount = Ratio::new(1, 2);
        let mut groups = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(value) = line.trim().strip_prefix("discount=") {
                discount = parse_ratio(value.trim()).ok_or_else(|| {
                    Error::parse(name, line_no, format!("bad discount {value:?}"))
                })?;
                continue;
            }
            let mut group = Vec::new();
            for member in line.split('\t').filter(|m| !m.is_empty()) {
                let normalized = table.normalize(member);
                let mut chars = normalized.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => group.push(c),
                    _ => {
                        return Err(Error::parse(
                            name,
                            line_no,
                            format!("member {member:?} is not a single normalized codepoint"),
                        ))
                    }
                }
            }
            groups.push(group);
        }
        Self::new(groups, discount)
    }

    pub fn groups(&self) -> &[BTreeSet<char>] {
        &self.groups
    }

    pub fn discount(&self) -> Ratio<u32> {
        self.discount
    }

    pub fn same_group(&self, a: char, b: char) -> bool {
        match (self.membership.get(&a), self.membership.get(&b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.groups.iter().all(|g| g.len() < 2)
    }
}

/// Accepts `0.5`, `.25`, or `1/2`.
fn parse_ratio(text: &str) -> Option<Ratio<u32>> {
    if let Some((n, d)) = text.split_once('/') {
        let d: u32 = d.trim().parse().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Ratio::new(n.trim().parse().ok()?, d));
    }
    let (whole, frac) = text.split_once('.').unwrap_or((text, ""));
    if frac.len() > 6 || (whole.is_empty() && frac.is_empty()) {
        return None;
    }
    let whole: u32 = if whole.is_empty() {
        0
    } else {
        whole.parse().ok()?
    };
    let denom = 10u32.pow(frac.len() as u32);
    let frac: u32 = if frac.is_empty() {
        0
    } else {
        frac.parse().ok()?
    };
    Some(Ratio::new(whole * denom + frac, denom))
}
