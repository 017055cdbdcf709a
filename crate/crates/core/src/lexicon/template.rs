use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{read_utf8, Error, Result};
use crate::orthography::NormalizationTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tense {
    Past,
    Present,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transitivity {
    Transitive,
    Intransitive,
    #[default]
    Both,
}

impl Transitivity {
    /// Whether a template scoped to `self` applies to a verb of `verb`.
    pub fn admits(self, verb: Transitivity) -> bool {
        self == Transitivity::Both || verb == Transitivity::Both || self == verb
    }
}

/// The six grammatical persons, three singular and three plural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Person {
    First,
    Second,
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Number {
    Singular,
    Plural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Voice {
    #[default]
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mood {
    #[default]
    Indicative,
    Subjunctive,
    Imperative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Aspect {
    #[default]
    Simple,
    Progressive,
}

/// Person/number slot of a verb ending, written `1sg` .. `3pl`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PersonNumber {
    pub person: Person,
    pub number: Number,
}

impl PersonNumber {
    pub const ALL: [PersonNumber; 6] = [
        PersonNumber::new(Person::First, Number::Singular),
        PersonNumber::new(Person::Second, Number::Singular),
        PersonNumber::new(Person::Third, Number::Singular),
        PersonNumber::new(Person::First, Number::Plural),
        PersonNumber::new(Person::Second, Number::Plural),
        PersonNumber::new(Person::Third, Number::Plural),
    ];

    pub const fn new(person: Person, number: Number) -> Self {
        Self { person, number }
    }

    pub fn parse(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|pn| pn.label() == label)
    }

    pub fn label(self) -> &'static str {
        match (self.person, self.number) {
            (Person::First, Number::Singular) => "1sg",
            (Person::Second, Number::Singular) => "2sg",
            (Person::Third, Number::Singular) => "3sg",
            (Person::First, Number::Plural) => "1pl",
            (Person::Second, Number::Plural) => "2pl",
            (Person::Third, Number::Plural) => "3pl",
        }
    }
}

impl fmt::Display for PersonNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for PersonNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// One alternative in a prefix slot. The empty form is the "no prefix"
/// option.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SlotForm {
    pub form: String,
    pub negation: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Ending {
    pub person: PersonNumber,
    pub form: String,
}

/// A conjugation pattern: prefix slots, tense stem, person ending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VerbTemplate {
    /// Position of the template in its file, used as a stable identifier.
    pub id: usize,
    pub stem_tense: Tense,
    pub prefix_slots: Vec<Vec<SlotForm>>,
    pub endings: Vec<Ending>,
    pub transitivity: Transitivity,
    pub voice: Voice,
    pub mood: Mood,
    pub aspect: Aspect,
}

impl VerbTemplate {
    /// Number of surfaces this template yields for one stem.
    pub fn expansion_size(&self) -> usize {
        self.prefix_slots.iter().map(Vec::len).product::<usize>() * self.endings.len()
    }

    /// The negation alternative of the outermost slot, when that slot is an
    /// optional negation (`{∅, neg}`).
    pub fn optional_negation(&self) -> Option<&str> {
        let first = self.prefix_slots.first()?;
        let has_empty = first.iter().any(|f| f.form.is_empty());
        let neg = first.iter().find(|f| f.negation)?;
        has_empty.then_some(neg.form.as_str())
    }
}

/// Parses `verb_templates.tsv`.
///
/// `stem_tense<TAB>slot|slot|...<TAB>label=form;...<TAB>transitivity[<TAB>features]`
/// where slot alternatives are comma-separated, `_` is the empty alternative,
/// a `:neg` suffix tags a negation form, and features are `key=value;...`
/// over `voice`, `mood` and `aspect`.
pub fn parse_templates(
    text: &str,
    name: &str,
    table: &NormalizationTable,
) -> Result<Vec<VerbTemplate>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::parse(name, line_no, msg);
        let fields: Vec<&str> = line.split('\t').collect();
        if !(4..=5).contains(&fields.len()) {
            return Err(err(format!(
                "expected 4 or 5 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let stem_tense = match fields[0].trim() {
            "past" => Tense::Past,
            "present" => Tense::Present,
            other => return Err(err(format!("unknown stem tense {other:?}"))),
        };

        let mut prefix_slots = Vec::new();
        for slot in fields[1]
            .split('|')
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let mut alternatives: Vec<SlotForm> = Vec::new();
            for alt in slot.split(',').map(str::trim) {
                let (form, negation) = match alt.strip_suffix(":neg") {
                    Some(f) => (f, true),
                    None => (alt, false),
                };
                let form = if form == "_" {
                    String::new()
                } else {
                    table.normalize(form)
                };
                if form.is_empty() && (negation || alt.is_empty()) {
                    return Err(err(format!("empty prefix alternative {alt:?}")));
                }
                if alternatives.iter().any(|a| a.form == form) {
                    return Err(err(format!("duplicate prefix alternative {alt:?}")));
                }
                alternatives.push(SlotForm { form, negation });
            }
            prefix_slots.push(alternatives);
        }

        let mut endings: Vec<Ending> = Vec::new();
        for item in fields[2]
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let (label, form) = item
                .split_once('=')
                .ok_or_else(|| err(format!("ending {item:?} is not label=form")))?;
            let person = PersonNumber::parse(label.trim())
                .ok_or_else(|| err(format!("unknown person label {label:?}")))?;
            if endings.iter().any(|e| e.person == person) {
                return Err(err(format!("person {label} listed twice")));
            }
            endings.push(Ending {
                person,
                form: table.normalize(form.trim()),
            });
        }
        if endings.is_empty() {
            return Err(err("template has no endings".into()));
        }

        let transitivity = match fields[3].trim() {
            "transitive" => Transitivity::Transitive,
            "intransitive" => Transitivity::Intransitive,
            "both" | "" => Transitivity::Both,
            other => return Err(err(format!("unknown transitivity {other:?}"))),
        };

        let mut voice = Voice::default();
        let mut mood = Mood::default();
        let mut aspect = Aspect::default();
        if let Some(features) = fields.get(4) {
            for item in features.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                match item.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
                    Some(("voice", "active")) => voice = Voice::Active,
                    Some(("voice", "passive")) => voice = Voice::Passive,
                    Some(("mood", "indicative")) => mood = Mood::Indicative,
                    Some(("mood", "subjunctive")) => mood = Mood::Subjunctive,
                    Some(("mood", "imperative")) => mood = Mood::Imperative,
                    Some(("aspect", "simple")) => aspect = Aspect::Simple,
                    Some(("aspect", "progressive")) => aspect = Aspect::Progressive,
                    _ => return Err(err(format!("unknown template feature {item:?}"))),
                }
            }
        }

        out.push(VerbTemplate {
            id: out.len(),
            stem_tense,
            prefix_slots,
            endings,
            transitivity,
            voice,
            mood,
            aspect,
        });
    }
    Ok(out)
}

pub fn load_templates(
    path: impl AsRef<Path>,
    table: &NormalizationTable,
) -> Result<Vec<VerbTemplate>> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    parse_templates(&text, &path.display().to_string(), table)
}
