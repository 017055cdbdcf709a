//! Bottom-up verb lemmatization: stems found inside the word select lexicon
//! entries, their conjugations are generated from templates, and the word
//! must equal one of them exactly.

use std::cmp::{Ordering, Reverse};
use std::fmt;

use serde::Serialize;

use crate::lexicon::{
    Aspect, Lexicon, LexiconEntry, Mood, Number, PersonNumber, Tense, VerbTemplate, Voice,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Affirmative,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VerbFeatures {
    pub tense: Tense,
    pub person: PersonNumber,
    pub polarity: Polarity,
    pub voice: Voice,
    pub mood: Mood,
    pub aspect: Aspect,
    /// The tense stem the surface was built on.
    pub stem: String,
    pub template: usize,
}

impl VerbFeatures {
    pub fn number(&self) -> Number {
        self.person.number
    }
}

impl fmt::Display for VerbFeatures {
    /// `key=value` pairs separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tense = match self.tense {
            Tense::Past => "past",
            Tense::Present => "present",
        };
        let polarity = match self.polarity {
            Polarity::Affirmative => "affirmative",
            Polarity::Negative => "negative",
        };
        let voice = match self.voice {
            Voice::Active => "active",
            Voice::Passive => "passive",
        };
        let mood = match self.mood {
            Mood::Indicative => "indicative",
            Mood::Subjunctive => "subjunctive",
            Mood::Imperative => "imperative",
        };
        let aspect = match self.aspect {
            Aspect::Simple => "simple",
            Aspect::Progressive => "progressive",
        };
        let number = match self.person.number {
            Number::Singular => "sg",
            Number::Plural => "pl",
        };
        write!(
            f,
            "tense={tense} person={} number={number} polarity={polarity} voice={voice} mood={mood} aspect={aspect} stem={} template={}",
            &self.person.label()[..1],
            self.stem,
            self.template
        )
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedForm<'a> {
    pub surface: String,
    /// Concatenated prefix-slot choices.
    pub prefix: String,
    pub ending: String,
    pub entry: &'a LexiconEntry,
    pub template: &'a VerbTemplate,
    pub features: VerbFeatures,
}

/// Verb entries with a past or present stem occurring inside `word`, longest
/// matching stem first. Among equal lengths an entry whose stem equals the
/// whole word comes first, then past-stem matches, then by infinitive.
pub fn candidate_stems<'a>(word: &str, lexicon: &'a Lexicon) -> Vec<&'a LexiconEntry> {
    let word_len = word.chars().count();
    // (entry, longest len, exact, past)
    let mut best: Vec<(usize, usize, bool, bool)> = Vec::new();
    for hit in lexicon.stems_in(word) {
        let exact = hit.len == word_len;
        let past = hit.tense == Tense::Past;
        let key = (hit.len, exact, past);
        match best.iter_mut().find(|b| b.0 == hit.entry) {
            Some(b) => {
                if key > (b.1, b.2, b.3) {
                    *b = (hit.entry, hit.len, exact, past);
                }
            }
            None => best.push((hit.entry, hit.len, exact, past)),
        }
    }
    best.sort_by(|a, b| {
        b.1.cmp(&a.1)
            .then(b.2.cmp(&a.2))
            .then(b.3.cmp(&a.3))
            .then_with(|| lexicon.entry(a.0).surface.cmp(&lexicon.entry(b.0).surface))
    });
    best.into_iter().map(|b| lexicon.entry(b.0)).collect()
}

/// Places the prefix string inside a stem: before the light verb of a
/// compound (after its last space), otherwise at the front.
fn attach(stem: &str, prefix: &str, ending: &str) -> String {
    let split = stem.rfind(' ').map_or(0, |i| i + 1);
    let mut s = String::with_capacity(stem.len() + prefix.len() + ending.len());
    s.push_str(&stem[..split]);
    s.push_str(prefix);
    s.push_str(&stem[split..]);
    s.push_str(ending);
    s
}

fn expand_template<'a>(
    entry: &'a LexiconEntry,
    template: &'a VerbTemplate,
    mut emit: impl FnMut(GeneratedForm<'a>),
) {
    if !template.transitivity.admits(entry.transitivity) {
        return;
    }
    let Some(stem) = entry.stem(template.stem_tense) else {
        return;
    };
    // odometer over the prefix slots
    let slots = &template.prefix_slots;
    let mut choice = vec![0usize; slots.len()];
    loop {
        let mut prefix = String::new();
        let mut negative = false;
        for (slot, &c) in slots.iter().zip(&choice) {
            prefix.push_str(&slot[c].form);
            negative |= slot[c].negation;
        }
        for ending in &template.endings {
            emit(GeneratedForm {
                surface: attach(stem, &prefix, &ending.form),
                prefix: prefix.clone(),
                ending: ending.form.clone(),
                entry,
                template,
                features: VerbFeatures {
                    tense: template.stem_tense,
                    person: ending.person,
                    polarity: if negative {
                        Polarity::Negative
                    } else {
                        Polarity::Affirmative
                    },
                    voice: template.voice,
                    mood: template.mood,
                    aspect: template.aspect,
                    stem: stem.to_string(),
                    template: template.id,
                },
            });
        }
        let mut i = slots.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < slots[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Every surface the templates produce for `stem`, in template order.
pub fn generate_forms<'a>(
    stem: &'a LexiconEntry,
    templates: &'a [VerbTemplate],
) -> Vec<GeneratedForm<'a>> {
    let mut out = Vec::new();
    for t in templates {
        expand_template(stem, t, |f| out.push(f));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerbMatch {
    pub infinitive: String,
    pub features: VerbFeatures,
}

fn preference(a: &GeneratedForm, b: &GeneratedForm) -> Ordering {
    // Less is preferred.
    let stem_len = |f: &GeneratedForm| Reverse(f.features.stem.chars().count());
    stem_len(a)
        .cmp(&stem_len(b))
        .then(a.features.tense.cmp(&b.features.tense))
        .then_with(|| a.entry.surface.cmp(&b.entry.surface))
}

/// Returns the infinitive whose generated forms contain `word` exactly.
pub fn verb_lemmatize(
    word: &str,
    lexicon: &Lexicon,
    templates: &[VerbTemplate],
) -> Option<VerbMatch> {
    let mut best: Option<GeneratedForm> = None;
    for entry in candidate_stems(word, lexicon) {
        for t in templates {
            // the template's stem must occur in the word
            match entry.stem(t.stem_tense) {
                Some(s) if word.contains(s.rsplit(' ').next().unwrap_or(s)) => {}
                _ => continue,
            }
            expand_template(entry, t, |form| {
                if form.surface == word
                    && best
                        .as_ref()
                        .is_none_or(|b| preference(&form, b) == Ordering::Less)
                {
                    best = Some(form);
                }
            });
        }
    }
    best.map(|f| VerbMatch {
        infinitive: f.entry.surface.clone(),
        features: f.features,
    })
}
