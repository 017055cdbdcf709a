#![allow(dead_code)]

pub mod criteria;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::path::PathBuf;
use std::sync::Arc;

use num_rational::Ratio;
use sorani_core::lexicon::{AffixKind, Pos, Side};
use sorani_core::ngram::{read_corpus, tokenize};
use sorani_core::{build_index, BuildParams, NGramIndex, Resources};

pub fn resources() -> Resources {
    Resources::starter()
}

pub fn corpus_dir() -> PathBuf {
    Resources::starter_dir().join("sample_corpus")
}

pub fn sample_index(res: &Resources, n_values: &[usize], min_word_freq: u64) -> NGramIndex {
    let docs = read_corpus(corpus_dir()).unwrap();
    let params = BuildParams::new(n_values.iter().copied(), min_word_freq).unwrap();
    build_index(docs.into_iter().map(Ok), &params, &res.table).unwrap()
}

pub fn shared(index: NGramIndex) -> Arc<NGramIndex> {
    Arc::new(index)
}

/// Word counts straight from the corpus files: whitespace split, then
/// punctuation trimmed, digits dropped.
pub fn oracle_word_counts(res: &Resources) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for doc in read_corpus(corpus_dir()).unwrap() {
        let text = res.table.normalize(&doc.text);
        for raw in text.split_whitespace() {
            let w: String = raw
                .chars()
                .filter(|c| c.is_alphabetic() || *c == '\u{200c}')
                .collect();
            if w.is_empty() || w.chars().all(|c| c.is_numeric()) {
                continue;
            }
            *counts.entry(w).or_insert(0) += 1;
        }
    }
    // sanity: the library tokenizer agrees on this corpus
    let mut lib = BTreeMap::new();
    for doc in read_corpus(corpus_dir()).unwrap() {
        let text = res.table.normalize(&doc.text);
        for w in tokenize(&text) {
            *lib.entry(w.to_string()).or_insert(0u64) += 1;
        }
    }
    assert_eq!(counts, lib, "tokenizer disagrees with the plain split");
    counts
}

/// Positional gram counts computed by slicing every window by hand.
pub fn oracle_gram_counts(
    counts: &BTreeMap<String, u64>,
    n: usize,
    min_word_freq: u64,
) -> BTreeMap<(String, &'static str), u64> {
    let mut out = BTreeMap::new();
    for (w, &c) in counts {
        if c < min_word_freq {
            continue;
        }
        let chars: Vec<char> = w.chars().collect();
        if chars.len() < n {
            *out.entry((w.clone(), "beginning")).or_insert(0) += c;
            continue;
        }
        for i in 0..=chars.len() - n {
            let g: String = chars[i..i + n].iter().collect();
            let pos = if i == 0 {
                "beginning"
            } else if i + n == chars.len() {
                "end"
            } else {
                "middle"
            };
            *out.entry((g, pos)).or_insert(0) += c;
        }
    }
    out
}

/// Graph whose nodes are all strings up to `max_len` over `alphabet` and
/// whose edges are single insertions, deletions and substitutions, in
/// half units: 2 per edit, 1 for substituting the confusable pair.
/// Intermediate strings never need to exceed the longer endpoint, since
/// any script can be reordered as deletions, substitutions, insertions.
pub struct EditGraph {
    pub nodes: Vec<String>,
    edges: Vec<Vec<(u32, u32)>>,
}

impl EditGraph {
    pub fn new(alphabet: &[char], pair: (char, char), max_len: usize) -> Self {
        let nodes = all_strings(alphabet, max_len);
        let id: HashMap<&str, u32> = nodes
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i as u32))
            .collect();
        let mut edges = vec![Vec::new(); nodes.len()];
        for (k, s) in nodes.iter().enumerate() {
            let chars: Vec<char> = s.chars().collect();
            let mut push = |v: Vec<char>, w: u32| {
                let t: String = v.into_iter().collect();
                edges[k].push((id[t.as_str()], w));
            };
            for i in 0..chars.len() {
                let mut v = chars.clone();
                v.remove(i);
                push(v, 2);
                for &c in alphabet {
                    if c != chars[i] {
                        let mut v = chars.clone();
                        v[i] = c;
                        let near = (chars[i], c) == pair || (c, chars[i]) == pair;
                        push(v, if near { 1 } else { 2 });
                    }
                }
            }
            if chars.len() < max_len {
                for i in 0..=chars.len() {
                    for &c in alphabet {
                        let mut v = chars.clone();
                        v.insert(i, c);
                        push(v, 2);
                    }
                }
            }
        }
        Self { nodes, edges }
    }

    /// Shortest-path costs from `source` to every node.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0;
        heap.push(Reverse((0u32, source as u32)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u as usize] {
                continue;
            }
            for &(v, w) in &self.edges[u as usize] {
                let nd = d + w;
                if nd < dist[v as usize] {
                    dist[v as usize] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        dist
    }
}

pub fn all_strings(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for s in &frontier {
            for &c in alphabet {
                let mut t = s.clone();
                t.push(c);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn half_units(r: Ratio<u32>) -> u32 {
    let twice = r * 2;
    assert!(twice.is_integer());
    twice.to_integer()
}

/// Inflectional noun suffixes in the affix inventory.
pub fn noun_suffixes(res: &Resources) -> Vec<String> {
    res.lemmatizer
        .affixes()
        .rules()
        .iter()
        .filter(|r| {
            r.side == Side::Suffix
                && r.kind == AffixKind::Inflectional
                && r.pos_scope.includes(Pos::Noun)
        })
        .map(|r| r.form.clone())
        .collect()
}

/// Every root + suffix chain of depth at most two.
pub fn noun_chains(res: &Resources) -> Vec<(String, String)> {
    let suffixes = noun_suffixes(res);
    let mut out = Vec::new();
    for e in res.lemmatizer.lexicon().entries() {
        if e.pos != Pos::Noun || e.is_exception {
            continue;
        }
        let root = &e.surface;
        out.push((root.clone(), root.clone()));
        for a in &suffixes {
            out.push((format!("{root}{a}"), root.clone()));
            for b in &suffixes {
                out.push((format!("{root}{a}{b}"), root.clone()));
            }
        }
    }
    out
}

/// Oracle lookup: is every positional gram of `word`, at every size,
/// present in the hand-counted tables?
pub fn all_grams_stored(
    word: &str,
    tables: &BTreeMap<usize, BTreeMap<(String, &'static str), u64>>,
) -> bool {
    tables.iter().all(|(&n, table)| {
        oracle_grams(word, n)
            .iter()
            .all(|(g, p, _)| table.contains_key(&(g.clone(), *p)))
    })
}

/// (gram, position, offset) by direct slicing.
pub fn oracle_grams(word: &str, n: usize) -> Vec<(String, &'static str, usize)> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() < n {
        return vec![(word.to_string(), "beginning", 0)];
    }
    (0..=chars.len() - n)
        .map(|i| {
            let pos = if i == 0 {
                "beginning"
            } else if i + n == chars.len() {
                "end"
            } else {
                "middle"
            };
            (chars[i..i + n].iter().collect(), pos, i)
        })
        .collect()
}

pub fn gram_tables(
    counts: &BTreeMap<String, u64>,
    ns: &[usize],
    min: u64,
) -> BTreeMap<usize, BTreeMap<(String, &'static str), u64>> {
    ns.iter()
        .map(|&n| (n, oracle_gram_counts(counts, n, min)))
        .collect()
}

pub struct Mutation {
    pub input: String,
    pub gold: String,
    pub confusable: bool,
}

/// One random edit per word, half of them confusion-group substitutions.
/// Mutations landing on another corpus word are redrawn.
pub fn mutation_suite(
    res: &Resources,
    index: &NGramIndex,
    size: usize,
    seed: u64,
) -> Vec<Mutation> {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(seed);
    let words: Vec<&String> = index
        .word_freq()
        .iter()
        .filter(|(w, &c)| c >= index.min_word_freq() && w.chars().count() >= 3)
        .map(|(w, _)| w)
        .collect();
    let letters: Vec<char> = "ابپتجچحخدرڕزژسشعغفڤقکگلڵمنوۆھەیێ".chars().collect();
    let mut out = Vec::new();
    while out.len() < size {
        let gold = words[rng.gen_range(0..words.len())].clone();
        let mut chars: Vec<char> = gold.chars().collect();
        let confusable = rng.gen_bool(0.5);
        if confusable {
            let spots: Vec<(usize, char)> = chars
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| {
                    res.groups
                        .groups()
                        .iter()
                        .filter(move |g| g.contains(&c))
                        .flat_map(move |g| g.iter().filter(move |&&o| o != c).map(move |&o| (i, o)))
                })
                .collect();
            if spots.is_empty() {
                continue;
            }
            let (i, o) = spots[rng.gen_range(0..spots.len())];
            chars[i] = o;
        } else {
            match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(0..chars.len());
                    chars.remove(i);
                }
                1 => {
                    let i = rng.gen_range(0..=chars.len());
                    chars.insert(i, letters[rng.gen_range(0..letters.len())]);
                }
                _ => {
                    let i = rng.gen_range(0..chars.len());
                    let c = letters[rng.gen_range(0..letters.len())];
                    if c == chars[i] {
                        continue;
                    }
                    chars[i] = c;
                }
            }
        }
        let input: String = chars.into_iter().collect();
        if index.word_count(&input) > 0 || input == gold {
            continue;
        }
        out.push(Mutation {
            input,
            gold,
            confusable,
        });
    }
    out
}

pub struct EndToEnd {
    pub hit10_45: f64,
    pub hit10_3: f64,
    pub hit1_plain: f64,
    pub hit1_lexicon: f64,
    pub hit1_45: f64,
    pub hit1_3: f64,
}

pub fn end_to_end() -> EndToEnd {
    use sorani_core::eval::{hit_at_k, GoldPair};
    use sorani_core::{Checker, Mode, Params};

    let res = resources();
    let full = sample_index(&res, &[3, 4, 5], 3);
    let suite = mutation_suite(&res, &full, 200, 17);
    let gold: Vec<GoldPair> = suite
        .iter()
        .map(|m| GoldPair::new(m.input.clone(), m.gold.clone()))
        .collect();
    let params = Params::default();
    let checker = |ns: &[usize], mode: Mode| {
        let index = Arc::new(full.with_n_values(ns.iter().copied()));
        let lz = (mode == Mode::WithLexicon).then(|| res.lemmatizer.clone());
        Checker::new(index, res.groups.clone(), params, mode, lz).unwrap()
    };
    let c45 = checker(&[4, 5], Mode::NgramOnly);
    let c3 = checker(&[3], Mode::NgramOnly);
    let c45_lex = checker(&[4, 5], Mode::WithLexicon);
    let hit =
        |c: &sorani_core::Checker, k: usize| hit_at_k(&gold, |w| c.correct(w), k).unwrap().accuracy;
    EndToEnd {
        hit10_45: hit(&c45, 10),
        hit10_3: hit(&c3, 10),
        hit1_plain: hit(&c45, 1),
        hit1_lexicon: hit(&c45_lex, 1),
        hit1_45: hit(&c45, 1),
        hit1_3: hit(&c3, 1),
    }
}
