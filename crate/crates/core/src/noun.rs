//! Noun lemmatization by recursive pruning of inflectional affixes.
//!
//! Every node of the analysis is a remainder of the input word. A node has
//! one child per removable suffix, one per removable prefix, and an empty
//! morpheme `E` child that stands for "stop here". Leaves reached through
//! `E` are root candidates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::Serialize;

use crate::lemma::{ConfidenceNote, Lemma};
use crate::lexicon::{AffixInventory, AffixRule, Lexicon, Pos, Side};

/// Words and remainders shorter than this are never pruned further unless
/// they are lexicon entries.
pub const MIN_ROOT_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Edge {
    Affix(AffixRule),
    /// The empty morpheme.
    #[serde(rename = "E")]
    Empty,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Affix(r) if r.side == Side::Suffix => write!(f, "-{}", r.form),
            Edge::Affix(r) => write!(f, "{}-", r.form),
            Edge::Empty => f.write_str("E"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub edge: Edge,
    pub tree: Arc<AnalysisTree>,
}

/// Arborescent decomposition of a word. Shared subtrees are reference
/// counted, so the structure is a DAG presented as a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisTree {
    pub node: String,
    pub children: Vec<Branch>,
    pub is_accepted_root: bool,
}

impl AnalysisTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of distinct root-to-leaf paths.
    pub fn path_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(|b| b.tree.path_count()).sum()
        }
    }

    /// Visits every root-to-leaf path as the sequence of edges taken and
    /// the leaf reached.
    pub fn for_each_path(&self, mut visit: impl FnMut(&[&Edge], &AnalysisTree)) {
        fn walk<'a>(
            t: &'a AnalysisTree,
            path: &mut Vec<&'a Edge>,
            visit: &mut dyn FnMut(&[&Edge], &AnalysisTree),
        ) {
            if t.is_leaf() {
                visit(path, t);
                return;
            }
            for b in &t.children {
                path.push(&b.edge);
                walk(&b.tree, path, visit);
                path.pop();
            }
        }
        walk(self, &mut Vec::new(), &mut visit);
    }

    /// Indented text rendering, one edge per line; accepted leaves carry `*`.
    pub fn render(&self) -> String {
        fn walk(t: &AnalysisTree, depth: usize, out: &mut String) {
            for b in &t.children {
                let _ = write!(out, "{}{} {}", "  ".repeat(depth), b.edge, b.tree.node);
                if b.tree.is_accepted_root {
                    out.push_str(" *");
                }
                out.push('\n');
                walk(&b.tree, depth + 1, out);
            }
        }
        let mut out = format!("{}\n", self.node);
        walk(self, 1, &mut out);
        out
    }
}

struct Analyzer<'a> {
    lexicon: &'a Lexicon,
    affixes: &'a AffixInventory,
    memo: HashMap<String, Arc<AnalysisTree>>,
}

impl Analyzer<'_> {
    fn known(&self, s: &str) -> bool {
        self.lexicon.contains(s) || self.lexicon.is_exception(s)
    }

    fn admissible(&self, s: &str) -> bool {
        !s.is_empty() && (s.chars().count() >= MIN_ROOT_LEN || self.known(s))
    }

    fn build(&mut self, node: &str) -> Arc<AnalysisTree> {
        if let Some(t) = self.memo.get(node) {
            return t.clone();
        }
        let mut children = Vec::new();
        // exception words are terminal
        if !self.lexicon.is_exception(node) {
            for rule in self.affixes.removable_suffixes(node, Pos::Noun) {
                let rest = &node[..node.len() - rule.form.len()];
                if self.admissible(rest) {
                    let child = self.build(rest);
                    children.push(Branch {
                        edge: Edge::Affix(rule.clone()),
                        tree: child,
                    });
                }
            }
            for rule in self.affixes.removable_prefixes(node, Pos::Noun) {
                let rest = &node[rule.form.len()..];
                if self.admissible(rest) {
                    let child = self.build(rest);
                    children.push(Branch {
                        edge: Edge::Affix(rule.clone()),
                        tree: child,
                    });
                }
            }
        }
        children.push(Branch {
            edge: Edge::Empty,
            tree: Arc::new(AnalysisTree {
                node: node.to_string(),
                children: Vec::new(),
                is_accepted_root: self.admissible(node),
            }),
        });
        let tree = Arc::new(AnalysisTree {
            node: node.to_string(),
            children,
            is_accepted_root: false,
        });
        self.memo.insert(node.to_string(), tree.clone());
        tree
    }
}

/// Full analysis tree of `word` as a noun.
pub fn analyze_noun(word: &str, lexicon: &Lexicon, affixes: &AffixInventory) -> Arc<AnalysisTree> {
    let mut analyzer = Analyzer {
        lexicon,
        affixes,
        memo: HashMap::new(),
    };
    if word.chars().count() < MIN_ROOT_LEN {
        // below the floor: no pruning at all
        return Arc::new(AnalysisTree {
            node: word.to_string(),
            children: vec![Branch {
                edge: Edge::Empty,
                tree: Arc::new(AnalysisTree {
                    node: word.to_string(),
                    children: Vec::new(),
                    is_accepted_root: analyzer.known(word),
                }),
            }],
            is_accepted_root: false,
        });
    }
    analyzer.build(word)
}

#[derive(Debug, Clone)]
struct Choice {
    root: String,
    known: bool,
    removed: Vec<AffixRule>,
}

impl Choice {
    // Greater is better: lexicon hit, then depth, then length, then the
    // lexicographically smaller root.
    fn rank(&self, other: &Choice) -> Ordering {
        self.known
            .cmp(&other.known)
            .then(self.removed.len().cmp(&other.removed.len()))
            .then(self.root.chars().count().cmp(&other.root.chars().count()))
            .then_with(|| other.root.cmp(&self.root))
    }
}

fn select(
    tree: &Arc<AnalysisTree>,
    lexicon: &Lexicon,
    memo: &mut HashMap<*const AnalysisTree, Option<Choice>>,
) -> Option<Choice> {
    let key = Arc::as_ptr(tree);
    if let Some(c) = memo.get(&key) {
        return c.clone();
    }
    let mut best: Option<Choice> = None;
    for branch in &tree.children {
        let candidate = match &branch.edge {
            Edge::Empty => branch.tree.is_accepted_root.then(|| Choice {
                root: branch.tree.node.clone(),
                known: lexicon.is_noun(&branch.tree.node)
                    || lexicon.is_exception(&branch.tree.node),
                removed: Vec::new(),
            }),
            Edge::Affix(rule) => select(&branch.tree, lexicon, memo).map(|mut c| {
                c.removed.insert(0, rule.clone());
                c
            }),
        };
        if let Some(c) = candidate {
            if best.as_ref().is_none_or(|b| c.rank(b) == Ordering::Greater) {
                best = Some(c);
            }
        }
    }
    memo.insert(key, best.clone());
    best
}

/// Lemmatizes `word` as a noun: exceptions and short words come back
/// unchanged, otherwise the best accepted leaf of the analysis is chosen.
pub fn noun_lemmatize(word: &str, lexicon: &Lexicon, affixes: &AffixInventory) -> Lemma {
    let tree = analyze_noun(word, lexicon, affixes);
    let unchanged = |note| Lemma {
        root: word.to_string(),
        pos: Pos::Noun,
        note,
        removed: Vec::new(),
        analysis: Some(tree.clone()),
        verb: None,
    };
    if lexicon.is_exception(word) {
        return unchanged(ConfidenceNote::LexiconMatch);
    }
    if word.chars().count() < MIN_ROOT_LEN {
        let note = if lexicon.is_noun(word) {
            ConfidenceNote::LexiconMatch
        } else {
            ConfidenceNote::Heuristic
        };
        return unchanged(note);
    }
    match select(&tree, lexicon, &mut HashMap::new()) {
        Some(choice) => Lemma {
            root: choice.root,
            pos: Pos::Noun,
            note: if choice.known {
                ConfidenceNote::LexiconMatch
            } else {
                ConfidenceNote::Heuristic
            },
            removed: choice.removed,
            analysis: Some(tree),
            verb: None,
        },
        None => unchanged(ConfidenceNote::Heuristic),
    }
}
