use std::collections::BTreeMap;

/// Character trie mapping keys to any number of values.
#[derive(Debug, Clone)]
pub struct Trie<V> {
    nodes: Vec<Node<V>>,
}

#[derive(Debug, Clone)]
struct Node<V> {
    children: BTreeMap<char, usize>,
    values: Vec<V>,
}

impl<V> Default for Trie<V> {
    fn default() -> Self {
        Self::new()
    }
}

impl<V> Trie<V> {
    pub fn new() -> Self {
        Self {
            nodes: vec![Node {
                children: BTreeMap::new(),
                values: Vec::new(),
            }],
        }
    }

    pub fn insert(&mut self, key: impl IntoIterator<Item = char>, value: V) {
        let mut at = 0;
        for c in key {
            at = match self.nodes[at].children.get(&c) {
                Some(&next) => next,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(Node {
                        children: BTreeMap::new(),
                        values: Vec::new(),
                    });
                    self.nodes[at].children.insert(c, next);
                    next
                }
            };
        }
        self.nodes[at].values.push(value);
    }

    pub fn get(&self, key: impl IntoIterator<Item = char>) -> &[V] {
        let mut at = 0;
        for c in key {
            match self.nodes[at].children.get(&c) {
                Some(&next) => at = next,
                None => return &[],
            }
        }
        &self.nodes[at].values
    }

    /// Every stored key that is a prefix of `text`, as `(key length, value)`,
    /// shortest first.
    pub fn prefixes_of(&self, text: impl IntoIterator<Item = char>) -> Vec<(usize, &V)> {
        let mut out: Vec<(usize, &V)> = self.nodes[0].values.iter().map(|v| (0, v)).collect();
        let mut at = 0;
        for (depth, c) in text.into_iter().enumerate() {
            match self.nodes[at].children.get(&c) {
                Some(&next) => at = next,
                None => break,
            }
            out.extend(self.nodes[at].values.iter().map(|v| (depth + 1, v)));
        }
        out
    }
}
