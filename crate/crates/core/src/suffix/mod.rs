//! The two suffix trees of the text and substring location on them.

mod automaton;
mod tree;

pub use tree::{NodeId, SuffixTree, TreeKind, ROOT};

use crate::error::{Error, Result};
use crate::text::{Span, Text};

/// Stored fields of one suffix-tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeInfo {
    pub len: usize,
    pub parent: NodeId,
    /// First occurrence of the node's longest string; `None` for the root.
    pub sample_occurrence: Option<Span>,
}

/// Both suffix trees of a text.
///
/// `t1` is the suffix tree of the text: the ancestors of `leaf_of_suffix(l)`
/// hold the prefixes `T[l, i]`. `t0` is the suffix tree of the reversed text
/// with strings read forwards again: the ancestors of `leaf_of_prefix(r)` hold
/// the suffixes `T[j, r]`.
#[derive(Clone, Debug)]
pub struct TextIndex {
    text: Text,
    t0: SuffixTree,
    t1: SuffixTree,
    leaf_of_prefix: Vec<u32>,
    leaf_of_suffix: Vec<u32>,
}

impl TextIndex {
    pub fn build(text: Text) -> Self {
        let n = text.len();
        let mut fwd = automaton::build(text.as_bytes().iter().copied());
        let mut rev = automaton::build(text.as_bytes().iter().rev().copied());
        fwd.renumber_heavy_first();
        rev.renumber_heavy_first();
        let t0 = SuffixTree::from_automaton(&fwd, &text, TreeKind::T0);
        let t1 = SuffixTree::from_automaton(&rev, &text, TreeKind::T1);
        let leaf_of_prefix = fwd.prefix_state.clone();
        // after k reversed symbols the automaton sits on the suffix starting at n - k + 1
        let mut leaf_of_suffix = vec![0u32; n];
        for (k, &s) in rev.prefix_state.iter().enumerate() {
            leaf_of_suffix[n - 1 - k] = s;
        }

        let mut index = TextIndex { text, t0, t1, leaf_of_prefix, leaf_of_suffix };
        index.link_suffixes();
        index
    }

    /// T1 links drop the first symbol of a node's longest string; T0 links drop the last.
    fn link_suffixes(&mut self) {
        let mut link1 = vec![ROOT; self.t1.node_count()];
        for v in 1..self.t1.node_count() as u32 {
            let s = self.t1.sample(v).unwrap();
            if s.len() > 1 {
                link1[v as usize] = self.locate_unchecked(TreeKind::T1, s.l + 1, s.r);
            }
        }
        let mut link0 = vec![ROOT; self.t0.node_count()];
        for v in 1..self.t0.node_count() as u32 {
            let s = self.t0.sample(v).unwrap();
            if s.len() > 1 {
                link0[v as usize] = self.locate_unchecked(TreeKind::T0, s.l, s.r - 1);
            }
        }
        self.t1.suffix_link = link1;
        self.t0.suffix_link = link0;
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn tree(&self, kind: TreeKind) -> &SuffixTree {
        match kind {
            TreeKind::T0 => &self.t0,
            TreeKind::T1 => &self.t1,
        }
    }

    pub fn t0(&self) -> &SuffixTree {
        &self.t0
    }

    pub fn t1(&self) -> &SuffixTree {
        &self.t1
    }

    /// T0 node holding the prefix `T[1, r]`.
    #[inline]
    pub fn leaf_of_prefix(&self, r: usize) -> NodeId {
        self.leaf_of_prefix[r - 1]
    }

    /// T1 node holding the suffix `T[l, n]`.
    #[inline]
    pub fn leaf_of_suffix(&self, l: usize) -> NodeId {
        self.leaf_of_suffix[l - 1]
    }

    /// The node of `kind` whose string set contains `T[l, r]`.
    pub fn locate(&self, kind: TreeKind, l: usize, r: usize) -> Result<NodeId> {
        self.text.check(l, r)?;
        Ok(self.locate_unchecked(kind, l, r))
    }

    #[inline]
    pub(crate) fn locate_unchecked(&self, kind: TreeKind, l: usize, r: usize) -> NodeId {
        let k = r + 1 - l;
        match kind {
            TreeKind::T0 => self.t0.ancestor_with_len(self.leaf_of_prefix[r - 1], k),
            TreeKind::T1 => self.t1.ancestor_with_len(self.leaf_of_suffix[l - 1], k),
        }
    }

    pub fn node_info(&self, kind: TreeKind, node: NodeId) -> Result<NodeInfo> {
        let t = self.tree(kind);
        if node as usize >= t.node_count() {
            return Err(Error::UnknownNode(node));
        }
        Ok(NodeInfo { len: t.len(node), parent: t.parent(node), sample_occurrence: t.sample(node) })
    }

    pub(crate) fn heap_bytes(&self) -> usize {
        self.text.len()
            + self.t0.heap_bytes()
            + self.t1.heap_bytes()
            + 4 * (self.leaf_of_prefix.len() + self.leaf_of_suffix.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn index(s: &str) -> TextIndex {
        TextIndex::build(Text::new(s).unwrap())
    }

    /// Strings held by a node, by reading the text at its sample occurrence.
    fn strings_of(ix: &TextIndex, kind: TreeKind, v: NodeId) -> BTreeSet<Vec<u8>> {
        let t = ix.tree(kind);
        let s = t.sample(v).unwrap();
        (t.parent_len(v) + 1..=t.len(v))
            .map(|k| match kind {
                TreeKind::T0 => ix.text().slice(s.r + 1 - k, s.r).to_vec(),
                TreeKind::T1 => ix.text().slice(s.l, s.l + k - 1).to_vec(),
            })
            .collect()
    }

    fn node_by_scan(ix: &TextIndex, kind: TreeKind, l: usize, r: usize) -> NodeId {
        let want = ix.text().slice(l, r).to_vec();
        let t = ix.tree(kind);
        let hits: Vec<NodeId> =
            (1..t.node_count() as u32).filter(|&v| strings_of(ix, kind, v).contains(&want)).collect();
        assert_eq!(hits.len(), 1, "{:?} found on {:?}", want, hits);
        hits[0]
    }

    #[test]
    fn figure_suffix_tree_of_abbab() {
        let ix = index("abbab");
        let t1 = ix.t1();
        assert_eq!(t1.node_count(), 6);
        let edges: BTreeSet<(Vec<u8>, Vec<u8>)> = (1..6u32)
            .map(|v| {
                let s = t1.sample(v).unwrap();
                let label = ix.text().slice(s.l + t1.parent_len(v), s.r).to_vec();
                let p = t1.parent(v);
                let plabel = match t1.sample(p) {
                    Some(ps) => ix.text().slice(ps.l, ps.r).to_vec(),
                    None => Vec::new(),
                };
                (plabel, label)
            })
            .collect();
        let expect: BTreeSet<(Vec<u8>, Vec<u8>)> = [
            ("", "ab"),
            ("", "b"),
            ("b", "ab"),
            ("b", "bab"),
            ("ab", "bab"),
        ]
        .iter()
        .map(|(a, b)| (a.as_bytes().to_vec(), b.as_bytes().to_vec()))
        .collect();
        assert_eq!(edges, expect);
    }

    #[test]
    fn single_symbol() {
        let ix = index("a");
        assert_eq!(ix.t1().node_count(), 2);
        let leaf = ix.leaf_of_suffix(1);
        assert_eq!(ix.t1().len(leaf), 1);
    }

    #[test]
    fn distinct_substring_count_abbab() {
        let ix = index("abbab");
        for kind in [TreeKind::T0, TreeKind::T1] {
            let t = ix.tree(kind);
            let total: usize = (1..t.node_count() as u32).map(|v| t.len(v) - t.parent_len(v)).sum();
            // a b ab bb ba abb bba bab abba bbab abbab
            assert_eq!(total, 11);
        }
    }

    #[test]
    fn locate_examples() {
        let ix = index("abbab");
        let bb = ix.locate(TreeKind::T1, 2, 3).unwrap();
        assert!(strings_of(&ix, TreeKind::T1, bb).iter().any(|s| s == b"bb"));
        assert_eq!(ix.locate(TreeKind::T1, 1, 5).unwrap(), ix.leaf_of_suffix(1));
        let b2 = ix.locate(TreeKind::T0, 2, 2).unwrap();
        assert_eq!(b2, ix.locate(TreeKind::T0, 3, 3).unwrap());
        assert_eq!(b2, ix.locate(TreeKind::T0, 5, 5).unwrap());
        assert!(ix.locate(TreeKind::T0, 0, 1).is_err());
        assert!(ix.locate(TreeKind::T0, 3, 6).is_err());
    }

    #[test]
    fn node_info_examples() {
        let ix = index("abbab");
        let root = ix.node_info(TreeKind::T1, ROOT).unwrap();
        assert_eq!(root, NodeInfo { len: 0, parent: ROOT, sample_occurrence: None });

        let bb = ix.locate(TreeKind::T1, 2, 3).unwrap();
        let info = ix.node_info(TreeKind::T1, bb).unwrap();
        assert_eq!(info.sample_occurrence.unwrap().l, 2);
        // "bb" sits on the node of "bbab"; its first occurrence starts at 2
        assert_eq!(info.len, 4);
        assert_eq!(info.sample_occurrence.unwrap(), Span::new(2, 5));

        let b = ix.locate(TreeKind::T0, 2, 2).unwrap();
        let info = ix.node_info(TreeKind::T0, b).unwrap();
        assert_eq!(info.len, 1);
        assert_eq!(info.parent, ROOT);
        assert_eq!(info.sample_occurrence, Some(Span::new(2, 2)));

        assert_eq!(ix.node_info(TreeKind::T0, 999), Err(Error::UnknownNode(999)));
    }

    #[test]
    fn node_count_bound() {
        for s in ["a", "ab", "aaaa", "abcabcab", "mississippi"] {
            let ix = index(s);
            let n = s.len();
            for kind in [TreeKind::T0, TreeKind::T1] {
                assert!(ix.tree(kind).node_count() <= (2 * n - 1).max(2));
            }
        }
    }

    fn binary_texts(max_n: usize) -> impl Iterator<Item = String> {
        (1..=max_n).flat_map(|n| {
            (0..1u32 << n).map(move |m| (0..n).map(|i| if m >> i & 1 == 1 { 'b' } else { 'a' }).collect())
        })
    }

    #[test]
    fn distinct_substrings_match_brute_force() {
        for s in binary_texts(10) {
            let ix = index(&s);
            let b = s.as_bytes();
            let mut seen = BTreeSet::new();
            for l in 0..b.len() {
                for r in l..b.len() {
                    seen.insert(&b[l..=r]);
                }
            }
            for kind in [TreeKind::T0, TreeKind::T1] {
                let t = ix.tree(kind);
                let total: usize = (1..t.node_count() as u32).map(|v| t.len(v) - t.parent_len(v)).sum();
                assert_eq!(total, seen.len(), "{s}");
            }
        }
    }

    #[test]
    fn locate_matches_scan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(1..=64);
            let sigma = [2u8, 3, 26][rng.gen_range(0..3)];
            let s: String = (0..n).map(|_| (b'a' + rng.gen_range(0..sigma)) as char).collect();
            let ix = index(&s);
            for l in 1..=n {
                for r in l..=n {
                    for kind in [TreeKind::T0, TreeKind::T1] {
                        assert_eq!(ix.locate(kind, l, r).unwrap(), node_by_scan(&ix, kind, l, r));
                    }
                }
            }
        }
    }

    #[test]
    fn node_strings_share_occurrence_count() {
        for s in ["abbab", "aaaa", "abcabcab", "mississippi", "abaababaab"] {
            let ix = index(s);
            let b = s.as_bytes();
            let count = |w: &[u8]| b.windows(w.len()).filter(|x| *x == w).count();
            for kind in [TreeKind::T0, TreeKind::T1] {
                let t = ix.tree(kind);
                for v in 1..t.node_count() as u32 {
                    for w in strings_of(&ix, kind, v) {
                        assert_eq!(count(&w), t.occ(v), "{s} {:?}", w);
                    }
                }
            }
        }
    }

    #[test]
    fn suffix_links_drop_first_symbol() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let sampled: Vec<String> = (0..200)
            .map(|_| {
                let n = rng.gen_range(1..=32);
                (0..n).map(|_| if rng.gen_bool(0.5) { 'a' } else { 'b' }).collect()
            })
            .collect();
        for s in binary_texts(10).chain(sampled).chain(["mississippi".to_string()]) {
            let ix = index(&s);
            let t1 = ix.t1();
            let n = s.len();
            for l in 1..=n {
                for r in l..=n {
                    let v = ix.locate(TreeKind::T1, l, r).unwrap();
                    let target = if l == r { ROOT } else { ix.locate(TreeKind::T1, l + 1, r).unwrap() };
                    let linked = t1.suffix_link(v);
                    if t1.len(v) == r - l + 1 {
                        assert_eq!(linked, target, "{s} ({l},{r})");
                    } else {
                        // shorter strings of v land on an ancestor-or-self of the link
                        let mut a = linked;
                        while a != target && a != ROOT {
                            a = t1.parent(a);
                        }
                        assert_eq!(a, target, "{s} ({l},{r})");
                    }
                }
            }
        }
    }
}
