use super::automaton::{Automaton, NONE};
use crate::text::{Span, Text};

pub type NodeId = u32;
pub const ROOT: NodeId = 0;

/// Which way a tree's strings grow from parent to child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    /// Nodes group strings by end-position set; children extend strings to the left.
    T0,
    /// Nodes group strings by start-position set; children extend strings to the right
    /// (the suffix tree of the text).
    T1,
}

/// A compacted suffix tree over positions of the text, stored as flat arrays.
///
/// Node `v` holds the strings of length `(len(parent(v)), len(v)]` that share
/// one occurrence set. For [`TreeKind::T0`] those are suffixes of the node's
/// longest string; for [`TreeKind::T1`] they are its prefixes.
#[derive(Clone, Copy, Debug, Default)]
struct Jump {
    parent: u32,
    parent_len: u32,
    jump: u32,
    jump_len: u32,
}

#[derive(Clone, Debug)]
pub struct SuffixTree {
    kind: TreeKind,
    parent: Vec<u32>,
    len: Vec<u32>,
    sample_start: Vec<u32>,
    occ: Vec<u32>,
    child_off: Vec<u32>,
    child_sym: Vec<u8>,
    child_node: Vec<u32>,
    by_len: Vec<u32>,
    // skew-binary jump pointers for ancestor search
    up: Vec<Jump>,
    pub(crate) suffix_link: Vec<u32>,
}

impl SuffixTree {
    /// T0 is read off the automaton of the text, T1 off the automaton of its reverse.
    pub(crate) fn from_automaton(a: &Automaton, text: &Text, kind: TreeKind) -> Self {
        let n = text.len() as u32;
        let nodes = a.len.len();

        let mut by_len: Vec<u32> = (0..nodes as u32).collect();
        // counting sort on len
        {
            let mut cnt = vec![0u32; n as usize + 2];
            for &l in &a.len {
                cnt[l as usize + 1] += 1;
            }
            for i in 1..cnt.len() {
                cnt[i] += cnt[i - 1];
            }
            for v in 0..nodes {
                let l = a.len[v] as usize;
                by_len[cnt[l] as usize] = v as u32;
                cnt[l] += 1;
            }
        }

        let mut parent = a.link.clone();
        parent[0] = ROOT;

        // smallest owned position in each subtree, and occurrence counts
        let mut best = vec![u32::MAX; nodes];
        let mut occ = vec![0u32; nodes];
        for v in 1..nodes {
            if !a.is_clone[v] {
                occ[v] = 1;
                best[v] = match kind {
                    TreeKind::T0 => a.first_end[v],
                    TreeKind::T1 => n - a.first_end[v] + 1,
                };
            }
        }
        for &v in by_len.iter().rev() {
            let v = v as usize;
            if v == 0 {
                continue;
            }
            let p = parent[v] as usize;
            occ[p] += occ[v];
            best[p] = best[p].min(best[v]);
        }
        let mut sample_start = vec![0u32; nodes];
        for v in 1..nodes {
            sample_start[v] = match kind {
                TreeKind::T0 => best[v] + 1 - a.len[v],
                TreeKind::T1 => best[v],
            };
        }
        occ[0] = 0;

        // children, keyed by the symbol that extends the parent's strings
        let mut child_off = vec![0u32; nodes + 1];
        for v in 1..nodes {
            child_off[parent[v] as usize + 1] += 1;
        }
        for i in 1..=nodes {
            child_off[i] += child_off[i - 1];
        }
        let mut fill = child_off.clone();
        let mut child_sym = vec![0u8; nodes.saturating_sub(1)];
        let mut child_node = vec![0u32; nodes.saturating_sub(1)];
        for v in 1..nodes {
            let p = parent[v] as usize;
            let plen = a.len[p] as usize;
            let s = sample_start[v] as usize;
            let sym = match kind {
                TreeKind::T0 => text.at(s + a.len[v] as usize - 1 - plen),
                TreeKind::T1 => text.at(s + plen),
            };
            let slot = fill[p] as usize;
            child_sym[slot] = sym;
            child_node[slot] = v as u32;
            fill[p] += 1;
        }
        let mut pairs: Vec<(u8, u32)> = Vec::new();
        for p in 0..nodes {
            let (lo, hi) = (child_off[p] as usize, child_off[p + 1] as usize);
            if hi - lo < 2 {
                continue;
            }
            pairs.clear();
            pairs.extend((lo..hi).map(|i| (child_sym[i], child_node[i])));
            pairs.sort_unstable();
            for (k, &(c, v)) in pairs.iter().enumerate() {
                child_sym[lo + k] = c;
                child_node[lo + k] = v;
            }
        }

        // a node's jump skips as far as its parent's jump twice when the two
        // parent jumps span equal depths, and to the parent otherwise
        let mut up = vec![Jump::default(); nodes];
        let mut depth = vec![0u32; nodes];
        for &v in by_len.iter().skip(1) {
            let v = v as usize;
            let p = parent[v] as usize;
            depth[v] = depth[p] + 1;
            let j1 = up[p].jump as usize;
            let j2 = up[j1].jump as usize;
            let jump = if p != ROOT as usize && depth[p] - depth[j1] == depth[j1] - depth[j2] { j2 } else { p };
            up[v] = Jump { parent: p as u32, parent_len: a.len[p], jump: jump as u32, jump_len: a.len[jump] };
        }

        SuffixTree {
            kind,
            parent,
            len: a.len.clone(),
            sample_start,
            occ,
            child_off,
            child_sym,
            child_node,
            by_len,
            up,
            suffix_link: vec![NONE; nodes],
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.len.len()
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> NodeId {
        self.parent[v as usize]
    }

    #[inline]
    pub fn len(&self, v: NodeId) -> usize {
        self.len[v as usize] as usize
    }

    /// Length of the shortest string held by `v`, minus one.
    #[inline]
    pub fn parent_len(&self, v: NodeId) -> usize {
        if v == ROOT {
            0
        } else {
            self.len[self.parent[v as usize] as usize] as usize
        }
    }

    /// First occurrence of the node's longest string. Empty for the root.
    pub fn sample(&self, v: NodeId) -> Option<Span> {
        if v == ROOT {
            return None;
        }
        let s = self.sample_start[v as usize] as usize;
        Some(Span::new(s, s + self.len(v) - 1))
    }

    /// Number of occurrences in the text of every string held by `v`.
    #[inline]
    pub fn occ(&self, v: NodeId) -> usize {
        self.occ[v as usize] as usize
    }

    pub fn children(&self, v: NodeId) -> impl Iterator<Item = (u8, NodeId)> + '_ {
        let (lo, hi) = (self.child_off[v as usize] as usize, self.child_off[v as usize + 1] as usize);
        (lo..hi).map(move |i| (self.child_sym[i], self.child_node[i]))
    }

    pub fn child(&self, v: NodeId, sym: u8) -> Option<NodeId> {
        let (lo, hi) = (self.child_off[v as usize] as usize, self.child_off[v as usize + 1] as usize);
        self.child_sym[lo..hi].binary_search(&sym).ok().map(|i| self.child_node[lo + i])
    }

    pub fn suffix_link(&self, v: NodeId) -> NodeId {
        self.suffix_link[v as usize]
    }

    /// Node ids sorted by non-decreasing `len`; the root comes first.
    pub fn by_len(&self) -> &[u32] {
        &self.by_len
    }

    /// The ancestor-or-self of `v` whose string set contains the length-`k`
    /// string on the root path of `v`. Requires `1 <= k <= len(v)`.
    #[inline]
    pub fn ancestor_with_len(&self, mut v: NodeId, k: usize) -> NodeId {
        debug_assert!(k >= 1 && k <= self.len(v));
        let k = k as u32;
        loop {
            let j = self.up[v as usize];
            if j.parent_len < k {
                return v;
            }
            v = if j.jump_len >= k { j.jump } else { j.parent };
        }
    }

    /// Preorder entry/exit times (`tout` inclusive), children visited in symbol order.
    pub fn euler(&self) -> (Vec<u32>, Vec<u32>) {
        let n = self.node_count();
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut stack: Vec<(u32, bool)> = vec![(ROOT, false)];
        let mut t = 0u32;
        while let Some((v, done)) = stack.pop() {
            if done {
                tout[v as usize] = t - 1;
                continue;
            }
            tin[v as usize] = t;
            t += 1;
            stack.push((v, true));
            let (lo, hi) = (self.child_off[v as usize] as usize, self.child_off[v as usize + 1] as usize);
            for i in (lo..hi).rev() {
                stack.push((self.child_node[i], false));
            }
        }
        (tin, tout)
    }

    pub(crate) fn heap_bytes(&self) -> usize {
        4 * (self.parent.len()
            + self.len.len()
            + self.sample_start.len()
            + self.occ.len()
            + self.child_off.len()
            + self.child_node.len()
            + self.by_len.len()
            + 4 * self.up.len()
            + self.suffix_link.len())
            + self.child_sym.len()
    }
}
