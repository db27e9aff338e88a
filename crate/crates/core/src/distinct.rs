//! Counting and reporting distinct patterns in a window.
//!
//! Counting follows the trie of all substrings of the window `T[i, j]`,
//! children extending to the left. The answer is the sum of `f` over its
//! leaves minus `(children - 1) * f` over its inner nodes, where `f` counts
//! the patterns among a string's suffixes. The leaves are the prefixes
//! `T[i, t]`, `t >= x`, that do not occur again inside the window; the first
//! sum is therefore two `Count` queries. The second sum is tabulated for every
//! window by a sweep over the right end, stored in a persistent array.
//!
//! Reporting seeds a set containing every pattern that is not a suffix of
//! another occurring pattern, then closes it under "longest pattern suffix".

use std::collections::HashSet;

use crate::access::{PathAccess, PathSegment, UNLABELED};
use crate::engine::{NodePatterns, QueryEngine};
use crate::structure::SubstringStructure;
use crate::suffix::{NodeId, TreeKind, ROOT};
use crate::threshold::{Extreme, RangeExtreme};
use crate::versioned::{AddValue, VersionedAddArray};

const NONE: u32 = u32::MAX;
const A2_FANOUT: usize = 8;

#[derive(Clone, Debug)]
pub(crate) struct DistinctIndex {
    // next occurrence of T[l, t]: runs seg_off[l - 1]..seg_off[l] of
    // (first t, next start), ascending in t
    seg_off: Vec<u32>,
    segs: Vec<(u32, u32)>,
    a2: A2Table,
    access_segments: usize,
    a2_segments: usize,
    // per global row: column of the row node's shortest pattern (0 if none)
    short_row: RangeExtreme,
    // per global row: smallest column at which the row node's nearest
    // pattern above it is a first occurrence (NONE if there is no such pattern)
    use_row: RangeExtreme,
    jump_short: Vec<u32>,
    jump_use: Vec<u32>,
    // longest pattern strictly above each T0 node
    above: Vec<u32>,
    // longest proper suffix of each pattern that is a pattern
    suffix_pattern: Vec<u32>,
}

/// Every stored value is at most the total number of pattern occurrences in
/// the text, so narrow cells suffice unless that total exceeds `u32`.
#[derive(Clone, Debug)]
enum A2Table {
    Narrow(VersionedAddArray<u32, A2_FANOUT>),
    Wide(VersionedAddArray<u64, A2_FANOUT>),
}

impl A2Table {
    fn point_query(&self, version: usize, i: usize) -> u64 {
        match self {
            A2Table::Narrow(a) => a.point_query(version, i),
            A2Table::Wide(a) => a.point_query(version, i),
        }
    }

    fn node_count(&self) -> usize {
        match self {
            A2Table::Narrow(a) => a.node_count(),
            A2Table::Wide(a) => a.node_count(),
        }
    }

    fn heap_bytes(&self) -> usize {
        match self {
            A2Table::Narrow(a) => a.heap_bytes(),
            A2Table::Wide(a) => a.heap_bytes(),
        }
    }
}

fn replay<V: AddValue>(n: usize, adds: &[(u32, u32, u64)], off: &[u32]) -> VersionedAddArray<V, A2_FANOUT> {
    let mut table = VersionedAddArray::with_capacity(n, adds.len());
    for r in 1..=n {
        for &(a, b, val) in &adds[off[r - 1] as usize..off[r] as usize] {
            let val = V::try_from(val).ok().expect("value exceeds the cell width");
            table.range_add(a as usize, b as usize, val);
        }
        table.commit();
    }
    table
}

pub(crate) struct PatternTables<'a> {
    pub on_t0: &'a NodePatterns,
    pub len: &'a [u32],
    pub node0: &'a [u32],
}

impl DistinctIndex {
    pub fn build(st: &SubstringStructure, pt: &PatternTables<'_>) -> Self {
        let ix = st.index();
        let n = ix.n();
        let (t0, t1) = (ix.t0(), ix.t1());

        let mut above = vec![NONE; t0.node_count()];
        // per T0 node: its longest length, and the patterns on its root path
        let mut len_f = vec![(0u32, 0u32); t0.node_count()];
        for &w in t0.by_len().iter().skip(1) {
            let p = t0.parent(w);
            above[w as usize] = match pt.on_t0.of(p).last() {
                Some(&id) => id,
                None => above[p as usize],
            };
            len_f[w as usize] = (t0.len(w) as u32, len_f[p as usize].1 + pt.on_t0.of(w).len() as u32);
        }
        let mut suffix_pattern = vec![NONE; pt.len.len()];
        for w in 1..t0.node_count() as NodeId {
            let ids = pt.on_t0.of(w);
            for (k, &id) in ids.iter().enumerate() {
                suffix_pattern[id as usize] = if k == 0 { above[w as usize] } else { ids[k - 1] };
            }
        }

        // next occurrences, sweeping starts right to left over T1
        let parents1: Vec<u32> = (0..t1.node_count() as u32).map(|v| t1.parent(v)).collect();
        // shortest and longest string length of every node, read together
        let lens1: Vec<(u32, u32)> =
            (0..t1.node_count() as u32).map(|v| (t1.parent_len(v) as u32 + 1, t1.len(v) as u32)).collect();
        let mut pa = PathAccess::new(&parents1);
        let mut buf: Vec<PathSegment> = Vec::new();
        // filled for l = n down to 1, then reassembled in ascending order
        let mut rev_segs: Vec<(u32, u32)> = Vec::new();
        let mut rev_end = vec![0u32; n + 1];
        let mut access_segments = 0;
        for l in (1..=n).rev() {
            buf.clear();
            pa.access(ix.leaf_of_suffix(l), l as u32, &mut buf).unwrap();
            access_segments += buf.len();
            for s in buf.iter().rev() {
                let lo_len = lens1[s.top as usize].0 as usize;
                let hi_len = lens1[s.bottom as usize].1 as usize;
                if hi_len >= lo_len {
                    rev_segs.push(((l + lo_len - 1) as u32, s.label));
                }
            }
            rev_end[l] = rev_segs.len() as u32;
        }
        let mut seg_off = vec![0u32; n + 1];
        let mut segs = Vec::with_capacity(rev_segs.len());
        for l in 1..=n {
            let start = if l == n { 0 } else { rev_end[l + 1] as usize };
            segs.extend_from_slice(&rev_segs[start..rev_end[l] as usize]);
            seg_off[l] = segs.len() as u32;
        }
        drop(rev_segs);

        // second sum of the counting identity, and the first-occurrence
        // thresholds, sweeping ends left to right over T0
        // T0 nodes bucketed by the end of their first occurrence
        let mut end_off = vec![0u32; n + 2];
        for u in 1..t0.node_count() as NodeId {
            end_off[st.t0_class_row(u).1 + 1] += 1;
        }
        for r in 1..=n + 1 {
            end_off[r] += end_off[r - 1];
        }
        let mut by_end = vec![0u32; t0.node_count().saturating_sub(1)];
        let mut fill = end_off.clone();
        for u in 1..t0.node_count() as NodeId {
            let r = st.t0_class_row(u).1;
            by_end[fill[r] as usize] = u;
            fill[r] += 1;
        }
        let parents0: Vec<u32> = (0..t0.node_count() as u32).map(|v| t0.parent(v)).collect();
        let mut pa = PathAccess::new(&parents0);
        // range additions of each sweep step, replayed into the persistent table below
        let mut adds: Vec<(u32, u32, u64)> = Vec::new();
        let mut adds_off = vec![0u32; n + 1];
        let mut use_node = vec![NONE; t0.node_count()];
        let mut a2_segments = 0;
        for r in 1..=n {
            for &u in &by_end[end_off[r] as usize..end_off[r + 1] as usize] {
                let p = above[u as usize];
                if p == NONE {
                    continue;
                }
                let last = pa.label(pt.node0[p as usize]).unwrap();
                use_node[u as usize] =
                    if last == UNLABELED { 0 } else { last + 2 - pt.len[p as usize] };
            }
            buf.clear();
            pa.access(ix.leaf_of_prefix(r), r as u32, &mut buf).unwrap();
            access_segments += buf.len();
            let mut g: i64 = 0;
            for s in &buf {
                let lst = if s.label == UNLABELED { 0 } else { s.label as i64 };
                let (len, f) = len_f[s.bottom as usize];
                let len = len as i64;
                let a = (g - len + 1).max(1);
                let b = lst - len;
                if a <= b && f > 0 {
                    adds.push((a as u32, b as u32, f as u64));
                    a2_segments += 1;
                }
                g = lst;
            }
            adds_off[r] = adds.len() as u32;
        }

        let total_occ: u64 = pt.node0.iter().map(|&u| t0.occ(u) as u64).sum();
        let a2 = if total_occ <= u32::MAX as u64 {
            A2Table::Narrow(replay(n, &adds, &adds_off))
        } else {
            A2Table::Wide(replay(n, &adds, &adds_off))
        };
        drop(adds);

        let rows = st.total_rows();
        let mut short = vec![0u32; rows];
        let mut use_vals = vec![NONE; rows];
        for h in 0..rows {
            let u = st.row_node_at(h);
            let (_, y) = st.t0_class_row(u);
            if let Some(&id) = pt.on_t0.of(u).first() {
                short[h] = (y + 1 - pt.len[id as usize] as usize) as u32;
            }
            use_vals[h] = use_node[u as usize];
        }
        let short_row = RangeExtreme::new(short, Extreme::Max);
        let use_row = RangeExtreme::new(use_vals, Extreme::Min);

        let mut jump_short = vec![ROOT; t1.node_count()];
        let mut jump_use = vec![ROOT; t1.node_count()];
        for &v in t1.by_len().iter().skip(1) {
            let p = t1.parent(v) as usize;
            let (lo, hi, t) = full_column(st, v);
            let s1 = short_row.extreme(lo, hi) >= t;
            let s2 = use_row.extreme(lo, hi) <= t;
            jump_short[v as usize] = if s1 { v } else { jump_short[p] };
            jump_use[v as usize] = if s2 { v } else { jump_use[p] };
        }

        DistinctIndex {
            seg_off,
            segs,
            a2,
            access_segments,
            a2_segments,
            short_row,
            use_row,
            jump_short,
            jump_use,
            above,
            suffix_pattern,
        }
    }

    pub fn nxt_segments(&self) -> usize {
        self.segs.len()
    }

    /// Runs returned by both sweeps' path accesses.
    pub fn access_segments(&self) -> usize {
        self.access_segments
    }

    pub fn a2_segments(&self) -> usize {
        self.a2_segments
    }

    pub fn a2_nodes(&self) -> usize {
        self.a2.node_count()
    }

    pub fn heap_bytes(&self) -> usize {
        4 * (self.seg_off.len()
            + 2 * self.segs.len()
            + self.jump_short.len()
            + self.jump_use.len()
            + self.above.len()
            + self.suffix_pattern.len())
            + self.a2.heap_bytes()
            + self.short_row.heap_bytes()
            + self.use_row.heap_bytes()
    }

    /// Next-occurrence runs of the prefixes of `T[l, n]` as `(first t, next start)`,
    /// the next start being `u32::MAX` when there is none.
    pub fn next_occurrences(&self, l: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let (a, b) = (self.seg_off[l - 1] as usize, self.seg_off[l] as usize);
        self.segs[a..b].iter().map(|&(lo, nxt)| (lo as usize, nxt))
    }

    pub fn find_x(&self, l: usize, r: usize) -> usize {
        let (a, b) = (self.seg_off[l - 1] as usize, self.seg_off[l] as usize);
        let n = self.seg_off.len() - 1;
        let hi_of = |k: usize| if k + 1 < b { self.segs[k + 1].0 as usize - 1 } else { n };
        // the first run whose prefixes stop reoccurring inside the window
        let passes = |k: usize| {
            let nxt = self.segs[k].1;
            nxt == UNLABELED || nxt as usize + hi_of(k).min(r) - l > r
        };
        let (mut lo, mut hi) = (a, b - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if passes(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let (start, nxt) = self.segs[lo];
        let start = start as usize;
        if nxt == UNLABELED {
            start
        } else {
            start.max((l + r + 1).saturating_sub(nxt as usize))
        }
    }

    /// The tabulated second sum for window `T[i, j]`.
    pub fn a2(&self, i: usize, j: usize) -> u64 {
        self.a2.point_query(j, i)
    }

    pub fn a1(&self, engine: &QueryEngine, i: usize, j: usize) -> u64 {
        let x = self.find_x(i, j);
        if x > i {
            let (all, short) = engine.count_pair(i, j, x - 1).unwrap();
            (all - short) as u64
        } else {
            engine.count(i, j).unwrap() as u64
        }
    }

    pub fn count(&self, engine: &QueryEngine, i: usize, j: usize) -> usize {
        let a2 = self.a2(i, j);
        (self.a1(engine, i, j) - a2) as usize
    }

    pub fn report(&self, engine: &QueryEngine, i: usize, j: usize) -> Vec<u32> {
        let st = engine.structure();
        let ix = st.index();
        let t1 = ix.t1();
        let mut seeds = Vec::new();

        // the window's own column is cut at its end row
        let v0 = ix.locate_unchecked(TreeKind::T1, i, j);
        let (c, t) = st.t1_class_col(v0);
        let g = st.global_col(c, t);
        let lo = st.global_row(c, st.col_floor_at(g));
        let hi = st.global_row(c, t + j - i);
        self.seed_short(engine, lo, hi, t, &mut seeds);
        self.seed_use(st, lo, hi, t, &mut seeds);

        let mut a = self.jump_short[t1.parent(v0) as usize];
        while a != ROOT {
            let (lo, hi, t) = full_column(st, a);
            self.seed_short(engine, lo, hi, t as usize, &mut seeds);
            a = self.jump_short[t1.parent(a) as usize];
        }
        let mut a = self.jump_use[t1.parent(v0) as usize];
        while a != ROOT {
            let (lo, hi, t) = full_column(st, a);
            self.seed_use(st, lo, hi, t as usize, &mut seeds);
            a = self.jump_use[t1.parent(a) as usize];
        }

        let mut seen = HashSet::with_capacity(seeds.len() * 2);
        let mut out = Vec::with_capacity(seeds.len());
        for s in seeds {
            let mut p = s;
            while p != NONE && seen.insert(p) {
                out.push(p);
                p = self.suffix_pattern[p as usize];
            }
        }
        out
    }

    /// Patterns sharing a T0 node with one of the column's strings.
    fn seed_short(&self, engine: &QueryEngine, lo: usize, hi: usize, t: usize, out: &mut Vec<u32>) {
        let st = engine.structure();
        self.short_row.report(lo, hi, t as u32, |h| {
            let u = st.row_node_at(h);
            let (_, y) = st.t0_class_row(u);
            for &id in engine.on_t0.of(u) {
                if y + 1 < t + engine.pattern_len(id) {
                    break;
                }
                out.push(id);
            }
        });
    }

    /// Nearest patterns above the column's T0 nodes, where they occur first.
    fn seed_use(&self, st: &SubstringStructure, lo: usize, hi: usize, t: usize, out: &mut Vec<u32>) {
        self.use_row.report(lo, hi, t as u32, |h| out.push(self.above[st.row_node_at(h) as usize]));
    }
}

/// Global row range of a T1 node's full column, and the column itself.
fn full_column(st: &SubstringStructure, v: NodeId) -> (usize, usize, u32) {
    let (c, t) = st.t1_class_col(v);
    let g = st.global_col(c, t);
    let lo = st.global_row(c, st.col_floor_at(g));
    let hi = st.global_row(c, st.rep_of(c).r);
    (lo, hi, t as u32)
}
