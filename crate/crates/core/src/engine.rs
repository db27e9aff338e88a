//! Dictionary attachment and the window queries.
//!
//! For a window `t = T[i, j]` the number of pattern occurrences inside `t`
//! splits along the suffixes of `t`. Suffixes that stay in `t`'s own T0
//! node are exactly the strings on `t`'s row of its class block; each of them
//! contributes the patterns that are its prefixes, which are either strictly
//! above its column node in T1 (a per-column constant) or on the column node
//! itself (pattern points of the class below the row, one dominance count).
//! Shorter suffixes belong to the T0 parent, whose total is precomputed.

use crate::distinct::{DistinctIndex, PatternTables};
use crate::dominance::{DominanceIndex, PatternPoint};
use crate::error::Result;
use crate::query::{Answer, Occurrence, QueryKind};
use crate::structure::SubstringStructure;
use crate::suffix::{NodeId, TextIndex, TreeKind, ROOT};
use crate::text::{Span, Text};

/// The deduplicated patterns of an internal dictionary.
///
/// Fragments spelling the same string collapse into one pattern. Pattern ids
/// follow the first occurrence `(l, r)` of the pattern string.
#[derive(Clone, Debug)]
pub struct Dictionary {
    fragments: Vec<Span>,
    patterns: Vec<Span>,
    multiplicity: Vec<u32>,
}

impl Dictionary {
    pub fn fragments(&self) -> &[Span] {
        &self.fragments
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    /// First occurrence of pattern `id`.
    pub fn pattern(&self, id: u32) -> Span {
        self.patterns[id as usize]
    }

    pub fn patterns(&self) -> &[Span] {
        &self.patterns
    }

    /// How many fragments spelled pattern `id`.
    pub fn multiplicity(&self, id: u32) -> usize {
        self.multiplicity[id as usize] as usize
    }

    /// Fragments dropped because an earlier one spelled the same string.
    pub fn collapsed(&self) -> usize {
        self.fragments.len() - self.patterns.len()
    }
}

/// Sizes reported after a build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineStats {
    pub n: usize,
    pub classes: usize,
    pub blocks: usize,
    pub patterns_distinct: usize,
    pub patterns_collapsed: usize,
    pub nxt_segments: usize,
    pub a2_segments: usize,
    pub access_segments: usize,
    pub a2_nodes: usize,
    pub heap_bytes: usize,
}

/// Per-node pattern lists in CSR form, each list sorted by length.
#[derive(Clone, Debug)]
pub(crate) struct NodePatterns {
    off: Vec<u32>,
    ids: Vec<u32>,
}

impl NodePatterns {
    fn new(nodes: usize, entries: Vec<(u32, u32, u32)>) -> Self {
        // entries: (node, length, pattern id); bucket by node, then sort each bucket
        let mut off = vec![0u32; nodes + 1];
        for &(v, _, _) in &entries {
            off[v as usize + 1] += 1;
        }
        for k in 0..nodes {
            off[k + 1] += off[k];
        }
        let mut fill = off.clone();
        let mut keyed = vec![(0u32, 0u32); entries.len()];
        for &(v, len, id) in &entries {
            keyed[fill[v as usize] as usize] = (len, id);
            fill[v as usize] += 1;
        }
        for v in 0..nodes {
            let group = &mut keyed[off[v] as usize..off[v + 1] as usize];
            if group.len() > 1 {
                group.sort_unstable();
            }
        }
        NodePatterns { off, ids: keyed.into_iter().map(|e| e.1).collect() }
    }

    #[inline]
    pub fn of(&self, v: NodeId) -> &[u32] {
        &self.ids[self.off[v as usize] as usize..self.off[v as usize + 1] as usize]
    }

    fn heap_bytes(&self) -> usize {
        4 * (self.off.len() + self.ids.len())
    }
}

#[derive(Clone, Debug)]
pub struct QueryEngine {
    st: SubstringStructure,
    dict: Dictionary,
    pattern_len: Vec<u32>,
    pub(crate) on_t0: NodePatterns,
    on_t1: NodePatterns,
    /// Nearest ancestor-or-self carrying a pattern; `ROOT` if none.
    jump1: Vec<u32>,
    /// Patterns strictly above each global column's node in T1.
    col_above: Vec<u64>,
    col_pref: Vec<u64>,
    /// Next global column at or after `g` with `col_above > 0`.
    next_col: Vec<u32>,
    /// Pattern points per global row, as prefix sums.
    row_pref: Vec<u32>,
    /// Everything a window query needs about its T0 node, in one place.
    rows0: Vec<RowInfo>,
    points: DominanceIndex,
    pub(crate) distinct: DistinctIndex,
}

impl QueryEngine {
    /// Indexes `text` and attaches the fragments.
    pub fn build(text: Text, fragments: &[Span]) -> Result<Self> {
        let st = SubstringStructure::build(TextIndex::build(text));
        Self::attach(st, fragments)
    }

    pub fn attach(st: SubstringStructure, fragments: &[Span]) -> Result<Self> {
        let ix = st.index();
        let (t0, t1) = (ix.t0(), ix.t1());

        let mut firsts = Vec::with_capacity(fragments.len());
        for f in fragments {
            firsts.push(st.first_occurrence(f.l, f.r)?);
        }
        let mut patterns = firsts.clone();
        patterns.sort_unstable();
        patterns.dedup();
        let mut multiplicity = vec![0u32; patterns.len()];
        for f in &firsts {
            multiplicity[patterns.binary_search(f).unwrap()] += 1;
        }
        let dict = Dictionary { fragments: fragments.to_vec(), patterns, multiplicity };

        let mut e0 = Vec::with_capacity(dict.patterns.len());
        let mut e1 = Vec::with_capacity(dict.patterns.len());
        let mut pattern_len = Vec::with_capacity(dict.patterns.len());
        let mut node0 = Vec::with_capacity(dict.patterns.len());
        let mut point_list = Vec::with_capacity(dict.patterns.len());
        for (id, p) in dict.patterns.iter().enumerate() {
            let id = id as u32;
            let u = ix.locate_unchecked(TreeKind::T0, p.l, p.r);
            let v = ix.locate_unchecked(TreeKind::T1, p.l, p.r);
            let m = p.len() as u32;
            e0.push((u, m, id));
            e1.push((v, m, id));
            pattern_len.push(m);
            node0.push(u);
            let (c, _) = st.t0_class_row(u);
            point_list.push(PatternPoint::new(
                st.global_col(c, p.l) as u32,
                st.global_row(c, p.r) as u32,
                id,
            ));
        }

        let on_t0 = NodePatterns::new(t0.node_count(), e0);
        let on_t1 = NodePatterns::new(t1.node_count(), e1);

        let distinct = DistinctIndex::build(
            &st,
            &PatternTables { on_t0: &on_t0, len: &pattern_len, node0: &node0 },
        );

        // patterns on the T1 root path, top-down
        let mut path1 = vec![0u64; t1.node_count()];
        let mut jump1 = vec![ROOT; t1.node_count()];
        for &v in t1.by_len().iter().skip(1) {
            let p = t1.parent(v);
            let own = on_t1.of(v).len() as u64;
            path1[v as usize] = path1[p as usize] + own;
            jump1[v as usize] = if own > 0 { v } else { jump1[p as usize] };
        }

        let cols = st.total_cols();
        let mut col_above = vec![0u64; cols];
        let mut col_pref = vec![0u64; cols + 1];
        for g in 0..cols {
            col_above[g] = path1[t1.parent(st.col_node_at(g)) as usize];
            col_pref[g + 1] = col_pref[g] + col_above[g];
        }
        let mut next_col = vec![cols as u32; cols + 1];
        for g in (0..cols).rev() {
            next_col[g] = if col_above[g] > 0 { g as u32 } else { next_col[g + 1] };
        }
        let rows = st.total_rows();
        let mut row_pref = vec![0u32; rows + 1];
        for pt in &point_list {
            row_pref[pt.r as usize + 1] += 1;
        }
        for h in 0..rows {
            row_pref[h + 1] += row_pref[h];
        }

        let mut engine = QueryEngine {
            st,
            dict,
            pattern_len,
            on_t0,
            on_t1,
            jump1,
            col_above,
            col_pref,
            next_col,
            row_pref,
            rows0: Vec::new(),
            points: DominanceIndex::new(point_list),
            distinct,
        };

        engine.accumulate_t0();
        Ok(engine)
    }

    fn accumulate_t0(&mut self) {
        let t0 = self.st.index().t0();
        let mut suf0 = vec![0u64; t0.node_count()];
        let mut jump0 = vec![ROOT; t0.node_count()];
        for &w in t0.by_len().iter().skip(1) {
            let p = t0.parent(w);
            let own = self.row_total(w);
            suf0[w as usize] = suf0[p as usize] + own;
            jump0[w as usize] = if own > 0 { w } else { jump0[p as usize] };
        }
        let mut rows0 = vec![RowInfo::default(); t0.node_count()];
        for w in 0..t0.node_count() as u32 {
            if w == ROOT {
                continue;
            }
            let (c, y) = self.st.t0_class_row(w);
            let h = self.st.global_row(c, y);
            let p = t0.parent(w) as usize;
            rows0[w as usize] = RowInfo {
                above: suf0[p],
                gy: (self.st.global_col(c, self.st.rep_of(c).l) + y - self.st.rep_of(c).l) as u32,
                h: h as u32,
                end: self.st.global_col(c, self.st.row_end_at(h)) as u32,
                y: y as u32,
                next: jump0[p],
            };
        }
        self.rows0 = rows0;
    }

    /// Occurrences inside the longest string of T0 node `w` that start in
    /// `w`'s own row.
    fn row_total(&self, w: NodeId) -> u64 {
        let (c, y) = self.st.t0_class_row(w);
        let l = self.st.rep_of(c).l;
        let g = self.st.global_col(c, l);
        let h = self.st.global_row(c, y);
        let end = self.st.global_col(c, self.st.row_end_at(h));
        let first_row = self.st.global_row(c, self.st.col_floor_at(g));
        self.col_pref[end + 1] - self.col_pref[g] + (self.row_pref[h + 1] - self.row_pref[first_row]) as u64
    }

    pub fn structure(&self) -> &SubstringStructure {
        &self.st
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn text(&self) -> &Text {
        self.st.index().text()
    }

    pub fn n(&self) -> usize {
        self.st.n()
    }

    pub(crate) fn pattern_len(&self, id: u32) -> usize {
        self.pattern_len[id as usize] as usize
    }

    pub fn stats(&self) -> EngineStats {
        EngineStats {
            n: self.n(),
            classes: self.st.class_count(),
            blocks: self.st.block_count(),
            patterns_distinct: self.dict.pattern_count(),
            patterns_collapsed: self.dict.collapsed(),
            nxt_segments: self.distinct.nxt_segments(),
            a2_segments: self.distinct.a2_segments(),
            access_segments: self.distinct.access_segments(),
            a2_nodes: self.distinct.a2_nodes(),
            heap_bytes: self.heap_bytes(),
        }
    }

    pub fn heap_bytes(&self) -> usize {
        self.st.heap_bytes()
            + 20 * self.dict.patterns.len()
            + 8 * self.dict.fragments.len()
            + self.on_t0.heap_bytes()
            + self.on_t1.heap_bytes()
            + 4 * (self.jump1.len() + self.next_col.len() + self.row_pref.len())
            + 8 * (self.col_above.len() + self.col_pref.len())
            + std::mem::size_of::<RowInfo>() * self.rows0.len()
            + self.points.heap_bytes()
            + self.distinct.heap_bytes()
    }

    /// Window coordinates inside the first block of its class.
    #[inline]
    fn window(&self, i: usize, j: usize) -> Result<Window> {
        self.text().check(i, j)?;
        let u = self.st.index().locate_unchecked(TreeKind::T0, i, j);
        let info = self.rows0[u as usize];
        Ok(Window {
            g: info.gy as usize + i - j,
            h: info.h as usize,
            end: info.end as usize,
            shift: j as isize - info.y as isize,
            above: info.above,
            next: info.next,
        })
    }

    pub fn count(&self, i: usize, j: usize) -> Result<usize> {
        let w = self.window(i, j)?;
        let total = w.above
            + (self.col_pref[w.end + 1] - self.col_pref[w.g])
            + self.points.count(w.g as u32, w.h as u32) as u64;
        Ok(total as usize)
    }

    /// `count(i, j1)` and `count(i, j2)` together.
    pub(crate) fn count_pair(&self, i: usize, j1: usize, j2: usize) -> Result<(usize, usize)> {
        let (w1, w2) = (self.window(i, j1)?, self.window(i, j2)?);
        let (d1, d2) = self.points.count2((w1.g as u32, w1.h as u32), (w2.g as u32, w2.h as u32));
        let total = |w: &Window, d: usize| w.above + (self.col_pref[w.end + 1] - self.col_pref[w.g]) + d as u64;
        Ok((total(&w1, d1) as usize, total(&w2, d2) as usize))
    }

    pub fn exists(&self, i: usize, j: usize) -> Result<bool> {
        let w = self.window(i, j)?;
        Ok(w.above > 0 || self.next_col[w.g] as usize <= w.end || self.points.exists(w.g as u32, w.h as u32))
    }

    /// Every pattern occurrence inside `T[i, j]`.
    pub fn report(&self, i: usize, j: usize) -> Result<Vec<Occurrence>> {
        let w = self.window(i, j)?;
        let mut out = Vec::new();
        self.report_row(w.g, w.h, w.end, w.shift, &mut out);
        let mut a = w.next;
        while a != ROOT {
            let info = self.rows0[a as usize];
            let (c, _) = self.st.t0_class_row(a);
            let g = self.st.global_col(c, self.st.rep_of(c).l);
            self.report_row(g, info.h as usize, info.end as usize, j as isize - info.y as isize, &mut out);
            a = info.next;
        }
        Ok(out)
    }

    /// Occurrences that start in global columns `g..=end` of one class and end
    /// by global row `h`, translated by `shift`.
    fn report_row(&self, g: usize, h: usize, end: usize, shift: isize, out: &mut Vec<Occurrence>) {
        let at = |l: usize, id: u32, len: usize| {
            let s = (l as isize + shift) as usize;
            Occurrence { pattern_id: id, l: s, r: s + len - 1 }
        };
        self.points.for_each(g as u32, h as u32, |p| {
            let first = self.dict.patterns[p.pattern_id as usize];
            out.push(at(first.l, p.pattern_id, first.len()));
        });
        let t1 = self.st.index().t1();
        let mut k = self.next_col[g] as usize;
        while k <= end {
            let v = self.st.col_node_at(k);
            let (_, x) = self.st.t1_class_col(v);
            let mut a = self.jump1[t1.parent(v) as usize];
            while a != ROOT {
                for &id in self.on_t1.of(a) {
                    out.push(at(x, id, self.pattern_len(id)));
                }
                a = self.jump1[t1.parent(a) as usize];
            }
            k = self.next_col[k + 1] as usize;
        }
    }

    pub fn count_distinct(&self, i: usize, j: usize) -> Result<usize> {
        self.text().check(i, j)?;
        Ok(self.distinct.count(self, i, j))
    }

    /// Ids of the distinct patterns occurring in `T[i, j]`, in discovery order.
    pub fn report_distinct(&self, i: usize, j: usize) -> Result<Vec<u32>> {
        self.text().check(i, j)?;
        Ok(self.distinct.report(self, i, j))
    }

    /// Smallest `x` such that no prefix `T[i, t]`, `t >= x`, occurs again
    /// inside `T[i + 1, j]`.
    pub fn find_x(&self, i: usize, j: usize) -> Result<usize> {
        self.text().check(i, j)?;
        Ok(self.distinct.find_x(i, j))
    }

    /// Runs `(first t, next start)` of the next occurrence of `T[l, t]` after
    /// `l`, ascending in `t`; the next start is `u32::MAX` when there is none.
    pub fn next_occurrence_runs(&self, l: usize) -> Result<Vec<(usize, u32)>> {
        self.text().check(l, l)?;
        Ok(self.distinct.next_occurrences(l).collect())
    }

    pub fn query(&self, kind: QueryKind, i: usize, j: usize) -> Result<Answer> {
        Ok(match kind {
            QueryKind::Exists => Answer::Exists(self.exists(i, j)?),
            QueryKind::Report => Answer::Report(self.report(i, j)?),
            QueryKind::Count => Answer::Count(self.count(i, j)?),
            QueryKind::CountDistinct => Answer::Count(self.count_distinct(i, j)?),
            QueryKind::ReportDistinct => Answer::Patterns(self.report_distinct(i, j)?),
        })
    }

    /// Deliberately corrupts one accumulator so that window queries starting
    /// at position 1 come out wrong. Exists to prove the verifier notices.
    #[doc(hidden)]
    pub fn inject_fault(&mut self) {
        if let Some(first) = self.col_above.first_mut() {
            *first += 1;
        }
        for g in 0..self.col_above.len() {
            self.col_pref[g + 1] = self.col_pref[g] + self.col_above[g];
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Window {
    g: usize,
    h: usize,
    end: usize,
    shift: isize,
    above: u64,
    next: NodeId,
}

#[derive(Clone, Copy, Debug, Default)]
struct RowInfo {
    /// Occurrences inside the longest string of the parent.
    above: u64,
    /// Global column of the window start, plus the window length minus one.
    gy: u32,
    h: u32,
    end: u32,
    /// Row inside the class's first block.
    y: u32,
    /// Nearest proper ancestor whose own rows add occurrences; `ROOT` if none.
    next: NodeId,
}
