//! Equivalence classes of substrings and their staircase blocks.
//!
//! Two substrings are equivalent when they extend to the same longest string
//! with an unchanged occurrence count (the class representative). Mapping
//! `T[l, r]` to the grid point `(l, r)`, each occurrence of a class covers one
//! staircase-shaped block; all blocks of a class are translates of the first
//! one, which sits on the representative's first occurrence.
//!
//! Inside the first block, column `x` holds the strings of one T1 node (all
//! starting at `x`) and row `y` the strings of one T0 node (all ending at `y`).
//! The tables below store that first block once per class, laid out globally:
//! class `c` owns columns `col_base[c]..col_base[c + 1]` and rows
//! `row_base[c]..row_base[c + 1]`, in the same class order.

use std::fmt::Write as _;

use crate::dominance::{DominanceIndex, PatternPoint};
use crate::error::{Error, Result};
use crate::suffix::{NodeId, TextIndex, TreeKind, ROOT};
use crate::text::Span;

const UNSET: u32 = u32::MAX;

pub type ClassId = u32;

/// Where a grid point sits: class, 1-based block (occurrence) index, and its
/// offsets from the block anchor.
///
/// Block `k` is anchored at the start `s_k` of the `k`-th occurrence of the
/// representative (ascending). The point itself is `(s_k + col_offset,
/// s_k + row_offset)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPosition {
    pub class: ClassId,
    pub block: usize,
    pub col_offset: usize,
    pub row_offset: usize,
}

#[derive(Clone, Copy, Debug)]
struct ClassRecord {
    rep: Span,
    occ: u32,
}

#[derive(Clone, Debug)]
pub struct SubstringStructure {
    index: TextIndex,
    classes: Vec<ClassRecord>,
    col_base: Vec<u32>,
    row_base: Vec<u32>,
    // per global column: T1 node and lowest row A_x
    col_node: Vec<u32>,
    col_floor: Vec<u32>,
    // per global row: T0 node and last column
    row_node: Vec<u32>,
    row_end: Vec<u32>,
    t0_class: Vec<u32>,
    t0_row: Vec<u32>,
    t1_class: Vec<u32>,
    t1_col: Vec<u32>,
    tin: Vec<u32>,
    tout: Vec<u32>,
    // (preorder time of the suffix's T1 node, suffix start) for occurrence ranks
    suffix_points: DominanceIndex,
}

impl SubstringStructure {
    pub fn build(index: TextIndex) -> Self {
        let t0 = index.t0();
        let t1 = index.t1();
        let (n0, n1) = (t0.node_count(), t1.node_count());

        // representatives: longest string on both of its nodes
        let mut reps: Vec<(Span, NodeId, NodeId)> = Vec::new();
        for u in 1..n0 as NodeId {
            let s = t0.sample(u).unwrap();
            let v = index.locate_unchecked(TreeKind::T1, s.l, s.r);
            if t1.len(v) == s.len() {
                reps.push((s, u, v));
            }
        }
        reps.sort_unstable_by_key(|&(s, _, _)| s);

        let mut t0_class = vec![UNSET; n0];
        let mut t0_row = vec![0u32; n0];
        let mut t1_class = vec![UNSET; n1];
        let mut t1_col = vec![0u32; n1];
        let mut classes = Vec::with_capacity(reps.len());
        for (c, &(s, u, v)) in reps.iter().enumerate() {
            t0_class[u as usize] = c as u32;
            t0_row[u as usize] = s.r as u32;
            t1_class[v as usize] = c as u32;
            t1_col[v as usize] = s.l as u32;
            classes.push(ClassRecord { rep: s, occ: t0.occ(u) as u32 });
        }

        // a non-representative T0 node extends to the right without losing
        // occurrences, onto a longer node that is already classified
        for &u in t0.by_len().iter().rev() {
            if u == ROOT || t0_class[u as usize] != UNSET {
                continue;
            }
            let s = t0.sample(u).unwrap();
            let w = index.locate_unchecked(TreeKind::T0, s.l, s.r + 1);
            t0_class[u as usize] = t0_class[w as usize];
            t0_row[u as usize] = s.r as u32;
        }
        for v in 1..n1 as NodeId {
            if t1_class[v as usize] != UNSET {
                continue;
            }
            let s = t1.sample(v).unwrap();
            let u = index.locate_unchecked(TreeKind::T0, s.l, s.r);
            t1_class[v as usize] = t0_class[u as usize];
            t1_col[v as usize] = s.l as u32;
        }

        let k = classes.len();
        let mut col_base = vec![0u32; k + 1];
        let mut row_base = vec![0u32; k + 1];
        for v in 1..n1 {
            col_base[t1_class[v] as usize + 1] += 1;
        }
        for u in 1..n0 {
            row_base[t0_class[u] as usize + 1] += 1;
        }
        for c in 0..k {
            col_base[c + 1] += col_base[c];
            row_base[c + 1] += row_base[c];
        }

        let mut col_node = vec![0u32; n1 - 1];
        let mut col_floor = vec![0u32; n1 - 1];
        for v in 1..n1 {
            let c = t1_class[v] as usize;
            let x = t1_col[v];
            let g = (col_base[c] + x - classes[c].rep.l as u32) as usize;
            col_node[g] = v as u32;
            col_floor[g] = x + t1.parent_len(v as NodeId) as u32;
        }
        let mut row_node = vec![0u32; n0 - 1];
        let mut row_end = vec![0u32; n0 - 1];
        for u in 1..n0 {
            let c = t0_class[u] as usize;
            let y = t0_row[u];
            // rows start at the floor of the class's first column
            let a = col_floor[col_base[c] as usize];
            let h = (row_base[c] + y - a) as usize;
            row_node[h] = u as u32;
            row_end[h] = y - t0.parent_len(u as NodeId) as u32;
        }

        let (tin, tout) = t1.euler();
        let suffix_points = DominanceIndex::new(
            (1..=index.n())
                .map(|s| PatternPoint::new(tin[index.leaf_of_suffix(s) as usize], s as u32, 0))
                .collect(),
        );

        SubstringStructure {
            index,
            classes,
            col_base,
            row_base,
            col_node,
            col_floor,
            row_node,
            row_end,
            t0_class,
            t0_row,
            t1_class,
            t1_col,
            tin,
            tout,
            suffix_points,
        }
    }

    pub fn index(&self) -> &TextIndex {
        &self.index
    }

    pub fn n(&self) -> usize {
        self.index.n()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Total number of blocks over all classes.
    pub fn block_count(&self) -> usize {
        self.classes.iter().map(|c| c.occ as usize).sum()
    }

    pub fn class(&self, id: ClassId) -> Result<EquivClass<'_>> {
        if id as usize >= self.classes.len() {
            return Err(Error::UnknownClass(id));
        }
        Ok(EquivClass { s: self, id })
    }

    /// Classes in order of their representatives' first occurrences.
    pub fn classes(&self) -> impl Iterator<Item = EquivClass<'_>> + '_ {
        (0..self.classes.len() as u32).map(move |id| EquivClass { s: self, id })
    }

    /// Class and row of a T0 node's strings in the first block of its class.
    pub fn t0_position(&self, u: NodeId) -> Result<(ClassId, usize)> {
        if u == ROOT || u as usize >= self.t0_class.len() {
            return Err(Error::UnknownNode(u));
        }
        Ok((self.t0_class[u as usize], self.t0_row[u as usize] as usize))
    }

    /// Class and column of a T1 node's strings in the first block of its class.
    pub fn t1_position(&self, v: NodeId) -> Result<(ClassId, usize)> {
        if v == ROOT || v as usize >= self.t1_class.len() {
            return Err(Error::UnknownNode(v));
        }
        Ok((self.t1_class[v as usize], self.t1_col[v as usize] as usize))
    }

    /// The row holding the T0 parent's strings, or `None` at the top of the tree.
    pub fn row_link(&self, u: NodeId) -> Result<Option<(ClassId, usize)>> {
        self.t0_position(u)?;
        let p = self.index.t0().parent(u);
        Ok(if p == ROOT { None } else { Some(self.t0_position(p)?) })
    }

    /// The column holding the T1 parent's strings, or `None` at the top of the tree.
    pub fn col_link(&self, v: NodeId) -> Result<Option<(ClassId, usize)>> {
        self.t1_position(v)?;
        let p = self.index.t1().parent(v);
        Ok(if p == ROOT { None } else { Some(self.t1_position(p)?) })
    }

    /// First occurrence of `T[l, r]`.
    pub fn first_occurrence(&self, l: usize, r: usize) -> Result<Span> {
        self.index.text().check(l, r)?;
        let u = self.index.locate_unchecked(TreeKind::T0, l, r);
        let y = self.t0_row[u as usize] as usize;
        Ok(Span::new(y + l - r, y))
    }

    /// First occurrence of the representative of `T[l, r]`'s class.
    pub fn ext(&self, l: usize, r: usize) -> Result<Span> {
        self.index.text().check(l, r)?;
        let u = self.index.locate_unchecked(TreeKind::T0, l, r);
        Ok(self.classes[self.t0_class[u as usize] as usize].rep)
    }

    pub fn occ_count(&self, l: usize, r: usize) -> Result<usize> {
        self.index.text().check(l, r)?;
        Ok(self.index.t0().occ(self.index.locate_unchecked(TreeKind::T0, l, r)))
    }

    pub fn class_of(&self, l: usize, r: usize) -> Result<BlockPosition> {
        let first = self.first_occurrence(l, r)?;
        let u = self.index.locate_unchecked(TreeKind::T0, l, r);
        let c = self.t0_class[u as usize];
        let rep = self.classes[c as usize].rep;
        let anchor = rep.l + (l - first.l);
        let v = self.col_node[self.col_base[c as usize] as usize];
        Ok(BlockPosition {
            class: c,
            block: self.rank_in_subtree(v, anchor),
            col_offset: first.l - rep.l,
            row_offset: first.r - rep.l,
        })
    }

    /// 1-based rank of suffix `s` among the suffixes below T1 node `v`, by start.
    fn rank_in_subtree(&self, v: NodeId, s: usize) -> usize {
        let (a, b) = (self.tin[v as usize], self.tout[v as usize]);
        let y = s as u32 - 1;
        self.suffix_points.count(a, y) - self.suffix_points.count(b + 1, y) + 1
    }

    /// Starts of all suffixes below T1 node `v`, ascending.
    fn starts_in_subtree(&self, v: NodeId) -> Vec<usize> {
        let (a, b) = (self.tin[v as usize], self.tout[v as usize]);
        let pts = self.suffix_points.points();
        let lo = pts.partition_point(|p| p.l < a);
        let hi = pts.partition_point(|p| p.l <= b);
        let mut out: Vec<usize> = pts[lo..hi].iter().map(|p| p.r as usize).collect();
        out.sort_unstable();
        out
    }

    /// One line per class, in class order.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for c in self.classes() {
            let (l, r) = c.cols();
            let floors: Vec<String> = c.floors().map(|a| a.to_string()).collect();
            let rep = c.rep();
            writeln!(
                out,
                "class {} rep={},{} occ={} cols={}..{} top={} A={}",
                c.id(),
                rep.l,
                rep.r,
                c.occ_count(),
                l,
                r,
                c.top(),
                floors.join(",")
            )
            .unwrap();
        }
        out
    }

    // ---- global layout, used by the query engine ----

    pub(crate) fn t0_class_row(&self, u: NodeId) -> (ClassId, usize) {
        (self.t0_class[u as usize], self.t0_row[u as usize] as usize)
    }

    pub(crate) fn t1_class_col(&self, v: NodeId) -> (ClassId, usize) {
        (self.t1_class[v as usize], self.t1_col[v as usize] as usize)
    }

    pub(crate) fn rep_of(&self, c: ClassId) -> Span {
        self.classes[c as usize].rep
    }

    pub(crate) fn global_col(&self, c: ClassId, x: usize) -> usize {
        self.col_base[c as usize] as usize + x - self.classes[c as usize].rep.l
    }

    pub(crate) fn global_row(&self, c: ClassId, y: usize) -> usize {
        let a = self.col_floor[self.col_base[c as usize] as usize] as usize;
        self.row_base[c as usize] as usize + y - a
    }

    pub(crate) fn total_cols(&self) -> usize {
        self.col_node.len()
    }

    pub(crate) fn total_rows(&self) -> usize {
        self.row_node.len()
    }

    pub(crate) fn col_node_at(&self, g: usize) -> NodeId {
        self.col_node[g]
    }

    pub(crate) fn row_node_at(&self, h: usize) -> NodeId {
        self.row_node[h]
    }

    pub(crate) fn row_end_at(&self, h: usize) -> usize {
        self.row_end[h] as usize
    }

    pub(crate) fn col_floor_at(&self, g: usize) -> usize {
        self.col_floor[g] as usize
    }

    pub(crate) fn heap_bytes(&self) -> usize {
        self.index.heap_bytes()
            + 12 * self.classes.len()
            + 4 * (self.col_base.len()
                + self.row_base.len()
                + self.col_node.len()
                + self.col_floor.len()
                + self.row_node.len()
                + self.row_end.len()
                + self.t0_class.len()
                + self.t0_row.len()
                + self.t1_class.len()
                + self.t1_col.len()
                + self.tin.len()
                + self.tout.len())
            + self.suffix_points.heap_bytes()
    }
}

/// Read-only view of one class.
#[derive(Clone, Copy)]
pub struct EquivClass<'a> {
    s: &'a SubstringStructure,
    id: ClassId,
}

impl<'a> EquivClass<'a> {
    pub fn id(&self) -> ClassId {
        self.id
    }

    /// First occurrence of the representative.
    pub fn rep(&self) -> Span {
        self.s.classes[self.id as usize].rep
    }

    pub fn occ_count(&self) -> usize {
        self.s.classes[self.id as usize].occ as usize
    }

    fn col_range(&self) -> std::ops::Range<usize> {
        self.s.col_base[self.id as usize] as usize..self.s.col_base[self.id as usize + 1] as usize
    }

    fn row_range(&self) -> std::ops::Range<usize> {
        self.s.row_base[self.id as usize] as usize..self.s.row_base[self.id as usize + 1] as usize
    }

    /// Columns `l..=r` of the first block.
    pub fn cols(&self) -> (usize, usize) {
        let l = self.rep().l;
        (l, l + self.col_range().len() - 1)
    }

    /// Top row `b`; equals the representative's end.
    pub fn top(&self) -> usize {
        self.rep().r
    }

    /// Lowest row `A_x` of every column, left to right.
    pub fn floors(&self) -> impl Iterator<Item = usize> + 'a {
        let s = self.s;
        self.col_range().map(move |g| s.col_floor[g] as usize)
    }

    /// Rows `A_l..=b` of the first block.
    pub fn rows(&self) -> (usize, usize) {
        let a = self.s.col_floor[self.col_range().start] as usize;
        (a, self.top())
    }

    /// Grid points in one block.
    pub fn area(&self) -> usize {
        self.floors().map(|a| self.top() + 1 - a).sum()
    }

    pub fn col_node(&self, x: usize) -> Option<NodeId> {
        let (l, r) = self.cols();
        (l..=r).contains(&x).then(|| self.s.col_node[self.col_range().start + x - l])
    }

    pub fn row_node(&self, y: usize) -> Option<NodeId> {
        let (a, b) = self.rows();
        (a..=b).contains(&y).then(|| self.s.row_node[self.row_range().start + y - a])
    }

    /// Last column reached by row `y`.
    pub fn row_end(&self, y: usize) -> Option<usize> {
        let (a, b) = self.rows();
        (a..=b).contains(&y).then(|| self.s.row_end[self.row_range().start + y - a] as usize)
    }

    /// Offsets of every block from the first one, ascending; the first is 0.
    pub fn block_anchors(&self) -> Vec<usize> {
        let l = self.rep().l;
        let v = self.s.col_node[self.col_range().start];
        self.s.starts_in_subtree(v).into_iter().map(|s| s - l).collect()
    }
}

impl std::fmt::Debug for EquivClass<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EquivClass")
            .field("id", &self.id)
            .field("rep", &self.rep())
            .field("occ", &self.occ_count())
            .field("cols", &self.cols())
            .field("top", &self.top())
            .field("floors", &self.floors().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleInstance;
    use crate::text::Text;
    use rand::{Rng, SeedableRng};
    use std::collections::HashSet;

    fn structure(s: &str) -> SubstringStructure {
        SubstringStructure::build(TextIndex::build(Text::new(s).unwrap()))
    }

    fn random_text(rng: &mut impl Rng, n: usize, sigma: u8) -> String {
        (0..n).map(|_| (b'a' + rng.gen_range(0..sigma)) as char).collect()
    }

    fn sample_texts(count: usize, max_n: usize, seed: u64) -> Vec<String> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|k| {
                let n = rng.gen_range(1..=max_n);
                let sigma = [1, 2, 3, 26][k % 4];
                random_text(&mut rng, n, sigma)
            })
            .collect()
    }

    #[test]
    fn abbab_classes() {
        let st = structure("abbab");
        assert_eq!(st.class_count(), 3);
        let got: Vec<(Span, usize)> = st.classes().map(|c| (c.rep(), c.occ_count())).collect();
        assert_eq!(got, vec![(Span::new(1, 2), 2), (Span::new(1, 5), 1), (Span::new(2, 2), 3)]);
        let big = st.class(1).unwrap();
        assert_eq!(big.cols(), (1, 3));
        assert_eq!(big.top(), 5);
        assert_eq!(big.floors().collect::<Vec<_>>(), vec![3, 3, 4]);
        assert_eq!(st.block_count(), 6);
        assert!(st.class(3).is_err());
    }

    #[test]
    fn abbab_dump() {
        let want = "class 0 rep=1,2 occ=2 cols=1..1 top=2 A=1\n\
                    class 1 rep=1,5 occ=1 cols=1..3 top=5 A=3,3,4\n\
                    class 2 rep=2,2 occ=3 cols=2..2 top=2 A=2\n";
        assert_eq!(structure("abbab").dump(), want);
    }

    #[test]
    fn abbab_queries() {
        let st = structure("abbab");
        assert_eq!(st.ext(2, 3).unwrap(), Span::new(1, 5));
        assert_eq!(st.ext(1, 5).unwrap(), Span::new(1, 5));
        assert_eq!(st.ext(4, 4).unwrap(), Span::new(1, 2));
        assert_eq!(st.occ_count(2, 2).unwrap(), 3);
        assert_eq!(st.occ_count(1, 5).unwrap(), 1);
        assert_eq!(st.occ_count(1, 2).unwrap(), 2);
        assert!(st.ext(0, 1).is_err());
        assert!(st.class_of(2, 6).is_err());

        let ab = st.class_of(4, 5).unwrap();
        assert_eq!((ab.class, ab.block), (0, 2));
        let whole = st.class_of(1, 5).unwrap();
        assert_eq!((whole.class, whole.block), (1, 1));
        let b = st.class_of(3, 3).unwrap();
        assert_eq!((b.class, b.block), (2, 2));
        assert_eq!(st.class(2).unwrap().block_anchors(), vec![0, 1, 3]);
    }

    #[test]
    fn abbab_cross_links() {
        let st = structure("abbab");
        let ix = st.index();
        // "bb" row: its T0 parent holds "b", row 2 of the "b" class
        let u = ix.locate(TreeKind::T0, 2, 3).unwrap();
        assert_eq!(st.t0_position(u).unwrap(), (1, 3));
        assert_eq!(st.row_link(u).unwrap(), Some((2, 2)));
        let v = ix.locate(TreeKind::T1, 1, 1).unwrap();
        assert_eq!(st.t1_position(v).unwrap(), (0, 1));
        assert_eq!(st.col_link(v).unwrap(), None);
        assert!(st.t0_position(ROOT).is_err());
    }

    #[test]
    fn single_symbol_runs() {
        // every a^k occurs n - k + 1 times, so each length is its own class
        let st = structure("aaaa");
        assert_eq!(st.class_count(), 4);
        for c in st.classes() {
            let k = c.rep().len();
            assert_eq!(c.rep(), Span::new(1, k));
            assert_eq!(c.occ_count(), 5 - k);
            assert_eq!(c.area(), 1);
            assert_eq!(c.block_anchors(), (0..5 - k).collect::<Vec<_>>());
        }
    }

    fn check_against_brute(s: &str) {
        let t = Text::new(s).unwrap();
        let st = SubstringStructure::build(TextIndex::build(t.clone()));
        let oracle = OracleInstance::new(&t, &[]).unwrap();
        let brute = oracle.classify();
        assert_eq!(brute.len(), st.class_count(), "{s}");
        for (b, c) in brute.iter().zip(st.classes()) {
            assert_eq!(b.rep, c.rep(), "{s}");
            assert_eq!(b.occ, c.occ_count(), "{s}");
            assert_eq!(b.cols, c.cols(), "{s}");
            assert_eq!(b.top, c.top(), "{s}");
            assert_eq!(b.floors, c.floors().collect::<Vec<_>>(), "{s}");
            assert_eq!(b.area, c.area(), "{s}");
        }
    }

    #[test]
    fn classes_match_brute_force() {
        check_against_brute("aaaa");
        check_against_brute("mississippi");
        for s in sample_texts(40, 40, 5) {
            check_against_brute(&s);
        }
    }

    #[test]
    fn staircase_and_partition() {
        for s in sample_texts(60, 48, 6) {
            let st = structure(&s);
            let n = s.len();
            let mut seen = HashSet::new();
            let mut total = 0;
            for c in st.classes() {
                let floors: Vec<usize> = c.floors().collect();
                let (l, r) = c.cols();
                assert!(floors.windows(2).all(|w| w[0] <= w[1]));
                assert!(*floors.last().unwrap() <= c.top());
                assert_eq!(c.rows(), (floors[0], c.top()));
                let anchors = c.block_anchors();
                assert_eq!(anchors.len(), c.occ_count());
                assert_eq!(anchors[0], 0);
                total += c.occ_count() * c.area();
                for (k, &off) in anchors.iter().enumerate() {
                    for (x, &a) in (l..=r).zip(&floors) {
                        for y in a..=c.top() {
                            let p = (x + off, y + off);
                            assert!(seen.insert(p), "{s}: point {p:?} covered twice");
                            let pos = st.class_of(p.0, p.1).unwrap();
                            assert_eq!(pos.class, c.id());
                            assert_eq!(pos.block, k + 1);
                            assert_eq!((pos.col_offset, pos.row_offset), (x - l, y - l));
                        }
                    }
                }
            }
            assert_eq!(total, n * (n + 1) / 2);
            assert_eq!(seen.len(), total);
        }
    }

    #[test]
    fn rows_and_columns_hold_node_strings() {
        for s in sample_texts(40, 16, 7) {
            let st = structure(&s);
            let ix = st.index();
            let text = ix.text();
            for c in st.classes() {
                let (l, r) = c.cols();
                let floors: Vec<usize> = c.floors().collect();
                let (a, b) = c.rows();
                for y in a..=b {
                    let u = c.row_node(y).unwrap();
                    let end = c.row_end(y).unwrap();
                    // the row's columns are exactly those whose floor is at most y
                    assert_eq!(end, (l..=r).filter(|&x| floors[x - l] <= y).max().unwrap());
                    let mut row: Vec<&[u8]> = (l..=end).map(|x| text.slice(x, y)).collect();
                    let t0 = ix.t0();
                    let sample = t0.sample(u).unwrap();
                    let mut node: Vec<&[u8]> = (t0.parent_len(u) + 1..=t0.len(u))
                        .map(|k| text.slice(sample.r + 1 - k, sample.r))
                        .collect();
                    row.sort();
                    node.sort();
                    assert_eq!(row, node, "{s} row {y}");
                }
                for x in l..=r {
                    let v = c.col_node(x).unwrap();
                    let t1 = ix.t1();
                    assert_eq!(t1.sample(v).unwrap(), Span::new(x, b));
                    assert_eq!(floors[x - l], x + t1.parent_len(v));
                    assert_eq!(st.t1_position(v).unwrap(), (c.id(), x));
                }
            }
        }
    }

    #[test]
    fn ext_idempotent_and_membership() {
        for s in sample_texts(30, 32, 8) {
            let st = structure(&s);
            let n = s.len();
            for l in 1..=n {
                for r in l..=n {
                    let e = st.ext(l, r).unwrap();
                    assert_eq!(st.ext(e.l, e.r).unwrap(), e);
                    if n <= 16 {
                        let p = st.first_occurrence(l, r).unwrap();
                        let c = st.class_of(l, r).unwrap().class;
                        for ll in e.l..=p.l {
                            for rr in p.r..=e.r {
                                assert_eq!(st.class_of(ll, rr).unwrap().class, c);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ext_matches_oracle() {
        for s in sample_texts(20, 24, 9) {
            let t = Text::new(s.as_str()).unwrap();
            let st = structure(&s);
            let o = OracleInstance::new(&t, &[]).unwrap();
            for l in 1..=s.len() {
                for r in l..=s.len() {
                    assert_eq!(st.ext(l, r).unwrap(), o.ext(l, r).unwrap(), "{s} ({l},{r})");
                    assert_eq!(st.occ_count(l, r).unwrap(), o.occ_count(l, r).unwrap(), "{s} ({l},{r})");
                }
            }
        }
    }
}
