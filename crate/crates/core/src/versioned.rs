//! A persistent array under range additions.
//!
//! Each version is a tree of fanout `F` over positions `1..=n`. Every
//! child slot carries an additive annotation, and a point query sums the
//! annotations on one root-to-leaf path, so it touches one node per level.
//! An update copies only the nodes on the (at most two) boundary paths of its
//! range. Nodes created while building the current (uncommitted) version are
//! updated in place, so several additions in one step share their copies.

use std::ops::AddAssign;


/// Value types the array can hold. Narrow values make smaller nodes.
pub trait AddValue: Copy + Default + AddAssign + Into<u64> + TryFrom<u64> + std::fmt::Debug {}

impl AddValue for u32 {}
impl AddValue for u64 {}

// annotation and child pointer side by side, so a query step reads one line
#[derive(Clone, Copy, Debug, Default)]
#[repr(C)]
struct Slot<V> {
    add: V,
    child: u32,
}

type Node<V, const F: usize> = [Slot<V>; F];

/// `F` must be a power of two; wider nodes mean shallower trees and bigger copies.
#[derive(Clone, Debug)]
pub struct VersionedAddArray<V: AddValue = u64, const F: usize = 8> {
    n: usize,
    // levels below the root; the root covers F^height positions
    height: u32,
    // node 0 is the shared all-zero tree
    nodes: Vec<Node<V, F>>,
    roots: Vec<u32>,
    current: u32,
    // nodes at or above this index belong to the uncommitted version
    fresh_from: u32,
}

impl<V: AddValue, const F: usize> VersionedAddArray<V, F> {
    const SHIFT: u32 = F.trailing_zeros();

    /// Version 0: all zeros over positions `1..=n`.
    pub fn new(n: usize) -> Self {
        let mut height = 1;
        while (F as u128).pow(height) < n as u128 {
            height += 1;
        }
        VersionedAddArray { n, height, nodes: vec![[Slot::default(); F]], roots: vec![0], current: 0, fresh_from: 1 }
    }

    /// Like [`new`](Self::new), with room reserved for `updates` range
    /// additions, so the node store never has to move.
    pub fn with_capacity(n: usize, updates: usize) -> Self {
        let mut a = Self::new(n);
        a.nodes.reserve(updates.saturating_mul(2 * a.height as usize));
        a
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of committed versions, including version 0.
    pub fn versions(&self) -> usize {
        self.roots.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn heap_bytes(&self) -> usize {
        self.nodes.len() * std::mem::size_of::<Node<V, F>>() + 4 * self.roots.len()
    }

    fn own(&mut self, v: u32) -> u32 {
        if v >= self.fresh_from {
            return v;
        }
        self.nodes.push(self.nodes[v as usize]);
        (self.nodes.len() - 1) as u32
    }

    /// Adds `val` to positions `lo..=hi` of the working version.
    pub fn range_add(&mut self, lo: usize, hi: usize, val: V) {
        if lo > hi || val.into() == 0 {
            return;
        }
        debug_assert!(lo >= 1 && hi <= self.n);
        let (lo, hi) = (lo - 1, hi - 1);
        self.current = self.own(self.current);
        let mut v = self.current;
        let mut level = self.height - 1;
        // descend while both ends fall into the same child
        loop {
            let s = Self::SHIFT * level;
            let mask = (1usize << s) - 1;
            let (cl, ch) = ((lo >> s) & (F - 1), (hi >> s) & (F - 1));
            let (lo_full, hi_full) = (lo & mask == 0, hi & mask == mask);
            if cl == ch && !(lo_full && hi_full) {
                v = self.descend(v, cl);
                level -= 1;
                continue;
            }
            if cl == ch {
                self.nodes[v as usize][cl].add += val;
                return;
            }
            for slot in &mut self.nodes[v as usize][cl + 1..ch] {
                slot.add += val;
            }
            if lo_full {
                self.nodes[v as usize][cl].add += val;
            } else {
                let u = self.descend(v, cl);
                self.add_suffix(u, level - 1, lo, val);
            }
            if hi_full {
                self.nodes[v as usize][ch].add += val;
            } else {
                let u = self.descend(v, ch);
                self.add_prefix(u, level - 1, hi, val);
            }
            return;
        }
    }

    /// Adds `val` to everything at or after `lo` below `v`.
    fn add_suffix(&mut self, mut v: u32, mut level: u32, lo: usize, val: V) {
        loop {
            let s = Self::SHIFT * level;
            let c = (lo >> s) & (F - 1);
            let full = lo & ((1usize << s) - 1) == 0;
            let first = if full { c } else { c + 1 };
            for slot in &mut self.nodes[v as usize][first..] {
                slot.add += val;
            }
            if full {
                return;
            }
            v = self.descend(v, c);
            level -= 1;
        }
    }

    /// Adds `val` to everything at or before `hi` below `v`.
    fn add_prefix(&mut self, mut v: u32, mut level: u32, hi: usize, val: V) {
        loop {
            let s = Self::SHIFT * level;
            let mask = (1usize << s) - 1;
            let c = (hi >> s) & (F - 1);
            let full = hi & mask == mask;
            let last = if full { c + 1 } else { c };
            for slot in &mut self.nodes[v as usize][..last] {
                slot.add += val;
            }
            if full {
                return;
            }
            v = self.descend(v, c);
            level -= 1;
        }
    }

    /// Makes child `c` of the owned node `v` owned too and returns it.
    #[inline]
    fn descend(&mut self, v: u32, c: usize) -> u32 {
        let child = self.own(self.nodes[v as usize][c].child);
        self.nodes[v as usize][c].child = child;
        child
    }

    /// Freezes the working version as the next version and returns its number.
    pub fn commit(&mut self) -> usize {
        self.roots.push(self.current);
        self.fresh_from = self.nodes.len() as u32;
        self.roots.len() - 1
    }

    pub fn point_query(&self, version: usize, i: usize) -> u64 {
        self.query_root(self.roots[version], i)
    }

    fn query_root(&self, root: u32, i: usize) -> u64 {
        debug_assert!(i >= 1 && i <= self.n);
        let pos = i - 1;
        let mut v = root;
        let mut acc = 0;
        let mut level = self.height;
        while v != 0 {
            level -= 1;
            let c = (pos >> (Self::SHIFT * level)) & (F - 1);
            let slot = self.nodes[v as usize][c];
            acc += slot.add.into();
            v = slot.child;
        }
        acc
    }
}
