//! Root-path relabeling on a static rooted tree.
//!
//! `access(v, label)` reports how the root path of `v` was labeled, as
//! maximal runs of equal labels from `v` upwards, and then labels the whole
//! path `label`. The tree is cut into heavy paths. A root path enters each
//! heavy path at its head and leaves it somewhere below, so an access
//! relabels a prefix of every heavy path it meets. The labels of one heavy
//! path therefore form a stack of intervals, shallowest on top, and an access
//! pops the intervals it covers and pushes one. Over any sequence of `m`
//! accesses the number of runs is `O((m + n) log n)`.

use crate::error::{Error, Result};

pub const UNLABELED: u32 = u32::MAX;
const NIL: u32 = u32::MAX;

/// Nodes `bottom` up to `top` (an ancestor-or-self) all carried `label`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathSegment {
    pub bottom: u32,
    pub top: u32,
    pub label: u32,
}

/// Labels `label` from depth `lo` of a heavy path down to the next interval.
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: u32,
    label: u32,
}

#[derive(Clone, Copy, Debug)]
struct Meta {
    // position of the head of this position's heavy path
    head: u32,
    // at a head: position of the parent of the head (NIL at a root), and
    // the number of intervals on the path's stack
    up: u32,
    depth: u32,
}

#[derive(Clone, Debug)]
pub struct PathAccess {
    // position of every node in heavy-first preorder, and the inverse; both
    // empty when the node ids already are those positions
    pos: Vec<u32>,
    order: Vec<u32>,
    meta: Vec<Meta>,
    // the stack of the heavy path with head at position h lives in
    // stacks[h..h + len], deepest interval first
    stacks: Vec<Interval>,
}

impl PathAccess {
    /// `parent[root] == root` marks a root; every node starts unlabeled.
    pub fn new(parent: &[u32]) -> Self {
        let n = parent.len();
        let is_root = |v: usize| parent[v] as usize == v;
        let mut child_off = vec![0u32; n + 1];
        for v in (0..n).filter(|&v| !is_root(v)) {
            child_off[parent[v] as usize + 1] += 1;
        }
        for v in 0..n {
            child_off[v + 1] += child_off[v];
        }
        let mut children = vec![0u32; child_off[n] as usize];
        let mut fill = child_off.clone();
        for v in (0..n).filter(|&v| !is_root(v)) {
            let p = parent[v] as usize;
            children[fill[p] as usize] = v as u32;
            fill[p] += 1;
        }
        let kids = |v: u32| &children[child_off[v as usize] as usize..child_off[v as usize + 1] as usize];

        // subtree sizes from a preorder read backwards
        let roots: Vec<u32> = (0..n as u32).filter(|&v| is_root(v as usize)).collect();
        let mut pre = Vec::with_capacity(n);
        let mut stack = roots.clone();
        while let Some(v) = stack.pop() {
            pre.push(v);
            stack.extend_from_slice(kids(v));
        }
        let mut size = vec![1u32; n];
        for &v in pre.iter().rev() {
            if !is_root(v as usize) {
                size[parent[v as usize] as usize] += size[v as usize];
            }
        }

        // heavy-first preorder: the heaviest child directly follows its parent
        let mut pos = vec![0u32; n];
        let mut order = pre;
        order.clear();
        let mut meta = vec![Meta { head: 0, up: NIL, depth: 0 }; n];
        stack.extend(roots.iter().rev());
        while let Some(v) = stack.pop() {
            let k = order.len();
            pos[v as usize] = k as u32;
            order.push(v);
            meta[k].head = k as u32;
            if !is_root(v as usize) {
                let pk = pos[parent[v as usize] as usize] as usize;
                if pk + 1 == k {
                    meta[k].head = meta[pk].head;
                } else {
                    meta[k].up = pk as u32;
                }
            }
            if meta[k].head as usize == k {
                meta[k].depth = 1;
            }
            let c = kids(v);
            if let Some(&heavy) = c.iter().max_by_key(|&&c| (size[c as usize], std::cmp::Reverse(c))) {
                stack.extend(c.iter().rev().filter(|&&c| c != heavy));
                stack.push(heavy);
            }
        }
        if order.iter().enumerate().all(|(k, &v)| k == v as usize) {
            pos = Vec::new();
            order = Vec::new();
        }
        PathAccess { pos, order, meta, stacks: vec![Interval { lo: 0, label: UNLABELED }; n] }
    }

    pub fn len(&self) -> usize {
        self.meta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.meta.is_empty()
    }

    fn check(&self, v: u32) -> Result<()> {
        if v as usize >= self.len() {
            return Err(Error::UnknownNode(v));
        }
        Ok(())
    }

    #[inline]
    fn position(&self, v: u32) -> usize {
        if self.pos.is_empty() {
            v as usize
        } else {
            self.pos[v as usize] as usize
        }
    }

    /// Current label of `v`.
    pub fn label(&self, v: u32) -> Result<u32> {
        self.check(v)?;
        let k = self.position(v);
        let h = self.meta[k].head as usize;
        let d = (k - h) as u32;
        let st = &self.stacks[h..h + self.meta[h].depth as usize];
        Ok(st[st.partition_point(|iv| iv.lo > d)].label)
    }

    /// Appends the label runs of the root path of `v` (bottom first) to `out`,
    /// then relabels the path with `new_label`.
    pub fn access(&mut self, v: u32, new_label: u32, out: &mut Vec<PathSegment>) -> Result<()> {
        self.check(v)?;
        debug_assert_ne!(new_label, UNLABELED);
        let mut k = self.position(v);
        let PathAccess { order, meta, stacks, .. } = self;
        let node = |k: usize| if order.is_empty() { k as u32 } else { order[k] };
        let start = out.len();
        loop {
            let h = meta[k].head as usize;
            let d = (k - h) as u32;
            let size = meta[h].depth as usize;
            // intervals starting at or above depth d sit on top of the stack
            let mut i = size;
            while i > 0 && stacks[h + i - 1].lo <= d {
                i -= 1;
            }
            let mut hi = d;
            for iv in &stacks[h + i..h + size] {
                let (bottom, top) = (node(h + hi as usize), node(h + iv.lo as usize));
                match out[start..].last_mut() {
                    Some(seg) if seg.label == iv.label => seg.top = top,
                    _ => out.push(PathSegment { bottom, top, label: iv.label }),
                }
                hi = iv.lo.wrapping_sub(1);
            }
            // the deepest covered interval keeps its part below depth d
            let keeps = if i > 0 { d + 1 < stacks[h + i - 1].lo } else { k + 1 < meta.len() && meta[k + 1].head as usize == h };
            let mut size = i;
            if keeps {
                stacks[h + size] = Interval { lo: d + 1, label: stacks[h + i].label };
                size += 1;
            }
            stacks[h + size] = Interval { lo: 0, label: new_label };
            meta[h].depth = size as u32 + 1;
            match meta[h].up {
                NIL => return Ok(()),
                p => k = p as usize,
            }
        }
    }
}
