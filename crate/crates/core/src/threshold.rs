//! Range extremes with threshold reporting.
//!
//! Reporting every position of `vals[lo..=hi]` whose value passes a
//! threshold takes `O(1 + out)`: the extreme of the range is found in
//! constant time, and the range is split around it only while it passes.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Extreme {
    Min,
    Max,
}

const B: usize = 32;

/// Range extremes in `O(1)` with linear space: a sparse table over the
/// extremes of blocks of 32 values, and inside each block, per position, the
/// bit set of the monotone stack of candidates ending there.
#[derive(Clone, Debug)]
pub(crate) struct RangeExtreme {
    mode: Extreme,
    vals: Vec<u32>,
    masks: Vec<u32>,
    // table[k * blocks + b] = position of the extreme in blocks b .. b + 2^k
    table: Vec<u32>,
    blocks: usize,
}

impl RangeExtreme {
    pub fn new(vals: Vec<u32>, mode: Extreme) -> Self {
        let len = vals.len();
        let blocks = len.div_ceil(B);
        let mut masks = vec![0u32; len];
        let mut table = Vec::with_capacity(blocks);
        let mut stack: Vec<usize> = Vec::with_capacity(B);
        for (b, block) in masks.chunks_mut(B).enumerate() {
            let start = b * B;
            stack.clear();
            let mut mask = 0u32;
            for (off, slot) in block.iter_mut().enumerate() {
                let i = start + off;
                // equal values stay, so the leftmost of a tie wins
                while let Some(&top) = stack.last() {
                    if Self::pick_with(mode, &vals, top as u32, i as u32) == i as u32 {
                        mask &= !(1 << (top - start));
                        stack.pop();
                    } else {
                        break;
                    }
                }
                stack.push(i);
                mask |= 1 << off;
                *slot = mask;
            }
            table.push(stack[0] as u32);
        }
        let mut k = 1;
        while (1usize << k) <= blocks {
            let half = 1usize << (k - 1);
            let prev = (k - 1) * blocks;
            for b in 0..blocks {
                let x = table[prev + b];
                let y = if b + half < blocks { table[prev + b + half] } else { x };
                table.push(Self::pick_with(mode, &vals, x, y));
            }
            k += 1;
        }
        RangeExtreme { mode, vals, masks, table, blocks }
    }

    #[inline]
    fn pick_with(mode: Extreme, vals: &[u32], a: u32, b: u32) -> u32 {
        let (va, vb) = (vals[a as usize], vals[b as usize]);
        let take_b = match mode {
            Extreme::Min => vb < va,
            Extreme::Max => vb > va,
        };
        if take_b {
            b
        } else {
            a
        }
    }

    #[inline]
    fn in_block(&self, lo: usize, hi: usize) -> u32 {
        let start = hi - hi % B;
        let m = self.masks[hi] & (u32::MAX << (lo - start));
        (start + m.trailing_zeros() as usize) as u32
    }

    /// Position of the extreme value in `vals[lo..=hi]`; ties go to the leftmost.
    #[inline]
    pub fn position(&self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi && hi < self.vals.len());
        let (bl, bh) = (lo / B, hi / B);
        if bl == bh {
            return self.in_block(lo, hi) as usize;
        }
        let mut best = self.in_block(lo, bl * B + B - 1);
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let k = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let x = self.table[k * self.blocks + a];
            let y = self.table[k * self.blocks + b + 1 - (1 << k)];
            best = Self::pick_with(self.mode, &self.vals, best, Self::pick_with(self.mode, &self.vals, x, y));
        }
        Self::pick_with(self.mode, &self.vals, best, self.in_block(bh * B, hi)) as usize
    }

    #[inline]
    pub fn extreme(&self, lo: usize, hi: usize) -> u32 {
        self.vals[self.position(lo, hi)]
    }

    #[inline]
    fn passes(&self, v: u32, t: u32) -> bool {
        match self.mode {
            Extreme::Min => v <= t,
            Extreme::Max => v >= t,
        }
    }

    /// Calls `emit` for every `i` in `lo..=hi` whose value is `<= t` (min mode)
    /// or `>= t` (max mode).
    pub fn report(&self, lo: usize, hi: usize, t: u32, mut emit: impl FnMut(usize)) {
        if lo > hi || hi >= self.vals.len() {
            return;
        }
        let mut stack = vec![(lo, hi)];
        while let Some((a, b)) = stack.pop() {
            let m = self.position(a, b);
            if !self.passes(self.vals[m], t) {
                continue;
            }
            emit(m);
            if m > a {
                stack.push((a, m - 1));
            }
            if m < b {
                stack.push((m + 1, b));
            }
        }
    }

    pub fn heap_bytes(&self) -> usize {
        4 * (self.vals.len() + self.masks.len() + self.table.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_scan(vals in prop::collection::vec(0u32..50, 1..300), lo in 0usize..300, hi in 0usize..300, t in 0u32..50) {
            let n = vals.len();
            let (lo, hi) = (lo.min(hi) % n, lo.max(hi) % n);
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            for mode in [Extreme::Min, Extreme::Max] {
                let re = RangeExtreme::new(vals.clone(), mode);
                let want_ext = match mode {
                    Extreme::Min => *vals[lo..=hi].iter().min().unwrap(),
                    Extreme::Max => *vals[lo..=hi].iter().max().unwrap(),
                };
                prop_assert_eq!(re.extreme(lo, hi), want_ext);
                prop_assert_eq!(re.position(lo, hi), (lo..=hi).find(|&i| vals[i] == want_ext).unwrap());
                let mut got = Vec::new();
                re.report(lo, hi, t, |i| got.push(i));
                got.sort_unstable();
                let want: Vec<usize> = (lo..=hi)
                    .filter(|&i| match mode { Extreme::Min => vals[i] <= t, Extreme::Max => vals[i] >= t })
                    .collect();
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn empty_and_single() {
        let re = RangeExtreme::new(Vec::new(), Extreme::Min);
        let mut hit = false;
        re.report(0, 0, 10, |_| hit = true);
        assert!(!hit);
        let re = RangeExtreme::new(vec![7], Extreme::Max);
        assert_eq!(re.position(0, 0), 0);
    }
}
