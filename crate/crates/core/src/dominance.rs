//! Static two-sided range queries over a point set: for a corner `(x, y)`,
//! the points `p` with `p.l >= x` and `p.r <= y`.
//!
//! Points are kept sorted by `l`, so the `l >= x` side is always a suffix of
//! that order. Counting uses a wavelet matrix over the `r` values
//! (`O(log n)`, and only a few bits per point, so it stays cache resident),
//! existence a suffix minimum of `r` (`O(1)`), and reporting a range-minimum
//! recursion over the same suffix (`O(1 + out)`).

use crate::threshold::{Extreme, RangeExtreme};

const SCAN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternPoint {
    pub l: u32,
    pub r: u32,
    pub pattern_id: u32,
}

impl PatternPoint {
    pub fn new(l: u32, r: u32, pattern_id: u32) -> Self {
        PatternPoint { l, r, pattern_id }
    }
}

#[derive(Clone, Debug)]
pub struct DominanceIndex {
    points: Vec<PatternPoint>,
    l_min: u32,
    // first_ge[x - l_min] = first sorted position with l >= x, for x in l_min..=l_max + 1;
    // empty when the span is too wide to tabulate
    first_ge: Vec<u32>,
    suffix_min: Vec<u32>,
    rs: Vec<u32>,
    counter: WaveletMatrix,
    by_r: RangeExtreme,
}

impl DominanceIndex {
    pub fn new(mut points: Vec<PatternPoint>) -> Self {
        points.sort_unstable_by_key(|p| ((p.l as u128) << 64) | ((p.r as u128) << 32) | p.pattern_id as u128);
        let l_min = points.first().map_or(0, |p| p.l);
        let l_max = points.last().map_or(0, |p| p.l);
        let mut first_ge = Vec::new();
        // a dense lookup only when the coordinate span is small; binary search otherwise
        let dense = !points.is_empty() && ((l_max - l_min) as usize) <= 4 * points.len() + 1024;
        if dense {
            first_ge = vec![0u32; (l_max - l_min) as usize + 2];
            let mut i = points.len();
            for x in (l_min..=l_max + 1).rev() {
                while i > 0 && points[i - 1].l >= x {
                    i -= 1;
                }
                first_ge[(x - l_min) as usize] = i as u32;
            }
        }
        let rs: Vec<u32> = points.iter().map(|p| p.r).collect();
        let mut suffix_min = rs.clone();
        for i in (0..suffix_min.len().saturating_sub(1)).rev() {
            suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
        }
        let counter = WaveletMatrix::new(&rs);
        let by_r = RangeExtreme::new(rs.clone(), Extreme::Min);
        DominanceIndex { points, l_min, first_ge, suffix_min, rs, counter, by_r }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in `(l, r)` order.
    pub fn points(&self) -> &[PatternPoint] {
        &self.points
    }

    #[inline]
    fn first_ge(&self, x: u32) -> usize {
        if self.points.is_empty() {
            return 0;
        }
        if x <= self.l_min {
            return 0;
        }
        if self.first_ge.is_empty() {
            return self.points.partition_point(|p| p.l < x);
        }
        let k = (x - self.l_min) as usize;
        if k >= self.first_ge.len() {
            self.points.len()
        } else {
            self.first_ge[k] as usize
        }
    }

    pub fn count(&self, x: u32, y: u32) -> usize {
        let i = self.first_ge(x);
        // a short run followed only by points above y is cheaper to scan
        let stop = (i + SCAN).min(self.rs.len());
        if stop == self.rs.len() || self.suffix_min[stop] > y {
            return self.rs[i.min(stop)..stop].iter().filter(|&&r| r <= y).count();
        }
        self.counter.count_le(i, self.rs.len(), y)
    }

    /// Two counts at once; the traversals are interleaved so their memory
    /// accesses overlap.
    pub fn count2(&self, (x1, y1): (u32, u32), (x2, y2): (u32, u32)) -> (usize, usize) {
        let (i1, i2) = (self.first_ge(x1), self.first_ge(x2));
        let len = self.rs.len();
        if i1.max(i2) + SCAN >= len {
            return (self.count(x1, y1), self.count(x2, y2));
        }
        self.counter.count_le2((i1, y1), (i2, y2), len)
    }

    #[inline]
    pub fn exists(&self, x: u32, y: u32) -> bool {
        let i = self.first_ge(x);
        i < self.points.len() && self.suffix_min[i] <= y
    }

    /// Calls `emit` once per dominated point, in a fixed order.
    pub fn for_each(&self, x: u32, y: u32, mut emit: impl FnMut(&PatternPoint)) {
        let i = self.first_ge(x);
        if i >= self.points.len() || self.suffix_min[i] > y {
            return;
        }
        self.by_r.report(i, self.points.len() - 1, y, |k| emit(&self.points[k]));
    }

    pub fn report(&self, x: u32, y: u32) -> Vec<PatternPoint> {
        let mut out = Vec::new();
        self.for_each(x, y, |p| out.push(*p));
        out
    }

    pub fn heap_bytes(&self) -> usize {
        12 * self.points.len()
            + 4 * (self.first_ge.len() + self.suffix_min.len() + self.rs.len())
            + self.counter.heap_bytes()
            + self.by_r.heap_bytes()
    }
}

/// Bit vector with constant-time rank; each word sits next to the number of
/// ones before it, so a rank touches one cache line.
#[derive(Clone, Debug, Default)]
struct RankBits {
    blocks: Vec<(u64, u64)>,
    ones: usize,
}

impl RankBits {
    fn from_bits(bits: impl Iterator<Item = bool>, len: usize) -> Self {
        let mut words = vec![0u64; len / 64 + 1];
        for (i, b) in bits.enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut blocks = Vec::with_capacity(words.len());
        let mut acc = 0u64;
        for w in words {
            blocks.push((w, acc));
            acc += w.count_ones() as u64;
        }
        RankBits { blocks, ones: acc as usize }
    }

    /// Ones in positions `[0, i)`.
    #[inline]
    fn rank1(&self, i: usize) -> usize {
        let (w, before) = self.blocks[i / 64];
        let mask = (1u64 << (i % 64)) - 1;
        before as usize + (w & mask).count_ones() as usize
    }
}

#[derive(Clone, Debug, Default)]
struct WaveletMatrix {
    levels: Vec<RankBits>,
    zeros: Vec<usize>,
    bits: u32,
}

impl WaveletMatrix {
    fn new(vals: &[u32]) -> Self {
        let max = vals.iter().copied().max().unwrap_or(0);
        let bits = (u32::BITS - max.leading_zeros()).max(1);
        let mut cur = vals.to_vec();
        let mut next = vec![0u32; vals.len()];
        let mut levels = Vec::with_capacity(bits as usize);
        let mut zeros = Vec::with_capacity(bits as usize);
        for b in (0..bits).rev() {
            let level = RankBits::from_bits(cur.iter().map(|&v| (v >> b) & 1 == 1), cur.len());
            zeros.push(cur.len() - level.ones);
            levels.push(level);
            // stable partition: zeros first
            let z = zeros[zeros.len() - 1];
            let (mut lo, mut hi) = (0, z);
            for &v in &cur {
                if (v >> b) & 1 == 0 {
                    next[lo] = v;
                    lo += 1;
                } else {
                    next[hi] = v;
                    hi += 1;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        WaveletMatrix { levels, zeros, bits }
    }

    /// Number of values `<= y` among positions `[lo, hi)`.
    fn count_le(&self, mut lo: usize, mut hi: usize, y: u32) -> usize {
        if self.bits < 32 && (y as u64) >= (1u64 << self.bits) {
            return hi - lo;
        }
        let mut acc = 0;
        for (k, level) in self.levels.iter().enumerate() {
            let b = self.bits - 1 - k as u32;
            let (o_lo, o_hi) = (level.rank1(lo), level.rank1(hi));
            let zeros = self.zeros[k];
            if (y >> b) & 1 == 1 {
                // every value with a zero here is smaller
                acc += (hi - lo) - (o_hi - o_lo);
                lo = zeros + o_lo;
                hi = zeros + o_hi;
            } else {
                lo -= o_lo;
                hi -= o_hi;
            }
            if lo == hi {
                return acc;
            }
        }
        acc + (hi - lo)
    }

    fn count_le2(&self, (lo1, y1): (usize, u32), (lo2, y2): (usize, u32), len: usize) -> (usize, usize) {
        if self.bits < 32 && (y1.max(y2) as u64) >= (1u64 << self.bits) {
            return (self.count_le(lo1, len, y1), self.count_le(lo2, len, y2));
        }
        let mut a = [lo1, len, 0];
        let mut b = [lo2, len, 0];
        for (k, level) in self.levels.iter().enumerate() {
            let bit = self.bits - 1 - k as u32;
            let zeros = self.zeros[k];
            for (s, y) in [(&mut a, y1), (&mut b, y2)] {
                let (o_lo, o_hi) = (level.rank1(s[0]), level.rank1(s[1]));
                if (y >> bit) & 1 == 1 {
                    s[2] += (s[1] - s[0]) - (o_hi - o_lo);
                    s[0] = zeros + o_lo;
                    s[1] = zeros + o_hi;
                } else {
                    s[0] -= o_lo;
                    s[1] -= o_hi;
                }
            }
        }
        (a[2] + a[1] - a[0], b[2] + b[1] - b[0])
    }

    fn heap_bytes(&self) -> usize {
        self.levels.iter().map(|l| 16 * l.blocks.len()).sum()
    }
}
