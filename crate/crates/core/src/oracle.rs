//! Brute-force reference answers.
//!
//! Everything here works on raw byte strings by enumeration and comparison.
//! Nothing is shared with the index, so agreement between the two is real
//! evidence. Expect cubic or worse running times.

use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::query::{Answer, Occurrence, QueryKind};
use crate::text::{Span, Text};

#[derive(Clone, Debug)]
pub struct OracleInstance {
    text: Vec<u8>,
    patterns: Vec<Vec<u8>>,
    ids: HashMap<Vec<u8>, u32>,
    /// Occurrences of each pattern, ascending by start.
    occurrences: Vec<Vec<Span>>,
    collapsed: usize,
}

/// One equivalence class as found by explicit extension of every substring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteClass {
    pub rep: Span,
    pub occ: usize,
    pub cols: (usize, usize),
    pub top: usize,
    /// Lowest row of every column `cols.0..=cols.1`.
    pub floors: Vec<usize>,
    /// Number of grid points in one block.
    pub area: usize,
}

fn occurrences(text: &[u8], s: &[u8]) -> Vec<Span> {
    if s.is_empty() || s.len() > text.len() {
        return Vec::new();
    }
    text.windows(s.len())
        .enumerate()
        .filter(|(_, w)| *w == s)
        .map(|(k, _)| Span::new(k + 1, k + s.len()))
        .collect()
}

impl OracleInstance {
    pub fn new(text: &Text, fragments: &[Span]) -> Result<Self> {
        let bytes = text.as_bytes().to_vec();
        let mut by_first: BTreeMap<Span, Vec<u8>> = BTreeMap::new();
        for f in fragments {
            text.check(f.l, f.r)?;
            let s = bytes[f.l - 1..f.r].to_vec();
            let first = occurrences(&bytes, &s)[0];
            by_first.insert(first, s);
        }
        let collapsed = fragments.len() - by_first.len();
        let patterns: Vec<Vec<u8>> = by_first.into_values().collect();
        let ids = patterns.iter().enumerate().map(|(k, p)| (p.clone(), k as u32)).collect();
        let occurrences = patterns.iter().map(|p| occurrences(&bytes, p)).collect();
        Ok(OracleInstance { text: bytes, patterns, ids, occurrences, collapsed })
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    pub fn collapsed(&self) -> usize {
        self.collapsed
    }

    pub fn pattern(&self, id: u32) -> &[u8] {
        &self.patterns[id as usize]
    }

    pub fn occurrences_of(&self, id: u32) -> &[Span] {
        &self.occurrences[id as usize]
    }

    fn check(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || i > j || j > self.n() {
            return Err(crate::Error::OutOfRange { l: i, r: j, n: self.n() });
        }
        Ok(())
    }

    /// Every pattern occurrence inside `T[i, j]`, sorted.
    pub fn report(&self, i: usize, j: usize) -> Result<Vec<Occurrence>> {
        self.check(i, j)?;
        let mut out = Vec::new();
        for l in i..=j {
            for r in l..=j {
                if let Some(&id) = self.ids.get(&self.text[l - 1..r]) {
                    out.push(Occurrence { pattern_id: id, l, r });
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn count(&self, i: usize, j: usize) -> Result<usize> {
        Ok(self.report(i, j)?.len())
    }

    pub fn exists(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.count(i, j)? > 0)
    }

    pub fn report_distinct(&self, i: usize, j: usize) -> Result<Vec<u32>> {
        let mut ids: Vec<u32> = self.report(i, j)?.into_iter().map(|o| o.pattern_id).collect();
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    pub fn count_distinct(&self, i: usize, j: usize) -> Result<usize> {
        Ok(self.report_distinct(i, j)?.len())
    }

    /// Canonically sorted answer of any kind.
    pub fn query(&self, kind: QueryKind, i: usize, j: usize) -> Result<Answer> {
        Ok(match kind {
            QueryKind::Exists => Answer::Exists(self.exists(i, j)?),
            QueryKind::Report => Answer::Report(self.report(i, j)?),
            QueryKind::Count => Answer::Count(self.count(i, j)?),
            QueryKind::CountDistinct => Answer::Count(self.count_distinct(i, j)?),
            QueryKind::ReportDistinct => Answer::Patterns(self.report_distinct(i, j)?),
        })
    }

    /// Number of occurrences of `T[l, r]` anywhere in the text.
    pub fn occ_count(&self, l: usize, r: usize) -> Result<usize> {
        self.check(l, r)?;
        Ok(occurrences(&self.text, &self.text[l - 1..r]).len())
    }

    /// Grows the occurrence `(l, r)` one symbol at a time while the
    /// occurrence count stays the same.
    fn extend(&self, counts: &impl Fn(&[u8]) -> usize, l: usize, r: usize) -> Span {
        let (mut l, mut r) = (l, r);
        let c = counts(&self.text[l - 1..r]);
        loop {
            if l > 1 && counts(&self.text[l - 2..r]) == c {
                l -= 1;
            } else if r < self.n() && counts(&self.text[l - 1..r + 1]) == c {
                r += 1;
            } else {
                return Span::new(l, r);
            }
        }
    }

    /// First occurrence of the longest string sharing the occurrence count of
    /// `T[l, r]` by extension.
    pub fn ext(&self, l: usize, r: usize) -> Result<Span> {
        self.check(l, r)?;
        let counts = |s: &[u8]| occurrences(&self.text, s).len();
        let e = self.extend(&counts, l, r);
        Ok(occurrences(&self.text, &self.text[e.l - 1..e.r])[0])
    }

    /// The smallest `x` such that no prefix `T[l, t]` with `t >= x` occurs
    /// again starting after `l` and ending by `r`.
    pub fn find_x(&self, l: usize, r: usize) -> Result<usize> {
        self.check(l, r)?;
        let mut x = l;
        for t in l..=r {
            let p = &self.text[l - 1..t];
            let again = occurrences(&self.text, p).iter().any(|o| o.l > l && o.r <= r);
            if again {
                x = t + 1;
            }
        }
        Ok(x)
    }

    /// Groups all substrings by their extension and reads off each class's
    /// first block. Sorted by representative.
    pub fn classify(&self) -> Vec<BruteClass> {
        let n = self.n();
        let mut counts: HashMap<&[u8], usize> = HashMap::new();
        for l in 1..=n {
            for r in l..=n {
                *counts.entry(&self.text[l - 1..r]).or_default() += 1;
            }
        }
        let lookup = |s: &[u8]| counts[s];
        let mut first: HashMap<&[u8], Span> = HashMap::new();
        for l in (1..=n).rev() {
            for r in l..=n {
                first.insert(&self.text[l - 1..r], Span::new(l, r));
            }
        }

        // block points of every class, keyed by the representative's first occurrence
        let mut blocks: BTreeMap<Span, Vec<Span>> = BTreeMap::new();
        for l in 1..=n {
            for r in l..=n {
                let e = self.extend(&lookup, l, r);
                let rep = first[&self.text[e.l - 1..e.r]];
                if e == rep {
                    blocks.entry(rep).or_default().push(Span::new(l, r));
                }
            }
        }
        blocks
            .into_iter()
            .map(|(rep, pts)| {
                let lo = pts.iter().map(|p| p.l).min().unwrap();
                let hi = pts.iter().map(|p| p.l).max().unwrap();
                let top = pts.iter().map(|p| p.r).max().unwrap();
                let floors = (lo..=hi)
                    .map(|x| pts.iter().filter(|p| p.l == x).map(|p| p.r).min().unwrap_or(usize::MAX))
                    .collect();
                BruteClass {
                    rep,
                    occ: counts[&self.text[rep.l - 1..rep.r]],
                    cols: (lo, hi),
                    top,
                    floors,
                    area: pts.len(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abbab(frags: &[(usize, usize)]) -> OracleInstance {
        let t = Text::new("abbab").unwrap();
        let f: Vec<Span> = frags.iter().map(|&(l, r)| Span::new(l, r)).collect();
        OracleInstance::new(&t, &f).unwrap()
    }

    #[test]
    fn query_examples() {
        let o = abbab(&[(1, 2), (2, 2)]);
        assert_eq!(o.count(1, 5).unwrap(), 5);
        assert_eq!(o.count_distinct(2, 4).unwrap(), 1);
        assert_eq!(o.count(1, 1).unwrap(), 0);
        assert_eq!(o.count(2, 4).unwrap(), 2);
        assert!(!abbab(&[]).exists(1, 5).unwrap());
        assert!(o.count(3, 2).is_err());
        // "ab" first occurs at 1, "b" at 2
        assert_eq!(o.pattern(0), b"ab");
        assert_eq!(o.pattern(1), b"b");
    }

    #[test]
    fn ids_follow_first_occurrence() {
        let o = abbab(&[(5, 5), (4, 5), (3, 3)]);
        assert_eq!(o.pattern_count(), 2);
        assert_eq!(o.collapsed(), 1);
        assert_eq!(o.pattern(0), b"ab");
    }

    #[test]
    fn self_consistency() {
        let o = abbab(&[(1, 2), (2, 2), (2, 3)]);
        for i in 1..=5 {
            for j in i..=5 {
                assert_eq!(o.count(i, j).unwrap(), o.report(i, j).unwrap().len());
                assert_eq!(o.count_distinct(i, j).unwrap(), o.report_distinct(i, j).unwrap().len());
            }
        }
    }

    #[test]
    fn ext_examples() {
        let o = abbab(&[]);
        assert_eq!(o.ext(2, 3).unwrap(), Span::new(1, 5));
        assert_eq!(o.ext(1, 5).unwrap(), Span::new(1, 5));
        assert_eq!(o.ext(5, 5).unwrap(), Span::new(2, 2));
        assert_eq!(o.ext(4, 4).unwrap(), Span::new(1, 2));
    }

    #[test]
    fn find_x_examples() {
        let o = abbab(&[]);
        assert_eq!(o.find_x(1, 5).unwrap(), 3);
        assert_eq!(o.find_x(1, 4).unwrap(), 2);
        for l in 1..=5 {
            assert_eq!(o.find_x(l, l).unwrap(), l);
        }
    }

    #[test]
    fn classify_abbab() {
        let classes = abbab(&[]).classify();
        let reps: Vec<(Span, usize)> = classes.iter().map(|c| (c.rep, c.occ)).collect();
        assert_eq!(reps, vec![(Span::new(1, 2), 2), (Span::new(1, 5), 1), (Span::new(2, 2), 3)]);
        let big = &classes[1];
        assert_eq!((big.cols, big.top, big.floors.clone()), ((1, 3), 5, vec![3, 3, 4]));
        let total: usize = classes.iter().map(|c| c.occ * c.area).sum();
        assert_eq!(total, 15);
    }
}
