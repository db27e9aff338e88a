//! Online suffix automaton. Only its suffix-link tree survives into the
//! index: the link tree of the automaton of `S` is the suffix tree of
//! `rev(S)`, with every state holding one end-position class of `S`.

pub(crate) const NONE: u32 = u32::MAX;

pub(crate) struct Automaton {
    pub len: Vec<u32>,
    pub link: Vec<u32>,
    /// Smallest end position (1-based, in the input order) of the state's strings.
    pub first_end: Vec<u32>,
    /// `true` for states created by splitting; these own no end position of their own.
    pub is_clone: Vec<bool>,
    /// `prefix_state[k - 1]` is the state reached after reading `k` symbols.
    pub prefix_state: Vec<u32>,
}

impl Automaton {
    /// Renumbers the states in depth-first preorder of the link tree, largest
    /// subtree first. Every subtree then occupies a contiguous id range and
    /// every heavy path a run of consecutive ids. The initial state stays 0.
    pub fn renumber_heavy_first(&mut self) {
        let states = self.len.len();
        let mut child_off = vec![0u32; states + 1];
        for s in 1..states {
            child_off[self.link[s] as usize + 1] += 1;
        }
        for s in 0..states {
            child_off[s + 1] += child_off[s];
        }
        let mut fill = child_off.clone();
        let mut children = vec![0u32; states.saturating_sub(1)];
        for s in 1..states {
            let p = self.link[s] as usize;
            children[fill[p] as usize] = s as u32;
            fill[p] += 1;
        }
        let kids = |s: u32| &children[child_off[s as usize] as usize..child_off[s as usize + 1] as usize];
        let mut order = Vec::with_capacity(states);
        let mut stack = vec![0u32];
        while let Some(s) = stack.pop() {
            order.push(s);
            stack.extend_from_slice(kids(s));
        }
        let mut size = vec![1u32; states];
        for &s in order.iter().skip(1).rev() {
            size[self.link[s as usize] as usize] += size[s as usize];
        }
        // the largest child comes right after its parent, so heavy paths get consecutive ids
        let mut new_id = vec![0u32; states];
        order.clear();
        stack.push(0);
        while let Some(s) = stack.pop() {
            new_id[s as usize] = order.len() as u32;
            order.push(s);
            let c = kids(s);
            if let Some(h) = (0..c.len()).max_by_key(|&k| (size[c[k] as usize], std::cmp::Reverse(k))) {
                stack.extend(c[h + 1..].iter().rev());
                stack.extend(c[..h].iter().rev());
                stack.push(c[h]);
            }
        }
        let permute = |v: &[u32]| order.iter().map(|&s| v[s as usize]).collect::<Vec<u32>>();
        self.len = permute(&self.len);
        self.first_end = permute(&self.first_end);
        self.link = order
            .iter()
            .map(|&s| match self.link[s as usize] {
                NONE => NONE,
                p => new_id[p as usize],
            })
            .collect();
        self.is_clone = order.iter().map(|&s| self.is_clone[s as usize]).collect();
        for s in &mut self.prefix_state {
            *s = new_id[*s as usize];
        }
    }
}

pub(crate) fn build(input: impl ExactSizeIterator<Item = u8>) -> Automaton {
    let cap = 2 * input.len() + 1;
    let mut len = Vec::with_capacity(cap);
    let mut link = Vec::with_capacity(cap);
    let mut first_end = Vec::with_capacity(cap);
    let mut is_clone = Vec::with_capacity(cap);
    // sorted small maps; transitions only matter during construction
    let mut next: Vec<Vec<(u8, u32)>> = Vec::with_capacity(cap);
    let mut prefix_state = Vec::with_capacity(input.len());

    len.push(0);
    link.push(NONE);
    first_end.push(0);
    is_clone.push(false);
    next.push(Vec::new());

    fn get(next: &[Vec<(u8, u32)>], s: u32, c: u8) -> u32 {
        let m = &next[s as usize];
        match m.binary_search_by_key(&c, |&(k, _)| k) {
            Ok(i) => m[i].1,
            Err(_) => NONE,
        }
    }
    fn set(next: &mut [Vec<(u8, u32)>], s: u32, c: u8, t: u32) {
        let m = &mut next[s as usize];
        match m.binary_search_by_key(&c, |&(k, _)| k) {
            Ok(i) => m[i].1 = t,
            Err(i) => m.insert(i, (c, t)),
        }
    }

    let mut last = 0u32;
    for (k, c) in input.enumerate() {
        let cur = len.len() as u32;
        len.push(len[last as usize] + 1);
        link.push(NONE);
        first_end.push(k as u32 + 1);
        is_clone.push(false);
        next.push(Vec::new());

        let mut p = last;
        while p != NONE && get(&next, p, c) == NONE {
            set(&mut next, p, c, cur);
            p = link[p as usize];
        }
        if p == NONE {
            link[cur as usize] = 0;
        } else {
            let q = get(&next, p, c);
            if len[p as usize] + 1 == len[q as usize] {
                link[cur as usize] = q;
            } else {
                let clone = len.len() as u32;
                len.push(len[p as usize] + 1);
                link.push(link[q as usize]);
                first_end.push(first_end[q as usize]);
                is_clone.push(true);
                let copied = next[q as usize].clone();
                next.push(copied);
                while p != NONE && get(&next, p, c) == q {
                    set(&mut next, p, c, clone);
                    p = link[p as usize];
                }
                link[q as usize] = clone;
                link[cur as usize] = clone;
            }
        }
        last = cur;
        prefix_state.push(cur);
    }

    Automaton { len, link, first_end, is_clone, prefix_state }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversed_abbab_has_six_states() {
        // end-position classes of rev("abbab") are the start-position classes of "abbab"
        let a = build(b"abbab".iter().rev().copied());
        assert_eq!(a.len.len(), 6);
        assert_eq!(a.prefix_state.len(), 5);
    }

    #[test]
    fn heavy_first_keeps_the_tree() {
        let mut a = build(b"abbabaabbbab".iter().copied());
        let before: Vec<(u32, u32)> = a.prefix_state.iter().map(|&s| (a.len[s as usize], a.first_end[s as usize])).collect();
        a.renumber_heavy_first();
        let states = a.len.len();
        assert_eq!(a.link[0], NONE);
        let mut size = vec![1u32; states];
        for s in (1..states).rev() {
            assert!(a.link[s] < s as u32);
            assert!(a.len[a.link[s] as usize] < a.len[s]);
            size[a.link[s] as usize] += size[s];
        }
        for s in 1..states {
            let p = a.link[s] as usize;
            assert!(size[s] <= size[p + 1] && a.link[p + 1] as usize == p);
        }
        let after: Vec<(u32, u32)> = a.prefix_state.iter().map(|&s| (a.len[s as usize], a.first_end[s as usize])).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn clones_carry_first_end() {
        let a = build(b"abcbc".iter().copied());
        for s in 1..a.len.len() {
            assert!(a.first_end[s] >= a.len[s]);
        }
    }
}
