//! Enumeration kernels: one generator XOR and one popcount per visited codeword.

use crate::lane::Lane;

/// Histogram length: weights `0..=128`.
pub const HIST_LEN: usize = crate::lane::MAX_KERNEL_LEN + 1;

/// `1`-plane of the codeword with message `msg`.
#[inline]
pub fn encode_lane<L: Lane>(rows: &[L], msg: L) -> L {
    let mut a = L::ZERO;
    let mut m = msg;
    while m != L::ZERO {
        let j = m.trailing_zeros() as usize;
        a ^= rows[j];
        m ^= L::bit(j);
    }
    a
}

/// Walks the `2^bits` messages `b0 ⊕ y`, `y` over the low `bits` positions in
/// reflected Gray order, starting at `y = 0` with `1`-plane `a0`. `visit`
/// receives `(1-plane, ω-plane)`; returning `false` stops the walk. Returns
/// `true` if the walk completed.
#[inline]
pub fn gray_walk<L: Lane>(
    rows: &[L],
    bits: usize,
    a0: L,
    b0: L,
    mut visit: impl FnMut(L, L) -> bool,
) -> bool {
    let (mut a, mut b) = (a0, b0);
    if !visit(a, b) {
        return false;
    }
    let rows = &rows[..bits];
    let end: u64 = 1u64 << bits;
    for i in 1..end {
        let j = i.trailing_zeros() as usize;
        a ^= rows[j];
        b ^= L::bit(j);
        if !visit(a, b) {
            return false;
        }
    }
    true
}

/// Weight histogram over a Gray walk. Four interleaved tallies keep
/// consecutive increments off the same counter.
pub fn gray_histogram<L: Lane>(rows: &[L], bits: usize, a0: L, b0: L) -> [u64; HIST_LEN] {
    let mut h = [[0u64; HIST_LEN]; 4];
    h[0][(a0 | b0).popcount() as usize] += 1;
    let rows = &rows[..bits];
    let (mut a, mut b) = (a0, b0);
    let end: u64 = 1u64 << bits;
    let mut i = 1u64;
    while i + 3 < end {
        for lane in h.iter_mut() {
            let j = i.trailing_zeros() as usize;
            a ^= rows[j];
            b ^= L::bit(j);
            lane[(a | b).popcount() as usize] += 1;
            i += 1;
        }
    }
    while i < end {
        let j = i.trailing_zeros() as usize;
        a ^= rows[j];
        b ^= L::bit(j);
        h[0][(a | b).popcount() as usize] += 1;
        i += 1;
    }
    let mut out = [0u64; HIST_LEN];
    for lane in &h {
        for (o, x) in out.iter_mut().zip(lane) {
            *o += x;
        }
    }
    out
}

/// Revolving-door enumeration of the `t`-subsets of `{0, …, n-1}`
/// (Knuth, TAOCP 7.2.1.3, Algorithm R). Consecutive subsets differ by
/// removing one element and adding another.
#[derive(Clone, Debug)]
pub struct RevolvingDoor {
    n: usize,
    t: usize,
    /// `c[1..=t]` ascending, `c[t + 1] = n`; `c[0]` unused.
    c: Vec<usize>,
    done: bool,
}

impl RevolvingDoor {
    pub fn new(n: usize, t: usize) -> Self {
        assert!(t <= n, "cannot choose {t} of {n}");
        let mut c: Vec<usize> = (0..=t).map(|j| j.saturating_sub(1)).collect();
        c.push(n);
        RevolvingDoor {
            n,
            t,
            c,
            done: false,
        }
    }

    /// Current subset, ascending.
    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.t]
    }

    /// Advances to the next subset and returns `(removed, added)`, or `None`
    /// after the last subset.
    #[inline]
    pub fn next_swap(&mut self) -> Option<(usize, usize)> {
        if self.done {
            return None;
        }
        let t = self.t;
        if t == 0 || t == self.n {
            self.done = true;
            return None;
        }
        let c = &mut self.c;
        if t == 1 {
            if c[1] + 1 < self.n {
                c[1] += 1;
                return Some((c[1] - 1, c[1]));
            }
            self.done = true;
            return None;
        }
        let mut j;
        let mut try_decrease;
        if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                c[1] += 1;
                return Some((c[1] - 1, c[1]));
            }
            j = 2;
            try_decrease = true;
        } else {
            if c[1] > 0 {
                c[1] -= 1;
                return Some((c[1] + 1, c[1]));
            }
            j = 2;
            try_decrease = false;
        }
        loop {
            if try_decrease {
                // c[j] == c[j-1] + 1
                if c[j] >= j {
                    let out = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return Some((out, j - 2));
                }
                j += 1;
            } else {
                // c[j-1] == j - 2
                if c[j] + 1 < c[j + 1] {
                    let out = c[j - 1];
                    c[j - 1] = c[j];
                    c[j] += 1;
                    return Some((out, c[j]));
                }
                j += 1;
                if j > t {
                    self.done = true;
                    return None;
                }
            }
            try_decrease = !try_decrease;
        }
    }
}

/// Outcome of one census shard.
#[derive(Clone, Debug)]
pub struct ShardTally<L> {
    pub hist: [u64; HIST_LEN],
    pub steps: u64,
    /// Lightest codeword seen (first occurrence in enumeration order).
    pub best: Option<(u32, L)>,
    /// Set when a codeword below the abort threshold stopped the shard.
    pub aborted: bool,
}

/// Visits every message `fixed ∪ {offset + e : e ∈ T}` with `T` a `t`-subset of
/// `{0, …, m-1}`. All but the two lowest elements of `T` follow a revolving
/// door; for each door state the two lowest elements sweep every pair below
/// it, costing one XOR and one popcount per message. Stops at the first
/// codeword of weight `< abort_below`.
pub fn census_shard<L: Lane>(
    rows: &[L],
    fixed: L,
    offset: usize,
    m: usize,
    t: usize,
    abort_below: u32,
) -> ShardTally<L> {
    let free = &rows[offset..offset + m];
    let mut tally = ShardTally {
        hist: [0; HIST_LEN],
        steps: 0,
        best: None,
        aborted: false,
    };
    let mut best = u32::MAX;
    // Tallies one codeword; true when the shard must stop.
    let mut visit = |tally: &mut ShardTally<L>, a: L, b: L| -> bool {
        let w = (a | b).popcount();
        tally.hist[w as usize] += 1;
        if w < best {
            best = w;
            tally.best = Some((w, b));
            if w < abort_below {
                tally.aborted = true;
                return true;
            }
        }
        false
    };
    let a0 = encode_lane(rows, fixed);
    match t {
        0 => {
            visit(&mut tally, a0, fixed);
            tally.steps = 1;
            return tally;
        }
        1 => {
            for (j, &row) in free.iter().enumerate() {
                tally.steps += 1;
                if visit(&mut tally, a0 ^ row, fixed | L::bit(offset + j)) {
                    return tally;
                }
            }
            return tally;
        }
        _ => {}
    }
    let upper = &free[2..];
    let mut door = RevolvingDoor::new(m - 2, t - 2);
    let (mut ua, mut ub) = (a0, fixed);
    for &e in door.current() {
        ua ^= upper[e];
        ub ^= L::bit(offset + 2 + e);
    }
    loop {
        let lim = door.current().first().map_or(m, |&e| e + 2);
        for j2 in 1..lim {
            let a2 = ua ^ free[j2];
            let b2 = ub | L::bit(offset + j2);
            for (j1, &row) in free[..j2].iter().enumerate() {
                let b = b2 | L::bit(offset + j1);
                if visit(&mut tally, a2 ^ row, b) {
                    tally.steps += 1;
                    return tally;
                }
            }
            tally.steps += j2 as u64;
        }
        match door.next_swap() {
            Some((out, inn)) => {
                ua ^= upper[out] ^ upper[inn];
                ub ^= L::bit(offset + 2 + out) ^ L::bit(offset + 2 + inn);
            }
            None => return tally,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn revolving_door_visits_every_subset_once_with_single_swaps() {
        for n in 0..=12 {
            for t in 0..=n {
                let mut door = RevolvingDoor::new(n, t);
                let mut cur: BTreeSet<usize> = door.current().iter().copied().collect();
                let mut seen = BTreeSet::new();
                seen.insert(cur.clone());
                while let Some((out, inn)) = door.next_swap() {
                    assert!(cur.remove(&out), "n={n} t={t}: {out} not present");
                    assert!(cur.insert(inn), "n={n} t={t}: {inn} already present");
                    assert_eq!(cur.iter().copied().collect::<Vec<_>>(), door.current());
                    assert!(seen.insert(cur.clone()), "n={n} t={t}: repeated {cur:?}");
                }
                assert_eq!(seen.len(), binom(n, t), "n={n} t={t}");
                assert!(door.next_swap().is_none());
            }
        }
    }

    #[test]
    fn gray_walk_flip_sequence() {
        let rows: Vec<u64> = (0..4).map(|j| 1 << j).collect();
        let mut seen = Vec::new();
        gray_walk(&rows, 4, 0, 0, |_, b| {
            seen.push(b);
            true
        });
        assert_eq!(seen.len(), 16);
        assert_eq!(seen.iter().collect::<BTreeSet<_>>().len(), 16);
        for w in seen.windows(2) {
            assert_eq!((w[0] ^ w[1]).count_ones(), 1);
        }
    }

    #[test]
    fn gray_accumulator_matches_direct_encoding() {
        // pentagon plus a chord-free 9-cycle of offsets {1,3}
        let rows: Vec<u64> = (0..9)
            .map(|j| [1usize, 3, 6, 8].iter().fold(0, |r, off| r | 1 << ((j + off) % 9)))
            .collect();
        let mut count = 0;
        gray_walk(&rows, 9, 0, 0, |a, b| {
            assert_eq!(a, encode_lane(&rows, b));
            count += 1;
            true
        });
        assert_eq!(count, 512);
        let h = gray_histogram(&rows, 9, 0, 0);
        assert_eq!(h.iter().sum::<u64>(), 512);
    }

    #[test]
    fn census_shard_covers_each_subset_once() {
        let rows: Vec<u64> = (0..12)
            .map(|j| [1usize, 4, 8, 11].iter().fold(0, |r, off| r | 1 << ((j + off) % 12)))
            .collect();
        for m in 0..=9 {
            for t in 0..=m {
                let fixed = 0b11u64;
                let tally = census_shard(&rows, fixed, 3, m, t, 0);
                let mut want = [0u64; HIST_LEN];
                for sub in 0u64..(1 << m) {
                    if sub.count_ones() as usize == t {
                        let msg = fixed | (sub << 3);
                        want[(encode_lane(&rows, msg) | msg).count_ones() as usize] += 1;
                    }
                }
                assert_eq!(tally.hist, want, "m={m} t={t}");
                assert_eq!(tally.steps, want.iter().sum::<u64>());
                let (w, msg) = tally.best.unwrap();
                assert_eq!((encode_lane(&rows, msg) | msg).count_ones(), w);
            }
        }
    }
}
