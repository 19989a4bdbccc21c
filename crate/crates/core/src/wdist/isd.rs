//! Randomized low-weight codeword search.
//!
//! Each iteration draws a random coordinate set `Z` and looks only at
//! codewords vanishing on `Z`: messages `x` with `x_j = 0` and `(xA)_j = 0`
//! for `j ∈ Z`. These form a linear subspace; its basis comes from Gaussian
//! elimination and the subspace is walked in Gray order. A codeword of
//! weight `d` survives with probability `C(n-d, z) / C(n, z)`.
//!
//! Iteration `i` draws from its own ChaCha stream, so the outcome depends only
//! on the seed and the iteration count, never on thread scheduling.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{with_rows, Rows, Witness};
use crate::code::GraphCode;
use crate::lane::Lane;
use crate::par::{self, Exec};
use crate::Result;

/// Largest subspace dimension walked per iteration.
const MAX_WALK_DIM: usize = 22;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchBudget {
    pub iterations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<Duration>,
    pub exec: Exec,
    /// Size of the zero set; chosen from the target weight when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_set: Option<usize>,
}

impl SearchBudget {
    pub fn iterations(iterations: u64) -> Self {
        SearchBudget {
            iterations,
            time: None,
            exec: Exec::default(),
            zero_set: None,
        }
    }

    pub fn with_time(mut self, time: Duration) -> Self {
        self.time = Some(time);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_zero_set(mut self, z: usize) -> Self {
        self.zero_set = Some(z);
        self
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// First codeword found of weight `<= target`.
    pub witness: Option<Witness>,
    /// Lightest codeword seen over all iterations run.
    pub lightest: Option<Witness>,
    /// Iterations whose lightest codeword matched `lightest`.
    pub lightest_hits: u64,
    pub iterations: u64,
    pub codewords_seen: u64,
    pub zero_set: usize,
    pub seed: u64,
}

impl SearchOutcome {
    pub fn lowest_seen(&self) -> Option<u32> {
        self.lightest.as_ref().map(|w| w.weight)
    }
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Zero-set size maximising success probability per unit of work, assuming
/// about `n` codewords of the target weight.
pub(crate) fn choose_zero_set(n: usize, target: usize) -> usize {
    if target >= n {
        return 0;
    }
    let mut best = (f64::NEG_INFINITY, 0);
    for z in 0..=(n - target) {
        let dim = n.saturating_sub(2 * z);
        if dim > MAX_WALK_DIM + 2 {
            continue;
        }
        let dim = dim.min(MAX_WALK_DIM);
        let ln_p = ((n as f64).ln() + ln_binom(n - target, z) - ln_binom(n, z)).min(0.0);
        let cost = (2f64).powi(dim as i32) + (n * z) as f64;
        let score = ln_p - cost.ln();
        if score > best.0 {
            best = (score, z);
        }
    }
    best.1
}

/// Basis of `{x : x_j = 0, (xA)_j = 0 for j in zero}`.
fn kernel_basis<L: Lane>(rows: &[L], n: usize, zero: &[usize]) -> Vec<L> {
    let mut zmask = L::ZERO;
    for &j in zero {
        zmask = zmask | L::bit(j);
    }
    let free = L::low_mask(n) & !zmask;
    let mut eqs: Vec<L> = zero.iter().map(|&j| rows[j] & free).collect();
    let mut pivots: Vec<(usize, L)> = Vec::new();
    let mut remaining = eqs.as_mut_slice();
    while let Some(pos) = remaining.iter().position(|&e| e != L::ZERO) {
        remaining.swap(0, pos);
        let (head, tail) = remaining.split_first_mut().expect("non-empty");
        let p = head.trailing_zeros() as usize;
        for e in tail.iter_mut() {
            if e.test(p) {
                *e ^= *head;
            }
        }
        for (_, e) in pivots.iter_mut() {
            if e.test(p) {
                *e ^= *head;
            }
        }
        pivots.push((p, *head));
        remaining = tail;
    }
    let mut pivot_mask = L::ZERO;
    for &(p, _) in &pivots {
        pivot_mask = pivot_mask | L::bit(p);
    }
    let mut basis = Vec::new();
    let mut nonpivot = free & !pivot_mask;
    while nonpivot != L::ZERO && basis.len() < MAX_WALK_DIM {
        let f = nonpivot.trailing_zeros() as usize;
        nonpivot ^= L::bit(f);
        let mut x = L::bit(f);
        for &(p, e) in &pivots {
            if e.test(f) {
                x = x | L::bit(p);
            }
        }
        basis.push(x);
    }
    basis
}

struct IterResult<L> {
    best: Option<(u32, L)>,
    seen: u64,
}

fn iteration<L: Lane>(r: &Rows<L>, z: usize, seed: u64, index: u64) -> IterResult<L> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let zero: Vec<usize> = sample(&mut rng, r.n, z).into_vec();
    let basis = kernel_basis(&r.rows, r.n, &zero);
    if basis.is_empty() {
        return IterResult { best: None, seen: 0 };
    }
    let enc: Vec<L> = basis.iter().map(|&x| super::encode_lane(&r.rows, x)).collect();
    let (mut a, mut b) = (L::ZERO, L::ZERO);
    let mut best: Option<(u32, L)> = None;
    let end = 1u64 << basis.len();
    for i in 1..end {
        let j = i.trailing_zeros() as usize;
        a ^= enc[j];
        b ^= basis[j];
        let w = (a | b).popcount();
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, b));
        }
    }
    IterResult { best, seen: end - 1 }
}

pub(crate) fn run<L: Lane>(r: &Rows<L>, target: u32, budget: &SearchBudget, seed: u64) -> SearchOutcome {
    let z = budget
        .zero_set
        .unwrap_or_else(|| choose_zero_set(r.n, target as usize))
        .min(r.n);
    let start = Instant::now();
    let batch = 64 * budget.exec.workers() as u64;
    let mut out = SearchOutcome {
        witness: None,
        lightest: None,
        lightest_hits: 0,
        iterations: 0,
        codewords_seen: 0,
        zero_set: z,
        seed,
    };
    let mut lightest: Option<(u32, L)> = None;
    let mut next = 0u64;
    while next < budget.iterations {
        if budget.time.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        let end = (next + batch).min(budget.iterations);
        let idx: Vec<u64> = (next..end).collect();
        let results = par::map(budget.exec, &idx, |&i| iteration(r, z, seed, i));
        for (i, res) in idx.iter().zip(results) {
            out.iterations = i + 1;
            out.codewords_seen += res.seen;
            if let Some((w, m)) = res.best {
                match lightest {
                    Some((bw, _)) if w == bw => out.lightest_hits += 1,
                    Some((bw, _)) if w > bw => {}
                    _ => {
                        lightest = Some((w, m));
                        out.lightest_hits = 1;
                    }
                }
                if w <= target {
                    out.witness = Some(Witness::from_message(&r.rows, r.n, m));
                    break;
                }
            }
        }
        if out.witness.is_some() {
            break;
        }
        next = end;
    }
    out.lightest = lightest.map(|(_, m)| Witness::from_message(&r.rows, r.n, m));
    out
}

/// Looks for a codeword of weight `<= target`; deterministic for a fixed
/// seed and iteration budget.
pub fn low_weight_search(
    code: &GraphCode,
    target: u32,
    budget: &SearchBudget,
    seed: u64,
) -> Result<SearchOutcome> {
    with_rows(code, |r| Ok(r.isd(target, budget, seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSupport;
    use crate::wdist::{full_weight_distribution, gray_walk};

    fn code(n: usize, s: &[usize]) -> GraphCode {
        GraphCode::from_support(&CirculantSupport::new(n, s.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn kernel_is_exactly_the_zero_pattern_subspace() {
        let c = code(12, &[2, 4, 6, 8, 10, 12]);
        let rows: Vec<u64> = c.lane_rows();
        for zero in [vec![0usize, 3], vec![1, 2, 5, 7], vec![0, 1, 2, 3, 4, 5]] {
            let basis = kernel_basis(&rows, 12, &zero);
            let zmask: u64 = zero.iter().map(|&j| 1u64 << j).sum();
            let mut want = 0;
            gray_walk(&rows, 12, 0, 0, |a, b| {
                if (a | b) & zmask == 0 {
                    want += 1;
                }
                true
            });
            assert_eq!(1u64 << basis.len(), want, "{zero:?}");
            for &x in &basis {
                assert_eq!((crate::wdist::encode_lane(&rows, x) | x) & zmask, 0);
            }
        }
    }

    #[test]
    fn finds_minimum_weight_of_small_code() {
        let c = code(16, &[2, 3, 7, 9, 11, 15, 16]);
        let d = full_weight_distribution(&c, Exec::Sequential).unwrap().d_min;
        let out = low_weight_search(&c, d, &SearchBudget::iterations(10_000), 7).unwrap();
        let w = out.witness.as_ref().unwrap();
        assert_eq!(w.weight, d);
        assert!(w.verify(&c).unwrap());
        assert!(out.lowest_seen().unwrap() >= d);
    }

    #[test]
    fn deterministic_across_executors() {
        let c = code(30, &[2, 5, 9, 14, 18, 23, 27, 30]);
        let b = SearchBudget::iterations(300);
        let x = low_weight_search(&c, 3, &b.with_exec(Exec::Sequential), 42).unwrap();
        let y = low_weight_search(&c, 3, &b.with_exec(Exec::Parallel), 42).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn full_target_always_succeeds() {
        let c = code(13, &[2, 13]);
        let out = low_weight_search(&c, 13, &SearchBudget::iterations(1), 0).unwrap();
        assert!(out.witness.is_some());
    }

    #[test]
    fn zero_set_choice_is_sane() {
        assert_eq!(choose_zero_set(20, 20), 0);
        let z = choose_zero_set(95, 20);
        assert!((30..=47).contains(&z), "{z}");
    }
}
