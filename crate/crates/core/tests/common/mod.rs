//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use gf4circ::code::{type_of_by_enumeration, type_of_by_support};
use gf4circ::{BitGraph, CirculantSupport, Gf4Vector, GraphCode, TypeClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// GF(4) elements as indices: 0, 1, ω, ω².
const ZERO: u8 = 0;
const ONE: u8 = 1;
const OMEGA: u8 = 2;

/// Addition table over {0, 1, ω, ω²} with ω² = ω + 1.
const ADD: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// Every symmetric support of order `n`.
pub fn all_supports(n: usize) -> Vec<CirculantSupport> {
    let free = CirculantSupport::num_free(n);
    (0..1u64 << free)
        .map(|m| CirculantSupport::from_free_mask(n, m).unwrap())
        .collect()
}

/// Weight distribution from a dense generator matrix `Γ + ωI`, one element
/// per entry, summing generators afresh for every message.
pub fn naive_distribution(support: &CirculantSupport) -> Vec<u64> {
    let n = support.n();
    let offsets: Vec<usize> = support.positions().iter().map(|&i| i - 1).collect();
    let gen: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        OMEGA
                    } else if offsets.contains(&((j + n - i) % n)) {
                        ONE
                    } else {
                        ZERO
                    }
                })
                .collect()
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    for msg in 0u64..1 << n {
        let mut word = vec![ZERO; n];
        for (i, g) in gen.iter().enumerate() {
            if msg >> i & 1 == 1 {
                for (w, &e) in word.iter_mut().zip(g) {
                    *w = ADD[*w as usize][e as usize];
                }
            }
        }
        hist[word.iter().filter(|&&e| e != ZERO).count()] += 1;
    }
    hist
}

/// Outcome of a randomized suite: cases run and the failures found.
#[derive(Debug, Default)]
pub struct Suite {
    pub cases: u64,
    pub failures: Vec<String>,
}

impl Suite {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 10 {
            self.failures.push(what());
        }
    }
}

fn random_support(rng: &mut ChaCha8Rng, n: usize) -> CirculantSupport {
    let free = CirculantSupport::num_free(n);
    let mask = if free == 0 { 0 } else { rng.random::<u64>() & ((1u64 << free) - 1) };
    CirculantSupport::from_free_mask(n, mask).unwrap()
}

/// Support criterion against exhaustive evenness for `per_n` random supports
/// at every even order up to `max_n`, plus the parity identity.
pub fn type_criterion_suite(seed: u64, max_n: usize, per_n: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::default();
    for n in (2..=max_n).step_by(2) {
        for _ in 0..per_n {
            let s = random_support(&mut rng, n);
            let by_support = type_of_by_support(&s);
            let by_walk = type_of_by_enumeration(&GraphCode::from_support(&s).unwrap()).unwrap();
            suite.check(by_support == by_walk, || format!("{n}: {:?} support {by_support}, walk {by_walk}", s.positions()));
            let parity = (s.len() % 2 == 1) == s.contains(n / 2 + 1);
            suite.check(parity, || format!("{n}: {:?} breaks |S| odd iff n/2+1 in S", s.positions()));
        }
    }
    suite
}

/// The `ω`-component of a codeword `(xA, x)` is the message `x`.
fn message_of(c: &Gf4Vector) -> Vec<bool> {
    c.elements().map(|e| e.b()).collect()
}

fn is_codeword(code: &GraphCode, c: &Gf4Vector) -> bool {
    code.encode(&message_of(c)).unwrap() == *c
}

/// Rotations of codewords stay in the code: every codeword for one random
/// code per order up to `exhaustive_n`, random codewords above it.
pub fn shift_invariance_suite(seed: u64, exhaustive_n: usize, max_n: usize, samples: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::default();
    for n in 2..=max_n {
        let s = random_support(&mut rng, n);
        let code = GraphCode::from_support(&s).unwrap();
        let messages: Vec<u64> = if n <= exhaustive_n {
            (0..1u64 << n).collect()
        } else {
            (0..samples).map(|_| rng.random::<u64>() & ((1u64 << n) - 1)).collect()
        };
        for m in messages {
            let x: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            let c = code.encode(&x).unwrap();
            let shift = rng.random_range(1..n.max(2));
            let r = c.rotate(shift);
            suite.check(is_codeword(&code, &r) && r.weight() == c.weight(), || {
                format!("{n}: {:?} rotation by {shift} of {c} leaves the code", s.positions())
            });
        }
    }
    suite
}

/// Random simple graphs: codewords are pairwise trace-orthogonal, and a
/// non-symmetric matrix is rejected.
pub fn self_duality_suite(seed: u64, graphs: usize, pairs: usize) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::default();
    for _ in 0..graphs {
        let n = rng.random_range(1..=40);
        let p: f64 = rng.random_range(0.05..0.95);
        let mut m = vec![vec![false; n]; n];
        for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
            let e = rng.random_bool(p);
            m[i][j] = e;
            m[j][i] = e;
        }
        let code = GraphCode::build(BitGraph::from_matrix(&m).unwrap()).unwrap();
        for _ in 0..pairs {
            let x: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let y: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
            let (cx, cy) = (code.encode(&x).unwrap(), code.encode(&y).unwrap());
            suite.check(!cx.trace_inner_product(&cy).unwrap(), || format!("n={n}: {cx} and {cy} not orthogonal"));
        }
        let type_ok = code.type_class()
            == if (0..n).all(|i| code.graph().degree(i) % 2 == 1) { TypeClass::TypeII } else { TypeClass::TypeI };
        suite.check(type_ok, || format!("n={n}: degree criterion disagrees"));
        if n >= 2 {
            let (i, j) = (0, rng.random_range(1..n));
            m[i][j] = !m[i][j];
            let rejected = BitGraph::from_matrix(&m).is_err();
            suite.check(rejected, || format!("n={n}: asymmetric matrix accepted"));
        }
    }
    suite
}
