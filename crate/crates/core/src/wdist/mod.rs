//! Minimum weight and weight distribution engines.
//!
//! * [`full_weight_distribution`]: Gray-code walk over all `2^n` messages.
//! * [`partial_distribution_census`] and [`min_weight_exact`]: every message of bit-weight `<= w` in revolving-door order.
//!   Because the `ω`-plane of a codeword is its message, a codeword of weight
//!   `i` comes from a message of weight `<= i`; the census therefore counts
//!   `A_i` exactly for all `i <= w`.
//! * [`low_weight_search`]: randomized search for light codewords on large
//!   lengths, giving upper bounds only.

mod census;
mod isd;
mod kernel;

pub use census::{census_steps, partial_distribution_census, min_weight_exact, CensusOptions};
pub use isd::{low_weight_search, SearchBudget, SearchOutcome};
pub use kernel::{census_shard, encode_lane, gray_histogram, gray_walk, RevolvingDoor, HIST_LEN};

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::code::GraphCode;
use crate::lane::Lane;
use crate::par::{self, Exec};
use crate::{dispatch_lane, Error, Result};

/// Longest code accepted by [`full_weight_distribution`] unless overridden.
pub const FULL_GRAY_MAX_LEN: usize = 40;

/// Default ceiling on enumeration steps for a single job.
pub const DEFAULT_MAX_STEPS: u128 = 1_000_000_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certification {
    /// `d_min` is the true minimum weight.
    Exact,
    /// No codeword lighter than `limit` exists; `d_min` is a witnessed upper bound.
    LowerBoundCertified { limit: u32 },
    /// `d_min` is a witnessed upper bound only.
    UpperBoundOnly,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::Exact => write!(f, "exact"),
            Certification::LowerBoundCertified { limit } => {
                write!(f, "lower_bound_certified({limit})")
            }
            Certification::UpperBoundOnly => write!(f, "upper_bound_only"),
        }
    }
}

/// A codeword together with the message that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Witness {
    /// Message bits, position `i` first.
    pub message: String,
    pub codeword: String,
    pub weight: u32,
}

impl Witness {
    pub(crate) fn from_message<L: Lane>(rows: &[L], n: usize, msg: L) -> Self {
        let a = encode_lane(rows, msg);
        let message = (0..n).map(|i| if msg.test(i) { '1' } else { '0' }).collect();
        let codeword = (0..n)
            .map(|i| match (a.test(i), msg.test(i)) {
                (false, false) => '0',
                (true, false) => '1',
                (false, true) => 'w',
                (true, true) => 'W',
            })
            .collect();
        Witness {
            message,
            codeword,
            weight: (a | msg).popcount(),
        }
    }

    /// Re-encodes the message and checks codeword and weight.
    pub fn verify(&self, code: &GraphCode) -> Result<bool> {
        let c = code.encode_bits(&self.message)?;
        Ok(c.to_string() == self.codeword && c.weight() == self.weight as usize)
    }
}

/// Exact counts `A_0..=A_covered_to`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Distribution {
    pub covered_to: u32,
    pub counts: Vec<u64>,
}

impl Distribution {
    pub fn get(&self, i: u32) -> Option<u64> {
        (i <= self.covered_to).then(|| self.counts.get(i as usize).copied().unwrap_or(0))
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct WeightReport {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
    /// Exact minimum weight, or the lightest witnessed weight (see `certification`).
    pub d_min: u32,
    pub certification: Certification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Distribution>,
    /// Codewords examined.
    pub census_count: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub strategy: String,
    pub shards: usize,
    pub wall_time_ms: u64,
}

impl WeightReport {
    pub fn is_exact(&self) -> bool {
        self.certification == Certification::Exact
    }

    /// `A_i` if it lies in the covered range.
    pub fn count(&self, i: u32) -> Option<u64> {
        self.distribution.as_ref().and_then(|d| d.get(i))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    FullGray,
    MessageWeightCensus { w_max: u32 },
    Heuristic { seed: u64, iterations: u64 },
}

/// How a minimum-weight job is run.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EnumerationPlan {
    pub strategy: Strategy,
    pub exec: Exec,
    /// Abandon the code as soon as a codeword lighter than this is seen.
    pub early_abort_below: Option<u32>,
    /// Use rotation-orbit counting when the code is circulant.
    pub orbit_reduction: bool,
    pub max_steps: u128,
    pub max_full_len: usize,
}

impl EnumerationPlan {
    pub fn new(strategy: Strategy) -> Self {
        EnumerationPlan {
            strategy,
            exec: Exec::default(),
            early_abort_below: None,
            orbit_reduction: true,
            max_steps: DEFAULT_MAX_STEPS,
            max_full_len: FULL_GRAY_MAX_LEN,
        }
    }

    pub fn full() -> Self {
        Self::new(Strategy::FullGray)
    }

    pub fn census(w_max: u32) -> Self {
        Self::new(Strategy::MessageWeightCensus { w_max })
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_early_abort(mut self, below: u32) -> Self {
        self.early_abort_below = Some(below);
        self
    }

    pub fn with_max_steps(mut self, max_steps: u128) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn with_orbit_reduction(mut self, on: bool) -> Self {
        self.orbit_reduction = on;
        self
    }
}

/// Number of codewords visited by a full walk.
pub fn full_walk_steps(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        1u128 << n
    }
}

/// Exact weight distribution by a Gray-code walk over all `2^n` messages,
/// sharded on the top message bits.
pub fn full_weight_distribution(code: &GraphCode, exec: Exec) -> Result<WeightReport> {
    full_weight_distribution_capped(code, exec, FULL_GRAY_MAX_LEN)
}

pub fn full_weight_distribution_capped(
    code: &GraphCode,
    exec: Exec,
    max_len: usize,
) -> Result<WeightReport> {
    let n = code.n();
    if n > max_len.min(63) {
        return Err(Error::TooLong {
            n,
            max: max_len.min(63),
        });
    }
    let start = Instant::now();
    let rows: Vec<u64> = code.lane_rows();
    let top = 10.min(n.saturating_sub(14));
    let low = n - top;
    let shards: Vec<u64> = (0..(1u64 << top)).collect();
    let hists = par::map(exec, &shards, |&t| {
        let b0 = t << low;
        gray_histogram(&rows, low, encode_lane(&rows, b0), b0)
    });
    let mut counts = vec![0u64; n + 1];
    for h in &hists {
        for (c, x) in counts.iter_mut().zip(h) {
            *c += x;
        }
    }
    let d_min = (1..=n).find(|&i| counts[i] > 0).unwrap_or(0) as u32;
    let witness = find_message_of_weight(&rows, n, d_min);
    Ok(WeightReport {
        n,
        support: code.support().map(|s| s.positions().to_vec()),
        d_min,
        certification: Certification::Exact,
        distribution: Some(Distribution {
            covered_to: n as u32,
            counts,
        }),
        census_count: 1u64 << n,
        witness,
        strategy: "full_gray".into(),
        shards: shards.len(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// First message (in Gray order) whose codeword has weight `w`.
fn find_message_of_weight(rows: &[u64], n: usize, w: u32) -> Option<Witness> {
    if n == 0 {
        return None;
    }
    let mut found = None;
    gray_walk(rows, n, 0, 0, |a, b| {
        if b != 0 && (a | b).count_ones() == w {
            found = Some(b);
            return false;
        }
        true
    });
    found.map(|m| Witness::from_message(rows, n, m))
}

/// Minimum weight under `plan`: a full walk, or a census that stops as soon as
/// the minimum is certified.
pub fn min_weight(code: &GraphCode, plan: &EnumerationPlan) -> Result<WeightReport> {
    match plan.strategy {
        Strategy::FullGray => {
            if full_walk_steps(code.n()) > plan.max_steps {
                return Err(Error::WorkCapExceeded {
                    estimate: full_walk_steps(code.n()),
                    cap: plan.max_steps,
                });
            }
            let mut r = full_weight_distribution_capped(code, plan.exec, plan.max_full_len)?;
            if let Some(t) = plan.early_abort_below {
                if r.d_min < t {
                    r.distribution = None;
                }
            }
            Ok(r)
        }
        Strategy::MessageWeightCensus { .. } => min_weight_exact(code, plan),
        Strategy::Heuristic { seed, iterations } => {
            let start = Instant::now();
            let out = low_weight_search(
                code,
                code.n() as u32,
                &SearchBudget::iterations(iterations).with_exec(plan.exec),
                seed,
            )?;
            let lightest = out.lightest.ok_or_else(|| {
                Error::InfeasiblePlan("heuristic search saw no codeword".into())
            })?;
            Ok(WeightReport {
                n: code.n(),
                support: code.support().map(|s| s.positions().to_vec()),
                d_min: lightest.weight,
                certification: Certification::UpperBoundOnly,
                distribution: None,
                census_count: out.codewords_seen,
                witness: Some(lightest),
                strategy: format!("heuristic(seed={seed})"),
                shards: 1,
                wall_time_ms: start.elapsed().as_millis() as u64,
            })
        }
    }
}

pub(crate) fn with_rows<T>(
    code: &GraphCode,
    f: impl FnOnce(&dyn RowsDispatch) -> Result<T>,
) -> Result<T> {
    dispatch_lane!(code.n(), L => {
        let rows: Vec<L> = code.lane_rows();
        f(&Rows { n: code.n(), rows })
    })
}

/// Lane-erased access used to keep the public engine functions non-generic.
pub(crate) trait RowsDispatch {
    fn census(&self, w_max: u32, opts: &CensusOptions, reduce: bool) -> census::CensusOutcome;
    fn isd(&self, target: u32, budget: &SearchBudget, seed: u64) -> SearchOutcome;
}

pub(crate) struct Rows<L> {
    pub n: usize,
    pub rows: Vec<L>,
}

impl<L: Lane> RowsDispatch for Rows<L> {
    fn census(&self, w_max: u32, opts: &CensusOptions, reduce: bool) -> census::CensusOutcome {
        census::run(self, w_max, opts, reduce)
    }

    fn isd(&self, target: u32, budget: &SearchBudget, seed: u64) -> SearchOutcome {
        isd::run(self, target, budget, seed)
    }
}
