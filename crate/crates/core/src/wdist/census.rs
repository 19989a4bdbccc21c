//! Message-weight census.
//!
//! Level `k` visits every message of bit-weight `k`. A level is split into
//! shards by its smallest free element so each shard is one revolving-door
//! walk. With rotation reduction only messages containing position 0 are
//! visited; for a circulant code the weight-`k` tallies are then exactly `k/n`
//! of the full ones.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::kernel::{census_shard, ShardTally};
use super::{with_rows, Certification, Distribution, EnumerationPlan, Rows, Strategy, WeightReport, Witness};
use crate::code::GraphCode;
use crate::lane::Lane;
use crate::par::{self, Exec};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CensusOptions {
    pub exec: Exec,
    /// Stop at the first codeword lighter than this.
    pub abort_below: Option<u32>,
    pub orbit_reduction: bool,
    pub max_steps: u128,
    /// Stop once the minimum weight is certified.
    #[serde(skip)]
    pub(crate) stop_when_exact: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            exec: Exec::default(),
            abort_below: None,
            orbit_reduction: true,
            max_steps: super::DEFAULT_MAX_STEPS,
            stop_when_exact: false,
        }
    }
}

impl From<&EnumerationPlan> for CensusOptions {
    fn from(p: &EnumerationPlan) -> Self {
        CensusOptions {
            exec: p.exec,
            abort_below: p.early_abort_below,
            orbit_reduction: p.orbit_reduction,
            max_steps: p.max_steps,
            stop_when_exact: false,
        }
    }
}

pub(crate) fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn level_steps(n: usize, k: usize, reduce: bool) -> u128 {
    match (reduce, k) {
        (_, 0) => 1,
        (true, _) => binom(n - 1, k - 1),
        (false, _) => binom(n, k),
    }
}

/// Messages visited by a census of levels `0..=w_max`.
pub fn census_steps(n: usize, w_max: u32, reduce: bool) -> u128 {
    (0..=(w_max as usize).min(n)).map(|k| level_steps(n, k, reduce)).sum()
}

pub(crate) struct CensusOutcome {
    /// Exact `A_i` for `i <= levels_done`.
    pub counts: Vec<u64>,
    pub levels_done: Option<u32>,
    pub steps: u64,
    pub shards: usize,
    pub best: Option<Witness>,
    pub aborted: bool,
    /// The next level would have exceeded `max_steps`.
    pub capped: bool,
}

struct Shard<L> {
    fixed: L,
    offset: usize,
    m: usize,
    t: usize,
}

fn shards<L: Lane>(n: usize, k: usize, reduce: bool) -> Vec<Shard<L>> {
    let mut out = Vec::new();
    match (reduce, k) {
        (_, 0) => out.push(Shard { fixed: L::ZERO, offset: 0, m: 0, t: 0 }),
        (true, 1) => out.push(Shard { fixed: L::bit(0), offset: 1, m: 0, t: 0 }),
        (true, _) => {
            for p in 1..n {
                let m = n - 1 - p;
                if m >= k - 2 {
                    out.push(Shard { fixed: L::bit(0) | L::bit(p), offset: p + 1, m, t: k - 2 });
                }
            }
        }
        (false, _) => {
            for p in 0..n {
                let m = n - 1 - p;
                if m >= k - 1 {
                    out.push(Shard { fixed: L::bit(p), offset: p + 1, m, t: k - 1 });
                }
            }
        }
    }
    out
}

pub(crate) fn run<L: Lane>(r: &Rows<L>, w_max: u32, opts: &CensusOptions, reduce: bool) -> CensusOutcome {
    let n = r.n;
    let w_max = (w_max as usize).min(n);
    let abort_below = opts.abort_below.unwrap_or(0);
    let mut out = CensusOutcome {
        counts: vec![0; n + 1],
        levels_done: None,
        steps: 0,
        shards: 0,
        best: None,
        aborted: false,
        capped: false,
    };
    let mut best: Option<(u32, L)> = None;
    let mut budget_used: u128 = 0;
    for k in 0..=w_max {
        let cost = level_steps(n, k, reduce);
        if budget_used + cost > opts.max_steps {
            out.capped = true;
            break;
        }
        budget_used += cost;
        let jobs = shards::<L>(n, k, reduce);
        out.shards = out.shards.max(jobs.len());
        let abort_at = AtomicUsize::new(usize::MAX);
        let indexed: Vec<(usize, &Shard<L>)> = jobs.iter().enumerate().collect();
        let tallies: Vec<Option<ShardTally<L>>> = par::map(opts.exec, &indexed, |&(idx, s)| {
            if idx > abort_at.load(Ordering::Relaxed) {
                return None;
            }
            let below = if k == 0 { 0 } else { abort_below };
            let tally = census_shard(&r.rows, s.fixed, s.offset, s.m, s.t, below);
            if tally.aborted {
                abort_at.fetch_min(idx, Ordering::Relaxed);
            }
            Some(tally)
        });

        let mut level_hist = vec![0u64; n + 1];
        for tally in tallies.iter().flatten() {
            out.steps += tally.steps;
            if let Some((w, msg)) = tally.best.filter(|_| k > 0) {
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, msg));
                }
            }
            if tally.aborted {
                out.aborted = true;
                // lowest aborting shard; everything before it ran to completion
                break;
            }
            for (h, &c) in level_hist.iter_mut().zip(&tally.hist[..=n]) {
                *h += c;
            }
        }
        if out.aborted {
            break;
        }
        if reduce && k > 0 {
            for h in level_hist.iter_mut() {
                let scaled = *h as u128 * n as u128;
                assert_eq!(scaled % k as u128, 0, "rotation reduction on a non-circulant code");
                *h = (scaled / k as u128) as u64;
            }
        }
        for (c, h) in out.counts.iter_mut().zip(&level_hist) {
            *c += h;
        }
        out.levels_done = Some(k as u32);
        if opts.stop_when_exact && k > 0 {
            if let Some((w, _)) = best {
                if w as usize <= k + 1 {
                    break;
                }
            }
        }
    }
    if let Some(k) = out.levels_done {
        // counts above the completed level are partial
        for c in out.counts.iter_mut().skip(k as usize + 1) {
            *c = 0;
        }
    }
    out.best = best.map(|(_, m)| Witness::from_message(&r.rows, n, m));
    out
}

fn reduce_for(code: &GraphCode, opts: &CensusOptions) -> bool {
    opts.orbit_reduction && code.is_circulant()
}

fn base_report(code: &GraphCode, strategy: String) -> WeightReport {
    WeightReport {
        n: code.n(),
        support: code.support().map(|s| s.positions().to_vec()),
        d_min: 0,
        certification: Certification::UpperBoundOnly,
        distribution: None,
        census_count: 0,
        witness: None,
        strategy,
        shards: 0,
        wall_time_ms: 0,
    }
}

/// Exact `A_0..=A_{w_max}` by a full census of message weights `<= w_max`.
pub fn partial_distribution_census(code: &GraphCode, w_max: u32, opts: &CensusOptions) -> Result<WeightReport> {
    let n = code.n();
    if w_max as usize > n {
        return Err(Error::InfeasiblePlan(format!("w_max {w_max} exceeds length {n}")));
    }
    let reduce = reduce_for(code, opts);
    let estimate = census_steps(n, w_max, reduce);
    if estimate > opts.max_steps {
        return Err(Error::WorkCapExceeded { estimate, cap: opts.max_steps });
    }
    let start = Instant::now();
    let opts = CensusOptions { abort_below: None, stop_when_exact: false, ..*opts };
    let out = with_rows(code, |r| Ok(r.census(w_max, &opts, reduce)))?;
    let mut rep = base_report(code, format!("census(w_max={w_max}{})", if reduce { ",rotation" } else { "" }));
    let d = (1..=w_max as usize).find(|&i| out.counts[i] > 0);
    rep.d_min = match d {
        Some(d) => d as u32,
        None => out.best.as_ref().map_or(w_max + 1, |w| w.weight),
    };
    rep.certification = if d.is_some() {
        Certification::Exact
    } else {
        Certification::LowerBoundCertified { limit: w_max + 1 }
    };
    rep.distribution = Some(Distribution {
        covered_to: w_max,
        counts: out.counts[..=w_max as usize].to_vec(),
    });
    rep.census_count = out.steps;
    rep.witness = out.best;
    rep.shards = out.shards;
    rep.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(rep)
}

/// Exact minimum weight.
///
/// With a census plan, levels run in increasing message weight until the
/// lightest codeword seen is at most one above the finished level. If the
/// step cap stops the census first the report carries the certified lower
/// bound; an early abort yields an upper bound with its witness.
pub fn min_weight_exact(code: &GraphCode, plan: &EnumerationPlan) -> Result<WeightReport> {
    let w_max = match plan.strategy {
        Strategy::FullGray => return super::min_weight(code, plan),
        Strategy::MessageWeightCensus { w_max } => w_max.min(code.n() as u32),
        Strategy::Heuristic { .. } => {
            return Err(Error::InfeasiblePlan("a heuristic plan cannot certify a minimum".into()))
        }
    };
    let opts = CensusOptions { stop_when_exact: true, ..CensusOptions::from(plan) };
    let reduce = reduce_for(code, &opts);
    let start = Instant::now();
    let out = with_rows(code, |r| Ok(r.census(w_max, &opts, reduce)))?;
    let mut rep = base_report(code, format!("census(w_max={w_max}{})", if reduce { ",rotation" } else { "" }));
    let best = out.best.as_ref().map(|w| w.weight);
    let done = out.levels_done.unwrap_or(0);
    rep.certification = match best {
        _ if out.aborted => Certification::UpperBoundOnly,
        Some(b) if b <= done + 1 => Certification::Exact,
        _ => Certification::LowerBoundCertified { limit: done + 1 },
    };
    rep.d_min = best.unwrap_or(done + 1);
    if out.levels_done.is_some() && !out.aborted {
        rep.distribution = Some(Distribution {
            covered_to: done,
            counts: out.counts[..=done as usize].to_vec(),
        });
    }
    if out.capped && rep.certification != Certification::Exact && out.levels_done.is_none() {
        return Err(Error::WorkCapExceeded {
            estimate: census_steps(code.n(), 1, reduce),
            cap: plan.max_steps,
        });
    }
    rep.census_count = out.steps;
    rep.witness = out.best;
    rep.shards = out.shards;
    rep.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSupport;
    use crate::graph::BitGraph;
    use crate::wdist::full_weight_distribution;

    fn code(n: usize, s: &[usize]) -> GraphCode {
        GraphCode::from_support(&CirculantSupport::new(n, s.to_vec()).unwrap()).unwrap()
    }

    fn opts(reduce: bool) -> CensusOptions {
        CensusOptions { orbit_reduction: reduce, exec: Exec::Sequential, ..Default::default() }
    }

    #[test]
    fn step_counts() {
        assert_eq!(census_steps(10, 10, false), 1024);
        assert_eq!(census_steps(10, 10, true), 1 + 512);
        assert_eq!(binom(10, 3), 120);
        assert_eq!(binom(5, 7), 0);
    }

    #[test]
    fn census_matches_full_walk_with_and_without_rotation() {
        for (n, s) in [(13, vec![2, 13]), (14, vec![2, 4, 8, 12, 14]), (16, vec![2, 3, 7, 9, 11, 15, 16])] {
            let c = code(n, &s);
            let full = full_weight_distribution(&c, Exec::Sequential).unwrap().distribution.unwrap().counts;
            for reduce in [false, true] {
                let r = partial_distribution_census(&c, n as u32, &opts(reduce)).unwrap();
                assert_eq!(r.distribution.unwrap().counts, full, "n={n} reduce={reduce}");
            }
        }
    }

    #[test]
    fn zero_level_census() {
        let r = partial_distribution_census(&code(9, &[2, 9]), 0, &opts(true)).unwrap();
        assert_eq!(r.distribution.unwrap().counts, vec![1]);
    }

    #[test]
    fn min_weight_stops_early_and_is_exact() {
        let c = code(13, &[2, 13]);
        let r = min_weight_exact(&c, &EnumerationPlan::census(13).with_exec(Exec::Sequential)).unwrap();
        assert_eq!(r.d_min, 3);
        assert!(r.is_exact());
        assert!(r.distribution.as_ref().unwrap().covered_to < 13);
        assert!(r.witness.unwrap().verify(&c).unwrap());
    }

    #[test]
    fn isolated_vertex_gives_weight_one() {
        let g = BitGraph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let c = GraphCode::build(g).unwrap();
        let r = min_weight_exact(&c, &EnumerationPlan::census(4)).unwrap();
        assert_eq!((r.d_min, r.is_exact()), (1, true));
    }

    #[test]
    fn cap_yields_lower_bound() {
        let c = code(16, &[2, 3, 7, 9, 11, 15, 16]);
        let plan = EnumerationPlan::census(16).with_max_steps(census_steps(16, 1, true));
        let r = min_weight_exact(&c, &plan).unwrap();
        assert_eq!(r.certification, Certification::LowerBoundCertified { limit: 2 });
        assert_eq!(r.d_min, 8);
    }

    #[test]
    fn early_abort_is_deterministic() {
        let c = code(20, &[2, 3, 19, 20]);
        let plan = EnumerationPlan::census(20).with_early_abort(20);
        let a = min_weight_exact(&c, &plan).unwrap();
        let b = min_weight_exact(&c, &plan.with_exec(Exec::Sequential)).unwrap();
        assert_eq!(a.certification, Certification::UpperBoundOnly);
        assert_eq!(a.witness, b.witness);
        assert!(a.witness.unwrap().verify(&c).unwrap());
    }

    #[test]
    fn partial_census_respects_cap() {
        let c = code(16, &[2, 16]);
        let o = CensusOptions { max_steps: 10, ..opts(false) };
        assert!(matches!(partial_distribution_census(&c, 5, &o), Err(Error::WorkCapExceeded { .. })));
    }
}
