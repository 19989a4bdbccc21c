//! Searches over circulant supports for codes of large minimum weight.
//!
//! A symmetric support of order `n` is fixed by its free mask over positions
//! `2..=⌊n/2⌋+1` (see [`CirculantSupport::from_free_mask`]), so there are
//! `2^⌊n/2⌋` of them.

use std::fs::{self, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU32, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circulant::CirculantSupport;
use crate::code::{GraphCode, TypeClass};
use crate::par::{self, Exec};
use crate::wdist::{
    census_steps, low_weight_search, min_weight_exact, Certification, EnumerationPlan, SearchBudget,
};
use crate::{Error, Result};

/// Default largest order for [`exhaustive_dmax`] without an override.
pub const EXHAUSTIVE_DEFAULT_MAX_LEN: usize = 30;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SupportWitness {
    pub support: CirculantSupport,
    /// Exact minimum weight, or the lightest weight seen.
    pub d: u32,
    pub certification: Certification,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub best_d: u32,
    pub witnesses: Vec<SupportWitness>,
    pub exhaustive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_restriction: Option<TypeClass>,
    /// Supports examined (after pruning, for exhaustive runs).
    pub explored: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn type_allows(n: usize, mask: u64, restriction: Option<TypeClass>) -> bool {
    let type_two = n.is_multiple_of(2) && (mask >> (n / 2 - 1)) & 1 == 1;
    match restriction {
        None => true,
        Some(TypeClass::TypeI) => !type_two,
        Some(TypeClass::TypeII) => type_two,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExhaustiveOptions {
    pub type_restriction: Option<TypeClass>,
    pub multiplier_pruning: bool,
    /// Rejects candidates with a quick randomized search before the census.
    pub prescreen_iterations: u64,
    pub exec: Exec,
    /// Largest accepted order; raise to run beyond the default range.
    pub max_len: usize,
    /// Stop after this many candidates (result flagged non-exhaustive).
    pub max_candidates: Option<u64>,
    pub chunk: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checkpoint: Option<PathBuf>,
    pub seed: u64,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            type_restriction: None,
            multiplier_pruning: true,
            prescreen_iterations: 0,
            exec: Exec::default(),
            max_len: EXHAUSTIVE_DEFAULT_MAX_LEN,
            max_candidates: None,
            chunk: 4096,
            checkpoint: None,
            seed: 0,
        }
    }
}

/// Resumable progress of an exhaustive run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub type_restriction: Option<TypeClass>,
    pub multiplier_pruning: bool,
    pub next_index: u64,
    pub total: u64,
    pub best_d: u32,
    pub witnesses: Vec<CirculantSupport>,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Candidate supports in search order: by `|S|`, then lexicographically.
pub fn candidate_supports(
    n: usize,
    restriction: Option<TypeClass>,
    multiplier_pruning: bool,
) -> Result<Vec<CirculantSupport>> {
    let free = CirculantSupport::num_free(n);
    if free >= 40 {
        return Err(Error::TooLong { n, max: 79 });
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << free) {
        if !type_allows(n, mask, restriction) {
            continue;
        }
        let s = CirculantSupport::from_free_mask(n, mask)?;
        if multiplier_pruning && !s.is_multiplier_canonical() {
            continue;
        }
        out.push(s);
    }
    out.sort_by(|a, b| (a.len(), a.positions()).cmp(&(b.len(), b.positions())));
    Ok(out)
}

/// Exact minimum weight, or `None` if a codeword lighter than `floor` exists.
fn evaluate(s: &CirculantSupport, floor: u32, prescreen: u64, seed: u64) -> Result<Option<u32>> {
    let code = GraphCode::from_support(s)?;
    if prescreen > 0 && floor > 1 {
        let budget = SearchBudget::iterations(prescreen).with_exec(Exec::Sequential);
        if low_weight_search(&code, floor - 1, &budget, seed)?.witness.is_some() {
            return Ok(None);
        }
    }
    let mut plan = EnumerationPlan::census(s.n() as u32)
        .with_exec(Exec::Sequential)
        .with_max_steps(u128::MAX);
    if floor > 0 {
        plan = plan.with_early_abort(floor);
    }
    let r = min_weight_exact(&code, &plan)?;
    Ok(match r.certification {
        Certification::Exact => Some(r.d_min),
        _ => None,
    })
}

/// Largest minimum weight over all symmetric supports of order `n`, with
/// every support attaining it (multiplier-canonical ones only when pruning).
pub fn exhaustive_dmax(n: usize, opts: &ExhaustiveOptions) -> Result<SearchResult> {
    if n == 0 || n > opts.max_len {
        return Err(Error::TooLong { n, max: opts.max_len });
    }
    if opts.type_restriction == Some(TypeClass::TypeII) && n % 2 == 1 {
        return Ok(SearchResult {
            n,
            best_d: 0,
            witnesses: Vec::new(),
            exhaustive: true,
            type_restriction: opts.type_restriction,
            explored: 0,
            seed: None,
        });
    }
    let candidates = candidate_supports(n, opts.type_restriction, opts.multiplier_pruning)?;
    let total = candidates.len() as u64;
    let mut state = Checkpoint {
        n,
        type_restriction: opts.type_restriction,
        multiplier_pruning: opts.multiplier_pruning,
        next_index: 0,
        total,
        best_d: 0,
        witnesses: Vec::new(),
    };
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let saved = Checkpoint::load(path)?;
            if (saved.n, saved.type_restriction, saved.multiplier_pruning, saved.total)
                != (n, opts.type_restriction, opts.multiplier_pruning, total)
            {
                return Err(Error::Parse(format!(
                    "checkpoint {} belongs to a different search",
                    path.display()
                )));
            }
            state = saved;
        }
    }
    let limit = opts
        .max_candidates
        .map_or(total, |m| (state.next_index + m).min(total));
    let best = AtomicU32::new(state.best_d);
    let chunk = opts.chunk.max(1) as u64;
    while state.next_index < limit {
        let end = (state.next_index + chunk).min(limit);
        let slice = &candidates[state.next_index as usize..end as usize];
        let results = par::map(opts.exec, slice, |s| {
            let floor = best.load(Ordering::Relaxed);
            let d = evaluate(s, floor, opts.prescreen_iterations, opts.seed);
            if let Ok(Some(d)) = d {
                best.fetch_max(d, Ordering::Relaxed);
            }
            d
        });
        for (s, d) in slice.iter().zip(results) {
            let Some(d) = d? else { continue };
            if d > state.best_d {
                state.best_d = d;
                state.witnesses.clear();
            }
            if d == state.best_d {
                state.witnesses.push(s.clone());
            }
        }
        state.next_index = end;
        if let Some(path) = &opts.checkpoint {
            state.store(path)?;
        }
    }
    Ok(SearchResult {
        n,
        best_d: state.best_d,
        witnesses: state
            .witnesses
            .into_iter()
            .map(|support| SupportWitness {
                support,
                d: state.best_d,
                certification: Certification::Exact,
            })
            .collect(),
        exhaustive: state.next_index == total,
        type_restriction: opts.type_restriction,
        explored: state.next_index,
        seed: None,
    })
}

/// Largest minimum weight without restriction and among Type I codes.
pub fn verify_type_gap(n: usize, opts: &ExhaustiveOptions) -> Result<(u32, u32)> {
    if n % 2 == 1 {
        return Err(Error::InvalidSupport(format!("type gap needs even length, got {n}")));
    }
    let all = exhaustive_dmax(n, &ExhaustiveOptions { type_restriction: None, checkpoint: None, ..opts.clone() })?;
    let one = exhaustive_dmax(
        n,
        &ExhaustiveOptions { type_restriction: Some(TypeClass::TypeI), checkpoint: None, ..opts.clone() },
    )?;
    if !all.exhaustive || !one.exhaustive {
        return Err(Error::InfeasiblePlan("candidate cap reached before the search finished".into()));
    }
    Ok((all.best_d, one.best_d))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignOptions {
    pub seed: u64,
    pub type_restriction: Option<TypeClass>,
    /// Supports evaluated before the campaign stops.
    pub evaluations: u64,
    /// Non-improving moves before a random restart.
    pub stagnation: u64,
    /// Randomized-search iterations spent screening each support.
    pub screen_iterations: u64,
    /// Stop after this many qualifying supports.
    pub max_hits: usize,
    /// Certify qualifying supports exactly when the census fits this many steps.
    pub certify_max_steps: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<Duration>,
    pub exec: Exec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log: Option<PathBuf>,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            seed: 1,
            type_restriction: None,
            evaluations: 1000,
            stagnation: 50,
            screen_iterations: 200,
            max_hits: 1,
            certify_max_steps: 0,
            time: None,
            exec: Exec::default(),
            log: None,
        }
    }
}

/// One line of the campaign log.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CampaignLogEntry {
    pub seed: u64,
    pub evaluation: u64,
    pub support: CirculantSupport,
    /// Lightest codeword weight seen while screening.
    pub screened_d: u32,
    pub aborted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
    pub elapsed_ms: u64,
}

/// Higher is better: lightest weight seen, then fewer iterations hitting it.
type Score = (u32, std::cmp::Reverse<u64>);

fn random_mask(rng: &mut ChaCha8Rng, n: usize, restriction: Option<TypeClass>) -> u64 {
    let free = CirculantSupport::num_free(n);
    let mut mask = if free == 0 { 0 } else { rng.random::<u64>() & ((1u64 << free) - 1) };
    if n.is_multiple_of(2) && free > 0 {
        let top = 1u64 << (n / 2 - 1);
        match restriction {
            Some(TypeClass::TypeI) => mask &= !top,
            Some(TypeClass::TypeII) => mask |= top,
            None => {}
        }
    }
    mask
}

/// Randomized hill climbing over supports. Moves toggle one mirror pair; a
/// support qualifies when screening finds no codeword lighter than `target_d`.
pub fn randomized_campaign(n: usize, target_d: u32, opts: &CampaignOptions) -> Result<SearchResult> {
    let free = CirculantSupport::num_free(n);
    if free > 63 {
        return Err(Error::TooLong { n, max: 127 });
    }
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut log = match &opts.log {
        Some(p) => Some(BufWriter::new(OpenOptions::new().create(true).append(true).open(p)?)),
        None => None,
    };
    let movable: Vec<usize> = (0..free)
        .filter(|&k| !(n.is_multiple_of(2) && k == n / 2 - 1 && opts.type_restriction.is_some()))
        .collect();

    let screen = |mask: u64, eval: u64| -> Result<(Score, CirculantSupport, bool)> {
        let s = CirculantSupport::from_free_mask(n, mask)?;
        let code = GraphCode::from_support(&s)?;
        let budget = SearchBudget::iterations(opts.screen_iterations).with_exec(opts.exec);
        let out = low_weight_search(&code, target_d.saturating_sub(1), &budget, opts.seed ^ eval)?;
        let lightest = out.lowest_seen().unwrap_or(n as u32);
        Ok(((lightest, std::cmp::Reverse(out.lightest_hits)), s, out.witness.is_some()))
    };

    let mut hits: Vec<SupportWitness> = Vec::new();
    let mut best_seen = 0u32;
    let mut current: Option<(u64, Score)> = None;
    let mut stale = 0u64;
    let mut eval = 0u64;
    while eval < opts.evaluations && hits.len() < opts.max_hits {
        if opts.time.is_some_and(|t| start.elapsed() >= t) {
            break;
        }
        let mask = match current {
            Some((m, _)) if stale < opts.stagnation && !movable.is_empty() => {
                m ^ (1u64 << movable[rng.random_range(0..movable.len())])
            }
            _ => {
                stale = 0;
                random_mask(&mut rng, n, opts.type_restriction)
            }
        };
        let (score, support, aborted) = screen(mask, eval)?;
        best_seen = best_seen.max(score.0);
        let mut certification = None;
        if !aborted && !hits.iter().any(|h| h.support == support) {
            let code = GraphCode::from_support(&support)?;
            let (d, cert) = if census_steps(n, target_d.saturating_sub(1), code.is_circulant()) <= opts.certify_max_steps {
                let plan = EnumerationPlan::census(n as u32)
                    .with_exec(opts.exec)
                    .with_max_steps(opts.certify_max_steps);
                let r = min_weight_exact(&code, &plan)?;
                (r.d_min, r.certification)
            } else {
                (score.0, Certification::UpperBoundOnly)
            };
            certification = Some(cert);
            if d >= target_d {
                hits.push(SupportWitness { support: support.clone(), d, certification: cert });
            }
        }
        if let Some(w) = log.as_mut() {
            let entry = CampaignLogEntry {
                seed: opts.seed,
                evaluation: eval,
                support: support.clone(),
                screened_d: score.0,
                aborted,
                certification,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            writeln!(w, "{}", serde_json::to_string(&entry)?)?;
        }
        match current {
            Some((_, cur)) if score <= cur => stale += 1,
            _ => {
                if current.is_some_and(|(_, cur)| score > cur) {
                    stale = 0;
                }
                current = Some((mask, score));
            }
        }
        eval += 1;
    }
    if let Some(mut w) = log {
        w.flush()?;
    }
    let best_d = hits.iter().map(|h| h.d).max().unwrap_or(best_seen.min(target_d.saturating_sub(1)));
    Ok(SearchResult {
        n,
        best_d,
        witnesses: hits,
        exhaustive: false,
        type_restriction: opts.type_restriction,
        explored: eval,
        seed: Some(opts.seed),
    })
}

/// Reads a campaign log written by [`randomized_campaign`].
pub fn read_campaign_log(path: &Path) -> Result<Vec<CampaignLogEntry>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| Ok(serde_json::from_str(l)?))
        .collect()
}
