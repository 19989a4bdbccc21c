//! Embedded reference tables and the jobs that check them.
//!
//! The data lives in `reference.txt` next to this file and is pinned by a
//! SHA-256 digest. Loading validates every support and runs the cross-table
//! consistency checks; [`verify`] recomputes a record with the engines.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::circulant::{parse_positions, CirculantSupport};
use crate::code::{GraphCode, TypeClass};
use crate::graph::{invariants_with_budget, Distance, DEFAULT_AUT_BUDGET};
use crate::par::Exec;
use crate::wdist::{
    census_steps, full_walk_steps, full_weight_distribution, low_weight_search, min_weight_exact,
    partial_distribution_census, CensusOptions, EnumerationPlan, SearchBudget,
};
use crate::{Error, Result};

/// Raw text of the embedded tables.
pub const REFERENCE_TEXT: &str = include_str!("reference.txt");

/// SHA-256 of [`REFERENCE_TEXT`].
pub const REFERENCE_SHA256: &str = "3cd44458f6365f2984b30c74fef7b910953afded2f00747b5daca78cfa66216f";

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    New,
    Bounds,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::T1 => "T1",
            TableId::T2 => "T2",
            TableId::T3 => "T3",
            TableId::T4 => "T4",
            TableId::T5 => "T5",
            TableId::T6 => "T6",
            TableId::New => "NEW",
            TableId::Bounds => "BOUNDS",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "T1" => TableId::T1,
            "T2" => TableId::T2,
            "T3" => TableId::T3,
            "T4" => TableId::T4,
            "T5" => TableId::T5,
            "T6" => TableId::T6,
            "NEW" => TableId::New,
            "BOUNDS" => TableId::Bounds,
            _ => return Err(Error::Parse(format!("unknown table {s:?}"))),
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    /// A code given by its support, with its minimum weight and type.
    Code {
        d: u32,
        type_class: TypeClass,
        support: CirculantSupport,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounds: Option<(u32, u32)>,
    },
    /// Listed weight counts `A_i`; `d` is the stated minimum weight if any.
    Weights {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<u32>,
        counts: BTreeMap<u32, u64>,
    },
    Graph {
        d_min: u32,
        valency: usize,
        diameter: u32,
        girth: u32,
        clique: usize,
        aut: u64,
    },
    Pair { d: u32 },
    Bounds { lo: u32, hi: u32 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PaperRecord {
    pub table: TableId,
    pub n: usize,
    pub payload: Payload,
}

impl PaperRecord {
    pub fn id(&self) -> String {
        format!("{}:{}", self.table, self.n)
    }

    pub fn support(&self) -> Option<&CirculantSupport> {
        match &self.payload {
            Payload::Code { support, .. } => Some(support),
            _ => None,
        }
    }
}

fn bad(line: usize, msg: impl fmt::Display) -> Error {
    Error::TableData(format!("line {line}: {msg}"))
}

fn num<T: FromStr>(line: usize, s: &str) -> Result<T> {
    s.parse().map_err(|_| bad(line, format!("bad number {s:?}")))
}

fn counts(line: usize, fields: &[&str]) -> Result<BTreeMap<u32, u64>> {
    fields
        .iter()
        .map(|f| {
            let (i, a) = f.split_once('=').ok_or_else(|| bad(line, format!("expected i=A_i, got {f:?}")))?;
            Ok((num(line, i)?, num(line, a)?))
        })
        .collect()
}

fn type_class(line: usize, s: &str) -> Result<TypeClass> {
    match s {
        "I" => Ok(TypeClass::TypeI),
        "II" => Ok(TypeClass::TypeII),
        _ => Err(bad(line, format!("bad type {s:?}"))),
    }
}

fn parse_line(line: usize, text: &str) -> Result<PaperRecord> {
    let f: Vec<&str> = text.split_whitespace().collect();
    let table: TableId = f[0].parse().map_err(|_| bad(line, format!("unknown tag {:?}", f[0])))?;
    let want = match table {
        TableId::T1 => Some(6),
        TableId::T3 | TableId::T4 => Some(5),
        TableId::T6 => Some(8),
        TableId::New => Some(3),
        TableId::Bounds => Some(4),
        TableId::T2 | TableId::T5 => None,
    };
    if want.is_some_and(|w| w != f.len()) || f.len() < 3 {
        return Err(bad(line, format!("wrong field count for {table}")));
    }
    let n: usize = num(line, f[1])?;
    let support = |s: &str| -> Result<CirculantSupport> {
        CirculantSupport::new(n, parse_positions(s)?).map_err(|e| bad(line, e))
    };
    let payload = match table {
        TableId::T1 => {
            let (lo, hi) = f[4].split_once('-').ok_or_else(|| bad(line, "expected lo-hi"))?;
            Payload::Code {
                d: num(line, f[2])?,
                type_class: type_class(line, f[3])?,
                bounds: Some((num(line, lo)?, num(line, hi)?)),
                support: support(f[5])?,
            }
        }
        TableId::T3 | TableId::T4 => Payload::Code {
            d: num(line, f[2])?,
            type_class: type_class(line, f[3])?,
            bounds: None,
            support: support(f[4])?,
        },
        TableId::T2 => Payload::Weights { d: None, counts: counts(line, &f[2..])? },
        TableId::T5 => Payload::Weights { d: Some(num(line, f[2])?), counts: counts(line, &f[3..])? },
        TableId::T6 => Payload::Graph {
            d_min: num(line, f[2])?,
            valency: num(line, f[3])?,
            diameter: num(line, f[4])?,
            girth: num(line, f[5])?,
            clique: num(line, f[6])?,
            aut: num(line, f[7])?,
        },
        TableId::New => Payload::Pair { d: num(line, f[2])? },
        TableId::Bounds => Payload::Bounds { lo: num(line, f[2])?, hi: num(line, f[3])? },
    };
    Ok(PaperRecord { table, n, payload })
}

/// Parses table text without the checksum and consistency checks.
pub fn parse_tables(text: &str) -> Result<Vec<PaperRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(k, l)| parse_line(k + 1, l))
        .collect()
}

pub fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

/// Cross-table checks on parsed records.
pub fn check_consistency(records: &[PaperRecord]) -> Result<()> {
    let err = |m: String| Err(Error::TableData(m));
    let mut new_codes = BTreeMap::new();
    for r in records {
        match &r.payload {
            Payload::Code { d, type_class, support, bounds } => {
                if GraphCode::from_support(support)?.type_class() != *type_class {
                    return err(format!("{}: type {type_class} contradicts the support", r.id()));
                }
                if let Some((lo, hi)) = bounds {
                    if lo > hi || d > hi {
                        return err(format!("{}: bounds {lo}-{hi} inconsistent with d={d}", r.id()));
                    }
                }
                if r.table == TableId::T4 {
                    new_codes.insert(r.n, (*d, support.len()));
                }
            }
            Payload::Weights { d, counts } => {
                if r.table == TableId::T2 {
                    let total: u128 = counts.values().map(|&a| a as u128).sum();
                    if total != 1u128 << r.n {
                        return err(format!("{}: counts sum to {total}, not 2^{}", r.id(), r.n));
                    }
                }
                if let (Some(d), Some((&first, _))) = (d, counts.iter().find(|(_, &a)| a > 0)) {
                    if first < *d {
                        return err(format!("{}: A_{first} > 0 below d={d}", r.id()));
                    }
                }
            }
            Payload::Bounds { lo, hi } if lo > hi => {
                return err(format!("{}: empty interval {lo}-{hi}", r.id()));
            }
            _ => {}
        }
    }
    let announced: BTreeMap<usize, u32> = records
        .iter()
        .filter_map(|r| match r.payload {
            Payload::Pair { d } => Some((r.n, d)),
            _ => None,
        })
        .collect();
    let listed: BTreeMap<usize, u32> = new_codes.iter().map(|(&n, &(d, _))| (n, d)).collect();
    if announced != listed {
        return err("announced (n, d) pairs differ from the T4 rows".into());
    }
    for r in records {
        match r.payload {
            Payload::Graph { d_min, valency, .. } => {
                if let Some(&(d, k)) = new_codes.get(&r.n) {
                    if d != d_min || k != valency {
                        return err(format!("{}: (d, k) = ({d_min}, {valency}) but T4 gives ({d}, {k})", r.id()));
                    }
                }
            }
            Payload::Bounds { lo, hi } => {
                if let Some(&(d, _)) = new_codes.get(&r.n) {
                    if d < lo || d > hi {
                        return err(format!("{}: T4 d={d} outside {lo}-{hi}", r.id()));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(())
}

/// All embedded records, checksum and consistency verified.
pub fn load_tables() -> Result<Vec<PaperRecord>> {
    let digest = sha256_hex(REFERENCE_TEXT.as_bytes());
    if digest != REFERENCE_SHA256 {
        return Err(Error::TableData(format!("checksum mismatch: {digest}")));
    }
    let records = parse_tables(REFERENCE_TEXT)?;
    check_consistency(&records)?;
    Ok(records)
}

/// Records belonging to any of `tables`, in file order.
pub fn select<'a>(records: &'a [PaperRecord], tables: &[TableId]) -> Vec<&'a PaperRecord> {
    records.iter().filter(|r| tables.contains(&r.table)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Effort {
    Quick,
    Standard,
    Marathon,
}

impl Effort {
    /// Step cap for any single enumeration.
    pub fn max_steps(self) -> u128 {
        match self {
            Effort::Quick => 1_000_000_000,
            Effort::Standard => 1_000_000_000_000,
            Effort::Marathon => 1_000_000_000_000_000,
        }
    }

    /// Wall-clock budget for one randomized search.
    pub fn search_time(self) -> Duration {
        match self {
            Effort::Quick => Duration::from_secs(30),
            Effort::Standard => Duration::from_secs(600),
            Effort::Marathon => Duration::from_secs(7200),
        }
    }
}

impl fmt::Display for Effort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Effort::Quick => "quick",
            Effort::Standard => "standard",
            Effort::Marathon => "marathon",
        })
    }
}

impl FromStr for Effort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quick" => Ok(Effort::Quick),
            "standard" => Ok(Effort::Standard),
            "marathon" => Ok(Effort::Marathon),
            _ => Err(Error::Parse(format!("unknown effort {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "upper_bound_confirmed")]
    UpperBoundConfirmed,
    #[serde(rename = "skipped_infeasible")]
    SkippedInfeasible,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::UpperBoundConfirmed => "upper_bound_confirmed",
            Status::SkippedInfeasible => "skipped_infeasible",
            Status::Mismatch => "MISMATCH",
        })
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub evidence: serde_json::Value,
    pub wall_time_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub effort: Effort,
    pub exec: Exec,
    pub seed: u64,
    /// Overrides the effort's step cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<u128>,
    /// Overrides the effort's search time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_time: Option<Duration>,
    pub aut_budget: Duration,
}

impl VerifyConfig {
    pub fn new(effort: Effort) -> Self {
        VerifyConfig {
            effort,
            exec: Exec::default(),
            seed: 1,
            max_steps: None,
            search_time: None,
            aut_budget: DEFAULT_AUT_BUDGET,
        }
    }

    pub fn max_steps(&self) -> u128 {
        self.max_steps.unwrap_or(self.effort.max_steps())
    }

    fn search_budget(&self) -> SearchBudget {
        SearchBudget::iterations(u64::MAX)
            .with_time(self.search_time.unwrap_or(self.effort.search_time()))
            .with_exec(self.exec)
    }
}

/// Digest of a weight distribution, for compact evidence.
pub fn counts_digest(counts: &[u64]) -> String {
    let text: Vec<String> = counts.iter().map(u64::to_string).collect();
    sha256_hex(text.join(",").as_bytes())
}

fn code_for(records: &[PaperRecord], tables: &[TableId], n: usize) -> Option<(u32, CirculantSupport)> {
    records.iter().find_map(|r| match &r.payload {
        Payload::Code { d, support, .. } if r.n == n && tables.contains(&r.table) => Some((*d, support.clone())),
        _ => None,
    })
}

struct Outcome(Status, String, serde_json::Value);

/// Minimum weight check: exact census when it fits the cap, otherwise a
/// witness of the claimed weight.
fn check_min_weight(code: &GraphCode, d: u32, cfg: &VerifyConfig, census_ok: bool) -> Result<Outcome> {
    let n = code.n();
    let steps = census_steps(n, d.saturating_sub(1), code.is_circulant());
    if census_ok && steps <= cfg.max_steps() {
        let plan = EnumerationPlan::census(d).with_exec(cfg.exec).with_max_steps(cfg.max_steps());
        let r = min_weight_exact(code, &plan)?;
        let ev = json!({ "witness": r.witness, "census_count": r.census_count, "certification": r.certification });
        return Ok(if r.is_exact() && r.d_min == d {
            Outcome(Status::Confirmed, format!("d={d} exact, {} codewords", r.census_count), ev)
        } else {
            Outcome(Status::Mismatch, format!("claimed d={d}, found d={} ({})", r.d_min, r.certification), ev)
        });
    }
    let out = low_weight_search(code, d, &cfg.search_budget(), cfg.seed)?;
    let ev = json!({
        "witness": out.witness,
        "lowest_seen": out.lowest_seen(),
        "iterations": out.iterations,
        "seed": cfg.seed,
        "census_estimate": steps.to_string(),
    });
    Ok(match &out.witness {
        Some(w) if w.weight < d => Outcome(Status::Mismatch, format!("codeword of weight {} < {d}", w.weight), ev),
        Some(_) => Outcome(
            Status::UpperBoundConfirmed,
            format!("witness of weight {d} after {} iterations; exact census needs {steps} steps", out.iterations),
            ev,
        ),
        None => Outcome(
            Status::SkippedInfeasible,
            format!("no witness of weight {d} within budget; lowest seen {:?}", out.lowest_seen()),
            ev,
        ),
    })
}

fn verify_inner(record: &PaperRecord, all: &[PaperRecord], cfg: &VerifyConfig) -> Result<Outcome> {
    let n = record.n;
    match (&record.table, &record.payload) {
        (TableId::T1 | TableId::T3 | TableId::T4, Payload::Code { d, type_class, support, .. }) => {
            let code = GraphCode::from_support(support)?;
            if code.type_class() != *type_class {
                return Ok(Outcome(Status::Mismatch, format!("{} not {type_class}", code.type_class()), json!(null)));
            }
            let census_ok = record.table != TableId::T4 || cfg.effort == Effort::Marathon;
            let mut out = check_min_weight(&code, *d, cfg, census_ok)?;
            out.1 = format!("self-dual, {type_class}; {}", out.1);
            Ok(out)
        }
        (TableId::T2, Payload::Weights { counts, .. }) => {
            let Some((_, support)) = code_for(all, &[TableId::T1], n) else {
                return Ok(Outcome(Status::SkippedInfeasible, "no support for this length".into(), json!(null)));
            };
            if full_walk_steps(n) > cfg.max_steps() {
                return Ok(Outcome(
                    Status::SkippedInfeasible,
                    format!("full walk needs 2^{n} steps, cap {}", cfg.max_steps()),
                    json!(null),
                ));
            }
            let r = full_weight_distribution(&GraphCode::from_support(&support)?, cfg.exec)?;
            let got = r.distribution.expect("full walk gives a distribution").counts;
            let listed_ok = counts.iter().all(|(&i, &a)| got.get(i as usize) == Some(&a));
            let unlisted_zero = got.iter().enumerate().all(|(i, &a)| a == 0 || counts.contains_key(&(i as u32)));
            let ev = json!({ "counts": got, "digest": counts_digest(&got), "wall_time_ms": r.wall_time_ms });
            Ok(if listed_ok && unlisted_zero {
                Outcome(Status::Confirmed, format!("all {} entries match, d={}", counts.len(), r.d_min), ev)
            } else {
                Outcome(Status::Mismatch, "distribution differs".into(), ev)
            })
        }
        (TableId::T5, Payload::Weights { d, counts }) => {
            let Some((_, support)) = code_for(all, &[TableId::T4], n) else {
                return Ok(Outcome(Status::SkippedInfeasible, "no support for this length".into(), json!(null)));
            };
            let w_max = *counts.keys().max().expect("non-empty row");
            let steps = census_steps(n, w_max, true);
            if cfg.effort < Effort::Marathon || steps > cfg.max_steps() {
                return Ok(Outcome(
                    Status::SkippedInfeasible,
                    format!("census to weight {w_max} needs {steps} steps at {} effort (cap {})", cfg.effort, cfg.max_steps()),
                    json!({ "estimate": steps.to_string() }),
                ));
            }
            let opts = CensusOptions { exec: cfg.exec, max_steps: cfg.max_steps(), ..Default::default() };
            let r = partial_distribution_census(&GraphCode::from_support(&support)?, w_max, &opts)?;
            let ok = counts.iter().all(|(&i, &a)| r.count(i) == Some(a)) && d.is_none_or(|d| r.d_min == d);
            let ev = json!({ "distribution": r.distribution, "census_count": r.census_count });
            Ok(if ok {
                Outcome(Status::Confirmed, format!("A_i match up to {w_max}"), ev)
            } else {
                Outcome(Status::Mismatch, "counts differ".into(), ev)
            })
        }
        (TableId::T6, Payload::Graph { valency, diameter, girth, clique, aut, .. }) => {
            let Some((_, support)) = code_for(all, &[TableId::T4, TableId::T1, TableId::T3], n) else {
                return Ok(Outcome(Status::SkippedInfeasible, "no support printed for this graph".into(), json!(null)));
            };
            let inv = invariants_with_budget(&support.adjacency(), Some(cfg.aut_budget))?;
            let ev = serde_json::to_value(&inv)?;
            let mut bad = Vec::new();
            if inv.valency != Some(*valency) {
                bad.push(format!("valency {:?}, printed {valency}", inv.valency));
            }
            if inv.diameter != Distance::Finite(*diameter) {
                bad.push(format!("diameter {}, printed {diameter}", inv.diameter));
            }
            if inv.girth != Distance::Finite(*girth) {
                bad.push(format!("girth {}, printed {girth}", inv.girth));
            }
            if inv.clique_number != *clique {
                bad.push(format!("clique {}, printed {clique}", inv.clique_number));
            }
            if inv.aut_order.value != (*aut).into() {
                bad.push(format!("aut {}, printed {aut}", inv.aut_order));
            }
            Ok(if bad.is_empty() {
                let note = if inv.aut_order.exact { "" } else { " (aut order is the dihedral lower bound)" };
                Outcome(Status::Confirmed, format!("k, d, g, clique, aut match{note}"), ev)
            } else {
                Outcome(Status::Mismatch, bad.join(", "), ev)
            })
        }
        (TableId::New, Payload::Pair { d }) => Ok(match code_for(all, &[TableId::T4], n) {
            Some((td, _)) if td == *d => Outcome(Status::Confirmed, format!("T4 lists a code with d={d}"), json!(null)),
            _ => Outcome(Status::Mismatch, "no matching T4 row".into(), json!(null)),
        }),
        (TableId::Bounds, Payload::Bounds { lo, hi }) => Ok(match code_for(all, &[TableId::T4], n) {
            Some((d, _)) if (*lo..=*hi).contains(&d) => {
                Outcome(Status::Confirmed, format!("T4 d={d} within {lo}-{hi}"), json!(null))
            }
            Some((d, _)) => Outcome(Status::Mismatch, format!("T4 d={d} outside {lo}-{hi}"), json!(null)),
            None => Outcome(Status::SkippedInfeasible, "no code of this length".into(), json!(null)),
        }),
        _ => Err(Error::TableData(format!("{}: unexpected payload", record.id()))),
    }
}

/// Recomputes `record` with the engines. Failures inside the engines are
/// reported as a mismatch carrying the error text.
pub fn verify(record: &PaperRecord, all: &[PaperRecord], cfg: &VerifyConfig) -> Verdict {
    let start = Instant::now();
    let Outcome(status, detail, evidence) = verify_inner(record, all, cfg)
        .unwrap_or_else(|e| Outcome(Status::Mismatch, format!("error: {e}"), json!(null)));
    Verdict {
        id: record.id(),
        status,
        detail,
        evidence,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

/// Distinct orders appearing in `records`.
pub fn lengths(records: &[PaperRecord]) -> BTreeSet<usize> {
    records.iter().map(|r| r.n).collect()
}
