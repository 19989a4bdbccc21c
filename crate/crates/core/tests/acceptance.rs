//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! `GF4_EFFORT=quick|standard|marathon` (default standard) sets the work
//! caps. Criteria needing more effort than configured print SKIP with the
//! reason. The process exits nonzero on FAIL only when `GF4_STRICT=1`.

mod common;

use std::time::{Duration, Instant};

use gf4circ::code::type_of_by_support;
use gf4circ::search::{exhaustive_dmax, ExhaustiveOptions};
use gf4circ::tables::{load_tables, select, verify, Effort, Payload, PaperRecord, Status, TableId, VerifyConfig};
use gf4circ::wdist::{census_steps, partial_distribution_census, CensusOptions};
use gf4circ::{Exec, GraphCode, TypeClass, Witness};

enum Mark {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Harness {
    effort: Effort,
    cfg: VerifyConfig,
    tables: Vec<PaperRecord>,
    failed: usize,
}

impl Harness {
    fn run(&mut self, id: u32, name: &str, f: impl FnOnce(&Harness) -> Mark) {
        let start = Instant::now();
        let mark = f(self);
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match mark {
            Mark::Pass(d) => ("PASS", d),
            Mark::Fail(d) => {
                self.failed += 1;
                ("FAIL", d)
            }
            Mark::Skip(d) => ("SKIP", d),
        };
        println!("{tag} c{id} {name}: {detail} [{secs:.1}s]");
    }

    fn verdicts(&self, table: TableId) -> Vec<gf4circ::tables::Verdict> {
        select(&self.tables, &[table])
            .into_iter()
            .map(|r| verify(r, &self.tables, &self.cfg))
            .collect()
    }
}

fn summary(vs: &[gf4circ::tables::Verdict], bad: impl Fn(&gf4circ::tables::Verdict) -> bool) -> (Vec<String>, String) {
    let failures: Vec<String> = vs.iter().filter(|v| bad(v)).map(|v| format!("{} {} ({})", v.id, v.status, v.detail)).collect();
    let mut counts = std::collections::BTreeMap::new();
    for v in vs {
        *counts.entry(v.status.to_string()).or_insert(0) += 1;
    }
    let text = counts.iter().map(|(k, c)| format!("{c} {k}")).collect::<Vec<_>>().join(", ");
    (failures, text)
}

fn table_two(h: &Harness) -> Mark {
    if h.effort < Effort::Standard {
        return Mark::Skip("2^36 walk needs standard effort".into());
    }
    let v = &h.verdicts(TableId::T2)[0];
    let total: u128 = v.evidence["counts"]
        .as_array()
        .map(|a| a.iter().map(|c| c.as_u64().unwrap_or(0) as u128).sum())
        .unwrap_or(0);
    match v.status {
        Status::Confirmed if total == 1u128 << 36 => Mark::Pass(format!("{}; sum 2^36", v.detail)),
        _ => Mark::Fail(format!("{} {} (sum {total})", v.status, v.detail)),
    }
}

fn table_one(h: &Harness) -> Mark {
    if h.effort < Effort::Standard {
        return Mark::Skip("exact census for n=34..50 needs standard effort".into());
    }
    let exact_cap = 1_000_000_000_000u128;
    let mut vs = h.verdicts(TableId::T1);
    vs.extend(h.verdicts(TableId::T3));
    let estimate = |v: &gf4circ::tables::Verdict| {
        let (table, n) = v.id.split_once(':').unwrap();
        let n: usize = n.parse().unwrap();
        let r = h.tables.iter().find(|r| r.table.to_string() == table && r.n == n).unwrap();
        match r.payload {
            Payload::Code { d, .. } => census_steps(n, d - 1, true),
            _ => 0,
        }
    };
    let (fails, text) = summary(&vs, |v| match v.status {
        Status::Confirmed => false,
        Status::UpperBoundConfirmed => estimate(v) <= exact_cap,
        _ => true,
    });
    if fails.is_empty() {
        Mark::Pass(format!("{} rows: {text}", vs.len()))
    } else {
        Mark::Fail(fails.join("; "))
    }
}

fn type_criterion(_: &Harness) -> Mark {
    let s = common::type_criterion_suite(2026, 20, 200);
    if s.ok() {
        Mark::Pass(format!("{} checks over even n<=20, 200 supports each", s.cases))
    } else {
        Mark::Fail(s.failures.join("; "))
    }
}

fn type_assignments(h: &Harness) -> Mark {
    let mut bad = Vec::new();
    let mut checked = 0;
    for r in select(&h.tables, &[TableId::T1, TableId::T3, TableId::T4]) {
        let expect = match (r.table, r.n) {
            (TableId::T1, 38 | 40 | 42 | 44 | 46 | 48 | 50) | (TableId::T4, 58 | 70) => TypeClass::TypeII,
            _ => TypeClass::TypeI,
        };
        let got = type_of_by_support(r.support().unwrap());
        let listed = match r.payload {
            Payload::Code { type_class, .. } => type_class,
            _ => unreachable!(),
        };
        checked += 1;
        if got != expect || listed != expect {
            bad.push(format!("{} computed {got}, listed {listed}, expected {expect}", r.id()));
        }
    }
    if bad.is_empty() {
        Mark::Pass(format!("{checked} codes, 9 Type II"))
    } else {
        Mark::Fail(bad.join("; "))
    }
}

fn table_four(h: &Harness) -> Mark {
    let vs = h.verdicts(TableId::T4);
    let mut bad = Vec::new();
    for (v, r) in vs.iter().zip(select(&h.tables, &[TableId::T4])) {
        let d = match r.payload {
            Payload::Code { d, .. } => d,
            _ => unreachable!(),
        };
        let code = GraphCode::from_support(r.support().unwrap()).unwrap();
        let witness: Option<Witness> = serde_json::from_value(v.evidence["witness"].clone()).ok();
        let lowest = v.evidence["lowest_seen"].as_u64().map(|w| w as u32);
        let ok = match v.status {
            Status::Confirmed => true,
            Status::UpperBoundConfirmed => {
                witness.as_ref().is_some_and(|w| w.weight == d && w.verify(&code).unwrap_or(false))
                    && lowest.is_some_and(|w| w >= d)
            }
            _ => false,
        };
        if !ok {
            bad.push(format!("{} {} ({})", v.id, v.status, v.detail));
        }
    }
    let (_, text) = summary(&vs, |_| false);
    if bad.is_empty() {
        Mark::Pass(format!("12 codes self-dual with verified weight-d witnesses, none lighter: {text}"))
    } else {
        Mark::Fail(bad.join("; "))
    }
}

fn table_five(h: &Harness) -> Mark {
    let r = select(&h.tables, &[TableId::T4]).into_iter().find(|r| r.n == 58).unwrap();
    let steps = census_steps(58, 17, true);
    if h.effort < Effort::Marathon || steps > h.cfg.max_steps() {
        return Mark::Skip(format!(
            "skipped_infeasible: census of C(G58) to weight 17 needs {steps} steps, {} effort cap {}",
            h.effort,
            h.cfg.max_steps()
        ));
    }
    let mut opts = CensusOptions::default();
    opts.exec = h.cfg.exec;
    opts.max_steps = h.cfg.max_steps();
    let code = GraphCode::from_support(r.support().unwrap()).unwrap();
    match partial_distribution_census(&code, 17, &opts) {
        Ok(rep) if rep.count(16) == Some(24882) && rep.count(17) == Some(0) && rep.d_min == 16 => {
            Mark::Pass("A_16 = 24882, A_17 = 0, d = 16".into())
        }
        Ok(rep) => Mark::Fail(format!("A_16 {:?}, A_17 {:?}, d {}", rep.count(16), rep.count(17), rep.d_min)),
        Err(e) => Mark::Fail(e.to_string()),
    }
}

fn table_six(h: &Harness) -> Mark {
    let with_support: Vec<_> = h.verdicts(TableId::T6).into_iter().filter(|v| v.status != Status::SkippedInfeasible).collect();
    let (fails, text) = summary(&with_support, |v| v.status != Status::Confirmed);
    if with_support.len() != 12 {
        return Mark::Fail(format!("{} rows with supports, expected 12", with_support.len()));
    }
    if fails.is_empty() {
        Mark::Pass(format!("12 rows: {text}"))
    } else {
        Mark::Fail(format!("{text}; {}", fails.join("; ")))
    }
}

fn oracle(_: &Harness) -> Mark {
    let mut checked = 0;
    for n in 1..=10 {
        for s in common::all_supports(n) {
            let want = common::naive_distribution(&s);
            let code = GraphCode::from_support(&s).unwrap();
            let got = gf4circ::wdist::full_weight_distribution(&code, Exec::Sequential).unwrap();
            if got.distribution.unwrap().counts != want {
                return Mark::Fail(format!("{n}: {:?}", s.positions()));
            }
            checked += 1;
        }
    }
    Mark::Pass(format!("{checked} supports with n<=10 agree with the dense oracle"))
}

fn proposition_one(h: &Harness) -> Mark {
    if h.effort < Effort::Marathon {
        return Mark::Skip(format!("exhaustive search at n=36 runs at marathon effort only ({} configured)", h.effort));
    }
    let opts = ExhaustiveOptions {
        exec: h.cfg.exec,
        max_len: 36,
        prescreen_iterations: 64,
        seed: h.cfg.seed,
        ..Default::default()
    };
    match exhaustive_dmax(36, &opts) {
        Ok(r) if r.best_d == 11 && r.exhaustive => Mark::Pass(format!("d_max(36) = 11 over {} supports", r.explored)),
        Ok(r) => Mark::Fail(format!("d_max(36) = {} (exhaustive {})", r.best_d, r.exhaustive)),
        Err(e) => Mark::Fail(e.to_string()),
    }
}

fn invariant_suites(_: &Harness) -> Mark {
    let shift = common::shift_invariance_suite(36, 16, 40, 500);
    let dual = common::self_duality_suite(58, 200, 100);
    if shift.ok() && dual.ok() {
        Mark::Pass(format!("{} shift cases, {} self-duality cases, no violations", shift.cases, dual.cases))
    } else {
        Mark::Fail(shift.failures.iter().chain(&dual.failures).cloned().collect::<Vec<_>>().join("; "))
    }
}

fn main() {
    let effort: Effort = std::env::var("GF4_EFFORT")
        .ok()
        .map(|s| s.parse().expect("GF4_EFFORT is quick, standard or marathon"))
        .unwrap_or(Effort::Standard);
    let strict = std::env::var("GF4_STRICT").is_ok_and(|v| v == "1");
    let mut cfg = VerifyConfig::new(effort);
    cfg.aut_budget = Duration::from_secs(60);
    let mut h = Harness { effort, cfg, tables: load_tables().expect("embedded tables load"), failed: 0 };
    println!("acceptance at {effort} effort, seed {}", h.cfg.seed);
    h.run(1, "Table 2 distribution", table_two);
    h.run(2, "Table 1 minimum weights", table_one);
    h.run(3, "type criterion suite", type_criterion);
    h.run(4, "type assignments", type_assignments);
    h.run(5, "Table 4 witnesses", table_four);
    h.run(6, "Table 5 spot check", table_five);
    h.run(7, "Table 6 graph invariants", table_six);
    h.run(8, "dense oracle equivalence", oracle);
    h.run(9, "exhaustive d_max(36)", proposition_one);
    h.run(10, "shift and self-duality suites", invariant_suites);
    println!("{} failed", h.failed);
    if strict && h.failed > 0 {
        std::process::exit(1);
    }
}
