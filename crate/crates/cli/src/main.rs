//! `gf4circ` command-line front end.
//!
//! Exit codes: 0 success or confirmed, 1 MISMATCH, 2 usage or input error,
//! 3 infeasible or refused (work estimate above the caps), 4 other failures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gf4circ::circulant::{parse_positions, parse_support_lines};
use gf4circ::code::{type_of_by_enumeration, ENUMERATION_TYPE_MAX_LEN};
use gf4circ::graph::invariants_with_budget;
use gf4circ::search::{
    candidate_supports, exhaustive_dmax, randomized_campaign, CampaignOptions, ExhaustiveOptions,
    EXHAUSTIVE_DEFAULT_MAX_LEN,
};
use gf4circ::tables::{load_tables, select, verify, Effort, Status, TableId, VerifyConfig};
use gf4circ::wdist::{
    census_steps, full_walk_steps, full_weight_distribution_capped, low_weight_search, min_weight_exact,
    partial_distribution_census, CensusOptions, SearchBudget, FULL_GRAY_MAX_LEN,
};
use gf4circ::{
    quantum_parameters, CirculantSupport, CodeDescriptor, EnumerationPlan, Error, Exec, GraphCode, TypeClass,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Jobs estimated above this many steps need `--yes-long`.
const LONG_JOB_STEPS: u128 = 100_000_000_000;

#[derive(Parser, Debug)]
#[command(name = "gf4circ", version, about = "Self-dual additive GF(4) codes from circulant graphs")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomized step; recorded in the output.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Allow jobs whose work estimate exceeds 1e11 steps.
    #[arg(long, global = true)]
    yes_long: bool,
    /// Step cap for a single enumeration (default: the effort's cap).
    #[arg(long, global = true)]
    max_steps: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = EffortArg::Standard)]
    effort: EffortArg,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum EffortArg {
    Quick,
    Standard,
    Marathon,
}

impl From<EffortArg> for Effort {
    fn from(e: EffortArg) -> Self {
        match e {
            EffortArg::Quick => Effort::Quick,
            EffortArg::Standard => Effort::Standard,
            EffortArg::Marathon => Effort::Marathon,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TypeArg {
    #[value(name = "I")]
    One,
    #[value(name = "II")]
    Two,
}

impl From<TypeArg> for TypeClass {
    fn from(t: TypeArg) -> Self {
        match t {
            TypeArg::One => TypeClass::TypeI,
            TypeArg::Two => TypeClass::TypeII,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    Full,
    Census,
    Isd,
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Code length.
    #[arg(long)]
    n: Option<usize>,
    /// 1-indexed support, e.g. `2,5`.
    #[arg(long, requires = "n", conflicts_with = "support_file")]
    support: Option<String>,
    /// File with `n: i1,i2,...` lines or a code descriptor JSON.
    #[arg(long)]
    support_file: Option<PathBuf>,
    /// Line of the support file to use (0-based).
    #[arg(long, default_value_t = 0)]
    line: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code: descriptor, self-duality and type.
    Build {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        claimed_d: Option<u32>,
    },
    /// Minimum weight, exact where affordable.
    Minweight {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Expected minimum weight; a different result exits with MISMATCH.
        #[arg(long)]
        claimed_d: Option<u32>,
        /// Randomized-search iterations for bounds and `--method isd`.
        #[arg(long, default_value_t = 20_000)]
        iterations: u64,
    },
    /// Full weight distribution by a Gray-code walk.
    Wdist {
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Exact counts A_0..A_w by message-weight census.
    Census {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        w_max: u32,
        /// Disable the rotation-orbit reduction.
        #[arg(long)]
        no_reduction: bool,
    },
    /// Largest minimum weight over all circulant supports of length n.
    SearchExhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_enum)]
        type_restriction: Option<TypeArg>,
        #[arg(long)]
        no_pruning: bool,
        #[arg(long, default_value_t = 0)]
        prescreen: u64,
        #[arg(long)]
        max_candidates: Option<u64>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Randomized search for a support reaching a target minimum weight.
    SearchRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: u32,
        #[arg(long = "type", value_enum)]
        type_restriction: Option<TypeArg>,
        #[arg(long, default_value_t = 1000)]
        evaluations: u64,
        #[arg(long, default_value_t = 50)]
        stagnation: u64,
        #[arg(long, default_value_t = 200)]
        screen_iterations: u64,
        #[arg(long, default_value_t = 1)]
        max_hits: usize,
        /// Certify hits exactly when the census fits this many steps.
        #[arg(long, default_value_t = 0)]
        certify_max_steps: u128,
        #[arg(long)]
        time_secs: Option<u64>,
        /// JSON-lines log of every evaluated support.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Valency, diameter, girth, clique number and automorphism group order.
    GraphInvariants {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 60)]
        aut_budget_secs: u64,
    },
    /// Recompute the embedded reference tables.
    VerifyTables {
        /// Tables to check, e.g. `T1,T4`; default all.
        #[arg(long, value_delimiter = ',')]
        tables: Vec<String>,
        /// Restrict to these lengths.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
        /// Directory for per-record evidence JSON.
        #[arg(long, default_value = "evidence")]
        evidence_dir: PathBuf,
    },
    /// Check that a message or codeword belongs to the code and report its weight.
    CheckWitness {
        #[command(flatten)]
        code: CodeArgs,
        /// Message bits, position 1 first.
        #[arg(long, conflicts_with = "codeword")]
        message: Option<String>,
        /// Codeword over `0,1,w,W`.
        #[arg(long)]
        codeword: Option<String>,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Fail(u8, anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Fail {
    fn from(e: E) -> Self {
        let e = e.into();
        let code = match e.downcast_ref::<Error>() {
            Some(Error::Parse(_) | Error::InvalidSupport(_) | Error::NotSimple(_) | Error::LengthMismatch { .. }) => 2,
            Some(Error::TooLong { .. } | Error::InfeasiblePlan(_) | Error::WorkCapExceeded { .. }) => 3,
            _ => 4,
        };
        Fail(code, e)
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, anyhow!(msg.into()))
}

fn refused(msg: impl Into<String>) -> Fail {
    Fail(3, anyhow!(msg.into()))
}

type Run = std::result::Result<u8, Fail>;

struct Ctx {
    seed: u64,
    out: Option<PathBuf>,
    yes_long: bool,
    effort: Effort,
    max_steps: u128,
    exec: Exec,
}

impl Ctx {
    /// Prints the estimate and refuses long or capped jobs.
    fn admit(&self, what: &str, steps: u128) -> std::result::Result<(), Fail> {
        eprintln!("estimate: {what}: {steps} steps");
        if steps > self.max_steps {
            return Err(refused(format!("{steps} steps exceeds the cap {}", self.max_steps)));
        }
        if steps > LONG_JOB_STEPS && !self.yes_long {
            return Err(refused(format!("{steps} steps is a long job; pass --yes-long to run it")));
        }
        Ok(())
    }

    fn emit_text(&self, text: &str) -> std::result::Result<(), Fail> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit(&self, command: &str, config: Value, result: Value) -> std::result::Result<(), Fail> {
        let doc = json!({ "command": command, "seed": self.seed, "config": config, "result": result });
        self.emit_text(&(serde_json::to_string_pretty(&doc)? + "\n"))
    }
}

fn load_support(args: &CodeArgs) -> std::result::Result<CirculantSupport, Fail> {
    match (&args.support, &args.support_file) {
        (Some(s), _) => {
            let n = args.n.ok_or_else(|| usage("--support needs --n"))?;
            Ok(CirculantSupport::new(n, parse_positions(s)?)?)
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            if text.trim_start().starts_with('{') {
                let d: CodeDescriptor = serde_json::from_str(&text).map_err(|e| usage(format!("bad descriptor: {e}")))?;
                return Ok(CirculantSupport::new(d.n, d.support)?);
            }
            let lines = parse_support_lines(&text)?;
            let s = lines
                .get(args.line)
                .cloned()
                .ok_or_else(|| usage(format!("{} has no support line {}", path.display(), args.line)))?;
            match args.n {
                Some(n) if n != s.n() => Err(usage(format!("--n {n} but the file gives n={}", s.n()))),
                _ => Ok(s),
            }
        }
        (None, None) => Err(usage("give --n with --support, or --support-file")),
    }
}

fn code_config(s: &CirculantSupport) -> Value {
    json!({ "n": s.n(), "support": s.positions() })
}

fn cmd_build(ctx: &Ctx, args: &CodeArgs, claimed_d: Option<u32>) -> Run {
    let s = load_support(args)?;
    let code = GraphCode::from_support(&s)?;
    let desc = code.descriptor(claimed_d).expect("circulant code");
    let by_enumeration = if s.n() <= ENUMERATION_TYPE_MAX_LEN {
        Some(type_of_by_enumeration(&code)?)
    } else {
        None
    };
    eprintln!("n={} |S|={} {}, self-dual", s.n(), s.len(), code.type_class());
    let result = json!({
        "descriptor": desc,
        "self_dual": true,
        "type": code.type_class(),
        "type_by_enumeration": by_enumeration,
        "valency": s.len(),
    });
    ctx.emit("build", code_config(&s), result)?;
    Ok(0)
}

fn cmd_minweight(ctx: &Ctx, args: &CodeArgs, method: Method, claimed_d: Option<u32>, iterations: u64) -> Run {
    let s = load_support(args)?;
    let code = GraphCode::from_support(&s)?;
    let n = s.n();
    let config = json!({ "n": n, "support": s.positions(), "method": format!("{method:?}").to_lowercase(),
        "claimed_d": claimed_d, "iterations": iterations, "max_steps": ctx.max_steps.to_string() });
    let budget = SearchBudget::iterations(iterations).with_exec(ctx.exec);

    if let Method::Isd = method {
        let out = low_weight_search(&code, claimed_d.unwrap_or(0), &budget, ctx.seed)?;
        let lowest = out.lowest_seen();
        eprintln!("upper bound d <= {lowest:?} after {} iterations", out.iterations);
        let status = match (claimed_d, lowest) {
            (Some(d), Some(w)) if w < d => 1,
            _ => 0,
        };
        ctx.emit("minweight", config, json!({ "certification": { "kind": "upper_bound_only" }, "d_upper": lowest, "search": out }))?;
        return Ok(status);
    }

    // A quick randomized bound sizes the census: it needs levels below the bound.
    let bound = match claimed_d {
        Some(d) => d,
        None => low_weight_search(&code, 0, &budget, ctx.seed)?
            .lowest_seen()
            .unwrap_or(n as u32),
    };
    let census_cost = census_steps(n, bound.saturating_sub(1), true);
    let full_cost = if n <= FULL_GRAY_MAX_LEN { full_walk_steps(n) } else { u128::MAX };
    let use_full = match method {
        Method::Full => true,
        Method::Census => false,
        _ => full_cost < census_cost,
    };
    let (what, cost) = if use_full { ("full Gray walk", full_cost) } else { ("message-weight census", census_cost) };
    if let Method::Auto = method {
        if cost > ctx.max_steps || (cost > LONG_JOB_STEPS && !ctx.yes_long) {
            eprintln!("estimate: exact {what}: {cost} steps; reporting the randomized upper bound instead");
            let out = low_weight_search(&code, 0, &budget, ctx.seed)?;
            ctx.emit("minweight", config, json!({ "certification": { "kind": "upper_bound_only" }, "d_upper": out.lowest_seen(), "search": out }))?;
            return Ok(match (claimed_d, out.lowest_seen()) {
                (Some(d), Some(w)) if w < d => 1,
                _ => 0,
            });
        }
    }
    ctx.admit(what, cost)?;
    let plan = if use_full {
        EnumerationPlan::full()
    } else {
        EnumerationPlan::census(n as u32)
    };
    let plan = plan.with_exec(ctx.exec).with_max_steps(ctx.max_steps);
    let report = if use_full {
        let mut r = full_weight_distribution_capped(&code, ctx.exec, FULL_GRAY_MAX_LEN)?;
        r.distribution = None;
        r
    } else {
        min_weight_exact(&code, &plan)?
    };
    let q = quantum_parameters(&code, &report)?;
    eprintln!("d={} ({}), quantum {q}", report.d_min, report.certification);
    let status = match claimed_d {
        Some(d) if report.is_exact() && report.d_min != d => 1,
        Some(d) if report.d_min < d => 1,
        _ => 0,
    };
    ctx.emit("minweight", config, json!({ "report": report, "quantum": q.to_string() }))?;
    Ok(status)
}

fn cmd_wdist(ctx: &Ctx, args: &CodeArgs) -> Run {
    let s = load_support(args)?;
    let code = GraphCode::from_support(&s)?;
    if s.n() > FULL_GRAY_MAX_LEN && !ctx.yes_long {
        return Err(refused(format!("n={} is above {FULL_GRAY_MAX_LEN}; pass --yes-long", s.n())));
    }
    ctx.admit("full Gray walk", full_walk_steps(s.n()))?;
    let report = full_weight_distribution_capped(&code, ctx.exec, s.n())?;
    eprintln!("d={}, {} codewords", report.d_min, report.distribution.as_ref().map_or(0, |d| d.total()));
    ctx.emit("wdist", code_config(&s), serde_json::to_value(&report)?)?;
    Ok(0)
}

fn cmd_census(ctx: &Ctx, args: &CodeArgs, w_max: u32, no_reduction: bool) -> Run {
    let s = load_support(args)?;
    let code = GraphCode::from_support(&s)?;
    ctx.admit("message-weight census", census_steps(s.n(), w_max, !no_reduction))?;
    let mut opts = CensusOptions::default();
    opts.exec = ctx.exec;
    opts.orbit_reduction = !no_reduction;
    opts.max_steps = ctx.max_steps;
    let report = partial_distribution_census(&code, w_max, &opts)?;
    eprintln!("A_0..A_{w_max} exact; d={} ({})", report.d_min, report.certification);
    let mut config = code_config(&s);
    config["w_max"] = json!(w_max);
    config["orbit_reduction"] = json!(!no_reduction);
    ctx.emit("census", config, serde_json::to_value(&report)?)?;
    Ok(0)
}

fn cmd_search_exhaustive(
    ctx: &Ctx,
    n: usize,
    restriction: Option<TypeClass>,
    pruning: bool,
    prescreen: u64,
    max_candidates: Option<u64>,
    checkpoint: Option<PathBuf>,
) -> Run {
    if n > EXHAUSTIVE_DEFAULT_MAX_LEN && !ctx.yes_long {
        return Err(refused(format!(
            "exhaustive search beyond n={EXHAUSTIVE_DEFAULT_MAX_LEN} is a long job; pass --yes-long"
        )));
    }
    if n > 64 {
        return Err(usage("exhaustive search supports n <= 64"));
    }
    let candidates = candidate_supports(n, restriction, pruning)?.len();
    eprintln!("estimate: {candidates} candidate supports, each certified by census");
    let opts = ExhaustiveOptions {
        type_restriction: restriction,
        multiplier_pruning: pruning,
        prescreen_iterations: prescreen,
        exec: ctx.exec,
        max_len: n.max(EXHAUSTIVE_DEFAULT_MAX_LEN),
        max_candidates,
        checkpoint,
        seed: ctx.seed,
        ..Default::default()
    };
    let r = exhaustive_dmax(n, &opts)?;
    eprintln!("n={n}: d_max={} over {} supports{}", r.best_d, r.explored, if r.exhaustive { "" } else { " (partial)" });
    let config = json!({ "n": n, "type": restriction, "multiplier_pruning": pruning, "prescreen": prescreen,
        "max_candidates": max_candidates });
    ctx.emit("search-exhaustive", config, serde_json::to_value(&r)?)?;
    Ok(0)
}

fn cmd_verify_tables(ctx: &Ctx, tables: &[String], lengths: &[usize], evidence_dir: &Path) -> Run {
    if ctx.effort == Effort::Marathon && !ctx.yes_long {
        return Err(refused("marathon effort runs for many hours; pass --yes-long"));
    }
    let ids = tables
        .iter()
        .map(|t| t.parse::<TableId>().map_err(|e| usage(e.to_string())))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let all = load_tables()?;
    let picked: Vec<_> = select(&all, &ids)
        .into_iter()
        .filter(|r| lengths.is_empty() || lengths.contains(&r.n))
        .collect();
    eprintln!(
        "estimate: {} records at {} effort, cap {} steps per enumeration",
        picked.len(),
        ctx.effort,
        ctx.max_steps
    );
    fs::create_dir_all(evidence_dir).with_context(|| format!("creating {}", evidence_dir.display()))?;
    let cfg = VerifyConfig {
        exec: ctx.exec,
        seed: ctx.seed,
        max_steps: Some(ctx.max_steps),
        ..VerifyConfig::new(ctx.effort)
    };
    let mut text = format!("# effort={} seed={} records={}\n", ctx.effort, ctx.seed, picked.len());
    let (mut mismatches, mut skipped) = (0, 0);
    for r in &picked {
        let v = verify(r, &all, &cfg);
        let path = evidence_dir.join(format!("{}.json", v.id.replace(':', "_")));
        fs::write(&path, serde_json::to_string_pretty(&v)? + "\n")?;
        let line = format!("{}\t{}\t{}\t{}\n", v.id, v.status, path.display(), v.detail);
        eprint!("{line}");
        text.push_str(&line);
        match v.status {
            Status::Mismatch => mismatches += 1,
            Status::SkippedInfeasible => skipped += 1,
            _ => {}
        }
    }
    ctx.emit_text(&text)?;
    Ok(if mismatches > 0 {
        1
    } else if !picked.is_empty() && skipped == picked.len() {
        3
    } else {
        0
    })
}

fn cmd_check_witness(ctx: &Ctx, args: &CodeArgs, message: Option<&str>, codeword: Option<&str>) -> Run {
    let s = load_support(args)?;
    let code = GraphCode::from_support(&s)?;
    let n = s.n();
    let bits: String = match (message, codeword) {
        (Some(m), _) => m.trim().to_string(),
        // the message sits in the ω-component
        (None, Some(c)) => c
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' | '1' => Ok('0'),
                'w' | 'W' => Ok('1'),
                _ => Err(usage(format!("invalid codeword symbol {ch:?}"))),
            })
            .collect::<std::result::Result<_, _>>()?,
        (None, None) => return Err(usage("give --message or --codeword")),
    };
    if bits.len() != n {
        return Err(usage(format!("expected {n} symbols, got {}", bits.len())));
    }
    let word = code.encode_bits(&bits)?;
    let rendered = word.to_string();
    let member = codeword.is_none_or(|c| c.trim() == rendered);
    eprintln!("weight {}{}", word.weight(), if member { "" } else { "; codeword is NOT in the code" });
    let mut config = code_config(&s);
    config["message"] = json!(message);
    config["codeword"] = json!(codeword);
    ctx.emit(
        "check-witness",
        config,
        json!({ "message": bits, "codeword": rendered, "weight": word.weight(), "member": member }),
    )?;
    Ok(if member { 0 } else { 1 })
}

fn run(cli: Cli) -> Run {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    if cli.max_steps == Some(0) {
        return Err(usage("--max-steps must be positive"));
    }
    let effort = Effort::from(cli.effort);
    let ctx = Ctx {
        seed: cli.seed,
        out: cli.out,
        yes_long: cli.yes_long,
        effort,
        max_steps: cli.max_steps.unwrap_or(effort.max_steps()),
        exec: Exec::Parallel,
    };
    match cli.cmd {
        Command::Build { code, claimed_d } => cmd_build(&ctx, &code, claimed_d),
        Command::Minweight { code, method, claimed_d, iterations } => {
            cmd_minweight(&ctx, &code, method, claimed_d, iterations)
        }
        Command::Wdist { code } => cmd_wdist(&ctx, &code),
        Command::Census { code, w_max, no_reduction } => cmd_census(&ctx, &code, w_max, no_reduction),
        Command::SearchExhaustive { n, type_restriction, no_pruning, prescreen, max_candidates, checkpoint } => {
            cmd_search_exhaustive(
                &ctx,
                n,
                type_restriction.map(Into::into),
                !no_pruning,
                prescreen,
                max_candidates,
                checkpoint,
            )
        }
        Command::SearchRandom {
            n,
            target,
            type_restriction,
            evaluations,
            stagnation,
            screen_iterations,
            max_hits,
            certify_max_steps,
            time_secs,
            log,
        } => {
            eprintln!("estimate: {evaluations} supports x {screen_iterations} screening iterations");
            let opts = CampaignOptions {
                seed: ctx.seed,
                type_restriction: type_restriction.map(Into::into),
                evaluations,
                stagnation,
                screen_iterations,
                max_hits,
                certify_max_steps: certify_max_steps.min(ctx.max_steps),
                time: time_secs.map(Duration::from_secs),
                exec: ctx.exec,
                log: log.clone(),
            };
            let r = randomized_campaign(n, target, &opts)?;
            eprintln!("n={n}: best lightest weight {} over {} supports, {} hits", r.best_d, r.explored, r.witnesses.len());
            let config = json!({ "n": n, "target": target, "type": opts.type_restriction, "evaluations": evaluations,
                "stagnation": stagnation, "screen_iterations": screen_iterations, "max_hits": max_hits,
                "certify_max_steps": opts.certify_max_steps.to_string(), "log": log });
            ctx.emit("search-random", config, serde_json::to_value(&r)?)?;
            Ok(0)
        }
        Command::GraphInvariants { code, aut_budget_secs } => {
            let s = load_support(&code)?;
            let inv = invariants_with_budget(&s.adjacency(), Some(Duration::from_secs(aut_budget_secs)))?;
            eprintln!(
                "k={:?} diameter={} girth={} clique={} |Aut|={}",
                inv.valency, inv.diameter, inv.girth, inv.clique_number, inv.aut_order
            );
            let mut config = code_config(&s);
            config["aut_budget_secs"] = json!(aut_budget_secs);
            ctx.emit("graph-invariants", config, serde_json::to_value(&inv)?)?;
            Ok(0)
        }
        Command::VerifyTables { tables, lengths, evidence_dir } => {
            cmd_verify_tables(&ctx, &tables, &lengths, &evidence_dir)
        }
        Command::CheckWitness { code, message, codeword } => {
            cmd_check_witness(&ctx, &code, message.as_deref(), codeword.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
