//! `catbcast`: broadcast independence of caterpillars from the command line.

mod docs;
mod dot;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use caterpillar_broadcast::broadcast::{
    is_dominating, is_independent, is_maximal_independent, is_valid_broadcast,
};
use caterpillar_broadcast::construct::construct_witness;
use caterpillar_broadcast::formula::{beta_b, beta_b_fastpath, Instance};
use caterpillar_broadcast::harness::{self, Outcome, SweepParams};
use caterpillar_broadcast::oracle::{exact_beta_b, naive_beta_b, OracleOptions};
use caterpillar_broadcast::pattern::{
    alpha1, alpha2, find_occurrences, AlternatingFamily, CountingWindow, Variant,
};
use caterpillar_broadcast::{Caterpillar, Error, Pattern, TreeMetrics};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use docs::{load_broadcast, LoadedInstance};

const EXIT_USAGE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVARIANT: u8 = 4;
const EXIT_FINDINGS: u8 = 5;

#[derive(Parser)]
#[command(
    name = "catbcast",
    version,
    about = "Broadcast independence number of caterpillars"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InstanceArgs {
    /// Pendant counts, e.g. `1,0,2`. A single value n means the star K_1,n.
    #[arg(long, conflicts_with = "instance")]
    lambdas: Option<String>,
    /// JSON instance document: {"lambdas": [...]} or {"tree": {"n": .., "edges": [...]}}.
    #[arg(long)]
    instance: Option<PathBuf>,
}

impl InstanceArgs {
    fn load(&self) -> anyhow::Result<LoadedInstance> {
        match (&self.lambdas, &self.instance) {
            (Some(text), None) => LoadedInstance::parse_lambdas(text),
            (None, Some(path)) => LoadedInstance::load(path),
            _ => bail!("give exactly one of --lambdas and --instance"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form β_b with its breakdown.
    Beta {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "effective")]
        variant: Variant,
        #[arg(long)]
        json: bool,
    },
    /// Witness broadcast attaining the closed-form value.
    Construct {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Include the four intermediate broadcasts.
        #[arg(long)]
        trace: bool,
    },
    /// Exact β_b by exhaustive search.
    Oracle {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Enumerate all assignments instead of vertex subsets.
        #[arg(long)]
        naive: bool,
        /// Candidate-vertex limit (vertex limit with --naive).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check a broadcast file against an instance.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        broadcast: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// List occurrences of a spine pattern.
    Patterns {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Pattern text, e.g. `1+0(20)+1+` or `[2-(02-)*0`.
        pattern: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check formula, constructor and oracle over an instance family.
    Sweep {
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, default_value_t = 3)]
        lambda_cap: u32,
        #[arg(long, default_value_t = 9)]
        total_cap: u32,
        /// Keep caterpillars with adjacent trunks (the formula skips them).
        #[arg(long)]
        allow_adjacent_trunks: bool,
        /// Emit both a sequence and its reverse.
        #[arg(long)]
        no_canonicalize: bool,
        #[arg(long, default_value_t = 26)]
        budget: usize,
        #[arg(long)]
        jsonl: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the plain-text summary here instead of stdout.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Graphviz drawing, optionally labelled with broadcast values.
    ExportDot {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        broadcast: Option<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Exit status carried through `anyhow` for non-error outcomes.
#[derive(Debug)]
struct Status(u8);

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit status {}", self.0)
    }
}

impl std::error::Error for Status {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(Status(code)) = e.downcast_ref::<Status>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Unsupported(_)) => EXIT_UNSUPPORTED,
                Some(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Beta {
            inst,
            variant,
            json,
        } => cmd_beta(&mut out, &inst.load()?, variant, json),
        Command::Construct { inst, trace } => cmd_construct(&mut out, &inst.load()?, trace),
        Command::Oracle {
            inst,
            naive,
            budget,
            json,
        } => cmd_oracle(&mut out, &inst.load()?, naive, budget, json),
        Command::Verify {
            inst,
            broadcast,
            json,
        } => cmd_verify(&mut out, &inst.load()?, &broadcast, json),
        Command::Patterns {
            inst,
            pattern,
            json,
        } => cmd_patterns(&mut out, &inst.load()?, &pattern, json),
        Command::Sweep {
            k_min,
            k_max,
            lambda_cap,
            total_cap,
            allow_adjacent_trunks,
            no_canonicalize,
            budget,
            jsonl,
            csv,
            summary,
        } => {
            let params = SweepParams {
                k_min,
                k_max,
                lambda_cap,
                total_cap,
                no_adjacent_trunks: !allow_adjacent_trunks,
                canonicalize: !no_canonicalize,
                oracle_budget: budget,
            };
            cmd_sweep(
                &mut out,
                &params,
                jsonl.as_deref(),
                csv.as_deref(),
                summary.as_deref(),
            )
        }
        Command::ExportDot {
            inst,
            broadcast,
            output,
        } => cmd_export_dot(
            &mut out,
            &inst.load()?,
            broadcast.as_deref(),
            output.as_deref(),
        ),
    }
}

fn require_caterpillar<'a>(
    inst: &'a LoadedInstance,
    what: &str,
) -> anyhow::Result<&'a Caterpillar> {
    match inst {
        LoadedInstance::Caterpillar(ct) => Ok(ct),
        LoadedInstance::Star(n) => {
            Err(Error::Unsupported(caterpillar_broadcast::Unsupported::Star))
                .with_context(|| format!("{what} needs a caterpillar of length ≥ 1, got K_1,{n}"))
        }
        LoadedInstance::Tree(_) => {
            bail!("{what} needs a caterpillar given by --lambdas or a \"lambdas\" document")
        }
    }
}

fn cmd_beta(
    out: &mut impl Write,
    inst: &LoadedInstance,
    variant: Variant,
    json: bool,
) -> anyhow::Result<()> {
    let fast = match inst {
        LoadedInstance::Caterpillar(ct) => beta_b_fastpath(Instance::Caterpillar(ct)),
        LoadedInstance::Star(n) => beta_b_fastpath(Instance::Star(*n)),
        LoadedInstance::Tree(_) => None,
    };
    let result = match inst {
        LoadedInstance::Caterpillar(ct) => beta_b(ct, variant),
        LoadedInstance::Star(_) => {
            Err(Error::Unsupported(caterpillar_broadcast::Unsupported::Star))
        }
        LoadedInstance::Tree(_) => {
            bail!("beta needs a caterpillar; use `oracle` for general trees")
        }
    };
    match result {
        Ok(v) => {
            if json {
                let doc = json!({
                    "instance": inst.label(),
                    "beta_b": v.value,
                    "canonical_cost": v.canonical_cost,
                    "source": v.source,
                    "fast_path": fast.map(|(value, rule)| json!({"value": value, "rule": rule})),
                    "breakdown": v.breakdown,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                let b = &v.breakdown;
                writeln!(out, "{}: beta_b = {}", inst.label(), v.value)?;
                let side = match v.source {
                    caterpillar_broadcast::formula::WitnessSource::Canonical => {
                        "canonical 2(diam-1)"
                    }
                    caterpillar_broadcast::formula::WitnessSource::Constructed => "beta*",
                };
                writeln!(out, "  attained by      {side}")?;
                writeln!(out, "  2(diam-1)        {}", v.canonical_cost)?;
                writeln!(out, "  beta* ({})  {}", variant, b.beta_star())?;
                writeln!(out, "    leaves         {}", b.lambda_total)?;
                writeln!(out, "    trunks         {}", b.tau)?;
                writeln!(out, "    singles        {}", b.singles_term)?;
                writeln!(out, "    alpha1         {}", b.alpha1_term)?;
                writeln!(out, "    alpha2 inner   {}", b.alpha2_internal_term)?;
                writeln!(out, "    alpha2 left    {}", b.alpha2_left_term)?;
                writeln!(out, "    alpha2 right   {}", b.alpha2_right_term)?;
                if let Some((value, rule)) = fast {
                    writeln!(
                        out,
                        "  fast path        {value} ({})",
                        serde_json::to_value(rule)?.as_str().unwrap_or("")
                    )?;
                }
            }
            Ok(())
        }
        Err(Error::Unsupported(u)) => {
            if json {
                let mut doc = json!({
                    "instance": inst.label(),
                    "error": "unsupported",
                    "reason": u.code(),
                    "detail": u.to_string(),
                    "suggestion": "oracle",
                    "fast_path": fast.map(|(value, rule)| json!({"value": value, "rule": rule})),
                });
                if let caterpillar_broadcast::Unsupported::AdjacentTrunks { index } = u {
                    doc["index"] = index.into();
                }
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                writeln!(out, "{}: unsupported ({}): {u}", inst.label(), u.code())?;
                match fast {
                    Some((value, rule)) => writeln!(
                        out,
                        "fast path {}: beta_b = {value}",
                        serde_json::to_value(rule)?.as_str().unwrap_or("")
                    )?,
                    None => writeln!(out, "no fast path applies; try `catbcast oracle`")?,
                }
                if fast.is_some() {
                    writeln!(out, "for a witness, try `catbcast oracle`")?;
                }
            }
            Err(Status(EXIT_UNSUPPORTED).into())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_construct(out: &mut impl Write, inst: &LoadedInstance, trace: bool) -> anyhow::Result<()> {
    let ct = require_caterpillar(inst, "construct")?;
    let w = construct_witness(ct, Variant::Effective)?;
    let m = ct.metrics();
    if !is_independent(&m, &w.broadcast)? {
        eprintln!("internal error: constructed broadcast is not independent");
        return Err(Status(EXIT_INVARIANT).into());
    }
    let mut doc = inst.broadcast_json(&w.broadcast);
    doc["source"] = serde_json::to_value(w.source)?;
    if trace {
        let steps: Vec<serde_json::Value> = w
            .trace
            .steps
            .iter()
            .map(|b| inst.broadcast_json(b))
            .collect();
        doc["trace"] = json!({
            "steps": steps,
            "costs": w.trace.costs,
            "deltas": w.trace.deltas(),
            "step3_rewrites": w.trace.step3_rewrites,
            "step4_rewrites": w.trace.step4_rewrites,
        });
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(())
}

fn cmd_oracle(
    out: &mut impl Write,
    inst: &LoadedInstance,
    naive: bool,
    budget: Option<usize>,
    json: bool,
) -> anyhow::Result<()> {
    let m = TreeMetrics::new(inst.tree());
    if naive {
        let value = naive_beta_b(&m, budget.unwrap_or(8))?;
        if json {
            let doc = json!({"instance": inst.label(), "method": "naive", "beta_b": value});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        } else {
            writeln!(out, "{}: beta_b = {value} (naive)", inst.label())?;
        }
        return Ok(());
    }
    let options = OracleOptions {
        budget: budget.unwrap_or(OracleOptions::default().budget),
        ..Default::default()
    };
    let r = exact_beta_b(&m, &options)?;
    if json {
        let doc = json!({
            "instance": inst.label(),
            "method": "branch_and_bound",
            "beta_b": r.optimum,
            "candidates": r.candidates,
            "nodes": r.nodes,
            "witness": inst.broadcast_json(&r.witness),
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "{}: beta_b = {}", inst.label(), r.optimum)?;
        let named: Vec<String> = r
            .witness
            .broadcast_vertices()
            .into_iter()
            .map(|v| format!("{}={}", inst.vertex_name(v), r.witness.get(v)))
            .collect();
        writeln!(out, "  witness {}", named.join(" "))?;
        writeln!(
            out,
            "  {} candidates, {} search nodes",
            r.candidates, r.nodes
        )?;
    }
    Ok(())
}

fn cmd_verify(
    out: &mut impl Write,
    inst: &LoadedInstance,
    path: &Path,
    json: bool,
) -> anyhow::Result<()> {
    let m = TreeMetrics::new(inst.tree());
    let (b, stated) = load_broadcast(path, inst)?;
    let valid = is_valid_broadcast(&m, &b)?;
    let independent = if valid {
        Some(is_independent(&m, &b)?)
    } else {
        None
    };
    let dominating = if valid {
        Some(is_dominating(&m, &b)?)
    } else {
        None
    };
    let maximal = match independent {
        Some(true) => Some(is_maximal_independent(&m, &b)?),
        _ => None,
    };
    let cost = b.cost();
    if json {
        let doc = json!({
            "instance": inst.label(),
            "valid": valid,
            "independent": independent,
            "dominating": dominating,
            "maximal": maximal,
            "cost": cost,
            "stated_cost": stated,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        let show = |x: Option<bool>| match x {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        };
        writeln!(out, "{}", inst.label())?;
        writeln!(out, "  valid        {}", show(Some(valid)))?;
        writeln!(out, "  independent  {}", show(independent))?;
        writeln!(out, "  dominating   {}", show(dominating))?;
        writeln!(out, "  maximal      {}", show(maximal))?;
        writeln!(out, "  cost         {cost}")?;
    }
    if let Some(s) = stated {
        if s != cost {
            bail!("stated cost {s} differs from the computed cost {cost}");
        }
    }
    Ok(())
}

fn cmd_patterns(
    out: &mut impl Write,
    inst: &LoadedInstance,
    text: &str,
    json: bool,
) -> anyhow::Result<()> {
    let ct = require_caterpillar(inst, "patterns")?;
    let pattern = Pattern::parse(text)?;
    let families = [
        AlternatingFamily::Internal,
        AlternatingFamily::LeftAnchored,
        AlternatingFamily::RightAnchored,
    ];
    let occurrences = find_occurrences(ct, &pattern);
    let mut rows = Vec::new();
    for occ in &occurrences {
        let family = families
            .into_iter()
            .find(|&f| alpha2(ct, occ, f, Variant::Effective).is_ok());
        let a2 = |v| family.map(|f| alpha2(ct, occ, f, v).expect("shape checked"));
        rows.push(json!({
            "start": occ.start,
            "end": occ.end,
            "repetitions": occ.repetitions,
            "lambdas": &ct.lambdas()[occ.start..=occ.end],
            "alpha1": alpha1(ct, occ, CountingWindow::Whole),
            "alpha1_interior": alpha1(ct, occ, CountingWindow::Interior),
            "family": family.map(|f| f.name()),
            "alpha2_as_written": a2(Variant::AsWritten),
            "alpha2_effective": a2(Variant::Effective),
        }));
    }
    if json {
        let doc = json!({
            "instance": ct.to_string(),
            "pattern": pattern.to_string(),
            "count": occurrences.len(),
            "occurrences": rows,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(
            out,
            "{}: {} occurrence(s) of {}",
            ct,
            occurrences.len(),
            pattern
        )?;
        for r in &rows {
            write!(
                out,
                "  {}..{}  r={}  alpha1={} (interior {})",
                r["start"], r["end"], r["repetitions"], r["alpha1"], r["alpha1_interior"]
            )?;
            if let Some(f) = r["family"].as_str() {
                write!(
                    out,
                    "  {f}: alpha2 as-written={} effective={}",
                    r["alpha2_as_written"], r["alpha2_effective"]
                )?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn cmd_sweep(
    out: &mut impl Write,
    params: &SweepParams,
    jsonl: Option<&Path>,
    csv: Option<&Path>,
    summary: Option<&Path>,
) -> anyhow::Result<()> {
    let report = harness::sweep(params)?;
    if let Some(p) = jsonl {
        harness::write_jsonl(&report.records, create(p)?)?;
    }
    if let Some(p) = csv {
        harness::write_csv(&report.records, create(p)?)?;
    }
    let text = report.summary.render_text();
    match summary {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    out.flush()?;
    match report.summary.outcome() {
        Outcome::Clean => Ok(()),
        Outcome::Findings => Err(Status(EXIT_FINDINGS).into()),
        Outcome::InvariantViolation => Err(Status(EXIT_INVARIANT).into()),
    }
}

fn cmd_export_dot(
    out: &mut impl Write,
    inst: &LoadedInstance,
    broadcast: Option<&Path>,
    output: Option<&Path>,
) -> anyhow::Result<()> {
    let b = broadcast
        .map(|p| load_broadcast(p, inst))
        .transpose()?
        .map(|(b, _)| b);
    let text = match inst {
        LoadedInstance::Caterpillar(ct) => dot::caterpillar_dot(ct, b.as_ref()),
        _ => dot::tree_dot(&inst.tree(), b.as_ref()),
    };
    match output {
        Some(p) => {
            let mut w = create(p)?;
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
