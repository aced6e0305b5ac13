mod claims;
mod input;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use oddthick::coloring::{chromatic_number, ColoringFile};
use oddthick::critical::search_critical;
use oddthick::discharging::{embed_partition, surplus_analysis};
use oddthick::generate::GraphSpec;
use oddthick::planarity::{thickness, RotationFile};
use oddthick::sampling::random_planar_graph;
use oddthick::{
    enumerate, is_odd_k_minor_critical, odd_chromatic_number, odd_verdict, serialize_graph,
    verify_certificate, Budget, EdgePartition, Format, Graph, OddChromatic, PlaneEmbedding, ThicknessOutcome,
    VertexColoring,
};

use crate::claims::{Context, Status, Tier};
use crate::input::{read_corpus, GraphInput};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "oddthick", version, about = "Odd colorings, thickness and discharging checks for small graphs")]
struct Cli {
    /// Directory for JSON/CSV reports
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (results do not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search-node budget per solver call
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget per solver call
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute χ or χₒ with a witness coloring
    Solve(SolveArgs),
    /// Check a coloring file against a graph
    Verify(VerifyArgs),
    /// Write graphs in graph6 (or another format)
    Generate(GenerateArgs),
    /// Exact thickness with an edge-partition certificate
    Thickness(ThicknessArgs),
    /// Search for odd k-critical (or minor-critical) graphs
    Critical(CriticalArgs),
    /// Charge bookkeeping for a thickness certificate
    Discharge(DischargeArgs),
    /// Re-check the built-in list of claims
    Claims(ClaimsArgs),
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Odd chromatic number (default)
    #[arg(long, conflicts_with = "chromatic")]
    odd: bool,
    /// Ordinary chromatic number
    #[arg(long)]
    chromatic: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: GraphInput,
    /// JSON coloring: {"colors": {"0": 1, ...}, "palette_size": k}
    #[arg(long, value_name = "PATH")]
    coloring: PathBuf,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Generator expression, e.g. "star_subdivision(4)"
    #[arg(long, group = "source")]
    family: Option<String>,
    /// All connected graphs up to this order, one per isomorphism class
    #[arg(long, group = "source", value_name = "N")]
    connected: Option<usize>,
    /// This many random planar graphs
    #[arg(long, group = "source", value_name = "COUNT")]
    random_planar: Option<usize>,
    #[arg(long, default_value_t = 12)]
    max_order: usize,
    #[arg(long, default_value_t = 3)]
    min_girth: usize,
    #[arg(long, default_value = "graph6")]
    format: String,
}

#[derive(Debug, Args)]
struct ThicknessArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value_t = 3)]
    t_max: usize,
}

#[derive(Debug, Args)]
struct CriticalArgs {
    #[arg(long)]
    k: usize,
    /// Search all connected graphs up to this order
    #[arg(long, value_name = "N", conflicts_with = "corpus")]
    n_max: Option<usize>,
    /// graph6 corpus file
    #[arg(long, value_name = "PATH")]
    corpus: Option<PathBuf>,
    /// Minor-closed variant (orders up to 6)
    #[arg(long)]
    minor: bool,
}

#[derive(Debug, Args)]
struct DischargeArgs {
    #[command(flatten)]
    input: GraphInput,
    /// JSON list of edge lists; computed by thickness search when omitted
    #[arg(long, value_name = "PATH")]
    partition: Option<PathBuf>,
    /// JSON list of per-layer rotation systems; computed when omitted
    #[arg(long, value_name = "PATH")]
    embeddings: Option<PathBuf>,
    /// Number of layers; defaults to the partition's
    #[arg(long)]
    t: Option<usize>,
}

#[derive(Debug, Args)]
struct ClaimsArgs {
    #[arg(long, value_enum, default_value_t = Tier::Smoke)]
    tier: Tier,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget { max_nodes: cli.budget_nodes, max_time: None };
    if let Some(s) = cli.budget_seconds {
        b = b.with_time(Duration::from_secs(s));
    }
    b
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve(a) => solve(cli, a),
        Command::Verify(a) => verify(cli, a),
        Command::Generate(a) => generate(cli, a),
        Command::Thickness(a) => thickness_cmd(cli, a),
        Command::Critical(a) => critical(cli, a),
        Command::Discharge(a) => discharge(cli, a),
        Command::Claims(a) => claims_cmd(cli, a),
    }
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

/// Writes `<out>/<name>` when an output directory was given.
fn emit(cli: &Cli, name: &str, body: &str) -> Result<()> {
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let path = dir.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn solve(cli: &Cli, a: &SolveArgs) -> Result<u8> {
    let g = a.input.load()?;
    if a.chromatic {
        let (k, c) = chromatic_number(&g)?;
        let report = json!({ "chi": k, "witness": c.to_json() });
        println!("chi = {k}");
        println!("{}", serde_json::to_string(&c.to_json())?);
        emit(cli, "solve.json", &(pretty(&report)? + "\n"))?;
        return Ok(0);
    }
    match odd_chromatic_number(&g, budget(cli))? {
        OddChromatic::Exact { k, witness, refuted } => {
            println!("chi_o = {k}");
            println!("{}", serde_json::to_string(&witness.to_json())?);
            let report = json!({ "chi_o": k, "witness": witness.to_json(), "refuted": refuted });
            emit(cli, "solve.json", &(pretty(&report)? + "\n"))?;
            Ok(0)
        }
        OddChromatic::Unknown { lower, upper, witness } => {
            println!("chi_o in [{lower}, {upper}] (budget exhausted)");
            println!("{}", serde_json::to_string(&witness.to_json())?);
            let report = json!({ "lower": lower, "upper": upper, "witness": witness.to_json() });
            emit(cli, "solve.json", &(pretty(&report)? + "\n"))?;
            Ok(EXIT_BUDGET)
        }
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<u8> {
    let g = a.input.load()?;
    let text = fs::read_to_string(&a.coloring).with_context(|| format!("reading {}", a.coloring.display()))?;
    let file: ColoringFile = serde_json::from_str(&text).context("parsing coloring JSON")?;
    let c = VertexColoring::from_json(&file, g.n())?;
    let v = odd_verdict(&g, &c)?;
    emit(cli, "verdict.json", &(pretty(&v)? + "\n"))?;
    if v.is_odd() {
        println!("odd coloring with {} colors", c.palette_size());
        return Ok(0);
    }
    if !v.is_proper {
        println!("not proper");
    }
    for &w in &v.failing_parity {
        println!("parity fails at vertex {w}");
    }
    Ok(EXIT_FAILED)
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Result<u8> {
    let format: Format = a.format.parse().map_err(anyhow::Error::msg)?;
    let graphs: Vec<Graph> = if let Some(spec) = &a.family {
        vec![spec.parse::<GraphSpec>()?.build()?]
    } else if let Some(n) = a.connected {
        enumerate::connected_graphs(n)?
    } else if let Some(count) = a.random_planar {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        (0..count).map(|_| random_planar_graph(1, a.max_order, a.min_girth, &mut rng)).collect()
    } else {
        bail!("give one of --family, --connected, --random-planar");
    };
    let mut body = String::new();
    for g in &graphs {
        let s = serialize_graph(g, format);
        body.push_str(&s);
        if !s.ends_with('\n') {
            body.push('\n');
        }
    }
    match &cli.out {
        Some(_) => emit(cli, &format!("graphs.{}", extension(format)), &body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(0)
}

fn extension(f: Format) -> &'static str {
    match f {
        Format::Graph6 => "g6",
        Format::EdgeList => "edges",
        Format::Dimacs => "col",
    }
}

fn thickness_cmd(cli: &Cli, a: &ThicknessArgs) -> Result<u8> {
    let g = a.input.load()?;
    let outcome = thickness(&g, a.t_max, budget(cli));
    let (line, report, code) = match &outcome {
        ThicknessOutcome::Exact { theta, certificate } => {
            (format!("theta = {theta}"), json!({ "theta": theta, "certificate": certificate }), 0)
        }
        ThicknessOutcome::ExceedsMax { lower, upper, best } => (
            format!("theta > {}", a.t_max),
            json!({ "lower": lower, "upper": upper, "best": best }),
            0,
        ),
        ThicknessOutcome::Unknown { lower, upper, best } => (
            format!("theta in [{lower}, {}] (budget exhausted)", upper.map_or("?".into(), |u| u.to_string())),
            json!({ "lower": lower, "upper": upper, "best": best }),
            EXIT_BUDGET,
        ),
    };
    println!("{line}");
    if let Some(p) = outcome.certificate() {
        println!("{}", serde_json::to_string(p)?);
        emit(cli, "partition.json", &(serde_json::to_string(p)? + "\n"))?;
    }
    emit(cli, "thickness.json", &(pretty(&report)? + "\n"))?;
    Ok(code)
}

fn critical(cli: &Cli, a: &CriticalArgs) -> Result<u8> {
    let (corpus, skipped) = match (&a.corpus, a.n_max) {
        (Some(p), _) => read_corpus(p)?,
        (None, Some(n)) => (enumerate::connected_graphs(n)?, 0),
        (None, None) => bail!("give --n-max or --corpus"),
    };
    let b = budget(cli);
    let mut lines = Vec::new();
    let mut csv_rows = Vec::new();
    let mut exhausted = 0;
    if a.minor {
        for g in &corpus {
            match is_odd_k_minor_critical(g, a.k, b) {
                Ok(r) if r.is_minor_critical => {
                    println!("{}", r.graph_key);
                    csv_rows.push(vec![r.graph_key.clone(), g.n().to_string(), g.m().to_string(), a.k.to_string(), "true".into(), String::new()]);
                    lines.push(serde_json::to_string(&r)?);
                }
                Ok(_) => {}
                Err(e) => {
                    log::warn!("{e}");
                    exhausted += 1;
                }
            }
        }
    } else {
        let (found, refused) = search_critical(a.k, &corpus, b)?;
        exhausted += refused;
        for r in &found {
            println!("{}", r.graph_key);
            let flags: Vec<String> =
                r.lemma_checks.iter().map(|(name, c)| format!("{name}={}", if c.pass { "pass" } else { "fail" })).collect();
            csv_rows.push(vec![r.graph_key.clone(), r.n.to_string(), r.m.to_string(), r.k.to_string(), "true".into(), flags.join(";")]);
            lines.push(serde_json::to_string(r)?);
        }
        if let Some(bad) = found.iter().find(|r| !r.lemma_checks.values().all(|c| c.pass)) {
            eprintln!("structural check failed on {}: {}", bad.graph_key, pretty(&bad.lemma_checks)?);
            return Ok(EXIT_FAILED);
        }
    }
    eprintln!("{} found, {} undecided, {} unreadable", csv_rows.len(), exhausted, skipped);
    if let Some(dir) = &cli.out {
        emit(cli, "reports.jsonl", &lines.iter().map(|l| format!("{l}\n")).collect::<String>())?;
        let mut w = csv::Writer::from_path(dir.join("summary.csv"))?;
        w.write_record(["graph", "n", "m", "k", "critical", "lemma_flags"])?;
        for row in &csv_rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(if exhausted > 0 { EXIT_BUDGET } else { 0 })
}

fn read_json<T: serde::de::DeserializeOwned>(p: &Path) -> Result<T> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))
}

fn discharge(cli: &Cli, a: &DischargeArgs) -> Result<u8> {
    let g = a.input.load()?;
    let partition: EdgePartition = match &a.partition {
        Some(p) => read_json(p)?,
        None => match thickness(&g, a.t.unwrap_or(3), budget(cli)) {
            ThicknessOutcome::Exact { certificate, .. } => certificate,
            _ => {
                eprintln!("no thickness certificate within budget; pass --partition");
                return Ok(EXIT_BUDGET);
            }
        },
    };
    let embeddings: Vec<PlaneEmbedding> = match &a.embeddings {
        Some(p) => {
            let rotations: Vec<RotationFile> = read_json(p)?;
            let layers = partition.layers(&g);
            if layers.len() != rotations.len() {
                bail!("{} rotation systems for {} layers", rotations.len(), layers.len());
            }
            layers
                .iter()
                .zip(rotations)
                .map(|(h, r)| PlaneEmbedding::from_rotation(h, r.rotation).map_err(anyhow::Error::from))
                .collect::<Result<_>>()?
        }
        None => embed_partition(&g, &partition)?,
    };
    let t = a.t.unwrap_or(partition.t());
    let report = verify_certificate(&g, &partition, &embeddings, t)?;
    let surplus = surplus_analysis(&report);
    println!("S = {}, S* = {}", report.s, report.s_star);
    println!(
        "face violations: {}, vertex violations: {}",
        report.face_violations.len(),
        report.vertex_violations.len()
    );
    let body = pretty(&json!({ "report": report, "surplus": surplus }))? + "\n";
    match &cli.out {
        Some(_) => emit(cli, "discharge.json", &body)?,
        None => print!("{body}"),
    }
    let conserved = report.s == -6 * t as i64 && report.s_star == report.s;
    Ok(if conserved { 0 } else { EXIT_FAILED })
}

fn claims_cmd(cli: &Cli, a: &ClaimsArgs) -> Result<u8> {
    let ctx = Context::new(a.tier, cli.seed, cli.budget_nodes, cli.budget_seconds);
    let results = claims::run_all(&ctx, cli.out.as_deref(), |r| {
        println!("{:<28} {:<15} {}", r.claim_id, r.status, r.statement);
    })?;
    let refuted = results.iter().any(|r| r.status == Status::Refuted);
    let exhausted = results.iter().any(|r| r.exhausted);
    Ok(if refuted {
        EXIT_FAILED
    } else if exhausted {
        EXIT_BUDGET
    } else {
        0
    })
}
