//! `biclique` command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input or failed validation, 2 guard or
//! budget exceeded, 3 usage error. Text goes to stdout; `--json <path>`
//! additionally writes a versioned JSON report; `--json -` replaces the text
//! on stdout with the report.
//!
//! The oracle time budget defaults to `$BICLIQUE_TIME_BUDGET` seconds when
//! set, and `--limits time_budget=<secs>` overrides both.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coloring::{colors_bound, invert_bound, mv_color, theorem1_bound, verify_proper};
use crate::format::{parse_graph, parse_system, write_graph, write_system};
use crate::generators::{
    complete_graph, complete_multipartite, gp_star_partition, ks_code_cover, random_biclique_union, GeneratorError,
};
use crate::graph::{BicliqueSystem, Graph};
use crate::hansel::{
    derandomized_extract, enumerate_mean_survivors, expected_survivors, randomized_extract, weight_guarantee,
    HanselError, ENUMERATION_GUARD,
};
use crate::oracles::{
    chromatic_number, independence_number, min_biclique_partition, min_cover_weight, OracleError, OracleLimits,
};
use crate::peeling::{analyze_trace, peel, theorem3_bound, PeelError};
use crate::report::big_json;

pub const SCHEMA_VERSION: u32 = 1;
pub const TIME_BUDGET_ENV: &str = "BICLIQUE_TIME_BUDGET";

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_RESOURCE: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "biclique",
    version,
    about = "Biclique partitions, covers and chromatic number"
)]
struct Cli {
    /// Also write a JSON report to this path (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Oracle limit overrides, e.g. `max_vertices_coloring=24,time_budget=30`.
    #[arg(long, global = true, value_name = "KEY=VALUE,...")]
    limits: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check partition or cover structure.
    #[command(subcommand)]
    Validate(ValidateCmd),
    /// Staged coloring of an edge-disjoint system.
    Color {
        system: PathBuf,
        /// Include per-stage group records.
        #[arg(long)]
        trace: bool,
    },
    /// Independent sets by side deletion.
    #[command(subcommand)]
    Hansel(HanselCmd),
    /// Peel Hansel independent sets while at least k vertices remain.
    Peel {
        graph: PathBuf,
        system: PathBuf,
        /// Threshold; defaults to the exact chromatic number.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact solvers.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Emit generated graphs and systems.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Evaluate bound functions.
    #[command(subcommand)]
    Bounds(BoundsCmd),
}

#[derive(Subcommand, Debug)]
enum ValidateCmd {
    /// Check that no edge lies in two bicliques.
    Partition { system: PathBuf },
    /// Check that the system's union is exactly the graph.
    Cover { system: PathBuf, graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum HanselCmd {
    /// Delete one side of every biclique uniformly at random (uses --seed).
    Random { system: PathBuf },
    /// Delete sides greedily by conditional expectation.
    Derand { system: PathBuf },
    /// Exact expected survivor count.
    Expect { system: PathBuf },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// Chromatic number.
    Chi { graph: PathBuf },
    /// Independence number.
    Alpha { graph: PathBuf },
    /// Minimum biclique partition size.
    Bp { graph: PathBuf },
    /// Minimum biclique cover weight.
    Mincover { graph: PathBuf },
}

#[derive(Args, Debug)]
struct OutArg {
    /// Write the generated file here instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Complete graph K_k.
    Kk {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Complete multipartite graph with the given part sizes.
    Multipartite {
        /// Comma-separated part sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Star partition of the complete multipartite graph.
    Gpstars {
        /// Comma-separated part sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Binary-code cover of K_k.
    Kscode {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Seeded union of m edge-disjoint bicliques (uses --seed).
    Random {
        /// Vertex count.
        #[arg(long)]
        n: usize,
        /// Biclique count.
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Color-count bound N(m).
    Colors {
        #[arg(long)]
        m: u64,
    },
    /// Smallest m with N(m) >= k.
    Invert {
        #[arg(long)]
        k: u64,
    },
    /// Asymptotic lower bound on the partition number of a k-chromatic graph.
    Thm1 {
        #[arg(long)]
        k: f64,
    },
    /// Asymptotic lower bound on the cover weight of a k-chromatic graph.
    Thm3 {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invalid(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<HanselError> for CliError {
    fn from(e: HanselError) -> Self {
        match e {
            HanselError::Domain { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl From<GeneratorError> for CliError {
    fn from(e: GeneratorError) -> Self {
        match e {
            GeneratorError::Capacity { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

/// JSON report. `timings_ms` is the only field allowed to differ between
/// identical invocations.
#[derive(Serialize)]
pub struct RunReport {
    schema: u32,
    command: String,
    inputs: Vec<InputDigest>,
    seed: Option<u64>,
    results: Value,
    timings_ms: Value,
}

struct Ctx {
    inputs: Vec<InputDigest>,
    phases: Vec<(&'static str, Duration)>,
    text: String,
    seed_used: bool,
    exit: u8,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let start = Instant::now();
        let bytes = fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        });
        self.phases.push(("read", start.elapsed()));
        String::from_utf8(bytes).map_err(|_| CliError::Invalid(format!("{}: not UTF-8", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    fn system(&mut self, path: &Path) -> Result<BicliqueSystem, CliError> {
        let text = self.read(path)?;
        parse_system(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }

    fn timed<T>(&mut self, phase: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases.push((phase, start.elapsed()));
        out
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

fn parse_limits(overrides: Option<&str>) -> Result<OracleLimits, CliError> {
    let mut limits = OracleLimits::default();
    let mut budget_from_flag = false;
    for item in overrides.unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("limit `{item}` is not KEY=VALUE")))?;
        let int = || -> Result<usize, CliError> {
            match value.trim().parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(CliError::Usage(format!("limit {key} needs a positive integer"))),
            }
        };
        match key.trim() {
            "max_vertices_coloring" => limits.max_vertices_coloring = int()?,
            "max_edges_partition" => limits.max_edges_partition = int()?,
            "max_edges_cover_weight" => limits.max_edges_cover_weight = int()?,
            "time_budget" => {
                let secs: f64 = value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage("time_budget needs seconds".into()))?;
                limits.time_budget = seconds(secs)?;
                budget_from_flag = true;
            }
            other => return Err(CliError::Usage(format!("unknown limit `{other}`"))),
        }
    }
    if !budget_from_flag {
        if let Ok(raw) = std::env::var(TIME_BUDGET_ENV) {
            let secs: f64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TIME_BUDGET_ENV} must be a number of seconds")))?;
            limits.time_budget = seconds(secs)?;
        }
    }
    Ok(limits)
}

fn seconds(secs: f64) -> Result<Duration, CliError> {
    if secs.is_finite() && secs > 0.0 {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err(CliError::Usage("time budget must be positive".into()))
    }
}

fn edge_json(e: (usize, usize)) -> Value {
    json!([e.0, e.1])
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    let mut ctx = Ctx {
        inputs: Vec::new(),
        phases: Vec::new(),
        text: String::new(),
        seed_used: false,
        exit: EXIT_OK,
    };
    let name = command_name(&cli.command);
    let outcome = dispatch(&cli, &mut ctx);
    let json_to_stdout = cli.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout {
        let _ = out.write_all(ctx.text.as_bytes());
    }
    let results = match outcome {
        Ok(v) => v,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            ctx.exit = e.code();
            json!({ "error": e.message() })
        }
    };
    if let Some(path) = &cli.json {
        let report = RunReport {
            schema: SCHEMA_VERSION,
            command: name,
            inputs: std::mem::take(&mut ctx.inputs),
            seed: ctx.seed_used.then_some(cli.seed),
            results,
            timings_ms: Value::Object(ctx.phases.iter().fold(serde_json::Map::new(), |mut m, (phase, d)| {
                let prev = m.get(*phase).and_then(Value::as_f64).unwrap_or(0.0);
                m.insert(phase.to_string(), json!(prev + d.as_secs_f64() * 1e3));
                m
            })),
        };
        let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        let written = if path.as_os_str() == "-" {
            out.write_all(body.as_bytes()).map_err(|e| e.to_string())
        } else {
            fs::write(path, body).map_err(|e| e.to_string())
        };
        if let Err(e) = written {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    ctx.exit
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Validate(ValidateCmd::Partition { .. }) => "validate partition",
        Command::Validate(ValidateCmd::Cover { .. }) => "validate cover",
        Command::Color { .. } => "color",
        Command::Hansel(HanselCmd::Random { .. }) => "hansel random",
        Command::Hansel(HanselCmd::Derand { .. }) => "hansel derand",
        Command::Hansel(HanselCmd::Expect { .. }) => "hansel expect",
        Command::Peel { .. } => "peel",
        Command::Oracle(OracleCmd::Chi { .. }) => "oracle chi",
        Command::Oracle(OracleCmd::Alpha { .. }) => "oracle alpha",
        Command::Oracle(OracleCmd::Bp { .. }) => "oracle bp",
        Command::Oracle(OracleCmd::Mincover { .. }) => "oracle mincover",
        Command::Gen(GenCmd::Kk { .. }) => "gen kk",
        Command::Gen(GenCmd::Multipartite { .. }) => "gen multipartite",
        Command::Gen(GenCmd::Gpstars { .. }) => "gen gpstars",
        Command::Gen(GenCmd::Kscode { .. }) => "gen kscode",
        Command::Gen(GenCmd::Random { .. }) => "gen random",
        Command::Bounds(BoundsCmd::Colors { .. }) => "bounds colors",
        Command::Bounds(BoundsCmd::Invert { .. }) => "bounds invert",
        Command::Bounds(BoundsCmd::Thm1 { .. }) => "bounds thm1",
        Command::Bounds(BoundsCmd::Thm3 { .. }) => "bounds thm3",
    }
    .to_string()
}

fn dispatch(cli: &Cli, ctx: &mut Ctx) -> Result<Value, CliError> {
    match &cli.command {
        Command::Validate(ValidateCmd::Partition { system }) => {
            let s = ctx.system(system)?;
            let r = ctx.timed("validate", || s.validate_partition());
            match r.witness {
                None => ctx.line(format!("partition: true ({} bicliques)", s.len())),
                Some(w) => {
                    ctx.line(format!(
                        "partition: false; edge {{{}, {}}} in bicliques {} and {}",
                        w.edge.0,
                        w.edge.1,
                        w.first + 1,
                        w.second + 1
                    ));
                    ctx.exit = EXIT_INVALID;
                }
            }
            Ok(json!({
                "universe_n": s.universe_n(),
                "m": s.len(),
                "is_partition": r.is_partition,
                "witness": r.witness.map(|w| json!({
                    "edge": edge_json(w.edge),
                    "bicliques": [w.first + 1, w.second + 1],
                })),
            }))
        }
        Command::Validate(ValidateCmd::Cover { system, graph }) => {
            let s = ctx.system(system)?;
            let g = ctx.graph(graph)?;
            let r = s.validate_cover(&g).map_err(|e| CliError::Invalid(e.to_string()))?;
            ctx.line(format!("cover: {}", r.is_cover));
            if let Some(x) = r.extraneous {
                ctx.line(format!(
                    "  biclique {} generates non-edge {{{}, {}}}",
                    x.biclique + 1,
                    x.edge.0,
                    x.edge.1
                ));
            }
            if let Some(e) = r.uncovered {
                ctx.line(format!("  edge {{{}, {}}} is not covered", e.0, e.1));
            }
            if !r.is_cover {
                ctx.exit = EXIT_INVALID;
            }
            Ok(json!({
                "is_cover": r.is_cover,
                "extraneous": r.extraneous.map(|x| json!({"edge": edge_json(x.edge), "biclique": x.biclique + 1})),
                "uncovered": r.uncovered.map(edge_json),
            }))
        }
        Command::Color { system, trace } => {
            let s = ctx.system(system)?;
            let run = ctx
                .timed("color", || mv_color(&s))
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let g = s.union_graph();
            let proper = verify_proper(&g, &run.coloring).expect("coloring spans the universe");
            let m = s.len() as u64;
            let bound = colors_bound(m);
            let distinct = run.coloring.distinct_colors();
            ctx.line(format!("vertices: {}, bicliques: {}", s.universe_n(), m));
            ctx.line(format!("distinct colors: {distinct}"));
            ctx.line(format!("proper: {}", proper.proper));
            ctx.line(format!("colors bound N({m}) = {bound}"));
            for v in 1..=s.universe_n() {
                ctx.line(format!("  {v}: {}", run.coloring.color(v)));
            }
            if !proper.proper {
                ctx.exit = EXIT_INVALID;
            }
            let mut results = json!({
                "n": s.universe_n(),
                "m": m,
                "distinct_colors": distinct,
                "proper": proper.proper,
                "witness": proper.witness.map(edge_json),
                "colors_bound": big_json(&bound),
                "invert_bound_of_colors": invert_bound(distinct as u64),
                "stages": run.stages.len() - 1,
                "bottom_class": run.coloring.bottom_class().to_vec(),
                "assignment": run.coloring.assignment(),
            });
            if *trace {
                results["trace"] = serde_json::to_value(run.trace()).expect("trace serializes");
            }
            Ok(results)
        }
        Command::Hansel(cmd) => hansel(cmd, cli.seed, ctx),
        Command::Peel { graph, system, k } => {
            let g = ctx.graph(graph)?;
            let s = ctx.system(system)?;
            let limits = parse_limits(cli.limits.as_deref())?;
            let (k, source) = match k {
                Some(k) => (*k, "flag"),
                None => {
                    if g.n() > limits.max_vertices_coloring {
                        return Err(CliError::Usage(format!(
                            "{} vertices exceed the chromatic-number guard; pass --k",
                            g.n()
                        )));
                    }
                    (
                        ctx.timed("oracle", || chromatic_number(&g, &limits))?,
                        "chromatic_number",
                    )
                }
            };
            let trace = ctx.timed("peel", || peel(&g, &s, k)).map_err(|e| match e {
                PeelError::Hansel(h) => h.into(),
                PeelError::ZeroThreshold => CliError::Usage(e.to_string()),
                other => CliError::Invalid(other.to_string()),
            })?;
            let analysis = analyze_trace(&trace, k, g.n()).map_err(|e| CliError::Invalid(e.to_string()))?;
            ctx.line(format!("k = {k} ({source}), n = {}", g.n()));
            for (i, r) in trace.rounds.iter().enumerate() {
                ctx.line(format!(
                    "round {i}: n = {}, weight = {}, extracted = {}, guarantee = {}",
                    r.n,
                    r.weight,
                    r.extracted.len(),
                    r.guarantee
                ));
            }
            ctx.line(format!(
                "t = {}, beta = {:.6}, t <= beta*log2(n/k) = {:.6}: {}",
                analysis.t, analysis.beta, analysis.t_bound, analysis.t_bound_holds
            ));
            ctx.line(format!("final vertices: {}", trace.final_vertices.len()));
            Ok(json!({
                "k": k,
                "k_source": source,
                "trace": trace,
                "analysis": analysis,
            }))
        }
        Command::Oracle(cmd) => {
            let limits = parse_limits(cli.limits.as_deref())?;
            match cmd {
                OracleCmd::Chi { graph } => {
                    let g = ctx.graph(graph)?;
                    let v = ctx.timed("oracle", || chromatic_number(&g, &limits))?;
                    ctx.line(v.to_string());
                    Ok(json!({ "chromatic_number": v }))
                }
                OracleCmd::Alpha { graph } => {
                    let g = ctx.graph(graph)?;
                    let v = ctx.timed("oracle", || independence_number(&g, &limits))?;
                    ctx.line(v.to_string());
                    Ok(json!({ "independence_number": v }))
                }
                OracleCmd::Bp { graph } => {
                    let g = ctx.graph(graph)?;
                    let sol = ctx.timed("oracle", || min_biclique_partition(&g, &limits))?;
                    ctx.line(sol.value.to_string());
                    Ok(json!({ "min_biclique_partition": sol.value, "witness": write_system(&sol.witness) }))
                }
                OracleCmd::Mincover { graph } => {
                    let g = ctx.graph(graph)?;
                    let sol = ctx.timed("oracle", || min_cover_weight(&g, &limits))?;
                    ctx.line(sol.value.to_string());
                    Ok(json!({ "min_cover_weight": sol.value, "witness": write_system(&sol.witness) }))
                }
            }
        }
        Command::Gen(cmd) => {
            let (kind, text, out) = match cmd {
                GenCmd::Kk { k, out } => {
                    if *k == 0 {
                        return Err(CliError::Usage("k must be at least 1".into()));
                    }
                    ("graph", write_graph(&complete_graph(*k)), out)
                }
                GenCmd::Multipartite { sizes, out } => ("graph", write_graph(&complete_multipartite(sizes)?), out),
                GenCmd::Gpstars { sizes, out } => ("system", write_system(&gp_star_partition(sizes)?), out),
                GenCmd::Kscode { k, out } => ("system", write_system(&ks_code_cover(*k)?), out),
                GenCmd::Random { n, m, out } => {
                    ctx.seed_used = true;
                    let s = ctx.timed("generate", || random_biclique_union(*n, *m, cli.seed))?;
                    ("system", write_system(&s), out)
                }
            };
            match &out.out {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
                }
                None => ctx.text.push_str(&text),
            }
            Ok(json!({ "format": kind, "text": text }))
        }
        Command::Bounds(cmd) => match cmd {
            BoundsCmd::Colors { m } => {
                let v = colors_bound(*m);
                ctx.line(v.to_string());
                Ok(json!({ "m": m, "colors_bound": big_json(&v) }))
            }
            BoundsCmd::Invert { k } => {
                if *k == 0 {
                    return Err(CliError::Usage("k must be at least 1".into()));
                }
                let v = invert_bound(*k);
                ctx.line(v.to_string());
                Ok(json!({ "k": k, "min_bicliques": v }))
            }
            BoundsCmd::Thm1 { k } => {
                let v = theorem1_bound(*k).map_err(|e| CliError::Usage(e.to_string()))?;
                ctx.line(format!("{v}"));
                Ok(json!({ "k": k, "main_term": v }))
            }
            BoundsCmd::Thm3 { k } => {
                let v = theorem3_bound(*k).map_err(|e| CliError::Usage(e.to_string()))?;
                ctx.line(format!("{v}"));
                Ok(json!({ "k": k, "weight_bound": v }))
            }
        },
    }
}

fn hansel(cmd: &HanselCmd, seed: u64, ctx: &mut Ctx) -> Result<Value, CliError> {
    let path = match cmd {
        HanselCmd::Random { system } | HanselCmd::Derand { system } | HanselCmd::Expect { system } => system,
    };
    let s = ctx.system(path)?;
    let stats = s.cover_stats();
    let n = s.universe_n();
    let bound = weight_guarantee(n, stats.weight);
    match cmd {
        HanselCmd::Random { .. } => {
            ctx.seed_used = true;
            let r = ctx.timed("extract", || randomized_extract(&s, seed))?;
            let independent = s.union_graph().is_independent(&r.survivors);
            ctx.line(format!("survivors ({}): {:?}", r.survivors.len(), r.survivors.to_vec()));
            ctx.line(format!("expected: {}", r.guarantee));
            Ok(json!({
                "survivors": r.survivors.to_vec(),
                "size": r.survivors.len(),
                "expected": r.guarantee,
                "independent": independent,
            }))
        }
        HanselCmd::Derand { .. } => {
            let r = ctx.timed("extract", || derandomized_extract(&s))?;
            let independent = s.union_graph().is_independent(&r.survivors);
            ctx.line(format!("survivors ({}): {:?}", r.survivors.len(), r.survivors.to_vec()));
            ctx.line(format!("guarantee: {} (weight bound {bound:.6})", r.guarantee));
            Ok(json!({
                "survivors": r.survivors.to_vec(),
                "size": r.survivors.len(),
                "guarantee": r.guarantee,
                "guarantee_ceil": big_json(&r.guarantee.ceil()),
                "weight": stats.weight,
                "weight_bound": bound,
                "independent": independent,
            }))
        }
        HanselCmd::Expect { .. } => {
            let expected = expected_survivors(&s)?;
            let enumerated = if s.len() <= ENUMERATION_GUARD {
                Some(ctx.timed("enumerate", || enumerate_mean_survivors(&s))?)
            } else {
                None
            };
            ctx.line(format!("expected survivors: {expected}"));
            if let Some(e) = &enumerated {
                ctx.line(format!("enumerated mean: {e} (equal: {})", *e == expected));
            }
            Ok(json!({
                "n": n,
                "weight": stats.weight,
                "expected": expected,
                "enumerated": enumerated,
                "weight_bound": bound,
            }))
        }
    }
}
