//! `graphguess` command line: `run`, `sweep`, `generate` and `convert`.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algorithms::{AlgoKind, SsspInfluence};
use crate::bench::{self, BenchError, GraphSource, SweepPlan, SweepRow};
use crate::engine::Scheme;
use crate::graph::{self, VertexId};
use crate::metrics::Metric;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;

/// Environment variable that supplies the default for `--threads`.
pub const THREADS_ENV: &str = "GG_THREADS";

#[derive(Debug, Parser)]
#[command(name = "graphguess", version, about = "Approximate vertex-centric graph analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scheme against the accurate reference.
    Run(RunArgs),
    /// Sweep schemes and parameter grids.
    Sweep(SweepArgs),
    /// Write a synthetic graph.
    Generate(GenerateArgs),
    /// Convert an edge list into the binary cache format.
    Convert(ConvertArgs),
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside the domain [0,1]"))
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if x >= 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{x} must be finite and >= 0"))
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be >= 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("{s:?} is not a positive integer")),
    }
}

#[derive(Debug, Args)]
struct Shared {
    /// Worker threads [default: $GG_THREADS, else all cores]
    #[arg(long, value_parser = positive)]
    threads: Option<usize>,
    /// SSSP source vertex
    #[arg(long, default_value_t = 0)]
    source: VertexId,
    /// k for top-k scoring [default: 1% of vertices, at least 1]
    #[arg(long, value_parser = positive, conflicts_with = "topk_frac")]
    topk: Option<usize>,
    /// k for top-k scoring as a fraction of the vertex count
    #[arg(long)]
    topk_frac: Option<f64>,
    /// Error metric [default: topk for pr/bp, relative for wcc, stretch for sssp]
    #[arg(long)]
    metric: Option<Metric>,
    /// Read a weight column from edge-list files
    #[arg(long)]
    weighted: bool,
    /// PageRank damping factor
    #[arg(long)]
    damping: Option<f64>,
    /// Convergence tolerance for pr and bp [default: 1e-7 for pr, 1e-6 for bp]
    #[arg(long)]
    epsilon: Option<f64>,
    /// BP state count
    #[arg(long)]
    bp_states: Option<usize>,
    /// BP coupling strength in (0,1)
    #[arg(long)]
    bp_coupling: Option<f64>,
    /// Use graded instead of binary SSSP edge influence
    #[arg(long)]
    graded_influence: bool,
    /// Write the result rows as CSV
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one JSON run report per cell and repeat into DIR
    #[arg(long, value_name = "DIR")]
    dump_reports: Option<PathBuf>,
}

impl Shared {
    fn apply(&self, plan: &mut SweepPlan, from_file: bool) {
        plan.threads = match self.threads.or_else(env_threads) {
            Some(t) => t,
            None if from_file => plan.threads,
            None => default_threads(),
        };
        if !from_file || self.source != 0 {
            plan.params.source = self.source;
        }
        if self.topk.is_some() || self.topk_frac.is_some() {
            plan.topk = self.topk;
            plan.topk_frac = self.topk_frac;
        }
        plan.metric = self.metric.or(plan.metric);
        plan.weighted |= self.weighted;
        let p = &mut plan.params;
        if let Some(d) = self.damping {
            p.damping = d;
        }
        if let Some(e) = self.epsilon {
            p.pr_epsilon = e;
            p.bp_epsilon = e;
        }
        if let Some(s) = self.bp_states {
            p.bp_states = s;
        }
        if let Some(c) = self.bp_coupling {
            p.bp_coupling = c;
        }
        if self.graded_influence {
            p.sssp_influence = SsspInfluence::Graded;
        }
        if self.dump_reports.is_some() {
            plan.dump_reports = self.dump_reports.clone();
        }
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    /// pr | sssp | wcc | bp
    #[arg(long)]
    algo: AlgoKind,
    /// Edge list, binary cache, or gen:dumbbell:K | gen:powerlaw:N,DEG,EXP[,SEED]
    #[arg(long)]
    graph: GraphSource,
    /// accurate | sp | sms | gg
    #[arg(long, default_value = "accurate")]
    scheme: Scheme,
    /// Initial edge activation probability
    #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
    sigma: f64,
    /// Superstep influence threshold
    #[arg(long, default_value_t = 0.5, value_parser = non_negative)]
    theta: f64,
    /// Approximate iterations between supersteps
    #[arg(long, default_value_t = 5, value_parser = positive)]
    alpha: usize,
    /// Iteration budget [default: 50 for pr, 30 for bp, convergence for sssp/wcc]
    #[arg(long, value_parser = positive)]
    iters: Option<usize>,
    /// Sparsification seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repeats, each with the next seed
    #[arg(long, default_value_t = 1, value_parser = positive)]
    repeats: usize,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// TOML plan file; flags given alongside override its fields
    #[arg(long)]
    plan: Option<PathBuf>,
    /// pr | sssp | wcc | bp
    #[arg(long)]
    algo: Option<AlgoKind>,
    /// Edge list, binary cache, or gen:dumbbell:K | gen:powerlaw:N,DEG,EXP[,SEED]
    #[arg(long)]
    graph: Option<GraphSource>,
    /// Comma list of schemes [default: sp,sms,gg]
    #[arg(long, value_delimiter = ',')]
    schemes: Vec<Scheme>,
    /// Comma list of sigma values [default: 0.5]
    #[arg(long, value_delimiter = ',', value_parser = unit_interval)]
    sigma: Vec<f64>,
    /// Comma list of theta values [default: 0.5]
    #[arg(long, value_delimiter = ',', value_parser = non_negative)]
    theta: Vec<f64>,
    /// Comma list of alpha values [default: 5]
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    alpha: Vec<usize>,
    /// Iteration budget [default: 50 for pr, 30 for bp, convergence for sssp/wcc]
    #[arg(long, value_parser = positive)]
    iters: Option<usize>,
    /// Repeats per cell [default: 5]
    #[arg(long, value_parser = positive)]
    repeats: Option<usize>,
    /// Base seed [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Run cells concurrently; wall-time columns become NA
    #[arg(long)]
    parallel_cells: bool,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// dumbbell:K or powerlaw:N,DEG,EXP
    spec: String,
    /// Generator seed [default: 7]
    #[arg(long)]
    seed: Option<u64>,
    /// Output path
    #[arg(long)]
    out: PathBuf,
    /// Write the binary cache format instead of an edge list
    #[arg(long)]
    binary: bool,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    /// Edge-list input
    #[arg(long)]
    input: PathBuf,
    /// Binary cache output
    #[arg(long)]
    out: PathBuf,
    /// Read a weight column
    #[arg(long)]
    weighted: bool,
}

fn env_threads() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::InvalidPlan(_) | BenchError::PlanParse { .. } | BenchError::Algo(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

/// The plan a `run` invocation executes: the accurate reference plus one cell.
fn run_plan(a: &RunArgs) -> SweepPlan {
    let mut plan = SweepPlan {
        schemes: vec![a.scheme],
        sigma: vec![a.sigma],
        theta: vec![a.theta],
        alpha: vec![a.alpha],
        iters: a.iters,
        repeats: a.repeats,
        seed: a.seed,
        ..SweepPlan::new(a.algo, a.graph.clone())
    };
    a.shared.apply(&mut plan, false);
    plan
}

fn sweep_plan(a: &SweepArgs) -> Result<SweepPlan, Failure> {
    let mut plan = match &a.plan {
        Some(path) => SweepPlan::load(path)?,
        None => {
            let (Some(algo), Some(graph)) = (a.algo, a.graph.clone()) else {
                return Err(Failure::Usage(
                    "sweep needs --plan FILE or both --algo and --graph".into(),
                ));
            };
            SweepPlan::new(algo, graph)
        }
    };
    if let Some(algo) = a.algo {
        plan.algo = algo;
    }
    if let Some(graph) = &a.graph {
        plan.graph = graph.clone();
    }
    if !a.schemes.is_empty() {
        plan.schemes = a.schemes.clone();
    }
    if !a.sigma.is_empty() {
        plan.sigma = a.sigma.clone();
    }
    if !a.theta.is_empty() {
        plan.theta = a.theta.clone();
    }
    if !a.alpha.is_empty() {
        plan.alpha = a.alpha.clone();
    }
    plan.iters = a.iters.or(plan.iters);
    plan.repeats = a.repeats.unwrap_or(plan.repeats);
    plan.seed = a.seed.unwrap_or(plan.seed);
    plan.parallel_cells |= a.parallel_cells;
    a.shared.apply(&mut plan, a.plan.is_some());
    Ok(plan)
}

fn finish(rows: &[SweepRow], out: &Option<PathBuf>) -> Result<(), Failure> {
    if let Some(path) = out {
        bench::emit_csv(rows, path)
            .map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Runtime(e.to_string());
    match cmd {
        Command::Run(a) => {
            let plan = run_plan(&a);
            plan.validate()?;
            let rows = bench::run_sweep(&plan)?;
            let row = rows
                .iter()
                .find(|r| r.scheme == a.scheme)
                .expect("run yields a row for its scheme");
            let f = bench::format_sig;
            writeln!(
                stdout,
                "{} on {}: {} sigma={} theta={} alpha={} iters={} repeats={} threads={}",
                row.algo,
                row.graph,
                row.scheme,
                f(row.sigma),
                f(row.theta),
                row.alpha,
                row.iters,
                row.repeats,
                plan.threads
            )
            .map_err(io)?;
            writeln!(stdout, "accuracy {}", f(row.accuracy)).map_err(io)?;
            writeln!(stdout, "speedup {}", f(row.speedup)).map_err(io)?;
            writeln!(stdout, "edge_ratio {}", f(row.edge_ratio)).map_err(io)?;
            writeln!(stdout, "wall_ms {} (reference {})", f(row.wall_ms_mean), f(row.wall_ms_ref))
                .map_err(io)?;
            finish(&rows, &a.shared.out)
        }
        Command::Sweep(a) => {
            let plan = sweep_plan(&a)?;
            plan.validate()?;
            let rows = bench::run_sweep(&plan)?;
            write!(stdout, "{}", bench::emit_summary(&rows)).map_err(io)?;
            finish(&rows, &a.shared.out)
        }
        Command::Generate(a) => {
            let mut source = GraphSource::parse_generator(&a.spec).map_err(Failure::Usage)?;
            if let (GraphSource::PowerLaw { seed, .. }, Some(s)) = (&mut source, a.seed) {
                *seed = s;
            }
            let g = source.load(false).map_err(|e| Failure::Usage(e.to_string()))?;
            let saved = if a.binary {
                graph::save_binary(&g, &a.out)
            } else {
                graph::save_edge_list(&g, &a.out)
            };
            saved.map_err(|e| Failure::Runtime(e.to_string()))?;
            writeln!(
                stdout,
                "wrote {} vertices, {} edges to {}",
                g.num_vertices(),
                g.num_edges(),
                a.out.display()
            )
            .map_err(io)
        }
        Command::Convert(a) => {
            let g = graph::load_graph(&a.input, a.weighted).map_err(|e| Failure::Runtime(e.to_string()))?;
            graph::save_binary(&g, &a.out).map_err(|e| Failure::Runtime(e.to_string()))?;
            writeln!(
                stdout,
                "converted {} vertices, {} edges to {}",
                g.num_vertices(),
                g.num_edges(),
                a.out.display()
            )
            .map_err(io)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_RUNTIME
        }
    }
}

pub fn main() -> i32 {
    main_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
