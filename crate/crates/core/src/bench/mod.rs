//! Sweeps over schemes and (σ, θ, α) grids, scored against the accurate run.
//!
//! Every repeat uses seed `base + r`. The accurate reference runs first with
//! the plan's iteration budget; every other cell of that repeat then runs for
//! exactly as many iterations as the reference took and shares its
//! sparsification seed.

mod report;
mod source;

pub use report::{csv_string, emit_csv, emit_summary, format_sig, write_csv, CSV_HEADER};
pub use source::{GraphSource, DEFAULT_GENERATOR_SEED};

use std::cmp::Ordering;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::{
    bp_spec, defaults, pagerank_spec, sssp_spec, wcc_spec, AlgoError, AlgoKind, SsspInfluence,
};
use crate::engine::{run, EngineConfig, EngineError, RunReport, Scheme, VertexProgram};
use crate::graph::{Graph, GraphError, VertexId};
use crate::metrics::{self, ErrorReport, Metric, MetricError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),
    #[error("failed to parse plan {path}: {message}")]
    PlanParse { path: PathBuf, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algo(#[from] AlgoError),
    #[error("{cell}: {source}")]
    Engine {
        cell: String,
        #[source]
        source: EngineError,
    },
    #[error("{cell}: {source}")]
    Metric {
        cell: String,
        #[source]
        source: MetricError,
    },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Iteration cap for algorithms that run the reference to convergence.
pub const CONVERGENCE_CAP: usize = 10_000;

/// Default iteration budget: PR 50, BP 30, SSSP and WCC until the accurate
/// reference converges.
pub fn default_iterations(algo: AlgoKind) -> usize {
    match algo {
        AlgoKind::Pr => 50,
        AlgoKind::Bp => 30,
        AlgoKind::Sssp | AlgoKind::Wcc => CONVERGENCE_CAP,
    }
}

pub fn default_metric(algo: AlgoKind) -> Metric {
    match algo {
        AlgoKind::Pr | AlgoKind::Bp => Metric::TopK,
        AlgoKind::Wcc => Metric::Relative,
        AlgoKind::Sssp => Metric::Stretch,
    }
}

/// Algorithm knobs that are not part of the engine config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlgoParams {
    /// SSSP source vertex.
    pub source: VertexId,
    pub sssp_influence: SsspInfluence,
    pub damping: f64,
    pub pr_epsilon: f64,
    pub bp_states: usize,
    pub bp_coupling: f64,
    pub bp_epsilon: f64,
}

impl Default for AlgoParams {
    fn default() -> Self {
        Self {
            source: 0,
            sssp_influence: SsspInfluence::Binary,
            damping: defaults::PR_DAMPING,
            pr_epsilon: defaults::PR_EPSILON,
            bp_states: defaults::BP_STATES,
            bp_coupling: defaults::BP_COUPLING,
            bp_epsilon: defaults::BP_EPSILON,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepPlan {
    pub algo: AlgoKind,
    pub graph: GraphSource,
    /// Read a third weight column from edge-list files.
    pub weighted: bool,
    /// Schemes to sweep; the accurate reference is always run.
    pub schemes: Vec<Scheme>,
    pub sigma: Vec<f64>,
    pub theta: Vec<f64>,
    pub alpha: Vec<usize>,
    /// Iteration budget for the reference; `None` picks [`default_iterations`].
    pub iters: Option<usize>,
    pub repeats: usize,
    /// Base seed; repeat `r` uses `seed + r`.
    pub seed: u64,
    pub topk: Option<usize>,
    pub topk_frac: Option<f64>,
    /// Overrides the algorithm's default error metric.
    pub metric: Option<Metric>,
    pub threads: usize,
    pub parallel_cells: bool,
    pub dump_reports: Option<PathBuf>,
    pub params: AlgoParams,
}

impl Default for SweepPlan {
    fn default() -> Self {
        Self {
            algo: AlgoKind::Pr,
            graph: GraphSource::Dumbbell(4),
            weighted: false,
            schemes: vec![Scheme::Sp, Scheme::Sms, Scheme::Gg],
            sigma: vec![0.5],
            theta: vec![0.5],
            alpha: vec![5],
            iters: None,
            repeats: 5,
            seed: 0,
            topk: None,
            topk_frac: None,
            metric: None,
            threads: 1,
            parallel_cells: false,
            dump_reports: None,
            params: AlgoParams::default(),
        }
    }
}

/// One (scheme, σ, θ, α) point. Parameters a scheme ignores are collapsed
/// to 0 (σ collapses to 1 for the accurate scheme).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub scheme: Scheme,
    pub sigma: f64,
    pub theta: f64,
    pub alpha: usize,
}

impl Cell {
    pub fn new(scheme: Scheme, sigma: f64, theta: f64, alpha: usize) -> Self {
        match scheme {
            Scheme::Accurate => Cell { scheme, sigma: 1.0, theta: 0.0, alpha: 0 },
            Scheme::Sp => Cell { scheme, sigma, theta: 0.0, alpha: 0 },
            Scheme::Sms => Cell { scheme, sigma, theta: 0.0, alpha },
            Scheme::Gg => Cell { scheme, sigma, theta, alpha },
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.scheme
            .cmp(&other.scheme)
            .then(self.sigma.total_cmp(&other.sigma))
            .then(self.theta.total_cmp(&other.theta))
            .then(self.alpha.cmp(&other.alpha))
    }

    pub fn config(&self, max_iterations: usize, seed: u64, threads: usize) -> EngineConfig {
        EngineConfig {
            scheme: self.scheme,
            sigma: self.sigma,
            theta: self.theta,
            alpha: self.alpha.max(1),
            max_iterations,
            seed,
            threads,
        }
    }

    fn file_stem(&self, algo: AlgoKind, repeat: usize) -> String {
        format!(
            "{algo}_{}_s{}_t{}_a{}_r{repeat}",
            self.scheme, self.sigma, self.theta, self.alpha
        )
    }
}

impl SweepPlan {
    pub fn new(algo: AlgoKind, graph: GraphSource) -> Self {
        Self { algo, graph, ..Self::default() }
    }

    pub fn from_toml_str(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text).map_err(|message| BenchError::PlanParse {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::InvalidPlan(m));
        if self.schemes.is_empty() || self.sigma.is_empty() || self.theta.is_empty() || self.alpha.is_empty() {
            return bad("scheme, sigma, theta and alpha grids must be non-empty".into());
        }
        if self.repeats < 1 {
            return bad("repeats must be >= 1".into());
        }
        if let Some(s) = self.sigma.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return bad(format!("sigma must be in [0,1], got {s}"));
        }
        if let Some(t) = self.theta.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return bad(format!("theta must be finite and >= 0, got {t}"));
        }
        if self.alpha.contains(&0) {
            return bad("alpha must be >= 1".into());
        }
        if self.iters == Some(0) {
            return bad("iters must be >= 1".into());
        }
        if self.threads < 1 {
            return bad("threads must be >= 1".into());
        }
        if self.topk == Some(0) {
            return bad("topk must be >= 1".into());
        }
        if let Some(f) = self.topk_frac {
            if !(f > 0.0 && f <= 1.0) {
                return bad(format!("topk_frac must be in (0,1], got {f}"));
            }
        }
        Ok(())
    }

    pub fn iteration_budget(&self) -> usize {
        self.iters.unwrap_or_else(|| default_iterations(self.algo))
    }

    pub fn metric(&self) -> Metric {
        self.metric.unwrap_or_else(|| default_metric(self.algo))
    }

    /// `k` for top-k scoring on a graph of `n` vertices.
    pub fn k_for(&self, n: usize) -> usize {
        match (self.topk, self.topk_frac) {
            (Some(k), _) => k,
            (None, Some(f)) => ((f * n as f64).round() as usize).max(1),
            (None, None) => metrics::default_k(n),
        }
    }

    /// Non-reference cells in row order, duplicates removed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &scheme in self.schemes.iter().filter(|s| **s != Scheme::Accurate) {
            for &sigma in &self.sigma {
                for &theta in &self.theta {
                    for &alpha in &self.alpha {
                        cells.push(Cell::new(scheme, sigma, theta, alpha));
                    }
                }
            }
        }
        cells.sort_by(Cell::cmp_key);
        cells.dedup_by(|a, b| a.cmp_key(b) == Ordering::Equal);
        cells
    }
}

/// Scalar view of a run's final properties.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    /// PageRank ranks, or the state-0 marginal for BP.
    Scores(Vec<f64>),
    Distances(Vec<f64>),
    Labels(Vec<u32>),
}

impl Output {
    fn as_f64(&self) -> std::borrow::Cow<'_, [f64]> {
        match self {
            Output::Scores(v) | Output::Distances(v) => v.as_slice().into(),
            Output::Labels(v) => v.iter().map(|&x| x as f64 + 1.0).collect::<Vec<_>>().into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CellRun {
    pub output: Output,
    pub iterations: usize,
    pub processed_edges: u64,
    /// Seconds.
    pub wall_time: f64,
}

fn collect<P: Serialize>(
    report: RunReport<P>,
    dump: Option<&Path>,
    output: impl FnOnce(&[P]) -> Output,
) -> Result<CellRun, BenchError> {
    if let Some(path) = dump {
        let json = serde_json::to_vec_pretty(&report).expect("run reports serialize");
        fs::write(path, json).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(CellRun {
        output: output(&report.final_properties),
        iterations: report.iterations_run,
        processed_edges: report.total_processed_edges,
        wall_time: report.total_wall_time,
    })
}

fn cell_label(cfg: &EngineConfig) -> String {
    format!(
        "cell scheme={} sigma={} theta={} alpha={} seed={}",
        cfg.scheme, cfg.sigma, cfg.theta, cfg.alpha, cfg.seed
    )
}

fn engine<A: VertexProgram>(
    g: &Graph,
    program: &A,
    cfg: &EngineConfig,
) -> Result<RunReport<A::Property>, BenchError> {
    run(g, program, cfg).map_err(|source| BenchError::Engine { cell: cell_label(cfg), source })
}

/// Runs one algorithm under `cfg`, optionally writing the full report as
/// JSON to `dump`.
pub fn run_algorithm(
    algo: AlgoKind,
    params: &AlgoParams,
    g: &Graph,
    cfg: &EngineConfig,
    dump: Option<&Path>,
) -> Result<CellRun, BenchError> {
    match algo {
        AlgoKind::Pr => {
            let p = pagerank_spec(params.damping, params.pr_epsilon)?;
            collect(engine(g, &p, cfg)?, dump, |x| Output::Scores(x.to_vec()))
        }
        AlgoKind::Sssp => {
            let p = sssp_spec(params.source, g.num_vertices())?.with_influence(params.sssp_influence);
            collect(engine(g, &p, cfg)?, dump, |x| Output::Distances(x.to_vec()))
        }
        AlgoKind::Wcc => collect(engine(g, &wcc_spec(), cfg)?, dump, |x| Output::Labels(x.to_vec())),
        AlgoKind::Bp => {
            let p = bp_spec(params.bp_states, params.bp_coupling, params.bp_epsilon)?;
            collect(engine(g, &p, cfg)?, dump, |x| {
                Output::Scores(x.iter().map(|s| s.belief[0]).collect())
            })
        }
    }
}

/// Scores `approx` against `exact` under `metric`.
pub fn evaluate(metric: Metric, k: usize, approx: &Output, exact: &Output) -> Result<ErrorReport, MetricError> {
    match (metric, approx, exact) {
        (Metric::Relative, Output::Labels(a), Output::Labels(x)) => metrics::label_relative_error(a, x),
        (Metric::Relative, a, x) => metrics::relative_error(&a.as_f64(), &x.as_f64()),
        (Metric::Stretch, a, x) => metrics::stretch_error(&a.as_f64(), &x.as_f64()),
        (Metric::TopK, a, x) => metrics::topk_error(&a.as_f64(), &x.as_f64(), k),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub scheme: Scheme,
    pub algo: AlgoKind,
    pub graph: String,
    pub sigma: f64,
    pub theta: f64,
    pub alpha: usize,
    pub iters: usize,
    pub repeats: usize,
    /// Percent, mean over repeats.
    pub accuracy: f64,
    /// Mean of reference wall time over cell wall time.
    pub speedup: f64,
    /// Mean of cell processed edges over reference processed edges.
    pub edge_ratio: f64,
    pub wall_ms_mean: f64,
    pub wall_ms_ref: f64,
    /// False when cells ran concurrently.
    pub wall_comparable: bool,
}

#[derive(Default, Clone)]
struct Totals {
    accuracy: f64,
    speedup: f64,
    edge_ratio: f64,
    wall: f64,
}

/// Loads the plan's graph and runs the sweep on it.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRow>, BenchError> {
    plan.validate()?;
    let g = plan.graph.load(plan.weighted)?;
    run_sweep_on(plan, &g)
}

/// Runs the sweep on an already loaded graph.
pub fn run_sweep_on(plan: &SweepPlan, g: &Graph) -> Result<Vec<SweepRow>, BenchError> {
    plan.validate()?;
    let n = g.num_vertices();
    let metric = plan.metric();
    let k = plan.k_for(n);
    if metric == Metric::TopK && k > n {
        return Err(BenchError::InvalidPlan(format!("k = {k} exceeds vertex count {n}")));
    }
    if let Some(dir) = &plan.dump_reports {
        fs::create_dir_all(dir).map_err(|source| BenchError::Io { path: dir.clone(), source })?;
    }
    let dump_path = |cell: &Cell, r: usize| {
        plan.dump_reports
            .as_ref()
            .map(|d| d.join(format!("{}.json", cell.file_stem(plan.algo, r))))
    };

    let cells = plan.cells();
    let reference = Cell::new(Scheme::Accurate, 1.0, 0.0, 0);
    let mut totals = vec![Totals::default(); cells.len()];
    let mut ref_wall = 0.0;
    let mut iters = 0;

    for r in 0..plan.repeats {
        let seed = plan.seed.wrapping_add(r as u64);
        let cfg = reference.config(plan.iteration_budget(), seed, plan.threads);
        let exact = run_algorithm(plan.algo, &plan.params, g, &cfg, dump_path(&reference, r).as_deref())?;
        ref_wall += exact.wall_time;
        iters = exact.iterations.max(1);

        let one = |cell: &Cell| -> Result<(ErrorReport, CellRun), BenchError> {
            let cfg = cell.config(iters, seed, plan.threads);
            let got = run_algorithm(plan.algo, &plan.params, g, &cfg, dump_path(cell, r).as_deref())?;
            let err = evaluate(metric, k, &got.output, &exact.output)
                .map_err(|source| BenchError::Metric { cell: cell_label(&cfg), source })?;
            Ok((err, got))
        };
        let results: Vec<_> = if plan.parallel_cells {
            cells.par_iter().map(one).collect::<Result<_, _>>()?
        } else {
            cells.iter().map(one).collect::<Result<_, _>>()?
        };

        for (t, (err, got)) in totals.iter_mut().zip(results) {
            t.accuracy += err.accuracy;
            t.speedup += exact.wall_time / got.wall_time.max(f64::MIN_POSITIVE);
            t.edge_ratio += if exact.processed_edges == 0 {
                if got.processed_edges == 0 { 1.0 } else { f64::INFINITY }
            } else {
                got.processed_edges as f64 / exact.processed_edges as f64
            };
            t.wall += got.wall_time;
        }
    }

    let reps = plan.repeats as f64;
    let wall_ms_ref = ref_wall / reps * 1e3;
    let row = |cell: &Cell, accuracy, speedup, edge_ratio, wall_ms_mean| SweepRow {
        scheme: cell.scheme,
        algo: plan.algo,
        graph: plan.graph.to_string(),
        sigma: cell.sigma,
        theta: cell.theta,
        alpha: cell.alpha,
        iters,
        repeats: plan.repeats,
        accuracy,
        speedup,
        edge_ratio,
        wall_ms_mean,
        wall_ms_ref,
        wall_comparable: !plan.parallel_cells,
    };
    let mut rows = vec![row(&reference, 100.0, 1.0, 1.0, wall_ms_ref)];
    for (cell, t) in cells.iter().zip(&totals) {
        rows.push(row(
            cell,
            t.accuracy / reps,
            t.speedup / reps,
            t.edge_ratio / reps,
            t.wall / reps * 1e3,
        ));
    }
    Ok(rows)
}
