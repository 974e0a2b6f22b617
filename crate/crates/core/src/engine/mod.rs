//! Synchronous pull-based iteration with per-edge active flags.
//!
//! Every iteration runs in one of three modes. *Approximate* vertices fold
//! `gather` over their flagged in-edges only; *accurate* and *superstep*
//! vertices read all in-edges. A superstep additionally rewrites the flags of
//! each processed vertex's in-edges from the influences gathered in that
//! iteration, which is how the active edge set adapts at runtime.
//!
//! Properties are double buffered: every vertex of iteration `t` reads the
//! values committed at the end of `t - 1`, so results do not depend on the
//! thread count.
//!
//! A vertex is processed when it changed in the previous iteration or one of
//! its in-neighbours did. If that in-neighbour sits behind an inactive edge
//! the vertex is also marked *deferred*, and deferred vertices are picked up
//! by the next full-read iteration. Initial values count as a change, so a
//! vertex behind an inactive edge starts out deferred unless the program
//! says its source's initial value carries nothing.

mod program;
mod sparsify;
mod view;

pub use program::{InEdge, Orientation, VertexProgram};
pub use sparsify::{edge_uniform, sparsify};
pub use view::PullView;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeFlags, Graph, VertexId};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid engine config: {0}")]
    InvalidConfig(String),
    #[error("iteration {iteration}: vertex {vertex} produced an invalid property (NaN or overflow)")]
    InvalidProperty { iteration: usize, vertex: VertexId },
    #[error("failed to build thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Accurate,
    Sp,
    Sms,
    Gg,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Accurate, Scheme::Sp, Scheme::Sms, Scheme::Gg];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Accurate => "accurate",
            Scheme::Sp => "sp",
            Scheme::Sms => "sms",
            Scheme::Gg => "gg",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "accurate" => Ok(Scheme::Accurate),
            "sp" => Ok(Scheme::Sp),
            "sms" => Ok(Scheme::Sms),
            "gg" => Ok(Scheme::Gg),
            _ => Err(format!("unknown scheme {s:?} (expected accurate|sp|sms|gg)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Approximate,
    Accurate,
    Superstep,
}

impl Mode {
    #[inline]
    fn reads_all_edges(self) -> bool {
        self != Mode::Approximate
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineConfig {
    pub scheme: Scheme,
    /// Probability that an edge starts active.
    pub sigma: f64,
    /// Influence threshold applied at supersteps.
    pub theta: f64,
    /// Approximate iterations between supersteps.
    pub alpha: usize,
    pub max_iterations: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Accurate,
            sigma: 0.5,
            theta: 0.5,
            alpha: 5,
            max_iterations: 50,
            seed: 0,
            threads: 1,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidConfig(m));
        if !(0.0..=1.0).contains(&self.sigma) {
            return bad(format!("sigma must be in [0,1], got {}", self.sigma));
        }
        if !(self.theta >= 0.0 && self.theta.is_finite()) {
            return bad(format!("theta must be finite and >= 0, got {}", self.theta));
        }
        if self.alpha < 1 {
            return bad("alpha must be >= 1".into());
        }
        if self.max_iterations < 1 {
            return bad("max_iterations must be >= 1".into());
        }
        if self.threads < 1 {
            return bad("threads must be >= 1".into());
        }
        Ok(())
    }

    /// Mode of iteration `t` (1-based).
    pub fn mode_at(&self, t: usize) -> Mode {
        mode_at(self.scheme, self.alpha, t)
    }
}

fn mode_at(scheme: Scheme, alpha: usize, t: usize) -> Mode {
    let period = alpha + 1;
    match scheme {
        Scheme::Accurate => Mode::Accurate,
        Scheme::Sp => Mode::Approximate,
        Scheme::Sms if t < period => Mode::Approximate,
        Scheme::Sms if t == period => Mode::Superstep,
        Scheme::Sms => Mode::Accurate,
        Scheme::Gg if t.is_multiple_of(period) => Mode::Superstep,
        Scheme::Gg => Mode::Approximate,
    }
}

/// Iterations (1-based) at which a superstep runs.
pub fn select_superstep_iterations(alpha: usize, max_iterations: usize, scheme: Scheme) -> Vec<usize> {
    let period = alpha.max(1) + 1;
    match scheme {
        Scheme::Accurate | Scheme::Sp => Vec::new(),
        Scheme::Sms => (period <= max_iterations).then_some(period).into_iter().collect(),
        Scheme::Gg => (period..=max_iterations).step_by(period).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub mode: Mode,
    pub processed_edges: u64,
    pub active_vertices: usize,
    /// Seconds.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport<P> {
    pub final_properties: Vec<P>,
    pub iterations_run: usize,
    pub per_iteration: Vec<IterationRecord>,
    /// Seconds, including sparsification.
    pub total_wall_time: f64,
    pub total_processed_edges: u64,
    /// Edge flags at the end of the run, indexed by pull-view edge id.
    #[serde(skip)]
    pub edge_flags: EdgeFlags,
}

struct Outcome<P> {
    property: P,
    changed: bool,
    valid: bool,
    edges: u64,
    new_flags: Vec<bool>,
}

/// Runs `program` on `g` under `cfg`.
pub fn run<A: VertexProgram>(
    g: &Graph,
    program: &A,
    cfg: &EngineConfig,
) -> Result<RunReport<A::Property>, EngineError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
    pool.install(|| run_in_pool(g, program, cfg))
}

fn run_in_pool<A: VertexProgram>(
    g: &Graph,
    program: &A,
    cfg: &EngineConfig,
) -> Result<RunReport<A::Property>, EngineError> {
    let start = Instant::now();
    let view = PullView::new(g, program.orientation());
    let vg = view.graph();
    let n = vg.num_vertices();

    let mut flags = match cfg.scheme {
        Scheme::Accurate => EdgeFlags::all_active(vg.num_edges()),
        _ => sparsify(vg, cfg.sigma, cfg.seed)?,
    };

    let mut props: Vec<A::Property> = (0..n as VertexId)
        .map(|v| program.init(v, n, vg.in_degree(v)))
        .collect();
    let mut active = vec![true; n];
    // initial values count as a change
    let mut deferred: Vec<bool> = (0..n as VertexId)
        .map(|v| {
            vg.in_edge_range(v)
                .any(|e| !flags.get(e) && program.signals_at_start(&props[vg.in_sources()[e] as usize]))
        })
        .collect();
    let mut per_iteration = Vec::new();
    let mut total_edges = 0u64;

    for t in 1..=cfg.max_iterations {
        let iter_start = Instant::now();
        let mode = cfg.mode_at(t);
        let full_read = mode.reads_all_edges();
        let rewrite = mode == Mode::Superstep || (cfg.scheme == Scheme::Sms && mode == Mode::Accurate);

        let selected: Vec<VertexId> = (0..n)
            .filter(|&u| active[u] || (full_read && deferred[u]))
            .map(|u| u as VertexId)
            .collect();

        let outcomes: Vec<Outcome<A::Property>> = {
            let props = &props;
            let flags = &flags;
            let view = &view;
            selected
                .par_iter()
                .map(|&u| process_vertex(program, view, props, flags, u, full_read, rewrite, cfg.theta))
                .collect()
        };

        let mut changed = Vec::new();
        let mut edges = 0u64;
        for (&u, out) in selected.iter().zip(outcomes) {
            if !out.valid {
                return Err(EngineError::InvalidProperty { iteration: t, vertex: u });
            }
            if rewrite {
                let base = vg.in_edge_range(u).start;
                for (i, bit) in out.new_flags.into_iter().enumerate() {
                    flags.set(base + i, bit);
                }
            }
            if full_read {
                deferred[u as usize] = false;
            }
            if out.changed {
                changed.push(u);
            }
            edges += out.edges;
            props[u as usize] = out.property;
        }

        active.iter_mut().for_each(|a| *a = false);
        for &v in &changed {
            active[v as usize] = true;
            for (e, w) in view.out_edges(v) {
                active[w as usize] = true;
                if !flags.get(e) {
                    deferred[w as usize] = true;
                }
            }
        }

        total_edges += edges;
        per_iteration.push(IterationRecord {
            mode,
            processed_edges: edges,
            active_vertices: selected.len(),
            wall_time: iter_start.elapsed().as_secs_f64(),
        });

        if changed.is_empty() {
            let pending = deferred.iter().any(|&d| d)
                && (t + 1..=cfg.max_iterations).any(|s| cfg.mode_at(s).reads_all_edges());
            if !pending {
                break;
            }
        }
    }

    Ok(RunReport {
        final_properties: props,
        iterations_run: per_iteration.len(),
        per_iteration,
        total_wall_time: start.elapsed().as_secs_f64(),
        total_processed_edges: total_edges,
        edge_flags: flags,
    })
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn process_vertex<A: VertexProgram>(
    program: &A,
    view: &PullView<'_>,
    props: &[A::Property],
    flags: &EdgeFlags,
    u: VertexId,
    full_read: bool,
    rewrite: bool,
    theta: f64,
) -> Outcome<A::Property> {
    let g = view.graph();
    let range = g.in_edge_range(u);
    let mut acc = program.identity(u, range.len());
    let mut new_flags = if rewrite { Vec::with_capacity(range.len()) } else { Vec::new() };
    let mut edges = 0u64;
    let sources = g.in_sources();
    for (slot, e) in range.clone().enumerate() {
        if !full_read && !flags.get(e) {
            continue;
        }
        let src = sources[e];
        let edge = InEdge {
            id: e,
            slot,
            src,
            dst: u,
            weight: g.weight(e),
            src_out_degree: g.out_degree(src),
            twin_slot: view.twin_slot(e),
        };
        let influence = program.gather(&mut acc, &props[src as usize], &edge);
        edges += 1;
        if rewrite {
            new_flags.push(program.estatus(influence, theta));
        }
    }
    let old = &props[u as usize];
    let property = program.apply(u, acc, old, g.num_vertices());
    Outcome {
        changed: program.vstatus(old, &property),
        valid: program.is_valid(&property),
        property,
        edges,
        new_flags,
    }
}
