use super::AlgoError;
use crate::engine::{InEdge, VertexProgram};
use crate::graph::VertexId;

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_EPSILON: f64 = 1e-7;

/// PageRank without dangling-mass redistribution:
/// `rank(u) = (1 - d) / N + d * sum(rank(v) / out_degree(v))`.
///
/// The influence of an edge is its share of the running sum right after it
/// is added, `(acc_new - acc_old) / acc_new`, with `0 / 0` taken as 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRank {
    damping: f64,
    epsilon: f64,
}

pub fn pagerank_spec(damping: f64, epsilon: f64) -> Result<PageRank, AlgoError> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(AlgoError::InvalidParameter(format!(
            "damping must be in (0,1), got {damping}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(AlgoError::InvalidParameter(format!(
            "epsilon must be > 0, got {epsilon}"
        )));
    }
    Ok(PageRank { damping, epsilon })
}

impl Default for PageRank {
    fn default() -> Self {
        Self {
            damping: DEFAULT_DAMPING,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

impl PageRank {
    pub fn damping(&self) -> f64 {
        self.damping
    }

    /// The edge-influence formula on its own.
    #[inline]
    pub fn influence(acc_old: f64, acc_new: f64) -> f64 {
        if acc_new == 0.0 {
            0.0
        } else {
            (acc_new - acc_old) / acc_new
        }
    }
}

impl VertexProgram for PageRank {
    type Property = f64;
    type Accum = f64;

    fn init(&self, _: VertexId, n: usize, _: usize) -> f64 {
        1.0 / n as f64
    }

    fn identity(&self, _: VertexId, _: usize) -> f64 {
        0.0
    }

    #[inline]
    fn gather(&self, acc: &mut f64, src: &f64, edge: &InEdge) -> f64 {
        let old = *acc;
        *acc += src / edge.src_out_degree as f64;
        Self::influence(old, *acc)
    }

    fn apply(&self, _: VertexId, acc: f64, _: &f64, n: usize) -> f64 {
        (1.0 - self.damping) / n as f64 + self.damping * acc
    }

    fn vstatus(&self, old: &f64, new: &f64) -> bool {
        (old - new).abs() > self.epsilon
    }

    fn is_valid(&self, p: &f64) -> bool {
        p.is_finite()
    }
}
