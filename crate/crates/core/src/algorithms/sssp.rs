use serde::{Deserialize, Serialize};

use super::AlgoError;
use crate::engine::{InEdge, VertexProgram};
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SsspInfluence {
    /// 1 when the edge improves the running minimum, else 0.
    #[default]
    Binary,
    /// Relative improvement `(old - new) / old`; infinite to finite maps to 1.
    Graded,
}

/// Single-source shortest paths by pull-based relaxation (Bellman–Ford
/// restricted to active vertices). Unweighted graphs use unit weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sssp {
    source: VertexId,
    influence: SsspInfluence,
}

pub fn sssp_spec(source: VertexId, num_vertices: usize) -> Result<Sssp, AlgoError> {
    if source as usize >= num_vertices {
        return Err(AlgoError::InvalidParameter(format!(
            "source {source} out of range for {num_vertices} vertices"
        )));
    }
    Ok(Sssp {
        source,
        influence: SsspInfluence::Binary,
    })
}

impl Sssp {
    pub fn with_influence(mut self, influence: SsspInfluence) -> Self {
        self.influence = influence;
        self
    }

    pub fn source(&self) -> VertexId {
        self.source
    }
}

impl VertexProgram for Sssp {
    type Property = f64;
    type Accum = f64;

    fn init(&self, v: VertexId, _: usize, _: usize) -> f64 {
        if v == self.source {
            0.0
        } else {
            f64::INFINITY
        }
    }

    fn identity(&self, _: VertexId, _: usize) -> f64 {
        f64::INFINITY
    }

    #[inline]
    fn gather(&self, acc: &mut f64, src: &f64, edge: &InEdge) -> f64 {
        let candidate = src + edge.weight;
        if candidate < *acc {
            let influence = match self.influence {
                SsspInfluence::Binary => 1.0,
                SsspInfluence::Graded if acc.is_infinite() => 1.0,
                SsspInfluence::Graded => (*acc - candidate) / *acc,
            };
            *acc = candidate;
            influence
        } else {
            0.0
        }
    }

    fn apply(&self, _: VertexId, acc: f64, old: &f64, _: usize) -> f64 {
        acc.min(*old)
    }

    fn vstatus(&self, old: &f64, new: &f64) -> bool {
        new < old
    }

    fn is_valid(&self, p: &f64) -> bool {
        !p.is_nan() && *p >= 0.0
    }

    fn signals_at_start(&self, p: &f64) -> bool {
        p.is_finite()
    }
}
