use crate::engine::{InEdge, Orientation, VertexProgram};
use crate::graph::VertexId;

/// Weakly connected components by min-label propagation over both edge
/// orientations. Influence is binary: 1 when the source label lowers the
/// running minimum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Wcc;

pub fn wcc_spec() -> Wcc {
    Wcc
}

impl VertexProgram for Wcc {
    type Property = VertexId;
    type Accum = VertexId;

    fn orientation(&self) -> Orientation {
        Orientation::Symmetric
    }

    fn init(&self, v: VertexId, _: usize, _: usize) -> VertexId {
        v
    }

    fn identity(&self, _: VertexId, _: usize) -> VertexId {
        VertexId::MAX
    }

    #[inline]
    fn gather(&self, acc: &mut VertexId, src: &VertexId, _: &InEdge) -> f64 {
        if *src < *acc {
            *acc = *src;
            1.0
        } else {
            0.0
        }
    }

    fn apply(&self, _: VertexId, acc: VertexId, old: &VertexId, _: usize) -> VertexId {
        acc.min(*old)
    }

    fn vstatus(&self, old: &VertexId, new: &VertexId) -> bool {
        old != new
    }

    fn is_valid(&self, _: &VertexId) -> bool {
        true
    }
}
