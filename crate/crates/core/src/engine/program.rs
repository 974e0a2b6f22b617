use crate::graph::VertexId;

/// Which edges a vertex pulls from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Directed in-edges only.
    InEdges,
    /// In-edges plus reversed out-edges (weak connectivity, undirected models).
    Symmetric,
}

/// One in-edge as seen by `gather`.
#[derive(Debug, Clone, Copy)]
pub struct InEdge {
    /// Edge id in the pull view.
    pub id: usize,
    /// Position of this edge within the destination's in-edge list.
    pub slot: usize,
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
    pub src_out_degree: u32,
    /// For symmetric views: slot of the reverse edge in the source's list.
    pub twin_slot: Option<usize>,
}

/// A vertex program in the pull-based gather/apply model, extended with
/// per-edge influence reporting.
///
/// `gather` must be a pure function of its arguments: the engine folds it in
/// edge-id order within a vertex and runs vertices in parallel.
pub trait VertexProgram: Sync {
    type Property: Clone + Send + Sync;
    type Accum;

    fn orientation(&self) -> Orientation {
        Orientation::InEdges
    }

    fn init(&self, v: VertexId, num_vertices: usize, in_degree: usize) -> Self::Property;

    /// Identity element the gather fold starts from.
    fn identity(&self, v: VertexId, in_degree: usize) -> Self::Accum;

    /// Folds one in-edge into `acc` and returns that edge's influence (finite, >= 0).
    fn gather(&self, acc: &mut Self::Accum, src: &Self::Property, edge: &InEdge) -> f64;

    fn apply(
        &self,
        v: VertexId,
        acc: Self::Accum,
        old: &Self::Property,
        num_vertices: usize,
    ) -> Self::Property;

    /// Whether `v` stays active after changing from `old` to `new`.
    fn vstatus(&self, old: &Self::Property, new: &Self::Property) -> bool;

    /// Whether an edge stays active after a superstep.
    fn estatus(&self, influence: f64, theta: f64) -> bool {
        influence > theta
    }

    /// Rejects NaN or overflowed properties.
    fn is_valid(&self, p: &Self::Property) -> bool;

    /// Whether a freshly initialized property can affect out-neighbours.
    /// Vertices behind an inactive edge from such a source start deferred.
    fn signals_at_start(&self, _p: &Self::Property) -> bool {
        true
    }
}
