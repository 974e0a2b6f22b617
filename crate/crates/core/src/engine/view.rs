use std::borrow::Cow;

use super::Orientation;
use crate::graph::{Graph, VertexId};

/// The graph a run actually pulls from, plus the forward index used to
/// propagate vertex activation.
#[derive(Debug, Clone)]
pub struct PullView<'g> {
    graph: Cow<'g, Graph>,
    /// For symmetric views, `twin[e]` is the id of the reverse edge of `e`.
    twin: Option<Vec<usize>>,
    /// View edge ids grouped by source vertex.
    out_offsets: Vec<usize>,
    out_edges: Vec<usize>,
    targets: Vec<VertexId>,
}

impl<'g> PullView<'g> {
    pub fn new(g: &'g Graph, orientation: Orientation) -> Self {
        let (graph, twin) = match orientation {
            Orientation::InEdges => (Cow::Borrowed(g), None),
            Orientation::Symmetric => {
                let (sym, twin) = symmetrize(g);
                (Cow::Owned(sym), Some(twin))
            }
        };
        let targets = graph.in_targets();
        let n = graph.num_vertices();
        let mut out_offsets = vec![0usize; n + 1];
        for &s in graph.in_sources() {
            out_offsets[s as usize + 1] += 1;
        }
        for v in 0..n {
            out_offsets[v + 1] += out_offsets[v];
        }
        let mut cursor = out_offsets[..n].to_vec();
        let mut out_edges = vec![0usize; graph.num_edges()];
        for (e, &s) in graph.in_sources().iter().enumerate() {
            out_edges[cursor[s as usize]] = e;
            cursor[s as usize] += 1;
        }
        Self {
            graph,
            twin,
            out_offsets,
            out_edges,
            targets,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn twin_slot(&self, e: usize) -> Option<usize> {
        self.twin.as_ref().map(|t| {
            let r = t[e];
            r - self.graph.in_offsets()[self.graph.in_sources()[e] as usize]
        })
    }

    /// `(edge id, destination)` for every view edge leaving `v`.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = (usize, VertexId)> + '_ {
        let r = self.out_offsets[v as usize]..self.out_offsets[v as usize + 1];
        self.out_edges[r].iter().map(move |&e| (e, self.targets[e]))
    }
}

/// Union of `g` and its reverse. Vertex `u`'s list holds its original
/// in-edges (in order) followed by its reversed out-edges (in edge-id order).
fn symmetrize(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.num_vertices();
    let src_off = g.in_offsets();
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + g.in_degree(v as VertexId) + g.out_degree(v as VertexId) as usize;
    }
    let total = offsets[n];
    let mut sources = vec![0 as VertexId; total];
    let mut weights = g.weights().map(|_| vec![0.0; total]);
    let mut twin = vec![0usize; total];
    let mut cursor: Vec<usize> = (0..n).map(|v| offsets[v] + g.in_degree(v as VertexId)).collect();

    for d in 0..n {
        for e in g.in_edge_range(d as VertexId) {
            let s = g.in_sources()[e] as usize;
            let fwd = offsets[d] + (e - src_off[d]);
            let back = cursor[s];
            cursor[s] += 1;
            sources[fwd] = s as VertexId;
            sources[back] = d as VertexId;
            twin[fwd] = back;
            twin[back] = fwd;
            if let Some(w) = weights.as_mut() {
                w[fwd] = g.weight(e);
                w[back] = g.weight(e);
            }
        }
    }
    let sym = Graph::from_csr(offsets, sources, weights).expect("symmetrized graph is valid");
    (sym, twin)
}
