//! Pull-oriented CSR graph storage.
//!
//! Edges are grouped by destination: the in-edges of `v` occupy
//! `in_offsets[v]..in_offsets[v + 1]` of `in_sources` (and `weights`, when
//! present). The position of an edge in that array is its canonical id, used
//! by [`EdgeFlags`] and by influence reporting.

mod flags;
mod generate;
mod io;

pub use flags::EdgeFlags;
pub use generate::{generate_dumbbell, generate_power_law};
pub use io::{load_binary, load_edge_list, load_graph, save_binary, save_edge_list, BINARY_MAGIC};

use std::ops::Range;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: weight column missing")]
    MissingWeight { line: usize },
    #[error("not a binary CSR cache (bad magic)")]
    BadMagic,
    #[error("corrupt binary CSR cache: {0}")]
    Corrupt(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Immutable CSR graph with in-edge adjacency and optional edge weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    in_offsets: Vec<usize>,
    in_sources: Vec<VertexId>,
    weights: Option<Vec<f64>>,
    out_degree: Vec<u32>,
}

impl Graph {
    /// Builds a graph from `(src, dst)` pairs. Within each destination the
    /// in-edges keep the order in which they appear in `edges`.
    pub fn from_edges(
        num_vertices: usize,
        edges: &[(VertexId, VertexId)],
        weights: Option<Vec<f64>>,
    ) -> Result<Self, GraphError> {
        if let Some(w) = &weights {
            if w.len() != edges.len() {
                return Err(GraphError::InvalidParameter(format!(
                    "{} weights for {} edges",
                    w.len(),
                    edges.len()
                )));
            }
            if let Some(bad) = w.iter().find(|x| !x.is_finite() || **x < 0.0) {
                return Err(GraphError::InvalidParameter(format!(
                    "edge weight {bad} is not a finite non-negative number"
                )));
            }
        }
        if let Some(&(s, d)) = edges
            .iter()
            .find(|(s, d)| *s as usize >= num_vertices || *d as usize >= num_vertices)
        {
            return Err(GraphError::InvalidParameter(format!(
                "edge {s}->{d} out of range for {num_vertices} vertices"
            )));
        }

        let mut in_offsets = vec![0usize; num_vertices + 1];
        let mut out_degree = vec![0u32; num_vertices];
        for &(s, d) in edges {
            in_offsets[d as usize + 1] += 1;
            out_degree[s as usize] += 1;
        }
        for v in 0..num_vertices {
            in_offsets[v + 1] += in_offsets[v];
        }

        // stable counting sort by destination
        let mut cursor = in_offsets[..num_vertices].to_vec();
        let mut in_sources = vec![0; edges.len()];
        let mut sorted_weights = weights.as_ref().map(|_| vec![0.0; edges.len()]);
        for (i, &(s, d)) in edges.iter().enumerate() {
            let slot = cursor[d as usize];
            cursor[d as usize] += 1;
            in_sources[slot] = s;
            if let (Some(out), Some(w)) = (sorted_weights.as_mut(), weights.as_ref()) {
                out[slot] = w[i];
            }
        }

        Ok(Self {
            in_offsets,
            in_sources,
            weights: sorted_weights,
            out_degree,
        })
    }

    /// Reassembles a graph from raw CSR arrays, validating every invariant.
    pub fn from_csr(
        in_offsets: Vec<usize>,
        in_sources: Vec<VertexId>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self, GraphError> {
        let corrupt = |m: &str| Err(GraphError::Corrupt(m.to_string()));
        if in_offsets.is_empty() || in_offsets[0] != 0 {
            return corrupt("offsets must start at 0");
        }
        if in_offsets.windows(2).any(|w| w[0] > w[1]) {
            return corrupt("offsets must be non-decreasing");
        }
        if *in_offsets.last().unwrap() != in_sources.len() {
            return corrupt("last offset must equal the edge count");
        }
        let n = in_offsets.len() - 1;
        let mut out_degree = vec![0u32; n];
        for &s in &in_sources {
            if s as usize >= n {
                return corrupt("source id out of range");
            }
            out_degree[s as usize] += 1;
        }
        if let Some(w) = &weights {
            if w.len() != in_sources.len() {
                return corrupt("weight array length differs from edge count");
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return corrupt("weights must be finite and non-negative");
            }
        }
        Ok(Self {
            in_offsets,
            in_sources,
            weights,
            out_degree,
        })
    }

    pub fn empty() -> Self {
        Self {
            in_offsets: vec![0],
            in_sources: Vec::new(),
            weights: None,
            out_degree: Vec::new(),
        }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.out_degree.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.in_sources.len()
    }

    pub fn in_offsets(&self) -> &[usize] {
        &self.in_offsets
    }

    pub fn in_sources(&self) -> &[VertexId] {
        &self.in_sources
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    pub fn out_degrees(&self) -> &[u32] {
        &self.out_degree
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> u32 {
        self.out_degree[v as usize]
    }

    /// Edge-id range of the in-edges of `v`.
    #[inline]
    pub fn in_edge_range(&self, v: VertexId) -> Range<usize> {
        self.in_offsets[v as usize]..self.in_offsets[v as usize + 1]
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        let r = self.in_edge_range(v);
        r.end - r.start
    }

    #[inline]
    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_sources[self.in_edge_range(v)]
    }

    /// Weight of edge `e`; unweighted graphs use unit weights.
    #[inline]
    pub fn weight(&self, e: usize) -> f64 {
        match &self.weights {
            Some(w) => w[e],
            None => 1.0,
        }
    }

    /// All edges as `(src, dst, weight)` in edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        (0..self.num_vertices() as VertexId).flat_map(move |d| {
            self.in_edge_range(d)
                .map(move |e| (self.in_sources[e], d, self.weight(e)))
        })
    }

    /// Destination of every edge, indexed by edge id.
    pub fn in_targets(&self) -> Vec<VertexId> {
        let mut targets = Vec::with_capacity(self.num_edges());
        for d in 0..self.num_vertices() {
            let len = self.in_offsets[d + 1] - self.in_offsets[d];
            targets.extend(std::iter::repeat_n(d as VertexId, len));
        }
        targets
    }

    /// Graph whose in-edges are the out-edges of `self`.
    pub fn reverse_orientation(&self) -> Graph {
        let targets = self.in_targets();
        let flipped: Vec<(VertexId, VertexId)> = self
            .in_sources
            .iter()
            .zip(&targets)
            .map(|(&s, &d)| (d, s))
            .collect();
        Graph::from_edges(self.num_vertices(), &flipped, self.weights.clone())
            .expect("reversing a valid graph cannot fail")
    }
}

/// Free-function form of [`Graph::reverse_orientation`].
pub fn reverse_orientation(g: &Graph) -> Graph {
    g.reverse_orientation()
}
