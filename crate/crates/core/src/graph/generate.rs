//! Synthetic graph generators.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, VertexId};

/// Two complete directed `k`-cliques (`0..k` and `k..2k`) joined by the
/// bridge pair `k-1 -> k` and `k -> k-1`.
pub fn generate_dumbbell(k: usize) -> Result<Graph, GraphError> {
    if k < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "dumbbell clique size must be >= 2, got {k}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * k * (k - 1) + 2);
    for base in [0, k] {
        for i in base..base + k {
            for j in base..base + k {
                if i != j {
                    edges.push((i as VertexId, j as VertexId));
                }
            }
        }
    }
    edges.push(((k - 1) as VertexId, k as VertexId));
    edges.push((k as VertexId, (k - 1) as VertexId));
    Graph::from_edges(2 * k, &edges, None)
}

/// Chung–Lu style directed graph with `round(n * avg_degree)` sampled edges.
///
/// Destinations are drawn with probability proportional to
/// `(i + 1)^(-1 / (exponent - 1))`, which gives a power-law in-degree tail
/// with the requested exponent. Sources use the same weights over a seeded
/// permutation of the vertices so in- and out-hubs differ. Sampled
/// self-loops are dropped, so a single-vertex graph has no edges.
pub fn generate_power_law(
    n: usize,
    avg_degree: f64,
    exponent: f64,
    seed: u64,
) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter("n must be >= 1".into()));
    }
    if !(avg_degree > 0.0 && avg_degree.is_finite()) {
        return Err(GraphError::InvalidParameter(format!(
            "avg_degree must be positive, got {avg_degree}"
        )));
    }
    if !(exponent > 1.0 && exponent.is_finite()) {
        return Err(GraphError::InvalidParameter(format!(
            "exponent must be > 1, got {exponent}"
        )));
    }
    if n > VertexId::MAX as usize {
        return Err(GraphError::InvalidParameter(format!("n = {n} exceeds vertex id range")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slope = -1.0 / (exponent - 1.0);
    let weights: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(slope)).collect();
    let dst_dist = WeightedIndex::new(&weights).expect("weights are positive");

    let mut perm: Vec<VertexId> = (0..n as VertexId).collect();
    perm.shuffle(&mut rng);
    let src_dist = WeightedIndex::new(&weights).expect("weights are positive");

    let target = (n as f64 * avg_degree).round() as usize;
    let mut edges = Vec::with_capacity(target);
    for _ in 0..target {
        let s = perm[src_dist.sample(&mut rng)];
        let d = dst_dist.sample(&mut rng) as VertexId;
        if s != d {
            edges.push((s, d));
        }
    }
    Graph::from_edges(n, &edges, None)
}
