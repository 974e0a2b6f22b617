use super::EngineError;
use crate::graph::{EdgeFlags, Graph};

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Uniform draw in `[0, 1)` keyed by `(seed, edge)`; independent of any
/// traversal order.
#[inline]
pub fn edge_uniform(seed: u64, edge: usize) -> f64 {
    let h = splitmix64(seed ^ splitmix64(edge as u64));
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Marks each edge active independently with probability `sigma`.
pub fn sparsify(g: &Graph, sigma: f64, seed: u64) -> Result<EdgeFlags, EngineError> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(EngineError::InvalidConfig(format!(
            "sigma must be in [0,1], got {sigma}"
        )));
    }
    Ok(EdgeFlags::from_fn(g.num_edges(), |e| {
        edge_uniform(seed, e) < sigma
    }))
}
