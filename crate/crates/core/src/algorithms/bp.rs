//! Loopy sum-product belief propagation on a pairwise Potts-style model.
//!
//! Every edge of the symmetrized graph is a pairwise factor with potential
//! `psi(i, j) = c` when `i == j` and `(1 - c) / (S - 1)` otherwise. Each
//! vertex has a fixed prior derived from its id.
//!
//! A vertex stores its normalized belief together with the message it last
//! received on each in-edge slot. The message `v -> u` is formed from `v`'s
//! cavity distribution, `belief_v / msg(u -> v)`, so on trees the fixed point
//! is the exact marginal. Slots skipped in approximate mode hold the
//! uniform message.

use serde::Serialize;

use super::AlgoError;
use crate::engine::{edge_uniform, InEdge, Orientation, VertexProgram};
use crate::graph::VertexId;

pub const DEFAULT_STATES: usize = 2;
pub const DEFAULT_COUPLING: f64 = 0.8;
pub const DEFAULT_EPSILON: f64 = 1e-6;

const PRIOR_SALT: u64 = 0x6270_5f70_7269_6f72;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BpState {
    pub belief: Vec<f64>,
    /// `in_degree * states` values; slot `k` holds the message received on
    /// the `k`-th in-edge.
    pub incoming: Vec<f64>,
}

pub struct BpAccum {
    product: Vec<f64>,
    messages: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeliefPropagation {
    states: usize,
    coupling: f64,
    epsilon: f64,
}

pub fn bp_spec(states: usize, coupling: f64, epsilon: f64) -> Result<BeliefPropagation, AlgoError> {
    if states < 2 {
        return Err(AlgoError::InvalidParameter(format!("states must be >= 2, got {states}")));
    }
    if !(coupling > 0.0 && coupling < 1.0) {
        return Err(AlgoError::InvalidParameter(format!(
            "coupling must be in (0,1), got {coupling}"
        )));
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(AlgoError::InvalidParameter(format!("epsilon must be > 0, got {epsilon}")));
    }
    Ok(BeliefPropagation { states, coupling, epsilon })
}

fn normalize(x: &mut [f64]) {
    let s: f64 = x.iter().sum();
    if s > 0.0 {
        x.iter_mut().for_each(|v| *v /= s);
    }
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

impl BeliefPropagation {
    pub fn states(&self) -> usize {
        self.states
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    #[inline]
    pub fn potential(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.coupling
        } else {
            (1.0 - self.coupling) / (self.states - 1) as f64
        }
    }

    /// Normalized prior of `v`, each entry drawn from `[0.1, 1.1)` before
    /// normalization.
    pub fn prior(&self, v: VertexId) -> Vec<f64> {
        let mut p: Vec<f64> = (0..self.states)
            .map(|i| 0.1 + edge_uniform(PRIOR_SALT ^ v as u64, i))
            .collect();
        normalize(&mut p);
        p
    }

    /// Message from a vertex with cavity distribution `cavity`, normalized.
    fn message(&self, cavity: &[f64]) -> Vec<f64> {
        let s = self.states;
        let mut m: Vec<f64> = (0..s)
            .map(|i| (0..s).map(|j| self.potential(i, j) * cavity[j]).sum())
            .collect();
        normalize(&mut m);
        m
    }
}

impl VertexProgram for BeliefPropagation {
    type Property = BpState;
    type Accum = BpAccum;

    fn orientation(&self) -> Orientation {
        Orientation::Symmetric
    }

    fn init(&self, v: VertexId, _: usize, in_degree: usize) -> BpState {
        BpState {
            belief: self.prior(v),
            incoming: vec![1.0 / self.states as f64; in_degree * self.states],
        }
    }

    fn identity(&self, _: VertexId, in_degree: usize) -> BpAccum {
        let s = self.states;
        BpAccum {
            product: vec![1.0 / s as f64; s],
            messages: vec![1.0 / s as f64; in_degree * s],
        }
    }

    fn gather(&self, acc: &mut BpAccum, src: &BpState, edge: &InEdge) -> f64 {
        let s = self.states;
        let mut cavity = src.belief.clone();
        if let Some(r) = edge.twin_slot {
            let back = &src.incoming[r * s..(r + 1) * s];
            cavity.iter_mut().zip(back).for_each(|(c, m)| *c /= m);
            normalize(&mut cavity);
        }
        let msg = self.message(&cavity);

        let before = acc.product.clone();
        acc.product.iter_mut().zip(&msg).for_each(|(p, m)| *p *= m);
        normalize(&mut acc.product);
        acc.messages[edge.slot * s..(edge.slot + 1) * s].copy_from_slice(&msg);

        // both vectors are normalized, so this is the total variation distance
        0.5 * l1(&before, &acc.product)
    }

    fn apply(&self, v: VertexId, acc: BpAccum, _: &BpState, _: usize) -> BpState {
        let mut belief = self.prior(v);
        belief.iter_mut().zip(&acc.product).for_each(|(b, p)| *b *= p);
        normalize(&mut belief);
        BpState {
            belief,
            incoming: acc.messages,
        }
    }

    fn vstatus(&self, old: &BpState, new: &BpState) -> bool {
        l1(&old.belief, &new.belief) + l1(&old.incoming, &new.incoming) > self.epsilon
    }

    fn is_valid(&self, p: &BpState) -> bool {
        let sum: f64 = p.belief.iter().sum();
        p.belief.iter().all(|x| x.is_finite() && *x >= 0.0) && (sum - 1.0).abs() < 1e-9
    }
}
