//! Vertex-centric graph processing with runtime-adaptive edge approximation.
//!
//! The engine runs pull-based gather/apply iterations over a CSR graph.
//! Edges start sparsified, each gather reports a per-edge influence, and
//! periodic full-read supersteps re-select the active edge set against an
//! influence threshold. See [`engine`] for the runtime, [`algorithms`] for the
//! bundled vertex programs and [`bench`] for the accuracy/speedup harness.

pub mod algorithms;
pub mod bench;
pub mod cli;
pub mod engine;
pub mod graph;
pub mod metrics;

pub use engine::{run, EngineConfig, Mode, RunReport, Scheme, VertexProgram};
pub use graph::{EdgeFlags, Graph, VertexId};
