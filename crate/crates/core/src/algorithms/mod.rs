//! The four vertex programs: PageRank, SSSP, WCC and belief propagation.

mod bp;
mod pagerank;
mod sssp;
mod wcc;

pub use bp::{bp_spec, BeliefPropagation, BpState};
pub use pagerank::{pagerank_spec, PageRank};
pub use sssp::{sssp_spec, Sssp, SsspInfluence};
pub use wcc::{wcc_spec, Wcc};

pub mod defaults {
    pub use super::bp::{
        DEFAULT_COUPLING as BP_COUPLING, DEFAULT_EPSILON as BP_EPSILON, DEFAULT_STATES as BP_STATES,
    };
    pub use super::pagerank::{DEFAULT_DAMPING as PR_DAMPING, DEFAULT_EPSILON as PR_EPSILON};
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgoError {
    #[error("invalid algorithm parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgoKind {
    Pr,
    Sssp,
    Wcc,
    Bp,
}

impl AlgoKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AlgoKind::Pr => "pr",
            AlgoKind::Sssp => "sssp",
            AlgoKind::Wcc => "wcc",
            AlgoKind::Bp => "bp",
        }
    }
}

impl fmt::Display for AlgoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgoKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "pr" | "pagerank" => Ok(AlgoKind::Pr),
            "sssp" => Ok(AlgoKind::Sssp),
            "wcc" => Ok(AlgoKind::Wcc),
            "bp" => Ok(AlgoKind::Bp),
            _ => Err(format!("unknown algorithm {s:?} (expected pr|sssp|wcc|bp)")),
        }
    }
}
