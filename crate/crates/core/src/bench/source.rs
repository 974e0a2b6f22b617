use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{self, Graph, GraphError};

/// Where a benchmark graph comes from. Parsed from `gen:dumbbell:K`,
/// `gen:powerlaw:N,DEG,EXP[,SEED]`, or a file path (edge list or binary
/// cache).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GraphSource {
    Dumbbell(usize),
    PowerLaw {
        n: usize,
        avg_degree: f64,
        exponent: f64,
        seed: u64,
    },
    File(PathBuf),
}

pub const DEFAULT_GENERATOR_SEED: u64 = 7;

impl GraphSource {
    pub fn load(&self, weighted: bool) -> Result<Graph, GraphError> {
        match self {
            GraphSource::Dumbbell(k) => graph::generate_dumbbell(*k),
            GraphSource::PowerLaw {
                n,
                avg_degree,
                exponent,
                seed,
            } => graph::generate_power_law(*n, *avg_degree, *exponent, *seed),
            GraphSource::File(path) => graph::load_graph(path, weighted),
        }
    }

    /// Parses a generator spec without the `gen:` prefix.
    pub fn parse_generator(spec: &str) -> Result<Self, String> {
        let (kind, args) = spec
            .split_once(':')
            .ok_or_else(|| format!("generator spec {spec:?} needs the form KIND:ARGS"))?;
        match kind {
            "dumbbell" => args
                .trim()
                .parse()
                .map(GraphSource::Dumbbell)
                .map_err(|_| format!("bad dumbbell size {args:?}")),
            "powerlaw" => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                if !(3..=4).contains(&parts.len()) {
                    return Err(format!("powerlaw needs N,DEG,EXP[,SEED], got {args:?}"));
                }
                let bad = |what: &str| format!("bad powerlaw {what} in {args:?}");
                Ok(GraphSource::PowerLaw {
                    n: parts[0].parse().map_err(|_| bad("N"))?,
                    avg_degree: parts[1].parse().map_err(|_| bad("DEG"))?,
                    exponent: parts[2].parse().map_err(|_| bad("EXP"))?,
                    seed: match parts.get(3) {
                        Some(s) => s.parse().map_err(|_| bad("SEED"))?,
                        None => DEFAULT_GENERATOR_SEED,
                    },
                })
            }
            other => Err(format!("unknown generator {other:?} (expected dumbbell|powerlaw)")),
        }
    }
}

impl FromStr for GraphSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.strip_prefix("gen:") {
            Some(spec) => Self::parse_generator(spec),
            None if s.is_empty() => Err("empty graph source".into()),
            None => Ok(GraphSource::File(PathBuf::from(s))),
        }
    }
}

impl TryFrom<String> for GraphSource {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<GraphSource> for String {
    fn from(s: GraphSource) -> String {
        s.to_string()
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::Dumbbell(k) => write!(f, "gen:dumbbell:{k}"),
            GraphSource::PowerLaw {
                n,
                avg_degree,
                exponent,
                seed,
            } => write!(f, "gen:powerlaw:{n},{avg_degree},{exponent},{seed}"),
            GraphSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}
