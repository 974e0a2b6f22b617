//! Edge-list text format and the `GGCSR1` binary cache.
//!
//! Text: one `src dst [weight]` edge per line, whitespace separated; lines
//! starting with `#` or `%` are comments. Vertex ids are dense and 0-based,
//! so `N = 1 + max id`.
//!
//! Binary (all integers little-endian u64):
//! `GGCSR1 | N | E | weighted | offsets[N+1] | sources[E] | weights[E]?`
//! with weights stored as little-endian f64 bit patterns.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, GraphError, VertexId};

pub const BINARY_MAGIC: &[u8; 6] = b"GGCSR1";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> GraphError + '_ {
    move |source| GraphError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Parses an edge list. With `weighted = true` every edge line must carry a
/// third column.
pub fn parse_edge_list<R: BufRead>(reader: R, weighted: bool) -> Result<Graph, GraphError> {
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut max_id: Option<VertexId> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| GraphError::Io {
            path: "<reader>".into(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut cols = trimmed.split_whitespace();
        let mut vertex = |name: &str| -> Result<VertexId, GraphError> {
            let tok = cols.next().ok_or_else(|| GraphError::Malformed {
                line: line_no,
                message: format!("missing {name} vertex"),
            })?;
            tok.parse::<VertexId>().map_err(|_| GraphError::Malformed {
                line: line_no,
                message: format!("bad {name} vertex id {tok:?}"),
            })
        };
        let src = vertex("source")?;
        let dst = vertex("destination")?;
        if weighted {
            let tok = cols
                .next()
                .ok_or(GraphError::MissingWeight { line: line_no })?;
            let w: f64 = tok.parse().map_err(|_| GraphError::Malformed {
                line: line_no,
                message: format!("bad weight {tok:?}"),
            })?;
            if !w.is_finite() || w < 0.0 {
                return Err(GraphError::Malformed {
                    line: line_no,
                    message: format!("weight {w} must be finite and non-negative"),
                });
            }
            weights.push(w);
        }
        max_id = max_id.max(Some(src.max(dst)));
        edges.push((src, dst));
    }

    let n = max_id.map_or(0, |m| m as usize + 1);
    Graph::from_edges(n, &edges, weighted.then_some(weights))
}

pub fn load_edge_list(path: impl AsRef<Path>, weighted: bool) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    parse_edge_list(BufReader::new(file), weighted).map_err(|e| match e {
        GraphError::Io { source, .. } => GraphError::Io {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Writes edges in edge-id order (grouped by destination).
pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    let weighted = g.is_weighted();
    for (s, d, w) in g.edges() {
        if weighted {
            writeln!(out, "{s} {d} {w}")
        } else {
            writeln!(out, "{s} {d}")
        }
        .map_err(io_err(path))?;
    }
    out.flush().map_err(io_err(path))
}

pub fn save_binary(g: &Graph, path: impl AsRef<Path>) -> Result<(), GraphError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut out = BufWriter::new(file);
    out.write_all(BINARY_MAGIC).map_err(io_err(path))?;
    let mut body: Vec<u8> = Vec::with_capacity(
        8 * (3 + g.num_vertices() + 1 + g.num_edges() * if g.is_weighted() { 2 } else { 1 }),
    );
    let mut push = |x: u64| body.extend_from_slice(&x.to_le_bytes());
    push(g.num_vertices() as u64);
    push(g.num_edges() as u64);
    push(g.is_weighted() as u64);
    for &o in g.in_offsets() {
        push(o as u64);
    }
    for &s in g.in_sources() {
        push(s as u64);
    }
    if let Some(w) = g.weights() {
        for &x in w {
            push(x.to_bits());
        }
    }
    out.write_all(&body).map_err(io_err(path))?;
    out.flush().map_err(io_err(path))
}

pub fn load_binary(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(io_err(path))?;
    decode_binary(&bytes)
}

fn decode_binary(bytes: &[u8]) -> Result<Graph, GraphError> {
    if bytes.len() < BINARY_MAGIC.len() || &bytes[..BINARY_MAGIC.len()] != BINARY_MAGIC {
        return Err(GraphError::BadMagic);
    }
    let mut words = bytes[BINARY_MAGIC.len()..].chunks_exact(8);
    if !words.remainder().is_empty() {
        return Err(GraphError::Corrupt("trailing bytes".into()));
    }
    let mut next = || -> Result<u64, GraphError> {
        words
            .next()
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .ok_or_else(|| GraphError::Corrupt("truncated".into()))
    };
    let n = next()? as usize;
    let e = next()? as usize;
    let weighted = match next()? {
        0 => false,
        1 => true,
        x => return Err(GraphError::Corrupt(format!("bad weighted flag {x}"))),
    };
    let offsets = (0..=n)
        .map(|_| next().map(|x| x as usize))
        .collect::<Result<Vec<_>, _>>()?;
    let sources = (0..e)
        .map(|_| {
            next().and_then(|x| {
                VertexId::try_from(x).map_err(|_| GraphError::Corrupt("vertex id overflow".into()))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let weights = if weighted {
        Some(
            (0..e)
                .map(|_| next().map(f64::from_bits))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    if next().is_ok() {
        return Err(GraphError::Corrupt("trailing data".into()));
    }
    Graph::from_csr(offsets, sources, weights)
}

/// Loads either format, picking the binary decoder when the file starts
/// with the cache magic.
pub fn load_graph(path: impl AsRef<Path>, weighted: bool) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let mut head = [0u8; 6];
    let is_binary = File::open(path)
        .and_then(|mut f| f.read(&mut head))
        .map_err(io_err(path))?
        == head.len()
        && &head == BINARY_MAGIC;
    if is_binary {
        load_binary(path)
    } else {
        load_edge_list(path, weighted)
    }
}
