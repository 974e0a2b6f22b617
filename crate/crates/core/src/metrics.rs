//! Error metrics for comparing an approximate run against the accurate one.
//! Every metric reports an error in `[0, 1]` and `accuracy = (1 - error) * 100`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("length mismatch: approx has {approx}, exact has {exact}")]
    LengthMismatch { approx: usize, exact: usize },
    #[error("k = {k} must be in [1, {n}]")]
    InvalidK { k: usize, n: usize },
    #[error("vertex {vertex}: approximate distance {approx} is shorter than exact {exact}")]
    StretchViolation { vertex: usize, approx: f64, exact: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    TopK,
    Relative,
    Stretch,
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "topk" => Ok(Metric::TopK),
            "relative" => Ok(Metric::Relative),
            "stretch" => Ok(Metric::Stretch),
            _ => Err(format!("unknown metric {s:?} (expected topk|relative|stretch)")),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::TopK => "topk",
            Metric::Relative => "relative",
            Metric::Stretch => "stretch",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub metric: Metric,
    pub error: f64,
    pub accuracy: f64,
    pub k: Option<usize>,
}

impl ErrorReport {
    fn new(metric: Metric, error: f64, k: Option<usize>) -> Self {
        Self {
            metric,
            error,
            accuracy: (1.0 - error) * 100.0,
            k,
        }
    }
}

fn check_len<A, B>(approx: &[A], exact: &[B]) -> Result<(), MetricError> {
    if approx.len() != exact.len() {
        return Err(MetricError::LengthMismatch {
            approx: approx.len(),
            exact: exact.len(),
        });
    }
    Ok(())
}

/// Default `k` for a graph of `n` vertices: one percent, at least one.
pub fn default_k(n: usize) -> usize {
    (n / 100).max(1)
}

/// Indices of the `k` largest values, ties broken by ascending index.
pub fn top_k_indices(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

/// Fraction of the approximate top-k that is missing from the exact top-k.
pub fn topk_error(approx: &[f64], exact: &[f64], k: usize) -> Result<ErrorReport, MetricError> {
    check_len(approx, exact)?;
    let n = exact.len();
    if k == 0 || k > n {
        return Err(MetricError::InvalidK { k, n });
    }
    let mut in_exact = vec![false; n];
    for v in top_k_indices(exact, k) {
        in_exact[v] = true;
    }
    let missing = top_k_indices(approx, k)
        .into_iter()
        .filter(|&v| !in_exact[v])
        .count();
    Ok(ErrorReport::new(Metric::TopK, missing as f64 / k as f64, Some(k)))
}

/// Mean of `|exact - approx| / |exact|` per vertex, each term clamped to
/// `[0, 1]`. An exact value of 0 counts as fully wrong unless matched.
pub fn relative_error(approx: &[f64], exact: &[f64]) -> Result<ErrorReport, MetricError> {
    check_len(approx, exact)?;
    if exact.is_empty() {
        return Ok(ErrorReport::new(Metric::Relative, 0.0, None));
    }
    let sum: f64 = approx
        .iter()
        .zip(exact)
        .map(|(&a, &x)| {
            if a == x {
                0.0
            } else if x == 0.0 {
                1.0
            } else {
                ((x - a).abs() / x.abs()).min(1.0)
            }
        })
        .sum();
    Ok(ErrorReport::new(Metric::Relative, sum / exact.len() as f64, None))
}

/// Relative error on component labels, each shifted by one so label 0 is a
/// valid denominator.
pub fn label_relative_error(approx: &[u32], exact: &[u32]) -> Result<ErrorReport, MetricError> {
    check_len(approx, exact)?;
    let shift = |v: &[u32]| v.iter().map(|&x| x as f64 + 1.0).collect::<Vec<_>>();
    relative_error(&shift(approx), &shift(exact))
}

const STRETCH_SLACK: f64 = 1e-12;

/// Mean of `1 - exact / approx` over vertices reachable in the exact run,
/// excluding those at distance 0 in both. Vertices reachable only in the
/// exact run count as 1.
pub fn stretch_error(approx: &[f64], exact: &[f64]) -> Result<ErrorReport, MetricError> {
    check_len(approx, exact)?;
    let mut sum = 0.0;
    let mut count = 0usize;
    for (v, (&a, &x)) in approx.iter().zip(exact).enumerate() {
        if a < x * (1.0 - STRETCH_SLACK) || (x.is_infinite() && a.is_finite()) {
            return Err(MetricError::StretchViolation { vertex: v, approx: a, exact: x });
        }
        if x.is_infinite() || (x == 0.0 && a == 0.0) {
            continue;
        }
        let e = if a.is_infinite() || x == 0.0 {
            1.0
        } else {
            (1.0 - x / a).max(0.0)
        };
        sum += e;
        count += 1;
    }
    let error = if count == 0 { 0.0 } else { sum / count as f64 };
    Ok(ErrorReport::new(Metric::Stretch, error, None))
}
