use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use super::SweepRow;
use crate::engine::Scheme;

pub const CSV_HEADER: [&str; 13] = [
    "scheme",
    "algo",
    "graph",
    "sigma",
    "theta",
    "alpha",
    "iters",
    "repeats",
    "accuracy",
    "speedup",
    "edge_ratio",
    "wall_ms_mean",
    "wall_ms_ref",
];

/// Written in place of wall-time derived values when cells ran concurrently.
const NOT_COMPARABLE: &str = "NA";

/// Six significant digits, trailing zeros trimmed, always with a decimal
/// point: `100.0`, `0.333333`, `1.0`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        let s = format!("{x:.5e}");
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}"))
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return format!("{s}.0");
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

fn record(row: &SweepRow) -> Vec<String> {
    let wall = |x: f64| {
        if row.wall_comparable {
            format_sig(x)
        } else {
            NOT_COMPARABLE.to_string()
        }
    };
    vec![
        row.scheme.to_string(),
        row.algo.to_string(),
        row.graph.clone(),
        format_sig(row.sigma),
        format_sig(row.theta),
        row.alpha.to_string(),
        row.iters.to_string(),
        row.repeats.to_string(),
        format_sig(row.accuracy),
        if row.scheme == Scheme::Accurate { format_sig(row.speedup) } else { wall(row.speedup) },
        format_sig(row.edge_ratio),
        wall(row.wall_ms_mean),
        wall(row.wall_ms_ref),
    ]
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(record(row))?;
    }
    w.flush()
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> io::Result<()> {
    write_csv(rows, io::BufWriter::new(File::create(path)?))
}

const BANDS: [(f64, f64, &str); 3] = [
    (95.0, f64::INFINITY, ">=95%"),
    (90.0, 95.0, "90-95%"),
    (80.0, 90.0, "80-90%"),
];

/// Plain-text table of all rows followed by, per accuracy band, the
/// highest-accuracy cell and the cell with the least processed work.
pub fn emit_summary(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<9} {:>8} {:>8} {:>5} {:>6} {:>10} {:>10} {:>10}",
        "scheme", "sigma", "theta", "alpha", "iters", "accuracy", "speedup", "edge_ratio"
    );
    for r in rows {
        let speedup = if r.wall_comparable || r.scheme == Scheme::Accurate {
            format_sig(r.speedup)
        } else {
            NOT_COMPARABLE.into()
        };
        let _ = writeln!(
            s,
            "{:<9} {:>8} {:>8} {:>5} {:>6} {:>10} {:>10} {:>10}",
            r.scheme.as_str(),
            format_sig(r.sigma),
            format_sig(r.theta),
            r.alpha,
            r.iters,
            format_sig(r.accuracy),
            speedup,
            format_sig(r.edge_ratio),
        );
    }
    let describe = |r: &SweepRow| {
        format!(
            "{} sigma={} theta={} alpha={} (accuracy {}, edge_ratio {})",
            r.scheme,
            format_sig(r.sigma),
            format_sig(r.theta),
            r.alpha,
            format_sig(r.accuracy),
            format_sig(r.edge_ratio)
        )
    };
    for (lo, hi, name) in BANDS {
        let band: Vec<&SweepRow> = rows
            .iter()
            .filter(|r| r.scheme != Scheme::Accurate && r.accuracy >= lo && r.accuracy < hi)
            .collect();
        let best = band.iter().max_by(|a, b| {
            a.accuracy
                .total_cmp(&b.accuracy)
                .then(b.edge_ratio.total_cmp(&a.edge_ratio))
        });
        let cheapest = band.iter().min_by(|a, b| {
            a.edge_ratio
                .total_cmp(&b.edge_ratio)
                .then(b.accuracy.total_cmp(&a.accuracy))
        });
        match (best, cheapest) {
            (Some(b), Some(c)) => {
                let _ = writeln!(s, "band {name}: best {}", describe(b));
                let _ = writeln!(s, "band {name}: least work {}", describe(c));
            }
            _ => {
                let _ = writeln!(s, "band {name}: no cells");
            }
        }
    }
    s
}
