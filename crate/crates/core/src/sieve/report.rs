//! Observed-vs-predicted density tables, emitted as CSV or JSON lines.

use serde::{Deserialize, Serialize};

/// One evaluation point of a density comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    pub x: u64,
    pub observed: u64,
    pub predicted: f64,
    pub abs_error: f64,
    pub rel_error: f64,
}

impl DensityRow {
    pub fn new(x: u64, observed: u64, predicted: f64) -> Self {
        let abs_error = (observed as f64 - predicted).abs();
        let rel_error = if predicted != 0.0 { abs_error / predicted.abs() } else { f64::NAN };
        DensityRow { x, observed, predicted, abs_error, rel_error }
    }
}

/// Rows sorted by `x` ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub rows: Vec<DensityRow>,
}

/// Render a real with 17 significant digits (lossless for f64).
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

impl DensityReport {
    pub fn new(mut rows: Vec<DensityRow>) -> Self {
        rows.sort_by_key(|r| r.x);
        DensityReport { rows }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("X,observed,predicted,abs_error,rel_error\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                r.x,
                r.observed,
                fmt_real(r.predicted),
                fmt_real(r.abs_error),
                fmt_real(r.rel_error)
            ));
        }
        s
    }

    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&serde_json::to_string(r).expect("row serializes"));
            s.push('\n');
        }
        s
    }

    /// Parse back what `to_csv` produced (comment and header lines skipped).
    pub fn from_csv(text: &str) -> Option<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            if line.is_empty() || line.starts_with('#') || line.starts_with('X') {
                continue;
            }
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return None;
            }
            rows.push(DensityRow {
                x: f[0].parse().ok()?,
                observed: f[1].parse().ok()?,
                predicted: f[2].parse().ok()?,
                abs_error: f[3].parse().ok()?,
                rel_error: f[4].parse().ok()?,
            });
        }
        Some(DensityReport { rows })
    }
}
