//! Empirical table for the density of `T_θ(X)` against its main term
//! `−log(1−θ)/π² · X`, with the remainder fitted as `C·X/log X`.

use serde::{Deserialize, Serialize};

use crate::bounds::Theta;
use crate::error::{Error, Result};
use crate::hiprec;
use crate::sieve::report::{DensityReport, DensityRow};
use crate::sieve::tset::count_t;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaTReport {
    pub theta: f64,
    pub report: DensityReport,
    /// per row: `|observed − predicted| · log X / X`
    pub fitted_c: Vec<f64>,
    /// max/min ratio of the per-row constants (1.0 when only one row)
    pub c_stability: f64,
}

/// Count `T_θ(X)` on an ascending grid and compare with the prediction.
pub fn verify_lemma_t(theta: Theta, grid: &[u64]) -> Result<LemmaTReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be non-empty and ascending".into()));
    }
    let constant = hiprec::density_constant(theta.frac());
    let mut rows = Vec::new();
    let mut fitted_c = Vec::new();
    for &x in grid {
        let observed = count_t(theta, x);
        let predicted = hiprec::rational_to_f64(
            &(&constant.value * num_rational::BigRational::from_integer(x.into())),
        );
        let row = DensityRow::new(x, observed, predicted);
        fitted_c.push(row.abs_error * (x as f64).ln() / x as f64);
        rows.push(row);
    }
    let c_max = fitted_c.iter().cloned().fold(f64::MIN, f64::max);
    let c_min = fitted_c.iter().cloned().fold(f64::MAX, f64::min);
    let c_stability = if c_min > 0.0 { c_max / c_min } else { f64::INFINITY };
    Ok(LemmaTReport {
        theta: theta.as_f64(),
        report: DensityReport::new(rows),
        fitted_c,
        c_stability,
    })
}
