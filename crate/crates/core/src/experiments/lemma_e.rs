//! Exact `N_{α,θ}(X)` along a grid, compared with the exponent bound
//! `X^{1/8 + α + θ/2 + ε}` for ε = 0 and ε = 0.01.

use serde::{Deserialize, Serialize};

use crate::bounds::{Frac, Theta};
use crate::descent::count_n::{count_n, NCountResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaERow {
    pub x: u64,
    pub count: u64,
    /// `count / X^{1/8+α+θ/2}`
    pub ratio: f64,
    /// `count / X^{1/8+α+θ/2+0.01}`
    pub ratio_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaEReport {
    pub alpha: f64,
    pub theta: f64,
    pub exponent: f64,
    pub rows: Vec<LemmaERow>,
    pub detail: Vec<NCountResult>,
}

/// Requires `α + θ/2 < 7/8` (checked exactly).
pub fn verify_lemma_e(alpha: Frac, theta: Theta, grid: &[u64], tol: f64) -> Result<LemmaEReport> {
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("grid must be non-empty and ascending".into()));
    }
    let (tn, td) = (theta.frac().num() as u128, theta.frac().den() as u128);
    let (an, ad) = (alpha.num() as u128, alpha.den() as u128);
    if (2 * an * td + tn * ad) * 8 >= 7 * 2 * ad * td {
        return Err(Error::InvalidParameter("requires α + θ/2 < 7/8".into()));
    }
    let exponent = 0.125 + alpha.as_f64() + theta.as_f64() / 2.0;
    let mut rows = Vec::new();
    let mut detail = Vec::new();
    for &x in grid {
        let r = count_n(alpha, theta, x, tol)?;
        let ratio = r.count as f64 / (x as f64).powf(exponent);
        let ratio_eps = r.count as f64 / (x as f64).powf(exponent + 0.01);
        rows.push(LemmaERow { x, count: r.count, ratio, ratio_eps });
        detail.push(r);
    }
    Ok(LemmaEReport {
        alpha: alpha.as_f64(),
        theta: theta.as_f64(),
        exponent,
        rows,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid_rejected_and_constraint_enforced() {
        let theta = Theta::new(3, 10).unwrap();
        assert!(verify_lemma_e(Frac::parse_decimal("0.3").unwrap(), theta, &[], 1e-8).is_err());
        // α = 0.8 violates α + θ/2 < 7/8 at θ = 0.3
        assert!(
            verify_lemma_e(Frac::parse_decimal("0.8").unwrap(), theta, &[100], 1e-8).is_err()
        );
    }

    #[test]
    fn zero_counts_below_five() {
        let theta = Theta::new(3, 10).unwrap();
        let r = verify_lemma_e(Frac::parse_decimal("0.3").unwrap(), theta, &[4], 1e-8).unwrap();
        assert_eq!(r.rows[0].count, 0);
    }
}
