//! η_d across all squarefree twists up to a limit, with threshold flags.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::eta::{eta_with_table, EtaResult, EtaStatus};
use crate::curve::twist::Twist;
use crate::descent::enumerate::SplitTable;
use crate::error::Result;
use crate::factor::{is_prime, is_squarefree};
use crate::sieve::report::fmt_real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaRow {
    pub result: EtaResult,
    /// `eta_log / log d` for FOUND rows with `d ≥ 2`
    pub ratio: Option<f64>,
    /// ratio below 5/8 (the almost-everywhere exponent)
    pub below_5_8: Option<bool>,
    /// ratio below 0.845 (the positive-proportion exponent)
    pub below_0845: Option<bool>,
    /// prime twists are flagged for the `p^{1−ε}` remark
    pub d_is_prime: bool,
}

/// One row per squarefree `d ≤ d_max`, searched at the given bound.
pub fn eta_table(d_max: u64, bound: u64, tol: f64) -> Result<Vec<EtaRow>> {
    let table = SplitTable::new(2 * bound.max(2));
    let ds: Vec<u64> = (1..=d_max).filter(|&d| is_squarefree(d)).collect();
    ds.par_iter()
        .map(|&d| {
            let tw = Twist::new(d)?;
            let result = eta_with_table(&tw, bound, tol, &table)?;
            let ratio = match (result.status, result.eta_log) {
                (EtaStatus::Found, Some(h)) if d >= 2 => Some(h / (d as f64).ln()),
                _ => None,
            };
            Ok(EtaRow {
                below_5_8: ratio.map(|r| r < 0.625),
                below_0845: ratio.map(|r| r < 0.845),
                d_is_prime: is_prime(d),
                ratio,
                result,
            })
        })
        .collect()
}

/// CSV rendering (one row per twist).
pub fn eta_table_csv(rows: &[EtaRow]) -> String {
    let mut s =
        String::from("d,status,witness_x,witness_y,eta_log,ratio,below_5_8,below_0845,prime\n");
    for r in rows {
        let (wx, wy) = match &r.result.witness {
            Some(crate::curve::point::CurvePoint::Affine { x, y }) => (
                crate::curve::point::rat_to_string(x),
                crate::curve::point::rat_to_string(y),
            ),
            _ => (String::new(), String::new()),
        };
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.result.d,
            match r.result.status {
                EtaStatus::Found => "FOUND",
                EtaStatus::NotFoundBelowBound => "NOT_FOUND_BELOW_BOUND",
            },
            wx,
            wy,
            r.result.eta_log.map(fmt_real).unwrap_or_default(),
            r.ratio.map(fmt_real).unwrap_or_default(),
            r.below_5_8.map(|b| b.to_string()).unwrap_or_default(),
            r.below_0845.map(|b| b.to_string()).unwrap_or_default(),
            r.d_is_prime,
        ));
    }
    s
}
