//! Fraction of squarefree `d ≤ X`, `d ≡ 5 (mod 8)`, passing the counting
//! criterion.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::experiments::tunnell::{tunnell_classify, Verdict};
use crate::factor::isqrt;
use crate::sieve::primes::base_primes;
use crate::sieve::segment::{segment_grid, SieveConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProportionReport {
    pub x: u64,
    /// squarefree d ≤ X with d ≡ 5 (mod 8)
    pub total: u64,
    /// of those, classified congruent-under-BSD (or better)
    pub congruent: u64,
    pub proportion: f64,
}

/// `None` when there is no qualifying `d` at all (X < 5).
pub fn congruent_proportion(x: u64) -> Option<ProportionReport> {
    let ds = squarefree_in_class(x, 5, 8);
    if ds.is_empty() {
        return None;
    }
    let congruent = ds
        .par_iter()
        .map(|&d| {
            let v = tunnell_classify(d).expect("sieved d is squarefree");
            u64::from(v.verdict != Verdict::NotCongruent)
        })
        .sum::<u64>();
    Some(ProportionReport {
        x,
        total: ds.len() as u64,
        congruent,
        proportion: congruent as f64 / ds.len() as f64,
    })
}

/// Squarefree `n ≤ x` with `n ≡ a (mod q)`, ascending.
pub(crate) fn squarefree_in_class(x: u64, a: u64, q: u64) -> Vec<u64> {
    if x == 0 {
        return Vec::new();
    }
    let base = base_primes(isqrt(x));
    let grid = segment_grid(1, x, SieveConfig::default().segment_len);
    let per: Vec<Vec<u64>> = grid
        .par_iter()
        .map(|&(lo, hi)| {
            let len = (hi - lo + 1) as usize;
            let mut sf = vec![true; len];
            for &p in &base {
                let p2 = match p.checked_mul(p) {
                    Some(v) if v <= hi => v,
                    _ => break,
                };
                let mut m = lo.div_ceil(p2) * p2;
                while m <= hi {
                    sf[(m - lo) as usize] = false;
                    m += p2;
                }
            }
            let mut out = Vec::new();
            let mut n = lo + ((a + q - lo % q) % q);
            while n <= hi {
                if sf[(n - lo) as usize] {
                    out.push(n);
                }
                n += q;
            }
            out
        })
        .collect();
    per.into_iter().flatten().collect()
}
