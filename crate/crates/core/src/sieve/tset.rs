//! The special set `T_θ(X)`: squarefree `n = m·p ≡ 5 (mod 8)` in
//! `(X^{2θ}, X]` with squarefree `m ≤ X^θ` and `p` prime.
//!
//! Since `m·p > X^{2θ}` and `m ≤ X^θ` force `p > X^θ ≥ m`, the factor `p`
//! never divides `m`, every element is squarefree, and the decomposition is
//! unique. Membership thresholds are decided by exact power predicates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{int_gt_pow, int_le_pow, Theta};
use crate::error::{Error, Result};
use crate::factor::{factorize, is_prime, is_squarefree, isqrt};
use crate::sieve::primes::{base_primes, sieve_range_into};
use crate::sieve::segment::{segment_grid, SieveConfig};

/// One element of `T_θ(X)` with its certified decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TSetRecord {
    pub n: u64,
    /// squarefree cofactor, `m ≤ X^θ`
    pub m: u64,
    /// prime factor, `p > X^θ`
    pub p: u64,
}

/// Odd squarefree `m ≤ X^θ`, grouped by residue class mod 8 (`1,3,5,7`).
///
/// Returned as four ascending lists indexed by `(m % 8) / 2`.
fn cofactor_classes(theta: Theta, x: u64) -> [Vec<u64>; 4] {
    let mut classes: [Vec<u64>; 4] = Default::default();
    let limit = (x as f64).powf(theta.as_f64()) as u64 + 2;
    let mut m = 1u64;
    while m <= limit {
        if int_le_pow(m, x, theta.frac()) && is_squarefree(m) {
            classes[((m % 8) / 2) as usize].push(m);
        }
        m += 2;
    }
    classes
}

/// Every element of `T_θ(X)`, sorted by `n`, with no duplicates.
pub fn enumerate_t(theta: Theta, x: u64) -> Vec<TSetRecord> {
    let mut out = collect_t(theta, x, true).records;
    out.sort_unstable_by_key(|r| r.n);
    out
}

/// `#T_θ(X)`, streamed without materializing the set.
pub fn count_t(theta: Theta, x: u64) -> u64 {
    collect_t(theta, x, false).count
}

/// Main-term prediction `−log(1−θ)/π² · X`, evaluated by exact rational
/// series to well beyond 15 significant digits before rounding to `f64`.
pub fn predicted_t(theta: Theta, x: u64) -> f64 {
    crate::hiprec::predicted_t(theta.frac(), x)
}

struct TCollect {
    count: u64,
    records: Vec<TSetRecord>,
}

fn collect_t(theta: Theta, x: u64, keep: bool) -> TCollect {
    if x < 5 {
        return TCollect { count: 0, records: Vec::new() };
    }
    let theta2 = theta.frac().doubled().expect("2θ < 1");
    let classes = cofactor_classes(theta, x);
    let base = base_primes(isqrt(x));
    let grid = segment_grid(3, x, SieveConfig::default().segment_len);

    let per_segment: Vec<TCollect> = grid
        .par_iter()
        .map(|&(a, b)| {
            let mut buf = Vec::new();
            sieve_range_into(a, b, &base, &mut buf);
            let mut count = 0u64;
            let mut records = Vec::new();
            for &p in &buf {
                if p == 2 {
                    continue;
                }
                // mp ≡ 5 (mod 8) needs m ≡ 5·p (mod 8) since p² ≡ 1 (mod 8)
                let class = &classes[((5 * (p % 8) % 8) / 2) as usize];
                if class.is_empty() {
                    continue;
                }
                let m_hi = x / p; // m ≤ X/p ⟺ n ≤ X
                let hi_idx = class.partition_point(|&m| m <= m_hi);
                // lower cut: smallest m with m·p > X^{2θ}; float guess then
                // exact adjustment of the boundary entries
                let guess = (x as f64).powf(theta2.as_f64()) / p as f64;
                let mut lo_idx = class.partition_point(|&m| (m as f64) <= guess - 2.0);
                while lo_idx < hi_idx && !int_gt_pow(class[lo_idx] * p, x, theta2) {
                    lo_idx += 1;
                }
                while lo_idx > 0 && int_gt_pow(class[lo_idx - 1] * p, x, theta2) {
                    lo_idx -= 1;
                }
                count += (hi_idx - lo_idx) as u64;
                if keep {
                    for &m in &class[lo_idx..hi_idx] {
                        records.push(TSetRecord { n: m * p, m, p });
                    }
                }
            }
            TCollect { count, records }
        })
        .collect();

    let mut total = TCollect { count: 0, records: Vec::new() };
    for seg in per_segment {
        total.count += seg.count;
        total.records.extend(seg.records);
    }
    total
}

/// True iff `n` has at most one decomposition `n = m·p` with squarefree
/// `m ≤ X^θ` and `p` prime. Requires `n ∈ (X^{2θ}, X]`.
pub fn check_unique_decomposition(n: u64, theta: Theta, x: u64) -> Result<bool> {
    let theta2 = theta.frac().doubled()?;
    if !int_gt_pow(n, x, theta2) || n > x {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is outside (X^2θ, X] for X = {x}"
        )));
    }
    let mut found = 0u32;
    for m in divisors(n) {
        let p = n / m;
        if is_prime(p) && int_le_pow(m, x, theta.frac()) && is_squarefree(m) {
            found += 1;
            if found > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta03() -> Theta {
        Theta::new(3, 10).unwrap()
    }

    /// Independent oracle: scan all n ≤ x directly from the definition.
    fn enumerate_by_scan(theta: Theta, x: u64) -> Vec<TSetRecord> {
        let theta2 = theta.frac().doubled().unwrap();
        let mut out = Vec::new();
        for n in 1..=x {
            if n % 8 != 5 || !int_gt_pow(n, x, theta2) {
                continue;
            }
            for m in divisors(n) {
                let p = n / m;
                if is_prime(p) && is_squarefree(m) && int_le_pow(m, x, theta.frac()) {
                    out.push(TSetRecord { n, m, p });
                }
            }
        }
        out.sort_unstable_by_key(|r| r.n);
        out
    }

    #[test]
    fn smallest_example() {
        let t = enumerate_t(theta03(), 10);
        assert_eq!(t, vec![TSetRecord { n: 5, m: 1, p: 5 }]);
    }

    #[test]
    fn x_100_matches_scan() {
        let t = enumerate_t(theta03(), 100);
        let ns: Vec<u64> = t.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![21, 29, 37, 53, 61, 69, 93]);
        assert_eq!(t, enumerate_by_scan(theta03(), 100));
        assert_eq!(count_t(theta03(), 100), 7);
    }

    #[test]
    fn larger_x_matches_scan() {
        for x in [500u64, 2000, 5000] {
            let fast = enumerate_t(theta03(), x);
            let slow = enumerate_by_scan(theta03(), x);
            assert_eq!(fast, slow, "X = {x}");
            assert_eq!(count_t(theta03(), x), slow.len() as u64);
        }
        // a second θ hits different boundaries
        let th = Theta::new(2, 5).unwrap();
        for x in [500u64, 3000] {
            assert_eq!(enumerate_t(th, x), enumerate_by_scan(th, x), "θ=2/5 X={x}");
        }
    }

    #[test]
    fn empty_below_five() {
        for x in 0..5u64 {
            assert_eq!(count_t(theta03(), x), 0);
        }
    }

    #[test]
    fn predicted_t_against_f64_anchor() {
        // independent route: plain f64 evaluation of −ln(0.7)/π²
        let anchor = -(0.7f64.ln()) / (std::f64::consts::PI * std::f64::consts::PI);
        let p = predicted_t(theta03(), 10_000_000);
        assert!(
            (p / 1e7 - anchor).abs() < 1e-15,
            "predicted {p} vs anchor {}",
            anchor * 1e7
        );
    }

    #[test]
    fn records_satisfy_invariants() {
        let x = 3000;
        let theta2 = theta03().frac().doubled().unwrap();
        for r in enumerate_t(theta03(), x) {
            assert_eq!(r.n, r.m * r.p);
            assert_eq!(r.n % 8, 5);
            assert!(is_prime(r.p));
            assert!(is_squarefree(r.m));
            assert!(is_squarefree(r.n), "T ⊂ S: {} must be squarefree", r.n);
            assert!(int_le_pow(r.m, x, theta03().frac()));
            assert!(int_gt_pow(r.p, x, theta03().frac()), "p > X^θ");
            assert!(int_gt_pow(r.n, x, theta2));
            assert!(check_unique_decomposition(r.n, theta03(), x).unwrap());
        }
    }

    #[test]
    fn unique_decomposition_examples() {
        assert!(check_unique_decomposition(21, theta03(), 100).unwrap());
        // primes always decompose uniquely as 1·n
        assert!(check_unique_decomposition(29, theta03(), 100).unwrap());
        assert!(check_unique_decomposition(97, theta03(), 100).unwrap());
        // out-of-range n is rejected
        assert!(check_unique_decomposition(5, theta03(), 100).is_err());
    }
}
