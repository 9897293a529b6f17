//! Windowed sums of prime reciprocals.
//!
//! `Σ 1/p` over `X^{1−θ} < p ≤ X` tends to `−log(1−θ)` with an `O(1/log X)`
//! remainder. The window boundary is located by the exact power predicate,
//! and the sum itself is compensated so the result carries full `f64`
//! precision for deterministic reports.

use rayon::prelude::*;

use crate::bounds::{int_gt_pow, Theta};
use crate::factor::isqrt;
use crate::sieve::primes::{base_primes, sieve_range_into};
use crate::sieve::segment::{segment_grid, SieveConfig};

/// Kahan-compensated sum of `1/p` over primes `lo < p ≤ hi`.
///
/// Segments are summed independently on the fixed grid and combined in
/// order, so the value does not depend on the worker count.
pub fn sum_prime_reciprocals(lo_exclusive: u64, hi_inclusive: u64) -> f64 {
    if hi_inclusive < 2 || lo_exclusive >= hi_inclusive {
        return 0.0;
    }
    let base = base_primes(isqrt(hi_inclusive));
    let grid = segment_grid(
        lo_exclusive + 1,
        hi_inclusive,
        SieveConfig::default().segment_len,
    );
    let partial: Vec<f64> = grid
        .par_iter()
        .map(|&(a, b)| {
            let mut buf = Vec::new();
            sieve_range_into(a, b, &base, &mut buf);
            kahan(buf.iter().map(|&p| 1.0 / p as f64))
        })
        .collect();
    kahan(partial.into_iter())
}

fn kahan<I: Iterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// `Σ 1/p` over the Mertens window `X^{1−θ} < p ≤ X`.
///
/// Requires `x ≥ 3`. The lower boundary is exact: a prime `p` is included
/// iff `p^den > x^{den−num}` where `θ = num/den`.
pub fn mertens_window_sum(x: u64, theta: Theta) -> f64 {
    assert!(x >= 3, "window requires x ≥ 3");
    let one_minus = theta.frac().one_minus().expect("θ < 1");
    // smallest integer c with c > x^{1−θ}; search near the float estimate,
    // then certify with the exact predicate
    let guess = (x as f64).powf(one_minus.as_f64());
    let mut cut = (guess as u64).saturating_sub(2).max(1);
    while !int_gt_pow(cut, x, one_minus) {
        cut += 1;
    }
    while cut > 1 && int_gt_pow(cut - 1, x, one_minus) {
        cut -= 1;
    }
    // primes in [cut, x] are exactly those > x^{1−θ}
    sum_prime_reciprocals(cut.saturating_sub(1), x)
}
