//! Möbius values and squarefree counts over intervals.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::isqrt;
use crate::sieve::primes::base_primes;

/// Sieve tuning knobs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SieveConfig {
    /// Maximum entries in one sieved segment. Default keeps the inner loops
    /// cache-resident.
    pub segment_len: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_len: 1 << 20 }
    }
}

/// A contiguous table of μ(n) for n in `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusSegment {
    pub lo: u64,
    pub hi: u64,
    pub values: Vec<i8>,
}

impl MobiusSegment {
    pub fn value(&self, n: u64) -> i8 {
        assert!(n >= self.lo && n <= self.hi, "n outside segment");
        self.values[(n - self.lo) as usize]
    }
}

/// Exact μ(n) for every n in `[lo, hi]`.
///
/// Rejects `lo = 0` and segments larger than the configured budget. The
/// result is independent of how a larger interval is cut into segments.
pub fn mobius_segment(lo: u64, hi: u64, cfg: &SieveConfig) -> Result<MobiusSegment> {
    if lo == 0 {
        return Err(Error::InvalidParameter("μ is defined on n ≥ 1".into()));
    }
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty segment [{lo}, {hi}]")));
    }
    if hi - lo + 1 > cfg.segment_len {
        return Err(Error::SegmentTooLarge { lo, hi, max: cfg.segment_len });
    }
    let base = base_primes(isqrt(hi));
    Ok(mobius_segment_with_base(lo, hi, &base))
}

/// Same as [`mobius_segment`] with precomputed base primes (callers that
/// stream many segments reuse them).
pub(crate) fn mobius_segment_with_base(lo: u64, hi: u64, base: &[u64]) -> MobiusSegment {
    let len = (hi - lo + 1) as usize;
    let mut mu = vec![1i8; len];
    let mut rem: Vec<u64> = (lo..=hi).collect();
    for &p in base {
        if p * p > hi {
            break;
        }
        let start = lo.div_ceil(p) * p;
        let mut m = start;
        while m <= hi {
            let idx = (m - lo) as usize;
            let mut e = 0u32;
            while rem[idx] % p == 0 {
                rem[idx] /= p;
                e += 1;
            }
            if e >= 2 {
                mu[idx] = 0;
            } else {
                mu[idx] = -mu[idx];
            }
            m += p;
        }
    }
    for idx in 0..len {
        // leftover cofactor is a single prime above √hi
        if rem[idx] > 1 {
            mu[idx] = -mu[idx];
        }
    }
    MobiusSegment { lo, hi, values: mu }
}

/// Fixed segmentation grid for `[lo, hi]`: boundaries depend only on the
/// configured segment length, never on worker count.
pub(crate) fn segment_grid(lo: u64, hi: u64, seg_len: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut a = lo;
    while a <= hi {
        let b = hi.min(a + seg_len - 1);
        out.push((a, b));
        a = b + 1;
    }
    out
}

/// Exact number of squarefree `n ≤ x` with `n ≡ a (mod q)`.
///
/// `a` is reduced mod `q`; `q ≥ 1`.
pub fn squarefree_progression_count(x: u64, a: u64, q: u64) -> u64 {
    assert!(q >= 1, "modulus must be positive");
    if x == 0 {
        return 0;
    }
    let a = a % q;
    let base = base_primes(isqrt(x));
    let grid = segment_grid(1, x, SieveConfig::default().segment_len);
    grid.par_iter()
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
            let mut count = 0u64;
            // first n ≥ lo with n ≡ a (mod q)
            let mut n = lo + ((a + q - lo % q) % q);
            while n <= hi {
                if sf[(n - lo) as usize] {
                    count += 1;
                }
                n += q;
            }
            count
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum()
}
