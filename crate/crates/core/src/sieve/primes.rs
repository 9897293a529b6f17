//! Prime generation: a simple base sieve plus a segmented sieve for ranges.

use crate::error::{Error, Result};
use crate::factor::isqrt;

/// All primes up to `limit` (inclusive), by a plain sieve of Eratosthenes.
pub fn base_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// Sieve the primes of `[lo, hi]` into `out`, given base primes covering √hi.
pub(crate) fn sieve_range_into(lo: u64, hi: u64, base: &[u64], out: &mut Vec<u64>) {
    out.clear();
    if hi < 2 || lo > hi {
        return;
    }
    let lo = lo.max(2);
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base {
        if p * p > hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        if m == p {
            m += p; // p itself is prime
        }
        if m < p * p {
            m = m.max(p * p).div_ceil(p) * p;
        }
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    for (i, &c) in composite.iter().enumerate() {
        if !c {
            out.push(lo + i as u64);
        }
    }
}

/// Exactly the primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!("empty range [{lo}, {hi}]")));
    }
    let base = base_primes(isqrt(hi));
    let mut out = Vec::new();
    sieve_range_into(lo, hi, &base, &mut out);
    Ok(out)
}

/// Visit every prime of `[lo, hi]` in ascending order, one fixed-size segment
/// at a time, reusing buffers.
pub fn for_each_prime<F: FnMut(u64)>(lo: u64, hi: u64, seg_len: u64, mut f: F) {
    if hi < 2 || lo > hi {
        return;
    }
    let base = base_primes(isqrt(hi));
    let mut buf = Vec::new();
    let mut a = lo.max(2);
    while a <= hi {
        let b = hi.min(a + seg_len - 1);
        sieve_range_into(a, b, &base, &mut buf);
        for &p in &buf {
            f(p);
        }
        a = b + 1;
    }
}
