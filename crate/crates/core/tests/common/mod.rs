//! Shared brute-force oracle: direct point enumeration by `x = p/q`.
//!
//! Independent of the descent path: candidate x-values are scanned directly,
//! membership on `E_d` is decided by whether `p·q·(p²−q²)/d` is a perfect
//! square, and `d` itself is read off as the squarefree kernel of
//! `p·q·(p−q)·(p+q)` (with the shared factor 2 split off when `p` and `q`
//! are both odd). Squarefree kernels come from this module's own sieve.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use congruent_core::curve::CurvePoint;
use congruent_core::Rat;
use num_bigint::BigInt;

/// Squarefree kernels of 1..=limit by a smallest-prime-factor sieve.
fn kernel_table(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut m = i;
            while m <= limit {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
    }
    let mut sf = vec![0u32; limit + 1];
    if limit >= 1 {
        sf[1] = 1;
    }
    for i in 2..=limit {
        let p = spf[i] as usize;
        let mut m = i;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        sf[i] = sf[m] * if e % 2 == 1 { p as u32 } else { 1 };
    }
    sf
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).map_or(true, |s| s > n) {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All points `(p/q, y)` with `max(|p|, q) ≤ pq_max`, `y > 0`, grouped by the
/// twist `d ≤ d_max` they live on.
pub fn brute_points(pq_max: i64, d_max: u64) -> BTreeMap<u64, Vec<CurvePoint>> {
    let sf = kernel_table(2 * pq_max as usize);
    let kernel = |n: i64| -> u64 { sf[n.unsigned_abs() as usize] as u64 };
    let mut out: BTreeMap<u64, Vec<CurvePoint>> = BTreeMap::new();
    for q in 1..=pq_max {
        for p in -pq_max..=pq_max {
            if p == 0 || p.abs() == q || gcd(p.unsigned_abs(), q as u64) != 1 {
                continue;
            }
            // on-curve sign condition: x(x−1)(x+1) > 0 ⟺ x ∈ (−1,0) ∪ (1,∞)
            if !(p > q || (p < 0 && -p < q)) {
                continue;
            }
            let d = if p % 2 != 0 && q % 2 != 0 {
                kernel(p)
                    .checked_mul(kernel(q))
                    .and_then(|v| v.checked_mul(kernel((p + q) / 2)))
                    .and_then(|v| v.checked_mul(kernel((p - q) / 2)))
            } else {
                kernel(p)
                    .checked_mul(kernel(q))
                    .and_then(|v| v.checked_mul(kernel(p - q)))
                    .and_then(|v| v.checked_mul(kernel(p + q)))
            };
            let d = match d {
                Some(v) if v <= d_max => v,
                _ => continue,
            };
            // y = √(p·q·(p²−q²)/d) / q², exact by construction of d
            let v = (p as i128) * (q as i128)
                * ((p as i128) * (p as i128) - (q as i128) * (q as i128));
            assert!(v > 0);
            assert_eq!(v as u128 % d as u128, 0);
            let s2 = v as u128 / d as u128;
            let s = isqrt_u128(s2);
            assert_eq!(s * s, s2, "p/q = {p}/{q} must give a square");
            let x = Rat::new(BigInt::from(p), BigInt::from(q));
            let y = Rat::new(BigInt::from(s), BigInt::from(q) * BigInt::from(q));
            out.entry(d).or_default().push(CurvePoint::affine(x, y));
        }
    }
    out
}

/// The standard scan used by the completeness and count criteria
/// (`max(|p|, q) ≤ 10⁴`, twists up to 1000), computed once per process.
pub fn standard_scan() -> &'static BTreeMap<u64, Vec<CurvePoint>> {
    static SCAN: OnceLock<BTreeMap<u64, Vec<CurvePoint>>> = OnceLock::new();
    SCAN.get_or_init(|| brute_points(10_000, 1000))
}
