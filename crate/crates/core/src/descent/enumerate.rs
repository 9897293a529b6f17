//! Exhaustive enumeration of valid quadruples up to a height bound.
//!
//! Completeness statement used by the search drivers: every non-torsion
//! point `P` with `h_x(P) ≤ log B` on a squarefree twist `E_d` has a
//! torsion-orbit representative `P*` with `h_x(P*) ≤ h_x(P)` whose quadruple
//! is valid (product exactly `d`), and that quadruple has
//! `max(d₁b₁², d₂b₂²) = exp h_x(P*) ≤ B`, so it appears in the stream.
//! Consequently an empty stream certifies that no non-torsion point of
//! naive x-height ≤ `log B` exists at all.

use crate::descent::quadruple::DescentQuadruple;
use crate::factor::gcd_u64;

/// Smallest-prime-factor table supporting squarefree decomposition of every
/// integer up to its limit.
pub struct SplitTable {
    spf: Vec<u32>,
}

impl SplitTable {
    pub fn new(limit: u64) -> SplitTable {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip > n {
                    break;
                }
                spf[ip] = p;
            }
        }
        SplitTable { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// `n = s·b²` with `s` squarefree; `n ≥ 1` within the table limit.
    pub fn split(&self, n: u64) -> (u64, u64) {
        debug_assert!(n >= 1 && n < self.spf.len() as u64);
        let mut n = n as usize;
        let (mut s, mut b) = (1u64, 1u64);
        while n > 1 {
            let p = self.spf[n] as u64;
            let mut e = 0u32;
            while n > 1 && self.spf[n] as u64 == p {
                n /= p as usize;
                e += 1;
            }
            if e % 2 == 1 {
                s *= p;
            }
            b *= p.pow(e / 2);
        }
        (s, b)
    }

    /// Squarefree kernel of `n`.
    pub fn sf(&self, n: u64) -> u64 {
        self.split(n).0
    }
}

/// Visit all valid quadruples with `max(d₁b₁², d₂b₂²) ≤ bound`, optionally
/// restricted to one twist, in lexicographic `(d₁b₁², d₂b₂², ν)` order.
pub fn enumerate_quadruples<F: FnMut(&DescentQuadruple)>(
    bound: u64,
    filter_d: Option<u64>,
    table: &SplitTable,
    mut f: F,
) {
    assert!(bound >= 2, "bound must be ≥ 2");
    assert!(
        table.limit() >= 2 * bound,
        "split table must cover 2·bound"
    );
    match filter_d {
        Some(d) => {
            // admissible n = dᵢbᵢ² lists with dᵢ | d, sorted ascending
            let side = side_values(bound, d, table);
            for &(n1, d1, b1) in &side {
                for &(n2, d2, b2) in &side {
                    if gcd_u64(n1, n2) != 1 {
                        continue;
                    }
                    try_pair(n1, d1, b1, n2, d2, b2, Some(d), table, &mut f);
                }
            }
        }
        None => {
            for n1 in 1..=bound {
                let (d1, b1) = table.split(n1);
                for n2 in 1..=bound {
                    if gcd_u64(n1, n2) != 1 {
                        continue;
                    }
                    let (d2, b2) = table.split(n2);
                    try_pair(n1, d1, b1, n2, d2, b2, None, table, &mut f);
                }
            }
        }
    }
}

/// `(n = dᵢ·bᵢ² ≤ bound, dᵢ, bᵢ)` for divisors `dᵢ` of the squarefree `d`.
fn side_values(bound: u64, d: u64, table: &SplitTable) -> Vec<(u64, u64, u64)> {
    let mut divisors = vec![1u64];
    {
        let mut rest = d;
        let mut p = 2u64;
        while rest > 1 {
            if rest % p == 0 {
                rest /= p;
                let prev = divisors.clone();
                divisors.extend(prev.iter().map(|v| v * p));
            }
            p += 1;
            if p > 3 && p * p > rest && rest > 1 {
                let prev = divisors.clone();
                divisors.extend(prev.iter().map(|v| v * rest));
                break;
            }
        }
    }
    let mut out = Vec::new();
    for &di in &divisors {
        let mut b = 1u64;
        loop {
            let n = match di.checked_mul(b * b) {
                Some(n) if n <= bound => n,
                _ => break,
            };
            out.push((n, di, b));
            b += 1;
        }
    }
    out.sort_unstable();
    let _ = table;
    out
}

#[allow(clippy::too_many_arguments)]
fn try_pair<F: FnMut(&DescentQuadruple)>(
    n1: u64,
    d1: u64,
    b1: u64,
    n2: u64,
    d2: u64,
    b2: u64,
    filter_d: Option<u64>,
    table: &SplitTable,
    f: &mut F,
) {
    // gcd(d₁b₁, d₂b₂) = 1 ⟺ gcd(n₁, n₂) = 1, checked by the caller.
    // exactly one sign can make both right-hand sides positive
    for nu in [-1i8, 1] {
        let r3 = n2 as i64 - nu as i64 * n1 as i64;
        let r4 = nu as i64 * n2 as i64 + n1 as i64;
        if r3 < 1 || r4 < 1 {
            continue;
        }
        let (d3, b3) = table.split(r3 as u64);
        let (d4, b4) = table.split(r4 as u64);
        // product squarefree ⟺ the four squarefree parts are pairwise coprime
        if gcd_u64(d3, d4) != 1
            || gcd_u64(d3, d1 * d2) != 1
            || gcd_u64(d4, d1 * d2) != 1
        {
            continue;
        }
        let product = d1 * d2 * d3 * d4;
        if let Some(d) = filter_d {
            if product != d {
                continue;
            }
        }
        let q = DescentQuadruple { nu, d: [d1, d2, d3, d4], b: [b1, b2, b3, b4] };
        debug_assert!(q.validate().is_ok(), "enumerated quadruple invalid: {q:?}");
        f(&q);
    }
}

/// Materialized variant of [`enumerate_quadruples`].
pub fn collect_quadruples(bound: u64, filter_d: Option<u64>) -> Vec<DescentQuadruple> {
    let table = SplitTable::new(2 * bound);
    let mut out = Vec::new();
    enumerate_quadruples(bound, filter_d, &table, |q| out.push(*q));
    out
}
