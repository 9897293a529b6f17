//! Integer primitives: deterministic primality, factorization, squarefree
//! decomposition. Everything here is exact for the full `u64` range.

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    // float guess can be off by one in either direction
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= n) {
        r += 1;
    }
    r
}

/// `n` is a perfect square? Returns its root if so.
pub fn perfect_sqrt(n: u64) -> Option<u64> {
    // quadratic residues mod 64 rule out 81% of inputs cheaply
    const OK64: [bool; 64] = {
        let mut t = [false; 64];
        let mut i = 0;
        while i < 32 {
            t[(i * i) % 64] = true;
            i += 1;
        }
        t
    };
    if !OK64[(n % 64) as usize] {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, valid for all `u64`.
///
/// The seven-base set is a known witness set covering 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    // Brent's cycle variant; n must be odd composite, not a prime power issue
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut n = n;
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // wheel over 7, 11, 13, ... up to a small trial bound
    let mut p = 7u64;
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut step = 0;
    while p <= 100_000 && p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += STEPS[step];
        step = (step + 1) % 8;
    }
    // remaining cofactor: prime, prime square, or needs rho
    let mut stack = vec![n];
    let mut rest = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            rest.push(m);
            continue;
        }
        if let Some(r) = perfect_sqrt(m) {
            stack.push(r);
            stack.push(r);
            continue;
        }
        let f = pollard_rho(m);
        stack.push(f);
        stack.push(m / f);
    }
    rest.sort_unstable();
    let mut i = 0;
    while i < rest.len() {
        let p = rest[i];
        let mut e = 0;
        while i < rest.len() && rest[i] == p {
            e += 1;
            i += 1;
        }
        out.push((p, e));
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

/// Is `n` squarefree? (`n = 0` is not; `n = 1` is.)
pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Unique decomposition `n = s·b²` with `s` squarefree. Requires `n ≥ 1`.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    assert!(n >= 1, "squarefree_split requires n >= 1");
    let mut s = 1u64;
    let mut b = 1u64;
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            s *= p;
        }
        b *= p.pow(e / 2);
    }
    (s, b)
}

/// Möbius function of a single integer.
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
