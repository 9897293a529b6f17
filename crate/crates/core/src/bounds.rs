//! Exact comparison of integers against real powers `X^{num/den}`.
//!
//! Thresholds like `m ≤ X^θ` and `n > X^{2θ}` are decided by the integer
//! predicate `m^den ≤ X^num`, never by rounding `X^θ` to a float. A float
//! prefilter handles the bulk; only comparisons too close to call fall back
//! to big-integer powers.

use std::cmp::Ordering;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::factor::gcd_u64;

/// A reduced positive rational `num/den`, used for exponents such as θ and α.
///
/// Constructed from integers or from a decimal literal so that e.g.
/// `0.30996` means exactly `7749/25000`, not the nearest binary float.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac {
    num: u64,
    den: u64,
}

impl Frac {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("fraction with zero denominator".into()));
        }
        let g = gcd_u64(num, den).max(1);
        Ok(Frac { num: num / g, den: den / g })
    }

    /// Parse a plain decimal such as `"0.30996"` or `"0.72"` exactly.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse decimal: {s:?}"));
        let (int_part, frac_part) = match s.split_once('.') {
            Some((a, b)) => (a, b),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac_part.len() > 18 {
            return Err(Error::InvalidParameter(format!("too many decimal digits: {s:?}")));
        }
        let int_val: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad())?
        };
        let den = 10u64.pow(frac_part.len() as u32);
        let frac_val: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().map_err(|_| bad())?
        };
        let num = int_val
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_val))
            .ok_or_else(|| Error::Overflow(format!("decimal {s:?}")))?;
        Frac::new(num, den)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn doubled(&self) -> Result<Self> {
        Frac::new(
            self.num.checked_mul(2).ok_or_else(|| Error::Overflow("2θ".into()))?,
            self.den,
        )
    }

    /// `1 − self`, valid when `self < 1`.
    pub fn one_minus(&self) -> Result<Self> {
        if self.num >= self.den {
            return Err(Error::InvalidParameter("1 − f requires f < 1".into()));
        }
        Frac::new(self.den - self.num, self.den)
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The sieve exponent θ ∈ (0, 1/2), stored exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Theta(Frac);

impl Theta {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        let f = Frac::new(num, den)?;
        // θ ∈ (0, 1/2): 0 < 2 num < den
        if f.num == 0 || 2 * f.num >= f.den {
            return Err(Error::InvalidParameter(format!("θ = {f} is outside (0, 1/2)")));
        }
        Ok(Theta(f))
    }

    pub fn parse_decimal(s: &str) -> Result<Self> {
        let f = Frac::parse_decimal(s)?;
        Theta::new(f.num, f.den)
    }

    pub fn frac(&self) -> Frac {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        self.0.as_f64()
    }
}

impl std::fmt::Display for Theta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0.as_f64())
    }
}

/// Compare `a^ea` with `b^eb` exactly (both bases ≥ 1, exponents ≥ 1).
pub fn cmp_pow(a: u64, ea: u64, b: u64, eb: u64) -> Ordering {
    debug_assert!(a >= 1 && b >= 1 && ea >= 1 && eb >= 1);
    if a == 1 && b == 1 {
        return Ordering::Equal;
    }
    if a == 1 {
        return Ordering::Less;
    }
    if b == 1 {
        return Ordering::Greater;
    }
    // float prefilter on ea·ln a vs eb·ln b
    let la = ea as f64 * (a as f64).ln();
    let lb = eb as f64 * (b as f64).ln();
    let margin = 1e-11 * (la.abs() + lb.abs()) + 1e-11;
    if la - lb > margin {
        return Ordering::Greater;
    }
    if lb - la > margin {
        return Ordering::Less;
    }
    // too close: exact big-integer powers
    let pa = BigUint::from(a).pow(ea.try_into().unwrap_or(u32::MAX));
    let pb = BigUint::from(b).pow(eb.try_into().unwrap_or(u32::MAX));
    pa.cmp(&pb)
}

/// `m ≤ X^{e}` for a rational exponent `e = num/den`, decided exactly.
pub fn int_le_pow(m: u64, x: u64, e: Frac) -> bool {
    if m == 0 {
        return true;
    }
    cmp_pow(m, e.den(), x, e.num()) != Ordering::Greater
}

/// `m > X^{e}` for a rational exponent, decided exactly.
pub fn int_gt_pow(m: u64, x: u64, e: Frac) -> bool {
    !int_le_pow(m, x, e)
}
