//! High-precision constants by exact rational series.
//!
//! The final acceptance inequality `−log(1−θ) + 0.629 > 1` has a margin of
//! roughly `6·10⁻⁶`, and the density predictions are quoted to 15+
//! significant digits, so the logarithm and `π²` are evaluated as exact
//! rational partial sums with certified truncation tails instead of trusting
//! `f64::ln`. All series terms are rationals; only the final value is rounded
//! to `f64` (or rendered as a decimal string).

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bounds::Frac;

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(num: i64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convert a `BigRational` of any size to the nearest `f64`.
///
/// `Ratio::to_f64` divides `numer.to_f64() / denom.to_f64()`, which overflows
/// to `inf/inf` once either side exceeds ~10^308; series partial sums do. This
/// scales first, so it is good to ~1 ulp over the full useful range.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // scale so that the integer quotient carries ~64 significant bits
    let shift = db - nb + 64;
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let qf = q.to_f64().unwrap_or(f64::INFINITY);
    let mag = qf * 2f64.powi(-shift as i32);
    if neg {
        -mag
    } else {
        mag
    }
}

/// Truncate `r` to `digits` decimal places (round toward zero), as a string.
pub fn to_decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from_integer(scale.clone())).trunc();
    let v = scaled.numer().clone();
    let (sign, mag) = (v.sign(), v.magnitude().clone());
    let s = mag.to_string();
    let s = if s.len() <= digits as usize {
        format!("0.{:0>width$}", s, width = digits as usize)
    } else {
        let (int_part, frac_part) = s.split_at(s.len() - digits as usize);
        format!("{int_part}.{frac_part}")
    };
    if sign == Sign::Minus {
        format!("-{s}")
    } else {
        s
    }
}

/// A rational approximation with a certified absolute error bound.
#[derive(Debug, Clone)]
pub struct Approx {
    pub value: BigRational,
    pub err: BigRational,
}

impl Approx {
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value)
    }
}

/// `ln(num/den)` for `1/3 < num/den < 3`, by the atanh series
/// `ln q = 2·Σ t^{2k+1}/(2k+1)` with `t = (q−1)/(q+1)`.
///
/// The tail after the `t^{2K+1}` term is bounded by the geometric series
/// `2|t|^{2K+3} / ((2K+3)(1 − t²))`.
pub fn ln_rational(num: u64, den: u64, err_bound: &BigRational) -> Approx {
    assert!(num > 0 && den > 0);
    let q = BigRational::new(big(num), big(den));
    let one = BigRational::one();
    let t = (&q - &one) / (&q + &one);
    let t2 = &t * &t;
    assert!(t2 < rat(1, 2), "series argument out of range");
    let mut sum = BigRational::zero();
    let mut pow = t.clone(); // t^{2k+1}
    let mut k = 0u64;
    loop {
        sum += &pow / BigRational::from_integer(big(2 * k + 1));
        pow = &pow * &t2;
        k += 1;
        // tail ≤ |pow|/(2k+1) · 1/(1−t²), then doubled below
        let tail = pow.abs() / BigRational::from_integer(big(2 * k + 1))
            / (&one - &t2);
        if &(BigRational::from_integer(big(2)) * &tail) < err_bound {
            let two = BigRational::from_integer(big(2));
            return Approx { value: &two * &sum, err: two * tail };
        }
        assert!(k < 10_000, "ln series failed to converge");
    }
}

/// `atan(1/x)` by its alternating series, error ≤ first omitted term.
fn atan_inv(x: u64, err_bound: &BigRational) -> Approx {
    let x2 = BigRational::from_integer(big(x * x));
    let mut term = BigRational::new(BigInt::one(), big(x));
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let contrib = &term / BigRational::from_integer(big(2 * k + 1));
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term = &term / &x2;
        k += 1;
        let next = &term / BigRational::from_integer(big(2 * k + 1));
        if &next < err_bound {
            return Approx { value: sum, err: next };
        }
        assert!(k < 10_000, "atan series failed to converge");
    }
}

/// π by Machin's formula `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi(err_bound: &BigRational) -> Approx {
    let sub = err_bound / BigRational::from_integer(big(32));
    let a = atan_inv(5, &sub);
    let b = atan_inv(239, &sub);
    let value = BigRational::from_integer(big(16)) * &a.value
        - BigRational::from_integer(big(4)) * &b.value;
    let err = BigRational::from_integer(big(16)) * &a.err
        + BigRational::from_integer(big(4)) * &b.err;
    Approx { value, err }
}

/// π² with certified error.
pub fn pi_squared(err_bound: &BigRational) -> Approx {
    // |(π+e)² − π²| ≤ 2πe + e² ≤ 7e for e ≤ 1/2
    let sub = err_bound / BigRational::from_integer(big(7));
    let p = pi(&sub);
    let value = &p.value * &p.value;
    let err = BigRational::from_integer(big(7)) * &p.err;
    Approx { value, err }
}

fn tolerance(pow10: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(pow10))
}

/// `−log(1 − θ)` with error below `10⁻²⁵`.
pub fn neg_log_one_minus(theta: Frac) -> Approx {
    let one_minus = theta.one_minus().expect("θ < 1");
    let a = ln_rational(one_minus.num(), one_minus.den(), &tolerance(25));
    Approx { value: -a.value, err: a.err }
}

/// The density constant `−log(1−θ)/π²`, accurate to well below `10⁻²⁰`.
pub fn density_constant(theta: Frac) -> Approx {
    let l = neg_log_one_minus(theta);
    let p2 = pi_squared(&tolerance(25));
    // value/π² with first-order error propagation (both errors are ≪ value)
    let value = &l.value / &p2.value;
    let err = (&l.err + &value * &p2.err / &p2.value) / &p2.value
        + tolerance(24);
    Approx { value, err }
}

/// Main-term prediction `−log(1−θ)/π² · X` as an `f64`.
pub fn predicted_t(theta: Frac, x: u64) -> f64 {
    let c = density_constant(theta);
    rational_to_f64(&(&c.value * BigRational::from_integer(big(x))))
}
