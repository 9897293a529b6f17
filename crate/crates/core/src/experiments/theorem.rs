//! The closing threshold arithmetic: given `(θ, α)`, evaluate the exponent
//! `1/8 + α`, the constraint `α + θ/2 < 7/8`, and the proportion sum
//! `−log(1−θ) + 0.629`, all with exact or certified arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::bounds::{Frac, Theta};
use crate::hiprec;

/// Lower bound on the proportion of congruent numbers among squarefree
/// integers ≡ 5 (mod 8), established by A. Smith (*2^∞-Selmer groups, 2^∞
/// class groups, and Goldfeld's conjecture*, Theorem 1.5). Consumed as a
/// constant; its proof is far outside this crate's scope.
pub const SMITH_LOWER_BOUND: (u64, u64) = (629, 1000);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremArithmetic {
    pub theta: f64,
    pub alpha: f64,
    /// `1/8 + α`
    pub exponent: f64,
    /// `α + θ/2`
    pub constraint_value: f64,
    /// `−log(1−θ) + 0.629`
    pub proportion_sum: f64,
    /// the same sum truncated to 20 decimal digits
    pub proportion_sum_digits: String,
    /// exact rational test `1/8 + α = 0.845`
    pub exponent_is_0845: bool,
    /// exact rational test `α + θ/2 < 7/8`
    pub constraint_below_7_8: bool,
    /// certified test `−log(1−θ) + 0.629 > 1`
    pub proportion_exceeds_one: bool,
}

pub fn theorem_arithmetic(theta: Theta, alpha: Frac) -> TheoremArithmetic {
    let (tn, td) = (theta.frac().num() as u128, theta.frac().den() as u128);
    let (an, ad) = (alpha.num() as u128, alpha.den() as u128);

    // 1/8 + α = 845/1000 ⟺ (ad + 8an)·1000 = 845·8·ad
    let exponent_is_0845 = (ad + 8 * an) * 1000 == 845 * 8 * ad;
    // α + θ/2 < 7/8 ⟺ (2·an·td + tn·ad)·8 < 7·(2·ad·td)
    let constraint_below_7_8 = (2 * an * td + tn * ad) * 8 < 7 * 2 * ad * td;

    let log_part = hiprec::neg_log_one_minus(theta.frac());
    let smith = BigRational::new(
        BigInt::from(SMITH_LOWER_BOUND.0),
        BigInt::from(SMITH_LOWER_BOUND.1),
    );
    let sum = &log_part.value + &smith;
    let one = BigRational::from_integer(BigInt::from(1));
    // certified strict comparison: sum − err > 1
    let proportion_exceeds_one = &sum - &log_part.err > one;

    TheoremArithmetic {
        theta: theta.as_f64(),
        alpha: alpha.as_f64(),
        exponent: 0.125 + alpha.as_f64(),
        constraint_value: alpha.as_f64() + theta.as_f64() / 2.0,
        proportion_sum: hiprec::rational_to_f64(&sum),
        proportion_sum_digits: hiprec::to_decimal_string(&sum, 20),
        exponent_is_0845,
        constraint_below_7_8,
        proportion_exceeds_one,
    }
}
