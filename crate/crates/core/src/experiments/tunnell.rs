//! The Tunnell lattice-point classifier, used as the congruent/non-congruent
//! oracle.
//!
//! For odd squarefree `d`: count solutions of `2x² + y² + 32z² = d` against
//! half the count of `2x² + y² + 8z² = d`; for even `d` the forms are
//! `4x² + y² + 32z²` and `4x² + y² + 8z²` evaluated at `d/2`. Equality is
//! necessary for `d` to be congruent unconditionally, and sufficient under
//! BSD; the verdict type keeps that asymmetry explicit.

use serde::{Deserialize, Serialize};

use crate::curve::point::CurvePoint;
use crate::curve::twist::Twist;
use crate::error::{Error, Result};
use crate::factor::{is_squarefree, isqrt, perfect_sqrt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// lattice counts satisfied; congruent if BSD holds
    CongruentUnderBsd,
    /// lattice counts violated; unconditionally not congruent
    NotCongruent,
    /// a non-torsion rational point witnesses congruence unconditionally
    UnconditionallyCongruent,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CongruentUnderBsd => "CONGRUENT_UNDER_BSD",
            Verdict::NotCongruent => "NOT_CONGRUENT",
            Verdict::UnconditionallyCongruent => "UNCONDITIONALLY_CONGRUENT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruentVerdict {
    pub d: u64,
    pub tunnell_lhs: u64,
    pub tunnell_rhs_half: u64,
    pub verdict: Verdict,
}

/// `#{(x,y,z) ∈ ℤ³ : cx·x² + y² + cz·z² = n}` by direct enumeration.
fn count_form(n: u64, cx: u64, cz: u64) -> u64 {
    let mut count = 0u64;
    let xmax = isqrt(n / cx);
    for x in 0..=xmax {
        let rx = n - cx * x * x;
        let wx = if x == 0 { 1 } else { 2 };
        let zmax = isqrt(rx / cz);
        for z in 0..=zmax {
            let rem = rx - cz * z * z;
            let wz = if z == 0 { 1 } else { 2 };
            let wy = match perfect_sqrt(rem) {
                Some(0) => 1,
                Some(_) => 2,
                None => 0,
            };
            count += wx * wz * wy;
        }
    }
    count
}

/// Classify a squarefree `d ≥ 1` by the counting criterion.
pub fn tunnell_classify(d: u64) -> Result<CongruentVerdict> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::InvalidParameter(format!("d = {d} is not squarefree ≥ 1")));
    }
    let (lhs, rhs) = if d % 2 == 1 {
        (count_form(d, 2, 32), count_form(d, 2, 8))
    } else {
        (count_form(d / 2, 4, 32), count_form(d / 2, 4, 8))
    };
    debug_assert!(rhs % 2 == 0, "y = 0 is impossible for odd targets");
    let rhs_half = rhs / 2;
    let verdict = if lhs == rhs_half {
        Verdict::CongruentUnderBsd
    } else {
        Verdict::NotCongruent
    };
    Ok(CongruentVerdict { d, tunnell_lhs: lhs, tunnell_rhs_half: rhs_half, verdict })
}

/// Upgrade to `UnconditionallyCongruent` given an on-curve non-torsion
/// witness. Rejects invalid witnesses; a witness on a `NotCongruent` twist
/// would contradict the unconditional direction and is reported as an error.
pub fn upgrade_with_witness(
    verdict: &CongruentVerdict,
    tw: &Twist,
    witness: &CurvePoint,
) -> Result<CongruentVerdict> {
    if tw.d() != verdict.d {
        return Err(Error::InvalidParameter("witness is for a different twist".into()));
    }
    if !tw.contains(witness) || tw.is_torsion(witness) {
        return Err(Error::InvalidParameter("witness must be an on-curve non-torsion point".into()));
    }
    if verdict.verdict == Verdict::NotCongruent {
        return Err(Error::InvalidParameter(format!(
            "rational point found on E_{} yet the counting condition fails",
            verdict.d
        )));
    }
    Ok(CongruentVerdict { verdict: Verdict::UnconditionallyCongruent, ..*verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::point::rat;

    #[test]
    fn frozen_small_cases() {
        // d = 1: (0,±1,0) on both forms → 2 vs 1
        let v = tunnell_classify(1).unwrap();
        assert_eq!((v.tunnell_lhs, v.tunnell_rhs_half), (2, 1));
        assert_eq!(v.verdict, Verdict::NotCongruent);

        // d = 5: both counts vanish
        let v = tunnell_classify(5).unwrap();
        assert_eq!((v.tunnell_lhs, v.tunnell_rhs_half), (0, 0));
        assert_eq!(v.verdict, Verdict::CongruentUnderBsd);

        // d = 2 (even case at d/2 = 1): 2 vs 1
        let v = tunnell_classify(2).unwrap();
        assert_eq!((v.tunnell_lhs, v.tunnell_rhs_half), (2, 1));
        assert_eq!(v.verdict, Verdict::NotCongruent);
    }

    #[test]
    fn known_classifications() {
        for d in [1u64, 2, 3, 10, 17, 11, 19, 26, 33, 35, 42, 43] {
            assert_eq!(
                tunnell_classify(d).unwrap().verdict,
                Verdict::NotCongruent,
                "d = {d} is not congruent"
            );
        }
        for d in [5u64, 6, 7, 13, 14, 15, 21, 22, 23, 29, 30, 31, 34, 37, 38, 39, 41, 46, 47] {
            assert_eq!(
                tunnell_classify(d).unwrap().verdict,
                Verdict::CongruentUnderBsd,
                "d = {d} is congruent"
            );
        }
    }

    #[test]
    fn rejects_non_squarefree() {
        assert!(tunnell_classify(0).is_err());
        assert!(tunnell_classify(12).is_err());
    }

    #[test]
    fn witness_upgrade() {
        let tw = Twist::new(5).unwrap();
        let witness = CurvePoint::affine(rat(-4, 5), rat(6, 25));
        let v = tunnell_classify(5).unwrap();
        let up = upgrade_with_witness(&v, &tw, &witness).unwrap();
        assert_eq!(up.verdict, Verdict::UnconditionallyCongruent);
        // torsion is not a witness
        let t = CurvePoint::affine(rat(0, 1), rat(0, 1));
        assert!(upgrade_with_witness(&v, &tw, &t).is_err());
        // off-curve is not a witness
        let bad = CurvePoint::affine(rat(1, 2), rat(1, 2));
        assert!(upgrade_with_witness(&v, &tw, &bad).is_err());
    }
}
