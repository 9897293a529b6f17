//! The quadruple ↔ point maps.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::curve::point::CurvePoint;
use crate::curve::twist::Twist;
use crate::error::{Error, Result};
use crate::factor::{gcd_u64, is_squarefree, squarefree_split};
use crate::Rat;

/// Descent coordinates of a non-torsion rational point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DescentQuadruple {
    /// sign of the x-coordinate
    pub nu: i8,
    /// squarefree parts, `d₁..d₄`
    pub d: [u64; 4],
    /// square parts, `b₁..b₄`
    pub b: [u64; 4],
}

impl DescentQuadruple {
    pub fn new(nu: i8, d: [u64; 4], b: [u64; 4]) -> Result<Self> {
        let q = DescentQuadruple { nu, d, b };
        q.validate()?;
        Ok(q)
    }

    /// `d₁b₁²` — the denominator of `x`.
    pub fn n1(&self) -> u64 {
        self.d[0] * self.b[0] * self.b[0]
    }

    /// `d₂b₂²` — the magnitude of the numerator of `x`.
    pub fn n2(&self) -> u64 {
        self.d[1] * self.b[1] * self.b[1]
    }

    /// The twist this quadruple lives on: `d₁d₂d₃d₄`.
    pub fn twist_d(&self) -> u64 {
        self.d.iter().product()
    }

    /// `log max(d₁b₁², d₂b₂²)`, which equals the naive x-height of the point.
    pub fn height_log(&self) -> f64 {
        (self.n1().max(self.n2()) as f64).ln()
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidQuadruple(m));
        if self.nu != 1 && self.nu != -1 {
            return fail(format!("ν = {} must be ±1", self.nu));
        }
        if self.d.iter().chain(self.b.iter()).any(|&v| v == 0) {
            return fail("all entries must be ≥ 1".into());
        }
        for (i, &di) in self.d.iter().enumerate() {
            if !is_squarefree(di) {
                return fail(format!("d{} = {} is not squarefree", i + 1, di));
            }
        }
        let n = |i: usize| (self.d[i] as i128) * (self.b[i] as i128) * (self.b[i] as i128);
        let (n1, n2, n3, n4) = (n(0), n(1), n(2), n(3));
        let nu = self.nu as i128;
        if n2 - nu * n1 != n3 {
            return fail(format!("d₂b₂² − ν·d₁b₁² = {} ≠ d₃b₃² = {n3}", n2 - nu * n1));
        }
        if nu * n2 + n1 != n4 {
            return fail(format!("ν·d₂b₂² + d₁b₁² = {} ≠ d₄b₄² = {n4}", nu * n2 + n1));
        }
        if gcd_u64(self.d[0] * self.b[0], self.d[1] * self.b[1]) != 1 {
            return fail("gcd(d₁b₁, d₂b₂) ≠ 1".into());
        }
        let prod = self.d.iter().try_fold(1u64, |acc, &v| acc.checked_mul(v));
        match prod {
            Some(p) if is_squarefree(p) => Ok(()),
            Some(p) => fail(format!("d₁d₂d₃d₄ = {p} is not squarefree")),
            None => fail("d₁d₂d₃d₄ overflows".into()),
        }
    }
}

/// Build the rational point parametrized by a valid quadruple.
///
/// Returns the twist `E_d` with `d = d₁d₂d₃d₄` and the positive-y
/// representative `(ν·d₂b₂²/(d₁b₁²), b₂b₃b₄/(d₁²b₁³))`; the on-curve check
/// is exact and the point is never torsion.
pub fn quadruple_to_point(q: &DescentQuadruple) -> Result<(Twist, CurvePoint)> {
    q.validate()?;
    let tw = Twist::new(q.twist_d())?;
    let sign = BigInt::from(q.nu);
    let x = Rat::new(
        sign * BigInt::from(q.n2()),
        BigInt::from(q.n1()),
    );
    let y = Rat::new(
        BigInt::from(q.b[1]) * BigInt::from(q.b[2]) * BigInt::from(q.b[3]),
        BigInt::from(q.d[0]) * BigInt::from(q.d[0]) * BigInt::from(q.b[0]).pow(3),
    );
    let p = CurvePoint::affine(x, y);
    if !tw.contains(&p) {
        // unreachable for validated quadruples; kept as a hard invariant check
        return Err(Error::InvalidQuadruple(format!(
            "point {p} fails the on-curve check for d = {}",
            tw.d()
        )));
    }
    debug_assert!(!tw.is_torsion(&p));
    Ok((tw, p))
}

/// Descent coordinates of a non-torsion point `(x, y)` on `E_d`.
///
/// `ν = sign x`, `d₁b₁²` is the denominator of `x` and `d₂b₂²` the magnitude
/// of its numerator, in canonical squarefree-times-square form; the right
/// sides of the two descent equations are positive because on-curve
/// non-torsion points have `x ∈ (−1, 0) ∪ (1, ∞)`.
///
/// Fails with [`Error::NotRepresentable`] when `d₁d₂d₃d₄ = 4d` (numerator
/// and denominator both odd) — those x-coordinates are reached through a
/// torsion translate of strictly smaller height instead.
pub fn point_to_quadruple(tw: &Twist, p: &CurvePoint) -> Result<DescentQuadruple> {
    if p.is_infinity() || tw.is_torsion(p) {
        return Err(Error::TorsionPoint);
    }
    if !tw.contains(p) {
        return Err(Error::OffCurve {
            d: tw.d(),
            x: crate::curve::point::rat_to_string(p.x()?),
            y: crate::curve::point::rat_to_string(p.y()?),
        });
    }
    let x = p.x()?;
    let nu: i8 = if x.numer().is_negative() { -1 } else { 1 };
    let num: u64 = x
        .numer()
        .abs()
        .try_into()
        .map_err(|_| Error::Overflow(format!("|num x| of {p}")))?;
    let den: u64 = x
        .denom()
        .try_into()
        .map_err(|_| Error::Overflow(format!("den x of {p}")))?;
    let (d1, b1) = squarefree_split(den);
    let (d2, b2) = squarefree_split(num);
    let r3 = num as i128 - nu as i128 * den as i128;
    let r4 = nu as i128 * num as i128 + den as i128;
    if r3 < 1 || r4 < 1 {
        // impossible for on-curve non-torsion input
        return Err(Error::InvalidQuadruple(format!(
            "derived right-hand sides {r3}, {r4} are not positive for {p}"
        )));
    }
    let (d3, b3) = squarefree_split(r3 as u64);
    let (d4, b4) = squarefree_split(r4 as u64);
    let product = d1
        .checked_mul(d2)
        .and_then(|v| v.checked_mul(d3))
        .and_then(|v| v.checked_mul(d4))
        .ok_or_else(|| Error::Overflow("d₁d₂d₃d₄".into()))?;
    if product != tw.d() {
        return Err(Error::NotRepresentable { product, expected: tw.d() });
    }
    DescentQuadruple::new(nu, [d1, d2, d3, d4], [b1, b2, b3, b4])
}
