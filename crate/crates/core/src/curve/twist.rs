//! The twist `E_d : dy² = x³ − x` and its exact group law.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::curve::point::{rat_to_string, CurvePoint};
use crate::error::{Error, Result};
use crate::factor::is_squarefree;
use crate::Rat;

/// Parameters of one twist: a squarefree `d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    d: u64,
    d_rat: Rat,
}

impl Twist {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::InvalidParameter(format!("d = {d} is not squarefree ≥ 1")));
        }
        Ok(Twist { d, d_rat: Rat::from_integer(BigInt::from(d)) })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// Does `d·y² = x³ − x` hold exactly (or is P the point at infinity)?
    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                &self.d_rat * y * y == x * x * x - x
            }
        }
    }

    fn require_on_curve(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            match p {
                CurvePoint::Infinity => unreachable!("infinity is always on the curve"),
                CurvePoint::Affine { x, y } => Err(Error::OffCurve {
                    d: self.d,
                    x: rat_to_string(x),
                    y: rat_to_string(y),
                }),
            }
        }
    }

    /// The full torsion subgroup: `{∞, (0,0), (1,0), (−1,0)}` for every `d`.
    pub fn torsion_points(&self) -> [CurvePoint; 4] {
        let zero = Rat::zero();
        let one = Rat::one();
        [
            CurvePoint::Infinity,
            CurvePoint::affine(zero.clone(), zero.clone()),
            CurvePoint::affine(one.clone(), zero.clone()),
            CurvePoint::affine(-one, zero),
        ]
    }

    /// Torsion is exactly the 2-torsion: `∞` or `y = 0` (⟺ x ∈ {0, ±1}).
    pub fn is_torsion(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { y, .. } => y.is_zero(),
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), -y.clone()),
        }
    }

    /// Chord-and-tangent addition. Rejects off-curve inputs.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        Ok(self.add_unchecked(p, p))
    }

    /// `k·P` by double-and-add; negative `k` negates first.
    pub fn scalar_mul(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        let (mut k, base) = if k < 0 {
            (k.unsigned_abs(), self.neg(p))
        } else {
            (k as u64, p.clone())
        };
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        Ok(acc)
    }

    /// On the model `dy² = x³ − x` the chord slope gives
    /// `x₃ = dλ² − x₁ − x₂`, with `λ = (3x² − 1)/(2dy)` for doubling.
    pub(crate) fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if y1 != y2 || y1.is_zero() {
                // P + (−P), or doubling a 2-torsion point
                return CurvePoint::Infinity;
            }
            let three = Rat::from_integer(BigInt::from(3));
            let two = Rat::from_integer(BigInt::from(2));
            (three * x1 * x1 - Rat::one()) / (two * &self.d_rat * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &self.d_rat * &lambda * &lambda - x1 - x2;
        let y3 = -(lambda * (&x3 - x1) + y1);
        CurvePoint::affine(x3, y3)
    }

    /// Map to the integral model `Y² = X³ − d²X` via `(x, y) ↦ (dx, d²y)`.
    pub fn to_integral_model(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let d2 = &self.d_rat * &self.d_rat;
                CurvePoint::affine(&self.d_rat * x, d2 * y)
            }
        }
    }
}
