//! Rational points: the point at infinity or an exact affine pair.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rat;

/// A point on some `E_d`, in lowest terms (guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: Rat, y: Rat },
}

impl CurvePoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn infinity() -> Self {
        CurvePoint::Infinity
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Result<&Rat> {
        match self {
            CurvePoint::Infinity => Err(Error::Infinity),
            CurvePoint::Affine { x, .. } => Ok(x),
        }
    }

    pub fn y(&self) -> Result<&Rat> {
        match self {
            CurvePoint::Infinity => Err(Error::Infinity),
            CurvePoint::Affine { y, .. } => Ok(y),
        }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "infinity"),
            CurvePoint::Affine { x, y } => {
                write!(f, "({}, {})", rat_to_string(x), rat_to_string(y))
            }
        }
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
#[serde(untagged)]
enum PointRepr {
    Infinity(String),
    Affine { x: String, y: String },
}

impl serde::Serialize for CurvePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            CurvePoint::Infinity => PointRepr::Infinity("infinity".into()),
            CurvePoint::Affine { x, y } => {
                PointRepr::Affine { x: rat_to_string(x), y: rat_to_string(y) }
            }
        };
        repr.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for CurvePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match PointRepr::deserialize(d)? {
            PointRepr::Infinity(s) if s == "infinity" => Ok(CurvePoint::Infinity),
            PointRepr::Infinity(s) => Err(D::Error::custom(format!("bad point tag {s:?}"))),
            PointRepr::Affine { x, y } => Ok(CurvePoint::affine(
                rat_from_string(&x).map_err(D::Error::custom)?,
                rat_from_string(&y).map_err(D::Error::custom)?,
            )),
        }
    }
}

/// Shorthand for exact rationals in tests and small formulas.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `num/den` (always with the slash, denominator positive).
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `num/den` or a bare integer.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidParameter(format!("cannot parse rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = n.trim().parse().map_err(|_| bad())?;
    let den: BigInt = d.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Total order on points used for deterministic tie-breaking: infinity first,
/// then lexicographic in (x.den, x.num, y.den, y.num).
pub fn point_order(a: &CurvePoint, b: &CurvePoint) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    match (a, b) {
        (CurvePoint::Infinity, CurvePoint::Infinity) => Ordering::Equal,
        (CurvePoint::Infinity, _) => Ordering::Less,
        (_, CurvePoint::Infinity) => Ordering::Greater,
        (CurvePoint::Affine { x: xa, y: ya }, CurvePoint::Affine { x: xb, y: yb }) => xa
            .denom()
            .cmp(xb.denom())
            .then_with(|| xa.numer().cmp(xb.numer()))
            .then_with(|| ya.denom().cmp(yb.denom()))
            .then_with(|| ya.numer().cmp(yb.numer())),
    }
}

/// |numerator| and denominator of `x` as magnitudes (for height work).
pub(crate) fn frac_magnitudes(x: &Rat) -> (num_bigint::BigUint, num_bigint::BigUint) {
    (x.numer().abs().to_biguint().unwrap(), x.denom().to_biguint().unwrap())
}
