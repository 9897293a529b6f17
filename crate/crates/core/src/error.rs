use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("segment [{lo}, {hi}] exceeds the configured budget of {max} entries")]
    SegmentTooLarge { lo: u64, hi: u64, max: u64 },

    #[error("point ({x}, {y}) is not on dy² = x³ − x for d = {d}")]
    OffCurve { d: u64, x: String, y: String },

    #[error("the point at infinity has no affine coordinate")]
    Infinity,

    #[error("torsion point has no descent coordinates")]
    TorsionPoint,

    #[error("descent product {product} is not the squarefree twist {expected}; the x-coordinate is only covered through a torsion translate")]
    NotRepresentable { product: u64, expected: u64 },

    #[error("invalid descent quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("height computation exceeded its depth/precision budget")]
    DepthExceeded,

    #[error("value does not fit the supported integer range: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
