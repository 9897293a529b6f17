//! Exact arithmetic toolkit for the congruent number curves `dy² = x³ − x`.
//!
//! The crate has four layers:
//!
//! * [`sieve`] — segmented Möbius/prime sieves, squarefree counts in
//!   progressions, prime-reciprocal window sums, and enumeration of the
//!   special set `T_θ(X)` of squarefree integers `n = m·p ≡ 5 (mod 8)` with a
//!   forced large prime factor.
//! * [`curve`] — exact rational points on the quartic twists
//!   `E_d : dy² = x³ − x`: group law, torsion, naive and canonical heights,
//!   and the search for the lowest non-torsion point.
//! * [`descent`] — the complete 2-descent parametrization of rational points
//!   by integer quadruples, bounded exhaustive enumeration, and the exact
//!   count `N_{α,θ}(X)` of twists in `T_θ(X)` with a low point.
//! * [`experiments`] — verifiers that tie everything together: density
//!   tables, the Tunnell lattice-count classifier, proportion reports and the
//!   final threshold arithmetic.
//!
//! All curve arithmetic is exact (`BigRational`); every real-valued report
//! quantity is produced with a certified error bound, with the two
//! transcendental constants (`log` values and `π²`) evaluated by exact
//! rational series in [`hiprec`].

pub mod bounds;
pub mod curve;
pub mod descent;
pub mod error;
pub mod experiments;
pub mod factor;
pub mod hiprec;
pub mod sieve;

pub use error::{Error, Result};

/// Exact rational scalar used for all curve coordinates.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;
