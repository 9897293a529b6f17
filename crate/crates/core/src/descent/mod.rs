//! Complete 2-descent parametrization of non-torsion points.
//!
//! A quadruple `(ν, d₁..d₄, b₁..b₄)` with
//!
//! ```text
//! d₂b₂² − ν·d₁b₁² = d₃b₃²        ν·d₂b₂² + d₁b₁² = d₄b₄²
//! gcd(d₁b₁, d₂b₂) = 1            d₁d₂d₃d₄ squarefree
//! ```
//!
//! parametrizes the point `x = ν·d₂b₂²/(d₁b₁²)`, `y = b₂b₃b₄/(d₁²b₁³)` on
//! `E_d` with `d = d₁d₂d₃d₄`, and `h_x = log max(d₁b₁², d₂b₂²)`.
//!
//! The map does not hit every point directly: when the numerator and
//! denominator of `x` are both odd, the squarefree part of
//! `num·den·(num²−den²)` picks up a factor 4 and the product `d₁d₂d₃d₄` is
//! `4d`, which no squarefree-product quadruple represents. Translating by the
//! 2-torsion point `(1,0)` sends `x = p/q` to `(p+q)/(p−q)`, which strictly
//! lowers `max(|p|, q)` in that case and lands on a covered representative.
//! Hence every torsion orbit's minimal-height representatives are covered,
//! enumeration up to a height bound is complete for *orbits*, and the
//! canonical height (invariant under torsion translation) is decided
//! exactly; see `enumerate` for the completeness statement used by the
//! search routines.

pub mod count_n;
pub mod enumerate;
pub mod quadruple;

pub use count_n::{count_n, ContributingTwist, NCountResult};
pub use enumerate::{collect_quadruples, enumerate_quadruples, SplitTable};
pub use quadruple::{point_to_quadruple, quadruple_to_point, DescentQuadruple};
