//! Segmented arithmetic-function sieving.
//!
//! All operations are pure functions of their inputs. Segmented work is
//! partitioned over a fixed segment grid (independent of worker count) and
//! merged in segment order, so results are bit-identical for any number of
//! rayon workers.

pub mod mertens;
pub mod primes;
pub mod report;
pub mod segment;
pub mod tset;

pub use mertens::{mertens_window_sum, sum_prime_reciprocals};
pub use primes::primes_in;
pub use report::{DensityReport, DensityRow};
pub use segment::{mobius_segment, squarefree_progression_count, MobiusSegment, SieveConfig};
pub use tset::{check_unique_decomposition, count_t, enumerate_t, predicted_t, TSetRecord};
