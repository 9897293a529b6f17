//! Verifiers tying the sieve, descent and height layers to the claims they
//! implement: density tables, exact N-counts against their exponent bound,
//! the Tunnell lattice-count classifier, proportion reports, and the final
//! threshold arithmetic.

pub mod eta_table;
pub mod lemma_e;
pub mod lemma_t;
pub mod proportion;
pub mod theorem;
pub mod tunnell;

pub use eta_table::{eta_table, EtaRow};
pub use lemma_e::{verify_lemma_e, LemmaEReport, LemmaERow};
pub use lemma_t::{verify_lemma_t, LemmaTReport};
pub use proportion::{congruent_proportion, ProportionReport};
pub use theorem::{theorem_arithmetic, TheoremArithmetic, SMITH_LOWER_BOUND};
pub use tunnell::{tunnell_classify, upgrade_with_witness, CongruentVerdict, Verdict};
