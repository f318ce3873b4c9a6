//! Davenport–Schinzel sequences: constructions, verification and bounds.
//!
//! A Davenport–Schinzel sequence of order `s` over `m` letters has no two
//! equal adjacent symbols and no alternating subsequence `a, b, a, b, ...` of
//! length `s + 2`. `λ(s, m)` denotes the maximum length of such a sequence.
//!
//! The crate provides
//!
//! * [`sequence`]: the sequence model and its text format,
//! * [`verifier`]: alternation measurement and order checks,
//! * [`rs`]: the Roselle–Stanton recursive construction and its length,
//! * [`field`]: prime fields and the `q² × q²` line/point incidence system,
//! * [`s2`]: the two-level incidence construction built on top of RS blocks,
//! * [`oracle`]: exact `λ(s, m)` by exhaustive search at tiny sizes,
//! * [`bounds`]: closed-form upper/lower bounds and ratio tables.

pub mod bounds;
pub mod error;
pub mod field;
pub mod oracle;
pub mod rs;
pub mod s2;
pub mod sequence;
pub mod verifier;

pub use error::{Error, Result};
pub use sequence::{DsParams, Sequence, Symbol};

/// Default cap on the number of symbols a generator may materialize.
pub const DEFAULT_LENGTH_BUDGET: u64 = 100_000_000;
