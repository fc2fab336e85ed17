//! Exact computation of the SO(3) quantum invariants `I_p` of closed
//! 3-manifolds and of the valuation invariant `j_p`.
//!
//! All arithmetic is exact, in `Z[q]` (or `Z[q, i]` when `p = 1 mod 4`)
//! modulo the `p`-th cyclotomic polynomial, localized at `h = 1 - q` where
//! needed.
//!
//! ```
//! use qtop_core::invariants::Engine;
//! use qtop_core::mcgrep::lens_word;
//!
//! let engine = Engine::new(5).unwrap();
//! let w = lens_word(5, 1).unwrap();
//! assert_eq!(engine.jp_heegaard(&w, 1).unwrap().exact(), Some(1));
//! ```

pub mod cycring;
pub mod intlin;
pub mod invariants;
pub mod mcgrep;
pub mod recoupling;
pub mod surgery;
pub mod tqftspace;

pub use cycring::{CycNum, LaurentCyc, Phased, PrimeContext, Valuation};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not a prime >= 5")]
    InvalidPrime(u32),
    #[error("operands live over different primes ({left} and {right})")]
    ContextMismatch { left: u32, right: u32 },
    #[error("element is not divisible by h")]
    NotDivisibleByH,
    #[error("no power of kappa moves the element into Z[q]")]
    NoPhase,
    #[error("element is not invertible after inverting h")]
    NotInvertible,
    #[error("color {color} is outside 0..={max}")]
    InvalidColor { color: u32, max: u32 },
    #[error("inadmissible triple ({0}, {1}, {2})")]
    Inadmissible(u32, u32, u32),
    #[error("generator index {index} out of range for genus {genus}")]
    IndexOutOfRange { index: u32, genus: u32 },
    #[error("invalid word token `{0}`")]
    InvalidToken(String),
    #[error("invalid lens parameters L({n}, {q})")]
    InvalidLens { n: i64, q: i64 },
    #[error("invalid plumbing tree: {0}")]
    InvalidTree(String),
    #[error("genus {0} is not supported here")]
    UnsupportedGenus(u32),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/ring.md")]
    struct Ring;
    #[doc = include_str!("../../../book/src/recoupling.md")]
    struct Recoupling;
    #[doc = include_str!("../../../book/src/spaces.md")]
    struct Spaces;
    #[doc = include_str!("../../../book/src/representation.md")]
    struct Representation;
    #[doc = include_str!("../../../book/src/surgery.md")]
    struct Surgery;
    #[doc = include_str!("../../../book/src/invariants.md")]
    struct Invariants;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
