//! Exact arithmetic in `Z[q]` and `Z[q, i]` modulo the `p`-th cyclotomic
//! polynomial, together with the `h`-adic valuation for `h = 1 - q`.

mod context;
mod element;
mod laurent;
mod phase;
mod valuation;

pub use context::PrimeContext;
pub use element::CycNum;
pub use laurent::LaurentCyc;
pub use phase::{phase_ratio, strip_phase, strip_phase_laurent, Phased};
pub use valuation::Valuation;
