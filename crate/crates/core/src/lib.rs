//! Exact Gel'fand–Tsetlin patterns, binary fundamental representations, polynomial
//! bases of `U(n)`, invariant polynomials, and SU(2)/SU(3) coupling coefficients.

pub mod bfr;
pub mod coupling;
pub mod error;
pub mod exact;
pub mod gt;
pub mod half;
pub mod invariants;
pub mod poly;

pub use error::{Error, Result};
pub use exact::{Rational, Sign, SqrtRational, SurdSum};
pub use gt::{GtPattern, IrrepLabel, Mode, Su3State};
pub use half::Half;
