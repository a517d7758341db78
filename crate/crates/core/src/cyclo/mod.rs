//! Exact arithmetic in cyclotomic fields and valuations above a prime.

mod field;
pub mod modpoly;
mod num;
mod padic;

pub use field::{cyclotomic_polynomial, CycloField};
pub use num::{sum, CycNum};
pub use padic::{PrimeAbovePData, PrimeSummary, Valuation};
