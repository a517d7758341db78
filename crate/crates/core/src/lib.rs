//! Exact verification of Broué perfect isometries between the principal
//! blocks of `G` and `N_G(P)` when the hyperfocal subgroup is cyclic.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod blocks;
pub mod catalog;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod hyperfocal;
pub mod isometry;
pub mod par;
pub mod parse;
pub mod perm;
pub mod session;

pub use error::{Error, Result};
