//! Exact computations around Zassenhaus filtrations of pro-p groups and
//! counts of Galois p-extensions.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod dims;
pub mod error;
pub mod ext;
pub mod hall;
pub mod hp;
pub mod local;
pub mod mobius;
pub mod pgroup;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use series::{Rational, TruncatedSeries};
