//! Exact verification toolkit for tight 2s-design nonexistence:
//! certified Hermite zero tables, Smith-bound constants, explicit
//! beta thresholds, the exhaustive small-beta parameter search, and the
//! s = 4 Diophantine/congruence analysis.

pub mod error;
pub mod rat;
pub mod interval;
pub mod unipoly;
pub mod ratfun;
pub mod sympoly;
pub mod hermite;
pub mod design;
pub mod smith;
pub mod beta0;
pub mod search;
pub mod s4;
pub mod refdata;
pub mod report;

pub use error::{Error, Result};
