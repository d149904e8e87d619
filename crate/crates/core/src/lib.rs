//! Exact parametrizations of quadratic, cubic and quartic rings over the integers.

#![allow(clippy::needless_range_loop)]

pub mod cube;
pub mod cubic;
pub mod error;
pub mod lattice;
pub mod padic;
pub mod quadform;
pub mod quadring;
pub mod quartic;
pub mod wire;

pub use error::{Error, Result};
