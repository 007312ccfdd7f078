//! Finite computations with level-truncated Γ-sets: hyper-sums, generalized
//! associativity, extension of scalars to the integers and the associated
//! adjunctions.

#![allow(clippy::needless_range_loop)]

pub mod abgrp;
pub mod adjunction;
pub mod cli;
pub mod error;
pub mod gamma_cat;
pub mod gamma_set;
pub mod hyper;
pub mod monoid;
pub mod scalars;

pub use error::{Error, Result};
