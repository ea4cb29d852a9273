//! Hopf-algebraic perturbative renormalization in exact arithmetic.

pub mod cli;
pub mod diffeo;
pub mod error;
pub mod graphs;
pub mod hopf;
pub mod laurent;
pub mod lie;
pub mod resolvents;
pub mod rg;
pub mod trees;

pub use error::{Error, Result};
