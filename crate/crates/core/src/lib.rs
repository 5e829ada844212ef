//! Truncated Fock-space simulation of breeding binomial code states into
//! approximate GKP qunaught states by beamsplitting and homodyne detection.

pub mod cli;
pub mod error;
pub mod fock;
pub mod homodyne;
pub mod metrics;
pub mod numerics;
pub mod protocol;
pub mod tolerance;

pub use error::{Error, Result};
