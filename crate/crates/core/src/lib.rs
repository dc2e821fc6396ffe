//! Exact construction of silted and cluster-tilted algebras over the rationals.

pub mod blocks;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod homological;
pub mod knit;
pub mod linalg;
pub mod pathalg;
pub mod quiver;
pub mod rep;
pub mod structure;
pub mod tau_tilting;
pub mod workspace;

pub use error::{Error, Result};
