//! Book embeddings of 1-planar graphs in at most ten pages.
//!
//! The pipeline normalizes a drawing, peels it into two-level instances,
//! orders the vertices, colors the crossed edges and assigns pages. An
//! independent verifier and an exact solver for small graphs check the result.

pub mod error;
pub mod graph_model;
pub mod normalizer;
pub mod leveler;
pub mod blocks;
pub mod orderer;
pub mod colorist;
pub mod paginator;
pub mod verifier_oracle;
pub mod audit;
pub mod cli_io;
pub mod specials;

pub use error::{Error, Result};
