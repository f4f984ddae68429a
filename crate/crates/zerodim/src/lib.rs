//! Markered array representations of zero-dimensional systems.
//!
//! The crate is split along the objects it manipulates:
//! [`symbolic`] presents subshifts and counts their languages,
//! [`arrays`] handles markered array windows and marker constructions,
//! [`semigroup`] supplies Frobenius numbers and length decompositions,
//! [`bratteli`] covers ordered Bratteli diagrams and the Vershik map,
//! and [`compression`] implements the recognizable-code codecs.

pub mod arrays;
pub mod bratteli;
pub mod compression;
mod error;
pub mod fixtures;
pub mod semigroup;
pub mod symbolic;

pub use error::ParseError;
