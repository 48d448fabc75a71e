//! Exact self-avoiding walk enumeration on periodic lattices, the Fisher
//! triangle transformation, and the partition-function identities relating
//! a cubic graph to its Fisher image.

pub mod analysis;
pub mod error;
pub mod fisher;
pub mod lattice;
pub mod pipeline;
pub mod saw;

pub use error::{Error, Result};
