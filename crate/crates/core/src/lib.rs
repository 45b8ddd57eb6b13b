//! Sylow branching coefficients of symmetric groups at the prime 3.
//!
//! The closed forms live in [`closed_form`]; [`oracle`] recomputes the same
//! quantities by brute force for small degrees.

pub mod closed_form;
pub mod descriptor;
pub mod error;
pub mod lr;
pub mod oracle;
pub mod partitions;
pub mod small;
pub mod sylow;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::Partition;
