//! Exact index computations for embedded contact homology type gradings.
//!
//! Each capability has a runnable example; see `cargo run --example cz_index`
//! and the other files under `examples/`.

pub mod braid;
pub mod cli;
pub mod curves;
pub mod cz;
mod error;
pub mod model;
pub mod partitions;
pub mod relindex;
pub mod verify;

pub use error::{Error, Result};
