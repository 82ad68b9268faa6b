//! Rural Postman Problem kernelization.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the CLI and the
//! benchmark harness live in the `rppk` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod graph;
pub mod instance;
pub mod kernel;
pub mod matching;
pub mod metric;
pub mod ratio;
pub mod solver;
pub mod weights;

pub use error::{Error, Result};
pub use graph::{ClosedWalk, Edge, EdgeMultiset, WeightedMultigraph};
pub use instance::RppInstance;
