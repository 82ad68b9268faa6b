//! File formats, the command line and the benchmark harness around
//! `rppk-core`.

pub mod bench;
pub mod corberan;
pub mod edgelist;
pub mod error;
pub mod pipeline;
pub mod solution;
pub mod synth;
pub mod trace;

pub use error::{FormatError, ParseError};
