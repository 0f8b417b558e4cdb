//! Files, resources, parallel execution and the command line around
//! [`anontext_core`].
//!
//! Corpora and attack reports are JSON lines. Every command that writes a
//! corpus also writes `<output>.manifest.json` with the technique, seed and
//! the digests of every input, so a run can be repeated exactly.

pub mod atomic;
pub mod cli;
pub mod config;
pub mod corpus_io;
pub mod error;
pub mod manifest;
pub mod parallel;
pub mod report;
pub mod resources;
pub mod sweep;
pub mod synth;

pub use config::RunConfig;
pub use error::{Error, Result};
