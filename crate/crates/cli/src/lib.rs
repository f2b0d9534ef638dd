//! Command-line front end for the `qmg-core` simulator: figure sweeps,
//! the invariant suite, closed-form comparison and best-response search.
//!
//! Grid points are evaluated in parallel with rayon; all output is assembled
//! in grid order so identical arguments give byte-identical files.

pub mod best_response;
pub mod cache;
pub mod commands;
pub mod compare;
pub mod error;
pub mod output;
pub mod sweep;
pub mod validate;

pub use cache::ChannelCache;
pub use error::{CliError, ExitStatus};
