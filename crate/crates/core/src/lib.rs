//! Density-matrix simulator for the four-player quantum Minority game played
//! through noisy channels with memory.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs, so callers are free to evaluate grid points on as
//! many threads as they like.
//!
//! Modules:
//! - [`linalg`]: 16×16 complex matrices, Pauli operators, tensor products,
//!   operator-sum application and density-matrix checks.
//! - [`channels`]: Kraus sets for the five noise channels with memory.
//! - [`protocol`]: the game pipeline, payoffs, curves and best-response search.
//! - [`formulas`]: reference closed-form payoffs and discrepancy reports.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod channels;
pub mod error;
pub mod formulas;
pub mod linalg;
pub mod protocol;

pub use channels::{build_channel, ChannelKind, ChannelSpec};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, KrausSet};
pub use protocol::{ne_strategy, run_game, GameConfig, PayoffVector, StrategyTriple};
