//! Maximum-entropy inference of two-qubit states from the mean of a single
//! observable, and the entanglement of the inferred states.
//!
//! * [`qcore`]: 4×4 complex Hermitian algebra, density matrices, the Bell basis.
//! * [`entanglement`]: concurrence, entanglement of formation, partial transpose.
//! * [`maxent`]: Gibbs states under `⟨Ô⟩` or `(⟨Ô⟩, ⟨Ô²⟩)` and the minimum-σ² state.
//! * [`schemes`]: the Bell, Â and D̂ scenarios with their separability analysis.
//! * [`ensemble`]: seeded random states for property checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ensemble;
pub mod entanglement;
pub mod error;
pub mod maxent;
pub mod qcore;
pub mod schemes;

pub use error::{Error, Result};
