//! Deterministic black-box optimization built on the structured linear
//! congruential generator `x -> (2x + 1) mod (2^n + 1)`.
//!
//! The map deliberately violates the full-period conditions so that the
//! n-bit state space splits into many short disjoint cycles. Each cycle is
//! identified by its minimal element (its *generator*), decoded into a
//! d-dimensional grid point batch by bit splitting, and searched with a
//! two-level adaptive loop over the generator space. Every run is a pure
//! function of its configuration: no seeds, no hidden state.
//!
//! Module map:
//! - [`generator`]: the recurrence, cycle enumeration, membership test and
//!   the last-generator bound.
//! - [`encoding`]: bit-splitting between states and rectangular grids, plus
//!   exploration-step construction.
//! - [`optimizer`]: the adaptive two-level search, exhaustive surrogate
//!   sweeps and landscape autocorrelation.
//! - [`objective`]: the 26-function benchmark suite and three constrained
//!   engineering designs with death-penalty handling.
//! - [`diagnostics`]: uniformity study (chi-square, KS, nearest-neighbor,
//!   correlation) against RANDU and an ideal-uniform reference.
//! - [`stats`]: one-sample Wilcoxon signed-rank, Friedman ranks and Holm
//!   post-hoc machinery over imported result tables.
//! - [`report`]: run configs and deterministic result persistence.
//! - [`reference`]: recorded reference values used by the bundled
//!   reproduction checks.

pub mod diagnostics;
pub mod encoding;
mod error;
pub mod generator;
mod mix;
pub mod objective;
pub mod optimizer;
pub mod reference;
pub mod report;
pub mod stats;

pub use error::{Error, Result};
