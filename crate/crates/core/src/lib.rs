//! Sprague-Grundy engine and bounded verification harness for Wythoff's game
//! and its restricted-diagonal variants `W_k`, `W_{k,l}` and `T_k`.
//!
//! * [`ruleset`]: the game families, move generation, forbidden regions.
//! * [`grundy`]: nim-value grids, g-position extraction, grid comparison.
//! * [`beatty`]: exact `floor(n phi)` and `floor(n phi^2)` sequences.
//! * [`closed_forms`]: formula position sets.
//! * [`verifier`]: one bounded check per theorem and lemma, with witnesses.
//! * [`cli`]: the `wythoff` command-line front end.

pub mod beatty;
pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod grundy;
mod par;
pub mod ruleset;
pub mod verifier;

pub use error::{Error, Result};
pub use grundy::{compute_grid, grids_agree_up_to, GrundyGrid, PositionSet};
pub use par::PARALLEL_AVAILABLE;
pub use ruleset::{Position, RuleSet};
