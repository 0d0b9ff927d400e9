//! Core of the graph coloring game toolkit.
//!
//! Two players, Alice and Bob, alternately color the vertices of a graph with
//! `k` colors, keeping the coloring proper. Alice wins when every vertex is
//! colored; Bob wins as soon as some uncolored vertex sees all `k` colors in
//! its neighborhood. This crate holds everything that is pure computation:
//!
//! * [`graph`]: the immutable [`Graph`] plus the G(n,p), configuration-model
//!   and cycle-plus-matching generators,
//! * [`game`]: the referee ([`GameState`], [`play_game`]),
//! * [`strategy`]: greedy, mirroring, two-phase forest, cubic forcing and
//!   baseline players,
//! * [`solver`]: exact minimax for small graphs (winner, game chromatic
//!   number, chromatic number),
//! * [`structure`]: density scans, the endgame level decomposition, the
//!   theta-subgraph machinery for cubic graphs and tail bounds.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the CLI and the
//! parallel experiment harness live in the `colorgame` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod game;
pub mod graph;
pub(crate) mod math;
pub mod rng;
pub mod solver;
pub mod strategy;
pub mod structure;

pub use error::{Error, Result};
pub use game::{play_game, GameState, MoveChoice, MoveRecord, Outcome, Player, Reason};
pub use graph::{CubicModelGraph, Graph};
pub use rng::RngSeed;
pub use strategy::{ParameterSet, Strategy, StrategyReport};
