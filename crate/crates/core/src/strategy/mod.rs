//! Move-selection strategies.

use alloc::string::String;

use crate::game::{GameState, MoveChoice};

mod cubic;
mod forest;
mod greedy;
mod mirror;
mod optimal;
mod params;
mod random;
mod two_phase;

pub use cubic::{killing_move, BobCubic, CubicPlan};
pub use forest::ForestEndgame;
pub use greedy::{greedy_choice, AliceGreedy};
pub use mirror::BobMirror;
pub use optimal::OptimalPlayer;
pub use params::ParameterSet;
pub use random::{random_choice, RandomPlayer};
pub use two_phase::AliceTwoPhase;

/// A player. `choose` is called only when it is this player's turn.
///
/// Returning `None` while a legal move exists forfeits the game.
pub trait Strategy {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice>;

    fn name(&self) -> &'static str;

    /// Instrumentation collected during the game.
    fn report(&self) -> StrategyReport {
        StrategyReport::default()
    }
}

/// Per-game instrumentation. Fields a strategy does not track stay at their
/// defaults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StrategyReport {
    /// Index into the move log of the first phase-2 move.
    pub phase_switch_move: Option<u32>,
    /// Whether the endgame decomposition passed verification.
    pub decomposition_ok: Option<bool>,
    pub decomposition_failure: Option<String>,
    /// Phase 2 was abandoned for greedy play.
    pub fell_back: bool,
    pub phase2_moves: u32,
    /// Largest number of already colored forest neighbors seen at a phase-2 move.
    pub max_colored_f_neighbors: Option<u32>,
    pub f_neighbor_limit: Option<u32>,
    pub invariant_violations: u32,
    pub mirror_fallbacks: u32,
    pub h_found: Option<bool>,
    pub h_source: Option<String>,
    /// The cubic plan was abandoned for random play.
    pub plan_broken: bool,
}
