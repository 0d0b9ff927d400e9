use super::Strategy;
use crate::error::Result;
use crate::game::{GameState, MoveChoice, Player};
use crate::graph::Graph;
use crate::solver::Solver;

/// Plays a winning move whenever the exact solver finds one.
#[derive(Debug, Clone)]
pub struct OptimalPlayer {
    solver: Solver,
}

impl OptimalPlayer {
    pub fn new(g: &Graph, k: u32, first: Player) -> Result<Self> {
        Ok(OptimalPlayer { solver: Solver::new(g, k, first)? })
    }
}

impl Strategy for OptimalPlayer {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        self.solver.best_move(state).ok().flatten()
    }

    fn name(&self) -> &'static str {
        "optimal"
    }
}
