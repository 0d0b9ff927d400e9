use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{greedy_choice, ForestEndgame, ParameterSet, Strategy, StrategyReport};
use crate::game::{GameState, MoveChoice};
use crate::structure::decomposition::{build_decomposition, Decomposition};

/// Greedy play until few vertices remain and every one still has many
/// colors, then the activation strategy on the forest of a level
/// decomposition of the remaining vertices.
///
/// The switch happens on Alice's turn once at most `min(2 gamma n, n)`
/// vertices are uncolored and each has at least `beta / 2` available colors.
/// `U_0` is the uncolored set padded with the lowest-numbered colored
/// vertices up to that size. If the decomposition cannot be built or fails
/// verification, Alice stays greedy for the rest of the game.
#[derive(Debug, Clone)]
pub struct AliceTwoPhase {
    ps: ParameterSet,
    endgame: Option<ForestEndgame>,
    decomposition: Option<Decomposition>,
    switch_move: Option<u32>,
    ok: Option<bool>,
    failure: Option<String>,
    fell_back: bool,
}

impl AliceTwoPhase {
    pub fn new(ps: ParameterSet) -> Self {
        AliceTwoPhase { ps, endgame: None, decomposition: None, switch_move: None, ok: None, failure: None, fell_back: false }
    }

    pub fn params(&self) -> &ParameterSet {
        &self.ps
    }

    /// The decomposition built at the switch, if any.
    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    fn ready(&self, state: &GameState<'_>) -> bool {
        state.num_uncolored() <= self.ps.endgame_size()
            && state.min_avail().is_some_and(|a| a as f64 >= self.ps.beta / 2.0)
    }

    fn switch(&mut self, state: &GameState<'_>) {
        let n = state.n();
        self.switch_move = Some(state.log().len() as u32);
        let target = self.ps.endgame_size().min(n);
        let mut u0: Vec<u32> = state.uncolored().collect();
        let mut pad = target.saturating_sub(u0.len());
        for v in 0..n as u32 {
            if pad == 0 {
                break;
            }
            if state.is_colored(v) {
                u0.push(v);
                pad -= 1;
            }
        }
        u0.sort_unstable();
        let g = state.graph();
        match build_decomposition(g, &u0, &self.ps) {
            Err(e) => {
                self.ok = Some(false);
                self.failure = Some(e.to_string());
                self.fell_back = true;
            }
            Ok(dec) if !dec.report.all() => {
                self.ok = Some(false);
                self.failure = Some(alloc::format!("verification failed: {}", dec.report.failures().join(", ")));
                self.fell_back = true;
                self.decomposition = Some(dec);
            }
            Ok(dec) => {
                self.ok = Some(true);
                let mut domain = vec![];
                domain.extend_from_slice(&dec.levels[0]);
                self.endgame = Some(ForestEndgame::new(n, &domain, &dec.forest_edges(), state));
                self.decomposition = Some(dec);
            }
        }
    }
}

impl Strategy for AliceTwoPhase {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        if self.switch_move.is_none() && self.ready(state) {
            self.switch(state);
        }
        match &mut self.endgame {
            Some(f) => f.choose(state),
            None => greedy_choice(state),
        }
    }

    fn name(&self) -> &'static str {
        "two-phase"
    }

    fn report(&self) -> StrategyReport {
        let mut r = self.endgame.as_ref().map(|f| f.report()).unwrap_or_default();
        r.phase_switch_move = self.switch_move;
        r.decomposition_ok = self.ok;
        r.decomposition_failure = self.failure.clone();
        r.fell_back = self.fell_back;
        r
    }
}
