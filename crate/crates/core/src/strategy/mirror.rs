use rand::Rng;

use super::{random_choice, Strategy, StrategyReport};
use crate::game::{GameState, MoveChoice, Player};
use crate::rng::{GameRng, RngSeed};

/// Bob repeats Alice's last color on a uniform vertex of `U_i`.
///
/// If `U_i` is empty he uses the color `j` with the largest `U_j` (lowest `j`
/// on ties); if every `U_j` is empty he has no move anyway. When Bob opens the
/// game his first move is uniformly random.
#[derive(Debug, Clone)]
pub struct BobMirror {
    rng: GameRng,
    fallbacks: u32,
}

impl BobMirror {
    pub fn new(seed: RngSeed) -> Self {
        BobMirror { rng: seed.rng(), fallbacks: 0 }
    }
}

impl Strategy for BobMirror {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        let last = match state.last_move() {
            Some(m) if m.player == Player::Alice => m,
            _ => return random_choice(state, &mut self.rng),
        };
        let mut color = last.color;
        if state.colorable_with(color).is_empty() {
            self.fallbacks += 1;
            let best = (1..=state.k())
                .max_by_key(|&c| (state.colorable_with(c).len(), core::cmp::Reverse(c)))?;
            if state.colorable_with(best).is_empty() {
                return random_choice(state, &mut self.rng);
            }
            color = best;
        }
        let set = state.colorable_with(color);
        let v = set[self.rng.gen_range(0..set.len())];
        Some(MoveChoice::new(v, color))
    }

    fn name(&self) -> &'static str {
        "mirror"
    }

    fn report(&self) -> StrategyReport {
        StrategyReport { mirror_fallbacks: self.fallbacks, ..Default::default() }
    }
}
