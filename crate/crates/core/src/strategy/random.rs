use rand::Rng;

use super::Strategy;
use crate::game::{GameState, MoveChoice};
use crate::rng::{GameRng, RngSeed};

/// Uniform over all legal `(vertex, color)` pairs.
///
/// A pair `(v, c)` is legal exactly when `v` lies in `U_c`, so a color is
/// drawn with weight `|U_c|` and then a uniform member of `U_c`.
pub fn random_choice<R: Rng + ?Sized>(state: &GameState<'_>, rng: &mut R) -> Option<MoveChoice> {
    let total: usize = (1..=state.k()).map(|c| state.colorable_with(c).len()).sum();
    if total == 0 {
        return None;
    }
    let mut r = rng.gen_range(0..total);
    for c in 1..=state.k() {
        let set = state.colorable_with(c);
        if r < set.len() {
            return Some(MoveChoice::new(set[r], c));
        }
        r -= set.len();
    }
    unreachable!("index below total")
}

#[derive(Debug, Clone)]
pub struct RandomPlayer {
    rng: GameRng,
}

impl RandomPlayer {
    pub fn new(seed: RngSeed) -> Self {
        RandomPlayer { rng: seed.rng() }
    }
}

impl Strategy for RandomPlayer {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        random_choice(state, &mut self.rng)
    }

    fn name(&self) -> &'static str {
        "random"
    }
}
