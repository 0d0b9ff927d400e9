use super::Strategy;
use crate::game::{GameState, MoveChoice};

/// The uncolored vertex with fewest available colors (lowest id on ties),
/// colored with its lowest available color. Dead vertices are skipped.
pub fn greedy_choice(state: &GameState<'_>) -> Option<MoveChoice> {
    (1..=state.k()).find_map(|a| {
        let v = *state.bucket(a).first()?;
        Some(MoveChoice::new(v, state.lowest_available(v)?))
    })
}

#[derive(Debug, Clone, Default)]
pub struct AliceGreedy;

impl Strategy for AliceGreedy {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        greedy_choice(state)
    }

    fn name(&self) -> &'static str {
        "greedy"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::graph::Graph;

    #[test]
    fn fresh_triangle() {
        let g = Graph::complete(3);
        let st = GameState::new(&g, 3, Player::Alice).unwrap();
        assert_eq!(greedy_choice(&st), Some(MoveChoice::new(0, 1)));
    }

    #[test]
    fn path_prefers_constrained_vertex() {
        let g = Graph::path(3);
        let mut st = GameState::new(&g, 2, Player::Bob).unwrap();
        st.apply_move(MoveChoice::new(0, 1)).unwrap();
        assert_eq!(greedy_choice(&st), Some(MoveChoice::new(1, 2)));
    }
}
