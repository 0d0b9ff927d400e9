//! Strategy construction by name, and a human player for terminal games.

use std::io::{BufRead, Write};

use colorgame_core::strategy::{
    AliceGreedy, AliceTwoPhase, BobCubic, BobMirror, OptimalPlayer, RandomPlayer,
};
use colorgame_core::{CubicModelGraph, GameState, Graph, MoveChoice, ParameterSet, Player, RngSeed, Strategy};

use crate::error::{CliError, CliResult};

/// Names accepted for `alice` and `bob`.
pub const STRATEGY_NAMES: [&str; 6] = ["greedy", "two-phase", "mirror", "random", "cubic", "optimal"];

/// What a strategy may need besides its seed.
pub struct Table<'a> {
    pub graph: &'a Graph,
    pub cubic: Option<&'a CubicModelGraph>,
    pub k: u32,
    pub first: Player,
    /// Degree used to derive two-phase parameters.
    pub d: f64,
    pub alpha: f64,
    pub c: f64,
}

pub fn build(name: &str, side: Player, t: &Table<'_>, seed: RngSeed) -> CliResult<Box<dyn Strategy>> {
    let wrong_side = || CliError::config(format!("strategy `{name}` cannot play {side}"));
    Ok(match name {
        "greedy" => Box::new(AliceGreedy),
        "random" => Box::new(RandomPlayer::new(seed)),
        "two-phase" => {
            if side != Player::Alice {
                return Err(wrong_side());
            }
            Box::new(AliceTwoPhase::new(ParameterSet::derive(t.graph.n(), t.d, t.alpha)?))
        }
        "mirror" => {
            if side != Player::Bob {
                return Err(wrong_side());
            }
            Box::new(BobMirror::new(seed))
        }
        "cubic" => {
            if side != Player::Bob {
                return Err(wrong_side());
            }
            let cm = t.cubic.ok_or_else(|| CliError::config("strategy `cubic` needs a cycle-plus-matching graph"))?;
            Box::new(BobCubic::new(cm.clone(), t.c, seed))
        }
        "optimal" => Box::new(OptimalPlayer::new(t.graph, t.k, t.first)?),
        other => {
            return Err(CliError::config(format!(
                "unknown strategy `{other}` (expected one of {})",
                STRATEGY_NAMES.join(", ")
            )))
        }
    })
}

/// Reads moves `vertex color` from a terminal. Illegal moves are refused
/// with the rule they break and the player is asked again; end of input
/// forfeits.
pub struct Human<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> Human<R, W> {
    pub fn new(input: R, output: W) -> Self {
        Human { input, output }
    }
}

impl<R: BufRead, W: Write> Strategy for Human<R, W> {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        if let Some(last) = state.last_move() {
            let _ = writeln!(self.output, "{} colored {} with {}", last.player, last.vertex, last.color);
        }
        loop {
            let _ = write!(self.output, "{} to move (vertex color): ", state.to_move());
            let _ = self.output.flush();
            let mut line = String::new();
            if self.input.read_line(&mut line).ok()? == 0 {
                return None;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                [v, c] => v.parse::<u32>().ok().zip(c.parse::<u32>().ok()),
                _ => None,
            };
            let Some((v, c)) = parsed else {
                let _ = writeln!(self.output, "expected two numbers: vertex color");
                continue;
            };
            let m = MoveChoice::new(v, c);
            match state.check_move(m) {
                Ok(()) => return Some(m),
                Err(e) => {
                    let _ = writeln!(self.output, "illegal move: {e}");
                }
            }
        }
    }

    fn name(&self) -> &'static str {
        "human"
    }
}
