use alloc::string::ToString;
use alloc::vec::Vec;

use super::{random_choice, Strategy, StrategyReport};
use crate::game::{GameState, MoveChoice, Player};
use crate::graph::{CubicModelGraph, Graph};
use crate::rng::{GameRng, RngSeed};
use crate::structure::cubic::{close, close_ball, find_h, HSource, HSubgraph};

/// Bob's forcing plan on `H`: he colors `chain[2], chain[4], ...`, each
/// coloring leaving the vertex between it and the previous one with a single
/// color. `chain[0]` is `v`; the last entry is `v` again (a cycle of two
/// paths) or `w` (a single path after Alice colored `w`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPlan {
    pub h: HSubgraph,
    pub chain: Vec<u32>,
    next: usize,
}

/// Bob with three colors on a cubic graph, Alice moving first.
///
/// After Alice's opening move he looks for `H` away from it and colors its
/// branch vertex `v` with color 1. Alice's reply picks the cycle or path he
/// forces along. Whenever a move kills an uncolored vertex he plays it.
/// Without `H`, or once the plan cannot continue, he plays uniformly at random.
#[derive(Debug, Clone)]
pub struct BobCubic {
    search: Option<(CubicModelGraph, f64)>,
    rng: GameRng,
    h: Option<HSubgraph>,
    plan: Option<CubicPlan>,
    h_found: Option<bool>,
    broken: bool,
}

impl BobCubic {
    /// `c` is the segment-length constant handed to the `H` search.
    pub fn new(model: CubicModelGraph, c: f64, seed: RngSeed) -> Self {
        BobCubic { search: Some((model, c)), rng: seed.rng(), h: None, plan: None, h_found: None, broken: false }
    }

    /// Plays on a given `H` instead of searching for one. Nothing about `h`
    /// is checked.
    pub fn with_h(h: HSubgraph, seed: RngSeed) -> Self {
        BobCubic { search: None, rng: seed.rng(), h: Some(h), plan: None, h_found: None, broken: false }
    }

    pub fn plan(&self) -> Option<&CubicPlan> {
        self.plan.as_ref()
    }

    pub fn h(&self) -> Option<&HSubgraph> {
        self.h.as_ref()
    }

    fn random(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        random_choice(state, &mut self.rng)
    }

    fn opening(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        let h = match &self.search {
            Some((model, c)) => {
                let forbidden = close_ball(state.graph(), state.log()[0].vertex);
                find_h(model, *c, &forbidden).ok().flatten()
            }
            None => self.h.take(),
        };
        self.h_found = Some(h.is_some());
        let Some(h) = h else {
            return self.random(state);
        };
        let v = h.v;
        self.h = Some(h);
        if state.is_available(v, 1) && !state.is_colored(v) {
            Some(MoveChoice::new(v, 1))
        } else {
            self.broken = true;
            self.random(state)
        }
    }

    fn make_plan(&mut self, g: &Graph, x: u32) {
        let Some(h) = self.h.clone() else { return };
        let chain = if x == h.w {
            h.paths[0].clone()
        } else {
            // Paths whose inner part (two steps away from v and w) is close
            // to Alice's reply are avoided.
            let touched: Vec<bool> = h
                .paths
                .iter()
                .map(|p| p.contains(&x) || p[2.min(p.len())..p.len().saturating_sub(2)].iter().any(|&u| close(g, x, u)))
                .collect();
            let (i, j) = match touched.iter().position(|&t| t) {
                Some(0) => (1, 2),
                Some(1) => (0, 2),
                _ => (0, 1),
            };
            let mut c = h.paths[i].clone();
            c.extend(h.paths[j].iter().rev().skip(1));
            c
        };
        self.plan = Some(CubicPlan { h, chain, next: 2 });
    }

    fn forcing(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        let plan = self.plan.as_mut()?;
        let last = plan.chain.len() - 1;
        if plan.next >= last {
            return None;
        }
        let u = plan.chain[plan.next];
        let prev = state.color_of(plan.chain[plan.next - 2])?;
        let end = if plan.next + 2 == last { Some(state.color_of(plan.chain[last])?) } else { None };
        if state.is_colored(u) {
            return None;
        }
        let color = (1..=3).find(|&c| c != prev && Some(c) != end && state.is_available(u, c))?;
        plan.next += 2;
        Some(MoveChoice::new(u, color))
    }
}

/// A move that leaves some uncolored vertex with no available color.
pub fn killing_move(state: &GameState<'_>) -> Option<MoveChoice> {
    let g = state.graph();
    for &u in state.bucket(1) {
        let r = state.lowest_available(u)?;
        for &z in g.neighbors(u) {
            if !state.is_colored(z) && state.is_available(z, r) {
                return Some(MoveChoice::new(z, r));
            }
        }
    }
    None
}

impl Strategy for BobCubic {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        if let Some(m) = killing_move(state) {
            return Some(m);
        }
        if state.first_player() != Player::Alice || self.broken {
            return self.random(state);
        }
        match state.log().len() {
            1 => self.opening(state),
            _ if self.h.is_none() => self.random(state),
            len => {
                if self.plan.is_none() {
                    let x = state.log()[len - 1].vertex;
                    self.make_plan(state.graph(), x);
                }
                match self.forcing(state) {
                    Some(m) => Some(m),
                    None => {
                        self.broken = true;
                        self.random(state)
                    }
                }
            }
        }
    }

    fn name(&self) -> &'static str {
        "cubic"
    }

    fn report(&self) -> StrategyReport {
        StrategyReport {
            h_found: self.h_found,
            h_source: self.h.as_ref().map(|h| {
                match h.source {
                    HSource::SegmentPair => "segment_pair",
                    HSource::LocalSearch => "local_search",
                }
                .to_string()
            }),
            plan_broken: self.broken,
            ..Default::default()
        }
    }
}
