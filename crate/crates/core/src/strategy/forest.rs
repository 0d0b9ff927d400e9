use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{greedy_choice, Strategy, StrategyReport};
use crate::game::{GameState, MoveChoice};

const NONE: u32 = u32::MAX;

/// Alice's activation strategy on a graph `F` with at most one cycle.
///
/// Each component of `F` is rooted at its lowest vertex and ordered by
/// breadth-first search. After Bob colors `b`, Alice activates `b` and climbs
/// towards the root activating vertices; the first uncolored parent that was
/// already active gets colored. If the climb stops without one, she colors
/// the first uncolored vertex in the order. If `F` has a cycle, its lowest
/// vertex is taken out of the forest and colored first.
///
/// Only vertices colored after construction are counted as colored
/// neighbors; the largest count seen when this player colors a vertex of `F`
/// is reported against the limit 3 (4 with a cycle).
#[derive(Debug, Clone)]
pub struct ForestEndgame {
    adj: Vec<Vec<u32>>,
    in_f: Vec<bool>,
    parent: Vec<u32>,
    order: Vec<u32>,
    cursor: usize,
    active: Vec<bool>,
    cycle_vertex: Option<u32>,
    seen: usize,
    count: Vec<u32>,
    max_count: u32,
    limit: u32,
    violations: u32,
    moves: u32,
}

impl ForestEndgame {
    /// `domain` lists the vertices of `F`; `edges` must lie inside it.
    /// Moves already in `state`'s log are treated as history.
    pub fn new(n: usize, domain: &[u32], edges: &[(u32, u32)], state: &GameState<'_>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut in_f = vec![false; n];
        domain.iter().for_each(|&v| in_f[v as usize] = true);
        for &(u, v) in edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        adj.iter_mut().for_each(|a| a.sort_unstable());
        let cycle_vertex = lowest_cycle_vertex(&adj, domain);
        let mut parent = vec![NONE; n];
        let mut order = Vec::with_capacity(domain.len());
        let mut placed = vec![false; n];
        let mut roots: Vec<u32> = domain.to_vec();
        roots.sort_unstable();
        if let Some(c) = cycle_vertex {
            placed[c as usize] = true;
        }
        let mut queue = VecDeque::new();
        for r in roots {
            if placed[r as usize] {
                continue;
            }
            placed[r as usize] = true;
            queue.push_back(r);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &y in &adj[x as usize] {
                    if !placed[y as usize] {
                        placed[y as usize] = true;
                        parent[y as usize] = x;
                        queue.push_back(y);
                    }
                }
            }
        }
        ForestEndgame {
            adj,
            in_f,
            parent,
            order,
            cursor: 0,
            active: vec![false; n],
            cycle_vertex,
            seen: state.log().len(),
            count: vec![0; n],
            max_count: 0,
            limit: if cycle_vertex.is_some() { 4 } else { 3 },
            violations: 0,
            moves: 0,
        }
    }

    pub fn cycle_vertex(&self) -> Option<u32> {
        self.cycle_vertex
    }

    pub fn max_colored_neighbors(&self) -> u32 {
        self.max_count
    }

    pub fn limit(&self) -> u32 {
        self.limit
    }

    pub fn violations(&self) -> u32 {
        self.violations
    }

    // Replays log entries not yet seen; returns the opponent's newest vertex
    // if the last unseen move was his.
    fn sync(&mut self, state: &GameState<'_>) -> Option<u32> {
        let me = state.to_move();
        let mut bob = None;
        for rec in &state.log()[self.seen..] {
            let x = rec.vertex;
            for &y in &self.adj[x as usize] {
                self.count[y as usize] += 1;
            }
            bob = (rec.player != me).then_some(x);
        }
        self.seen = state.log().len();
        bob
    }

    fn pick_vertex(&mut self, state: &GameState<'_>, bob: Option<u32>) -> Option<u32> {
        if let Some(c) = self.cycle_vertex.take() {
            if !state.is_colored(c) {
                return Some(c);
            }
        }
        if let Some(b) = bob.filter(|&b| self.in_f[b as usize]) {
            self.active[b as usize] = true;
            let mut x = b;
            loop {
                let p = self.parent[x as usize];
                if p == NONE || state.is_colored(p) {
                    break;
                }
                if self.active[p as usize] {
                    return Some(p);
                }
                self.active[p as usize] = true;
                x = p;
            }
        }
        while self.cursor < self.order.len() {
            let v = self.order[self.cursor];
            if !state.is_colored(v) {
                return Some(v);
            }
            self.cursor += 1;
        }
        None
    }
}

impl Strategy for ForestEndgame {
    fn choose(&mut self, state: &GameState<'_>) -> Option<MoveChoice> {
        let bob = self.sync(state);
        self.moves += 1;
        let pick = self.pick_vertex(state, bob);
        let m = pick
            .and_then(|v| {
                self.active[v as usize] = true;
                Some(MoveChoice::new(v, state.lowest_available(v)?))
            })
            .or_else(|| greedy_choice(state))?;
        let v = m.vertex as usize;
        if self.in_f[v] {
            self.max_count = self.max_count.max(self.count[v]);
            if self.count[v] > self.limit {
                self.violations += 1;
            }
        }
        Some(m)
    }

    fn name(&self) -> &'static str {
        "forest"
    }

    fn report(&self) -> StrategyReport {
        StrategyReport {
            phase2_moves: self.moves,
            max_colored_f_neighbors: Some(self.max_count),
            f_neighbor_limit: Some(self.limit),
            invariant_violations: self.violations,
            ..Default::default()
        }
    }
}

// Lowest vertex on the cycle of a graph with at most one cycle per component.
fn lowest_cycle_vertex(adj: &[Vec<u32>], domain: &[u32]) -> Option<u32> {
    // Repeatedly strip leaves; what remains is the union of cycles.
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut gone = vec![false; adj.len()];
    let mut stack: Vec<u32> = domain.iter().copied().filter(|&v| deg[v as usize] <= 1).collect();
    while let Some(v) = stack.pop() {
        if gone[v as usize] {
            continue;
        }
        gone[v as usize] = true;
        for &u in &adj[v as usize] {
            if !gone[u as usize] {
                deg[u as usize] -= 1;
                if deg[u as usize] == 1 {
                    stack.push(u);
                }
            }
        }
    }
    domain.iter().copied().filter(|&v| !gone[v as usize]).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::graph::Graph;

    #[test]
    fn cycle_vertex_found() {
        let g = Graph::cycle(5);
        let edges: Vec<_> = g.edges().collect();
        let st = GameState::new(&g, 3, Player::Alice).unwrap();
        let f = ForestEndgame::new(5, &[0, 1, 2, 3, 4], &edges, &st);
        assert_eq!(f.cycle_vertex(), Some(0));
        assert_eq!(f.limit(), 4);
        let p = Graph::path(5);
        let edges: Vec<_> = p.edges().collect();
        let f = ForestEndgame::new(5, &[0, 1, 2, 3, 4], &edges, &st);
        assert_eq!(f.cycle_vertex(), None);
    }

    #[test]
    fn climbs_to_active_parent() {
        // Star rooted at 0 with children 1..=4, and 5 hanging off 1.
        let edges = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5)];
        let g = Graph::from_edges(6, &edges).unwrap();
        let mut st = GameState::new(&g, 6, Player::Bob).unwrap();
        let mut f = ForestEndgame::new(6, &[0, 1, 2, 3, 4, 5], &edges, &st);
        st.apply_move(MoveChoice::new(5, 1)).unwrap();
        // 5 and 1 and 0 get activated, nothing active yet: lowest in order.
        let m = f.choose(&st).unwrap();
        assert_eq!(m.vertex, 0);
        st.apply_move(m).unwrap();
        st.apply_move(MoveChoice::new(2, 2)).unwrap();
        // Parent of 2 is colored: next in order is 1.
        let m = f.choose(&st).unwrap();
        assert_eq!(m.vertex, 1);
    }
}
