//! Exact minimax for small graphs.
//!
//! Positions are memoized under a key that forgets color names: colors are
//! renumbered in order of first appearance along the vertex order, which is
//! the same as listing the classes sorted by their lowest vertex. Colors not
//! yet used anywhere are interchangeable, so only the lowest of them is tried.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::game::{GameState, MoveChoice, Player};
use crate::graph::Graph;

/// Default vertex cap for game solving.
pub const DEFAULT_SIZE_CAP: usize = 16;
/// Hard limit imposed by the 128-bit position key (5 bits per vertex).
pub const MAX_VERTICES: usize = 25;
/// Largest color count representable in a 5-bit key slot.
pub const MAX_COLORS: u32 = 31;
/// Vertex limit for [`chromatic_number`].
pub const CHROMATIC_CAP: usize = 64;

#[derive(Debug, Clone)]
pub struct Solver {
    n: usize,
    k: u32,
    first: Player,
    adj: Vec<u32>,
    canonical: bool,
    memo: HashMap<u128, bool>,
    nodes: u64,
}

impl Solver {
    /// Solver for the game on `g` with `k` colors and the default size cap.
    pub fn new(g: &Graph, k: u32, first: Player) -> Result<Self> {
        Solver::with_options(g, k, first, DEFAULT_SIZE_CAP, true)
    }

    /// `cap` bounds the vertex count (at most [`MAX_VERTICES`]); with
    /// `canonical = false` positions are keyed by raw colors and every color
    /// is tried, which makes the solver a plain memoized minimax.
    pub fn with_options(g: &Graph, k: u32, first: Player, cap: usize, canonical: bool) -> Result<Self> {
        let cap = cap.min(MAX_VERTICES);
        if g.n() > cap {
            return Err(Error::SizeCapExceeded { n: g.n(), cap });
        }
        if k == 0 || k > MAX_COLORS {
            return Err(Error::param(alloc::format!("k = {k} outside 1..={MAX_COLORS}")));
        }
        let adj = (0..g.n() as u32)
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
            .collect();
        Ok(Solver { n: g.n(), k, first, adj, canonical, memo: HashMap::new(), nodes: 0 })
    }

    /// Positions visited so far (including memo hits).
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Winner under optimal play from the empty coloring.
    pub fn solve(&mut self) -> Player {
        let mut colors = vec![0u8; self.n];
        if self.alice_wins(&mut colors, 0) {
            Player::Alice
        } else {
            Player::Bob
        }
    }

    /// Winner under optimal play from a raw coloring (`0` = uncolored).
    pub fn solve_from(&mut self, colors: &[u32]) -> Result<Player> {
        let mut c = self.import(colors)?;
        let colored = c.iter().filter(|&&x| x != 0).count();
        Ok(if self.alice_wins(&mut c, colored) { Player::Alice } else { Player::Bob })
    }

    /// A move for the player to move that keeps a forced win, if there is one;
    /// otherwise the first legal move (lowest vertex, then lowest color).
    pub fn best_move(&mut self, state: &GameState<'_>) -> Result<Option<MoveChoice>> {
        let mut colors = self.import(state.colors())?;
        let colored = state.num_colored();
        let mover = state.to_move();
        let mut fallback = None;
        for v in 0..self.n {
            if colors[v] != 0 {
                continue;
            }
            let blocked = self.blocked(&colors, v);
            for c in 1..=self.k as u8 {
                if blocked >> c & 1 == 1 {
                    continue;
                }
                fallback.get_or_insert(MoveChoice::new(v as u32, c as u32));
                colors[v] = c;
                let alice = self.alice_wins(&mut colors, colored + 1);
                colors[v] = 0;
                if alice == (mover == Player::Alice) {
                    return Ok(Some(MoveChoice::new(v as u32, c as u32)));
                }
            }
        }
        Ok(fallback)
    }

    fn import(&self, colors: &[u32]) -> Result<Vec<u8>> {
        if colors.len() != self.n {
            return Err(Error::param("coloring length differs from vertex count"));
        }
        colors
            .iter()
            .map(|&c| {
                if c > self.k {
                    Err(Error::param(alloc::format!("color {c} exceeds k")))
                } else {
                    Ok(c as u8)
                }
            })
            .collect()
    }

    fn mover(&self, colored: usize) -> Player {
        if colored % 2 == 0 {
            self.first
        } else {
            self.first.other()
        }
    }

    // Bit c set when color c appears on a neighbor of v.
    #[inline]
    fn blocked(&self, colors: &[u8], v: usize) -> u32 {
        let mut m = self.adj[v];
        let mut b = 0u32;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            b |= 1 << colors[u];
        }
        b & !1
    }

    fn key(&self, colors: &[u8]) -> u128 {
        let mut key = 0u128;
        if self.canonical {
            let mut relabel = [0u8; 32];
            let mut next = 1u8;
            for (v, &c) in colors.iter().enumerate() {
                if c != 0 {
                    if relabel[c as usize] == 0 {
                        relabel[c as usize] = next;
                        next += 1;
                    }
                    key |= (relabel[c as usize] as u128) << (5 * v);
                }
            }
        } else {
            for (v, &c) in colors.iter().enumerate() {
                key |= (c as u128) << (5 * v);
            }
        }
        key
    }

    fn alice_wins(&mut self, colors: &mut [u8], colored: usize) -> bool {
        self.nodes += 1;
        if colored == self.n {
            return true;
        }
        let full = ((1u64 << (self.k + 1)) - 2) as u32;
        let mut blocked = [0u32; MAX_VERTICES];
        let mut safe = true;
        for v in 0..self.n {
            if colors[v] != 0 {
                continue;
            }
            let b = self.blocked(colors, v);
            if b == full {
                return false;
            }
            blocked[v] = b;
            let avail = self.k - b.count_ones();
            let mut m = self.adj[v];
            let mut open = 0;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                open += (colors[u] == 0) as u32;
            }
            if avail <= open {
                safe = false;
            }
        }
        if safe {
            return true;
        }
        let key = self.key(colors);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let alice_to_move = self.mover(colored) == Player::Alice;
        let mut used = 0u32;
        if self.canonical {
            for &c in colors.iter() {
                used |= 1 << c;
            }
        }
        let fresh = (1..=self.k).find(|&c| used >> c & 1 == 0);
        let mut result = !alice_to_move;
        'outer: for v in 0..self.n {
            if colors[v] != 0 {
                continue;
            }
            for c in 1..=self.k {
                if blocked[v] >> c & 1 == 1 {
                    continue;
                }
                if self.canonical && used >> c & 1 == 0 && Some(c) != fresh {
                    continue;
                }
                colors[v] = c as u8;
                let r = self.alice_wins(colors, colored + 1);
                colors[v] = 0;
                if r == alice_to_move {
                    result = r;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// Winner of the `k`-color game on `g` under optimal play.
pub fn solve_winner(g: &Graph, k: u32, first: Player) -> Result<Player> {
    Ok(Solver::new(g, k, first)?.solve())
}

/// Game chromatic number (Alice moving first), searched upward from the
/// chromatic number to `max degree + 1`.
pub fn exact_chi_g(g: &Graph) -> Result<u32> {
    exact_chi_g_capped(g, DEFAULT_SIZE_CAP)
}

pub fn exact_chi_g_capped(g: &Graph, cap: usize) -> Result<u32> {
    let cap = cap.min(MAX_VERTICES);
    if g.n() > cap {
        return Err(Error::SizeCapExceeded { n: g.n(), cap });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let upper = g.max_degree() as u32 + 1;
    let lower = chromatic_number(g)?;
    for k in lower..upper {
        if Solver::with_options(g, k, Player::Alice, cap, true)?.solve() == Player::Alice {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Chromatic number by DSATUR branch and bound with a clique lower bound.
pub fn chromatic_number(g: &Graph) -> Result<u32> {
    let n = g.n();
    if n > CHROMATIC_CAP {
        return Err(Error::SizeCapExceeded { n, cap: CHROMATIC_CAP });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let lower = max_clique(&adj);
    let mut colors = vec![0u8; n];
    let mut upper = dsatur_greedy(&adj, &mut colors);
    while upper > lower {
        let mut colors = vec![0u8; n];
        if k_colorable(&adj, &mut colors, upper - 1) {
            upper -= 1;
        } else {
            break;
        }
    }
    Ok(upper)
}

fn neighbor_colors(adj: &[u64], colors: &[u8], v: usize) -> u64 {
    let mut m = adj[v];
    let mut b = 0u64;
    while m != 0 {
        let u = m.trailing_zeros() as usize;
        m &= m - 1;
        b |= 1 << colors[u];
    }
    b & !1
}

// Uncolored vertex with most distinct neighbor colors, then most uncolored neighbors.
fn dsatur_pick(adj: &[u64], colors: &[u8]) -> Option<usize> {
    let uncolored = colors.iter().enumerate().fold(0u64, |m, (v, &c)| if c == 0 { m | 1 << v } else { m });
    (0..colors.len())
        .filter(|&v| colors[v] == 0)
        .max_by_key(|&v| {
            let sat = neighbor_colors(adj, colors, v).count_ones();
            let deg = (adj[v] & uncolored).count_ones();
            (sat, deg, core::cmp::Reverse(v))
        })
}

fn dsatur_greedy(adj: &[u64], colors: &mut [u8]) -> u32 {
    let mut used = 0;
    while let Some(v) = dsatur_pick(adj, colors) {
        let b = neighbor_colors(adj, colors, v);
        let c = (!b & !1).trailing_zeros();
        colors[v] = c as u8;
        used = used.max(c);
    }
    used
}

fn k_colorable(adj: &[u64], colors: &mut [u8], k: u32) -> bool {
    let Some(v) = dsatur_pick(adj, colors) else {
        return true;
    };
    let b = neighbor_colors(adj, colors, v);
    let used = colors.iter().copied().max().unwrap_or(0) as u32;
    for c in 1..=k.min(used + 1) {
        if b >> c & 1 == 0 {
            colors[v] = c as u8;
            if k_colorable(adj, colors, k) {
                return true;
            }
            colors[v] = 0;
        }
    }
    false
}

fn max_clique(adj: &[u64]) -> u32 {
    fn grow(adj: &[u64], cand: u64, size: u32, best: &mut u32) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + cand.count_ones() <= *best {
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(adj, rest & adj[v], size + 1, best);
        }
    }
    let all = if adj.len() == 64 { u64::MAX } else { (1u64 << adj.len()) - 1 };
    let mut best = 0;
    grow(adj, all, 0, &mut best);
    best
}
