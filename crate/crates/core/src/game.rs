//! The referee: game state, legality and termination.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::strategy::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Player {
    Alice,
    Bob,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Alice => "alice",
            Player::Bob => "bob",
        })
    }
}

/// A move: color `vertex` with `color` (colors are `1..=k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MoveChoice {
    pub vertex: u32,
    pub color: u32,
}

impl MoveChoice {
    pub const fn new(vertex: u32, color: u32) -> Self {
        MoveChoice { vertex, color }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MoveRecord {
    pub player: Player,
    pub vertex: u32,
    pub color: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Reason {
    AllColored,
    DeadVertex(u32),
    IllegalMove(Player),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Outcome {
    pub winner: Player,
    pub reason: Reason,
    pub transcript: Vec<MoveRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("vertex {vertex} does not exist")]
    NoSuchVertex { vertex: u32 },
    #[error("vertex {vertex} is already colored")]
    AlreadyColored { vertex: u32 },
    #[error("color {color} is outside 1..={k}")]
    ColorOutOfRange { color: u32, k: u32 },
    #[error("color {color} at vertex {vertex} clashes with neighbor {neighbor}")]
    ColorBlocked { vertex: u32, color: u32, neighbor: u32 },
    #[error("{player} has no move")]
    NoMove { player: Player },
}

/// A partial proper coloring plus whose turn it is.
///
/// Besides the coloring itself the state keeps, for every uncolored vertex,
/// the set of colors already used in its neighborhood and the count `a(v)` of
/// colors still available. Uncolored vertices are bucketed by `a(v)`, and for
/// every color `c` the uncolored vertices that can still take `c` are kept in
/// an indexable set, so both the greedy argmin and uniform sampling from
/// `U_c` are cheap.
#[derive(Debug, Clone)]
pub struct GameState<'g> {
    g: &'g Graph,
    k: u32,
    words: usize,
    color: Vec<u32>,
    blocked: Vec<u64>,
    avail: Vec<u32>,
    buckets: Vec<BTreeSet<u32>>,
    classes: Vec<Vec<u32>>,
    uset: Vec<Vec<u32>>,
    upos: Vec<u32>,
    log: Vec<MoveRecord>,
    first: Player,
    to_move: Player,
}

const NONE: u32 = u32::MAX;

impl<'g> GameState<'g> {
    /// Empty coloring of `g` with `k >= 1` colors.
    pub fn new(g: &'g Graph, k: u32, first: Player) -> crate::Result<Self> {
        if k == 0 {
            return Err(crate::Error::param("k must be at least 1"));
        }
        let n = g.n();
        if (k as usize).saturating_mul(n) >= u32::MAX as usize {
            return Err(crate::Error::param("k * n too large"));
        }
        let words = (k as usize).div_ceil(64);
        let mut buckets = vec![BTreeSet::new(); k as usize + 1];
        buckets[k as usize] = (0..n as u32).collect();
        let mut upos = Vec::with_capacity(k as usize * n);
        for _ in 0..k {
            upos.extend(0..n as u32);
        }
        Ok(GameState {
            g,
            k,
            words,
            color: vec![0; n],
            blocked: vec![0; words * n],
            avail: vec![k; n],
            buckets,
            classes: vec![Vec::new(); k as usize + 1],
            uset: (0..=k).map(|c| if c == 0 { Vec::new() } else { (0..n as u32).collect() }).collect(),
            upos,
            log: Vec::new(),
            first,
            to_move: first,
        })
    }

    /// Rebuilds a state by applying `transcript` from the empty coloring.
    pub fn replay(g: &'g Graph, k: u32, first: Player, transcript: &[MoveRecord]) -> crate::Result<Self> {
        let mut st = GameState::new(g, k, first)?;
        for rec in transcript {
            if rec.player != st.to_move {
                return Err(crate::Error::param("transcript players do not alternate"));
            }
            st.apply_move(MoveChoice::new(rec.vertex, rec.color))?;
        }
        Ok(st)
    }

    #[inline]
    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.color.len()
    }

    #[inline]
    pub fn to_move(&self) -> Player {
        self.to_move
    }

    #[inline]
    pub fn first_player(&self) -> Player {
        self.first
    }

    pub fn log(&self) -> &[MoveRecord] {
        &self.log
    }

    pub fn last_move(&self) -> Option<MoveRecord> {
        self.log.last().copied()
    }

    /// Color of `v`, if colored.
    #[inline]
    pub fn color_of(&self, v: u32) -> Option<u32> {
        match self.color[v as usize] {
            0 => None,
            c => Some(c),
        }
    }

    #[inline]
    pub fn is_colored(&self, v: u32) -> bool {
        self.color[v as usize] != 0
    }

    /// Raw colors, `0` meaning uncolored.
    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    pub fn num_colored(&self) -> usize {
        self.log.len()
    }

    pub fn num_uncolored(&self) -> usize {
        self.n() - self.log.len()
    }

    pub fn all_colored(&self) -> bool {
        self.num_uncolored() == 0
    }

    /// Color class `C_c`, in coloring order.
    pub fn class(&self, c: u32) -> &[u32] {
        &self.classes[c as usize]
    }

    /// Uncolored vertices in ascending order.
    pub fn uncolored(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n() as u32).filter(|&v| self.color[v as usize] == 0)
    }

    #[inline]
    fn is_blocked(&self, v: u32, c: u32) -> bool {
        let bit = (c - 1) as usize;
        self.blocked[v as usize * self.words + bit / 64] >> (bit % 64) & 1 == 1
    }

    /// Whether `c` can legally be placed on `v` (ignores whether `v` is colored).
    #[inline]
    pub fn is_available(&self, v: u32, c: u32) -> bool {
        c >= 1 && c <= self.k && !self.is_blocked(v, c)
    }

    /// `A(v)`: colors not used on any neighbor of the uncolored vertex `v`.
    pub fn available_colors(&self, v: u32) -> crate::Result<Vec<u32>> {
        if v as usize >= self.n() {
            return Err(MoveError::NoSuchVertex { vertex: v }.into());
        }
        if self.is_colored(v) {
            return Err(crate::Error::param(alloc::format!("vertex {v} is already colored")));
        }
        Ok((1..=self.k).filter(|&c| !self.is_blocked(v, c)).collect())
    }

    /// `a(v)`: number of available colors at `v`.
    #[inline]
    pub fn avail_count(&self, v: u32) -> u32 {
        self.avail[v as usize]
    }

    pub fn lowest_available(&self, v: u32) -> Option<u32> {
        (1..=self.k).find(|&c| !self.is_blocked(v, c))
    }

    /// Uncolored vertices with exactly `a` available colors.
    pub fn bucket(&self, a: u32) -> &BTreeSet<u32> {
        &self.buckets[a as usize]
    }

    /// Smallest `a(v)` over uncolored vertices.
    pub fn min_avail(&self) -> Option<u32> {
        self.buckets.iter().position(|b| !b.is_empty()).map(|a| a as u32)
    }

    /// Lowest-id uncolored vertex among those with the fewest available colors.
    pub fn min_avail_vertex(&self) -> Option<u32> {
        self.buckets.iter().find_map(|b| b.first().copied())
    }

    /// `U_c`: uncolored vertices with no neighbor colored `c`. Order is
    /// arbitrary but deterministic.
    pub fn colorable_with(&self, c: u32) -> &[u32] {
        &self.uset[c as usize]
    }

    /// Lowest-id uncolored vertex with no available color.
    pub fn detect_dead_vertex(&self) -> Option<u32> {
        self.buckets[0].first().copied()
    }

    pub fn has_legal_move(&self) -> bool {
        self.buckets[1..].iter().any(|b| !b.is_empty())
    }

    /// Checks a move without applying it.
    pub fn check_move(&self, m: MoveChoice) -> Result<(), MoveError> {
        let MoveChoice { vertex: v, color: c } = m;
        if v as usize >= self.n() {
            return Err(MoveError::NoSuchVertex { vertex: v });
        }
        if self.is_colored(v) {
            return Err(MoveError::AlreadyColored { vertex: v });
        }
        if c == 0 || c > self.k {
            return Err(MoveError::ColorOutOfRange { color: c, k: self.k });
        }
        if self.is_blocked(v, c) {
            let neighbor = self
                .g
                .neighbors(v)
                .iter()
                .copied()
                .find(|&u| self.color[u as usize] == c)
                .unwrap_or(NONE);
            return Err(MoveError::ColorBlocked { vertex: v, color: c, neighbor });
        }
        Ok(())
    }

    /// Plays `m` for the player to move.
    pub fn apply_move(&mut self, m: MoveChoice) -> Result<(), MoveError> {
        self.check_move(m)?;
        let MoveChoice { vertex: v, color: c } = m;
        let vi = v as usize;
        self.buckets[self.avail[vi] as usize].remove(&v);
        for col in 1..=self.k {
            if !self.is_blocked(v, col) {
                self.uset_remove(col, v);
            }
        }
        self.color[vi] = c;
        self.classes[c as usize].push(v);
        let bit = (c - 1) as usize;
        for &u in self.g.neighbors(v) {
            let ui = u as usize;
            if self.color[ui] != 0 || self.is_blocked(u, c) {
                continue;
            }
            self.blocked[ui * self.words + bit / 64] |= 1 << (bit % 64);
            let a = self.avail[ui];
            self.buckets[a as usize].remove(&u);
            self.buckets[a as usize - 1].insert(u);
            self.avail[ui] = a - 1;
            self.uset_remove(c, u);
        }
        self.log.push(MoveRecord { player: self.to_move, vertex: v, color: c });
        self.to_move = self.to_move.other();
        Ok(())
    }

    fn uset_remove(&mut self, c: u32, v: u32) {
        let n = self.n();
        let base = (c as usize - 1) * n;
        let set = &mut self.uset[c as usize];
        let i = self.upos[base + v as usize] as usize;
        let last = *set.last().expect("vertex present in U_c");
        set.swap_remove(i);
        if last != v {
            self.upos[base + last as usize] = i as u32;
        }
        self.upos[base + v as usize] = NONE;
    }
}

/// Referees one game from the empty coloring.
///
/// Bob wins the moment any uncolored vertex has no available color, whoever
/// caused it. A strategy that returns no move or an illegal move loses.
pub fn play_game(g: &Graph, k: u32, alice: &mut dyn Strategy, bob: &mut dyn Strategy, first: Player) -> crate::Result<Outcome> {
    let mut st = GameState::new(g, k, first)?;
    Ok(play_from(&mut st, alice, bob))
}

/// Continues refereeing from an existing state.
pub fn play_from(st: &mut GameState<'_>, alice: &mut dyn Strategy, bob: &mut dyn Strategy) -> Outcome {
    let finish = |st: &GameState<'_>, winner, reason| Outcome { winner, reason, transcript: st.log.clone() };
    if let Some(v) = st.detect_dead_vertex() {
        return finish(st, Player::Bob, Reason::DeadVertex(v));
    }
    loop {
        if st.all_colored() {
            return finish(st, Player::Alice, Reason::AllColored);
        }
        let mover = st.to_move();
        let strat: &mut dyn Strategy = match mover {
            Player::Alice => &mut *alice,
            Player::Bob => &mut *bob,
        };
        let Some(m) = strat.choose(st) else {
            return finish(st, mover.other(), Reason::IllegalMove(mover));
        };
        if st.apply_move(m).is_err() {
            return finish(st, mover.other(), Reason::IllegalMove(mover));
        }
        if let Some(v) = st.detect_dead_vertex() {
            return finish(st, Player::Bob, Reason::DeadVertex(v));
        }
    }
}
