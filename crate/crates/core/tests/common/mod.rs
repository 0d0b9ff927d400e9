//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the code under test except for `Graph` construction.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use colorgame_core::{Graph, Player};
use proptest::prelude::*;

/// Strategy for an arbitrary simple graph on `lo..=hi` vertices.
pub fn arb_graph(lo: usize, hi: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Graph whose `i`-th pair in lexicographic order is an edge iff `bits[i]`.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n() as u32).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect()
}

/// Colors missing from the neighborhood of `v` (`colors[x] == 0` means uncolored).
pub fn brute_available(g: &Graph, colors: &[u32], k: u32, v: u32) -> Vec<u32> {
    (1..=k).filter(|&c| g.neighbors(v).iter().all(|&u| colors[u as usize] != c)).collect()
}

pub fn brute_dead(g: &Graph, colors: &[u32], k: u32) -> Option<u32> {
    (0..g.n() as u32).find(|&v| colors[v as usize] == 0 && brute_available(g, colors, k, v).is_empty())
}

pub fn is_proper(g: &Graph, colors: &[u32]) -> bool {
    g.edges().all(|(u, v)| colors[u as usize] == 0 || colors[u as usize] != colors[v as usize])
}

/// Chromatic number by dynamic programming over subsets: the fewest
/// independent sets covering each subset.
pub fn chromatic_dp(g: &Graph) -> u32 {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj = adjacency_masks(g);
    let full = (1usize << n) - 1;
    let mut indep = vec![false; 1 << n];
    indep[0] = true;
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        indep[s] = indep[rest] && (adj[v] as usize & rest) == 0;
    }
    let mut best = vec![u32::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        // Enumerate independent subsets of s containing its lowest vertex.
        let mut sub = rest;
        loop {
            let i = sub | low;
            if indep[i] && best[s & !i] != u32::MAX {
                best[s] = best[s].min(best[s & !i] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full]
}

/// Plain memoized minimax over raw colorings, no symmetry reduction.
pub struct NaiveGame {
    adj: Vec<u64>,
    n: usize,
    k: u8,
    memo: HashMap<Vec<u8>, bool>,
}

impl NaiveGame {
    pub fn new(g: &Graph, k: u32) -> Self {
        NaiveGame { adj: adjacency_masks(g), n: g.n(), k: k as u8, memo: HashMap::new() }
    }

    fn avail(&self, c: &[u8], v: usize) -> Vec<u8> {
        (1..=self.k)
            .filter(|&col| (0..self.n).all(|u| self.adj[v] >> u & 1 == 0 || c[u] != col))
            .collect()
    }

    fn alice_wins(&mut self, c: &mut Vec<u8>, mover: Player) -> bool {
        if (0..self.n).any(|v| c[v] == 0 && self.avail(c, v).is_empty()) {
            return false;
        }
        if c.iter().all(|&x| x != 0) {
            return true;
        }
        let mut key = c.clone();
        key.push(mover as u8);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let mut result = mover == Player::Bob;
        'outer: for v in 0..self.n {
            if c[v] != 0 {
                continue;
            }
            for col in self.avail(c, v) {
                c[v] = col;
                let r = self.alice_wins(c, mover.other());
                c[v] = 0;
                if r == (mover == Player::Alice) {
                    result = r;
                    break 'outer;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }

    pub fn winner(&mut self, first: Player) -> Player {
        let mut c = vec![0u8; self.n];
        if self.alice_wins(&mut c, first) {
            Player::Alice
        } else {
            Player::Bob
        }
    }
}

/// Smallest `k` for which Alice wins, by the naive solver.
pub fn naive_chi_g(g: &Graph) -> u32 {
    (1..).find(|&k| NaiveGame::new(g, k).winner(Player::Alice) == Player::Alice).unwrap()
}

/// Breadth-first distances from `s` with no depth limit (`u32::MAX` = unreachable).
pub fn bfs(g: &Graph, s: u32) -> Vec<u32> {
    let mut d = vec![u32::MAX; g.n()];
    d[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(x) = q.pop_front() {
        for &y in g.neighbors(x) {
            if d[y as usize] == u32::MAX {
                d[y as usize] = d[x as usize] + 1;
                q.push_back(y);
            }
        }
    }
    d
}

/// `max e(S)/|S|` over nonempty `S` with `|S| <= limit`, and whether some
/// such `S` reaches `e(S) >= theta |S|`.
pub fn brute_density(g: &Graph, limit: usize, theta: f64) -> (f64, bool) {
    let n = g.n();
    let adj = adjacency_masks(g);
    let mut best = 0.0f64;
    let mut hit = false;
    for s in 1u64..(1u64 << n) {
        let size = s.count_ones() as usize;
        let mut twice = 0u32;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros();
            twice += (adj[v as usize] & s).count_ones();
            m &= m - 1;
        }
        let e = (twice / 2) as f64;
        best = best.max(e / size as f64);
        if size <= limit && e >= theta * size as f64 {
            hit = true;
        }
    }
    (best, hit)
}

/// `P(X <= x)` for `X ~ Bin(n, p)`, summed exactly in floating point.
pub fn binomial_cdf(n: u64, p: f64, x: f64) -> f64 {
    binomial_pmf(n, p).iter().enumerate().filter(|(i, _)| (*i as f64) <= x).map(|(_, q)| q).sum()
}

/// `P(X >= x)`.
pub fn binomial_sf(n: u64, p: f64, x: f64) -> f64 {
    binomial_pmf(n, p).iter().enumerate().filter(|(i, _)| (*i as f64) >= x).map(|(_, q)| q).sum()
}

fn binomial_pmf(n: u64, p: f64) -> Vec<f64> {
    // Log-space to stay finite for large n.
    let lg: Vec<f64> = (0..=n).scan(0.0f64, |acc, i| {
        if i > 0 {
            *acc += (i as f64).ln();
        }
        Some(*acc)
    }).collect();
    (0..=n)
        .map(|i| {
            if p == 0.0 {
                return if i == 0 { 1.0 } else { 0.0 };
            }
            if p == 1.0 {
                return if i == n { 1.0 } else { 0.0 };
            }
            let l = lg[n as usize] - lg[i as usize] - lg[(n - i) as usize] + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln();
            l.exp()
        })
        .collect()
}
