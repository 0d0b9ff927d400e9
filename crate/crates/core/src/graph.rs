//! Simple undirected graphs and the random models used by the experiments.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::math;
use crate::rng::RngSeed;

/// Immutable simple graph on the vertices `0..n`.
///
/// Adjacency lists are sorted ascending, so neighbor iteration order is part
/// of the (deterministic) contract.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Loops, duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::param("too many vertices"));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::param(alloc::format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(Error::param(alloc::format!("self-loop at {u}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(alloc::format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    // Caller guarantees simplicity; lists get sorted here.
    fn from_unsorted_adj(mut adj: Vec<Vec<u32>>) -> Self {
        let mut deg_sum = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            deg_sum += list.len();
        }
        Graph { adj, m: deg_sum / 2 }
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n as u32)
            .map(|v| (0..n as u32).filter(|&u| u != v).collect())
            .collect();
        Graph::from_unsorted_adj(adj)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n as u32).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n as u32).map(|v| (v, (v + 1) % n as u32)).collect();
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves as u32).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star is simple")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            let start = list.partition_point(|&x| x <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// `d_S(v)`: the number of neighbors of `v` inside `s`. `v` must lie in `s`.
    pub fn induced_degree(&self, s: &[u32], v: u32) -> Result<usize> {
        if !s.contains(&v) {
            return Err(Error::param(alloc::format!("vertex {v} not in S")));
        }
        let mut mask = vec![false; self.n()];
        for &x in s {
            if (x as usize) < self.n() {
                mask[x as usize] = true;
            }
        }
        Ok(self.induced_degree_mask(&mask, v))
    }

    /// Same as [`Graph::induced_degree`] with `S` given as a membership mask and
    /// no membership check on `v`.
    #[inline]
    pub fn induced_degree_mask(&self, mask: &[bool], v: u32) -> usize {
        self.neighbors(v).iter().filter(|&&u| mask[u as usize]).count()
    }

    /// Number of edges with both endpoints in the mask.
    pub fn edges_within(&self, mask: &[bool]) -> usize {
        self.edges().filter(|&(u, v)| mask[u as usize] && mask[v as usize]).count()
    }

    /// Graph distances from `src`, `u32::MAX` for unreachable vertices, with
    /// the search cut off beyond `limit`.
    pub fn bfs_distances(&self, src: u32, limit: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.n()];
        let mut queue = alloc::collections::VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if dx >= limit {
                continue;
            }
            for &y in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_distances(0, u32::MAX).iter().all(|&d| d != u32::MAX)
    }
}

/// Erdős–Rényi `G(n, p)`.
///
/// Uses the geometric skipping method of Batagelj and Brandes, so the cost is
/// `O(n + m)` rather than `O(n^2)`.
pub fn gen_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::param(alloc::format!("p = {p} is not a probability")));
    }
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let mut adj = vec![Vec::new(); n];
    let log_q = math::ln_1p(-p);
    let (mut v, mut w): (i64, i64) = (1, -1);
    let n = n as i64;
    while v < n {
        let r: f64 = rng.gen();
        w += 1 + math::floor(math::ln_1p(-r) / log_q) as i64;
        while w >= v && v < n {
            w -= v;
            v += 1;
        }
        if v < n {
            adj[v as usize].push(w as u32);
            adj[w as usize].push(v as u32);
        }
    }
    Ok(Graph::from_unsorted_adj(adj))
}

/// Random recursive tree: vertex `i >= 1` joins a uniform earlier vertex.
pub fn gen_random_tree(n: usize, seed: RngSeed) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let mut rng = seed.rng();
    let mut adj = vec![Vec::new(); n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        adj[v].push(u as u32);
        adj[u].push(v as u32);
    }
    Ok(Graph::from_unsorted_adj(adj))
}

/// Attempt cap for the configuration model with degree `d`.
pub fn config_attempt_cap(d: usize) -> u64 {
    let x = 2.0 * (d as f64) * (d as f64);
    if x > 30.0 {
        return 1_000_000;
    }
    let e = math::ceil(math::exp(x)) as u64;
    (10 * e).min(1_000_000)
}

/// Uniform random `d`-regular simple graph via the configuration model with
/// rejection.
pub fn gen_regular_config(n: usize, d: usize, seed: RngSeed) -> Result<Graph> {
    gen_regular_config_counted(n, d, seed).map(|(g, _)| g)
}

/// Like [`gen_regular_config`], also returning the number of pairings drawn.
pub fn gen_regular_config_counted(n: usize, d: usize, seed: RngSeed) -> Result<(Graph, u64)> {
    if n == 0 || d == 0 {
        return Err(Error::param("n and d must be positive"));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::param(alloc::format!("d*n = {} is odd", n * d)));
    }
    if d >= n {
        return Err(Error::param(alloc::format!("d = {d} must be below n = {n}")));
    }
    let cap = config_attempt_cap(d);
    let mut rng = seed.rng();
    let mut points: Vec<u32> = (0..n * d).map(|i| (i / d) as u32).collect();
    let mut adj: Vec<Vec<u32>> = vec![Vec::with_capacity(d); n];
    for attempt in 1..=cap {
        points.shuffle(&mut rng);
        adj.iter_mut().for_each(Vec::clear);
        let mut simple = true;
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u as usize].contains(&v) {
                simple = false;
                break;
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        if simple {
            return Ok((Graph::from_unsorted_adj(adj), attempt));
        }
    }
    Err(Error::GenerationFailed { attempts: cap })
}

/// A cubic graph made of a Hamilton cycle plus a perfect matching of chords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicModelGraph {
    pub graph: Graph,
    /// `cycle[i]` is the vertex at position `i` of the Hamilton cycle.
    pub cycle: Vec<u32>,
    /// `partner[v]` is the other endpoint of the chord at `v`.
    pub partner: Vec<u32>,
    pos: Vec<u32>,
}

impl CubicModelGraph {
    /// Assembles and validates a model from a cycle order and chord pairs.
    pub fn from_parts(cycle: Vec<u32>, chords: &[(u32, u32)]) -> Result<Self> {
        let n = cycle.len();
        if n < 4 || n % 2 == 1 {
            return Err(Error::param(alloc::format!("cubic model needs even n >= 4, got {n}")));
        }
        let mut pos = vec![u32::MAX; n];
        for (i, &v) in cycle.iter().enumerate() {
            if v as usize >= n || pos[v as usize] != u32::MAX {
                return Err(Error::param("cycle order is not a permutation"));
            }
            pos[v as usize] = i as u32;
        }
        if chords.len() != n / 2 {
            return Err(Error::param("matching must have n/2 chords"));
        }
        let mut partner = vec![u32::MAX; n];
        for &(u, v) in chords {
            if u as usize >= n || v as usize >= n || u == v {
                return Err(Error::param(alloc::format!("bad chord ({u},{v})")));
            }
            if partner[u as usize] != u32::MAX || partner[v as usize] != u32::MAX {
                return Err(Error::param("chords are not disjoint"));
            }
            partner[u as usize] = v;
            partner[v as usize] = u;
        }
        let mut edges = Vec::with_capacity(n + n / 2);
        for i in 0..n {
            edges.push((cycle[i], cycle[(i + 1) % n]));
        }
        edges.extend_from_slice(chords);
        let graph = Graph::from_edges(n, &edges)
            .map_err(|_| Error::param("a chord coincides with a cycle edge"))?;
        Ok(CubicModelGraph { graph, cycle, partner, pos })
    }

    pub fn n(&self) -> usize {
        self.cycle.len()
    }

    /// Position of `v` on the Hamilton cycle.
    #[inline]
    pub fn position(&self, v: u32) -> u32 {
        self.pos[v as usize]
    }

    /// Chords `(u, v)` with `u < v`, ascending.
    pub fn chords(&self) -> Vec<(u32, u32)> {
        (0..self.n() as u32)
            .filter(|&u| u < self.partner[u as usize])
            .map(|u| (u, self.partner[u as usize]))
            .collect()
    }
}

/// The cycle `0-1-...-(n-1)-0` plus a uniform perfect matching, redrawn
/// until no chord doubles a cycle edge.
pub fn gen_cubic_cycle_matching(n: usize, seed: RngSeed) -> Result<CubicModelGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::param(alloc::format!("n = {n} must be even and at least 4")));
    }
    let cap = 1_000_000u64;
    let mut rng = seed.rng();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let n32 = n as u32;
    for _ in 0..cap {
        perm.shuffle(&mut rng);
        let ok = perm.chunks_exact(2).all(|c| {
            let diff = c[0].abs_diff(c[1]);
            diff != 1 && diff != n32 - 1
        });
        if ok {
            let chords: Vec<_> = perm.chunks_exact(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
            return CubicModelGraph::from_parts((0..n32).collect(), &chords);
        }
    }
    Err(Error::GenerationFailed { attempts: cap })
}
