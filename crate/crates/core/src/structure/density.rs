//! Searching for small dense vertex sets.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::flow::FlowNet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::powf;

/// Largest graph scanned by exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Certainty {
    /// The answer is proven (a checked witness, or a proof that none exists).
    Exact,
    /// No witness was found but its absence is not proven.
    Heuristic,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DensityScan {
    /// A set `S` with `|S| <= sigma n` and `e(S) >= theta |S|`, ascending.
    pub witness: Option<Vec<u32>>,
    pub certainty: Certainty,
    /// `max e(S) / |S|` over all nonempty `S` (no size limit).
    pub max_density: f64,
}

/// Looks for `S` with `|S| <= sigma n` and `e(S) >= theta |S|`.
///
/// Graphs with at most [`EXHAUSTIVE_LIMIT`] vertices are enumerated
/// completely. Larger graphs get the maximum-density subgraph from a
/// parametric min-cut; if that set is too big, peeling searches for a
/// smaller witness and a miss is reported as [`Certainty::Heuristic`].
pub fn density_scan(g: &Graph, sigma: f64, theta: f64) -> Result<DensityScan> {
    if !(sigma > 0.0 && sigma <= 1.0) {
        return Err(Error::param(alloc::format!("sigma = {sigma} outside (0, 1]")));
    }
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::param(alloc::format!("theta = {theta} must be positive")));
    }
    let limit = size_limit(g.n(), sigma);
    if g.n() <= EXHAUSTIVE_LIMIT {
        Ok(exhaustive(g, limit, theta))
    } else {
        Ok(flow_scan(g, limit, theta))
    }
}

fn size_limit(n: usize, sigma: f64) -> usize {
    // Tolerate sigma * n landing a hair under an integer.
    let x = sigma * n as f64;
    let r = libm::round(x);
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x as usize
    }
}

fn exhaustive(g: &Graph, limit: usize, theta: f64) -> DensityScan {
    let n = g.n();
    let adj: Vec<u32> = (0..n as u32)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let mut set = 0u32;
    let mut size = 0usize;
    let mut edges = 0usize;
    let mut best: Option<(u32, f64)> = None;
    let mut max_density: f64 = 0.0;
    // Gray code: step i flips bit trailing_zeros(i).
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        if set & bit == 0 {
            edges += (adj[v] & set).count_ones() as usize;
            set |= bit;
            size += 1;
        } else {
            set &= !bit;
            edges -= (adj[v] & set).count_ones() as usize;
            size -= 1;
        }
        if size == 0 {
            continue;
        }
        let dens = edges as f64 / size as f64;
        max_density = max_density.max(dens);
        if size <= limit && edges as f64 >= theta * size as f64 && best.is_none_or(|(_, b)| dens > b) {
            best = Some((set, dens));
        }
    }
    DensityScan {
        witness: best.map(|(s, _)| (0..n as u32).filter(|&v| s >> v & 1 == 1).collect()),
        certainty: Certainty::Exact,
        max_density,
    }
}

/// Maximum-density vertex set (Goldberg's construction with Dinkelbach
/// updates). Returns the set and its density; an edgeless graph gives the
/// whole vertex set with density 0.
pub fn densest_subgraph(g: &Graph) -> (Vec<u32>, f64) {
    let n = g.n();
    let m = g.m() as i64;
    let mut best: Vec<u32> = (0..n as u32).collect();
    if m == 0 {
        return (best, 0.0);
    }
    let (mut p, mut q) = (m, n as i64);
    loop {
        let s = n;
        let t = n + 1;
        let mut net = FlowNet::new(n + 2);
        for v in 0..n {
            net.add(s, v, q * m, 0);
            net.add(v, t, q * m + 2 * p - q * g.degree(v as u32) as i64, 0);
        }
        for (u, v) in g.edges() {
            net.add(u as usize, v as usize, q, q);
        }
        let cut = net.max_flow(s, t);
        if cut >= q * m * n as i64 {
            break;
        }
        let side = net.source_side(s);
        let set: Vec<u32> = (0..n as u32).filter(|&v| side[v as usize]).collect();
        let mut mask = vec![false; n];
        set.iter().for_each(|&v| mask[v as usize] = true);
        let e = g.edges_within(&mask) as i64;
        // Strictly denser than p/q, otherwise the cut would not be smaller.
        debug_assert!(e * q > p * set.len() as i64);
        p = e;
        q = set.len() as i64;
        best = set;
    }
    let dens = p as f64 / q as f64;
    (best, dens)
}

fn flow_scan(g: &Graph, limit: usize, theta: f64) -> DensityScan {
    let (dense, max_density) = densest_subgraph(g);
    if max_density < theta {
        return DensityScan { witness: None, certainty: Certainty::Exact, max_density };
    }
    if dense.len() <= limit {
        return DensityScan { witness: Some(dense), certainty: Certainty::Exact, max_density };
    }
    let all: Vec<u32> = (0..g.n() as u32).collect();
    for start in [&dense, &all] {
        if let Some(w) = peel(g, start, limit, theta) {
            return DensityScan { witness: Some(w), certainty: Certainty::Exact, max_density };
        }
    }
    DensityScan { witness: None, certainty: Certainty::Heuristic, max_density }
}

// Removes a minimum-degree vertex (lowest id on ties) until a set of size at
// most `limit` meets the density target.
fn peel(g: &Graph, start: &[u32], limit: usize, theta: f64) -> Option<Vec<u32>> {
    let mut inside = vec![false; g.n()];
    start.iter().for_each(|&v| inside[v as usize] = true);
    let mut deg: Vec<usize> = vec![0; g.n()];
    let mut queue = BTreeSet::new();
    let mut edges = 0usize;
    for &v in start {
        deg[v as usize] = g.induced_degree_mask(&inside, v);
        edges += deg[v as usize];
        queue.insert((deg[v as usize], v));
    }
    edges /= 2;
    let mut size = start.len();
    while size > 0 {
        if size <= limit && edges as f64 >= theta * size as f64 {
            let mut w: Vec<u32> = start.iter().copied().filter(|&v| inside[v as usize]).collect();
            w.sort_unstable();
            return Some(w);
        }
        let (d, v) = queue.pop_first()?;
        inside[v as usize] = false;
        edges -= d;
        size -= 1;
        for &u in g.neighbors(v) {
            if inside[u as usize] {
                queue.remove(&(deg[u as usize], u));
                deg[u as usize] -= 1;
                queue.insert((deg[u as usize], u));
            }
        }
    }
    None
}

/// Largest `sigma` for which
/// `(sigma e d / (2 theta))^theta <= sigma / (2e)` holds, for `theta > 1`.
pub fn sparse_sigma_limit(d: f64, theta: f64) -> Result<f64> {
    if !(theta > 1.0) || !(d > 0.0) {
        return Err(Error::param("need theta > 1 and d > 0"));
    }
    let e = core::f64::consts::E;
    let inner = powf(2.0 * theta / (e * d), theta) / (2.0 * e);
    Ok(powf(inner, 1.0 / (theta - 1.0)))
}

/// Result of [`degree_subset_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegreeSubset {
    /// `T = {v in S : d_S(v) >= delta}`, ascending.
    pub t: Vec<u32>,
    /// `|T| >= tau |S|`.
    pub verdict: bool,
}

pub fn degree_subset_check(g: &Graph, s: &[u32], delta: f64, tau: f64) -> Result<DegreeSubset> {
    let mut mask = vec![false; g.n()];
    for &v in s {
        if v as usize >= g.n() {
            return Err(Error::param(alloc::format!("vertex {v} out of range")));
        }
        mask[v as usize] = true;
    }
    let mut t: Vec<u32> = (0..g.n() as u32)
        .filter(|&v| mask[v as usize] && g.induced_degree_mask(&mask, v) as f64 >= delta)
        .collect();
    t.dedup();
    let size = mask.iter().filter(|&&b| b).count();
    let verdict = t.len() as f64 >= tau * size as f64;
    Ok(DegreeSubset { t, verdict })
}
