//! Availability statistics over partial colorings.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{ln, powf};
use crate::rng::RngSeed;

/// `B = {v uncolored : a(v) < beta / 2}` for the partial coloring whose color
/// classes are `classes` (`k = classes.len()`), ascending.
pub fn availability_deficit(g: &Graph, classes: &[Vec<u32>], beta: f64) -> Result<Vec<u32>> {
    let n = g.n();
    let mut color = vec![0u32; n];
    for (i, class) in classes.iter().enumerate() {
        for &v in class {
            if v as usize >= n {
                return Err(Error::param(alloc::format!("vertex {v} out of range")));
            }
            if color[v as usize] != 0 {
                return Err(Error::param(alloc::format!("vertex {v} lies in two classes")));
            }
            color[v as usize] = i as u32 + 1;
        }
    }
    let k = classes.len();
    let mut seen = vec![u32::MAX; k + 1];
    let mut out = Vec::new();
    for v in 0..n as u32 {
        if color[v as usize] != 0 {
            continue;
        }
        let mut blocked = 0;
        for &u in g.neighbors(v) {
            let c = color[u as usize] as usize;
            if c != 0 && seen[c] != v {
                seen[c] = v;
                blocked += 1;
            }
        }
        if ((k - blocked) as f64) < beta / 2.0 {
            out.push(v);
        }
    }
    Ok(out)
}

/// `(sum_i (1-p)^{|C_i|}, k (1-p)^{mean |C_i|})`; the first never falls below
/// the second because `t -> (1-p)^t` is convex.
pub fn convexity_bound(sizes: &[usize], p: f64) -> (f64, f64) {
    let k = sizes.len();
    if k == 0 {
        return (0.0, 0.0);
    }
    let q = 1.0 - p;
    let sum: f64 = sizes.iter().map(|&s| powf(q, s as f64)).sum();
    let mean = sizes.iter().sum::<usize>() as f64 / k as f64;
    (sum, k as f64 * powf(q, mean))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EdgeSpan {
    pub s: usize,
    pub trials: usize,
    /// Largest `e(S)` over the sampled sets.
    pub max_edges: usize,
    /// `phi(s) = (5ps + ln n) s`.
    pub bound: f64,
    pub violated: bool,
}

/// Samples `trials` uniform `s`-subsets and compares the most edges spanned
/// with `phi(s)`.
pub fn edge_span_check(g: &Graph, s: usize, trials: usize, p: f64, seed: RngSeed) -> Result<EdgeSpan> {
    let n = g.n();
    if s > n {
        return Err(Error::param(alloc::format!("s = {s} exceeds n = {n}")));
    }
    let mut rng = seed.rng();
    let mut mask = vec![false; n];
    let mut max_edges = 0;
    for _ in 0..trials {
        let sample = index::sample(&mut rng, n, s);
        sample.iter().for_each(|v| mask[v] = true);
        let twice: usize = sample.iter().map(|v| g.induced_degree_mask(&mask, v as u32)).sum();
        max_edges = max_edges.max(twice / 2);
        sample.iter().for_each(|v| mask[v] = false);
    }
    let bound = (5.0 * p * s as f64 + ln(n as f64)) * s as f64;
    Ok(EdgeSpan { s, trials, max_edges, bound, violated: max_edges as f64 > bound })
}
