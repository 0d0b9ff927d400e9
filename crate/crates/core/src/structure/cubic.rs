//! Cubic-graph machinery behind Bob's three-color strategy: closeness,
//! short and long paths, good segments of the cycle-plus-matching model and
//! the theta subgraph `H`.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{CubicModelGraph, Graph};
use crate::math::{floor, sqrt};

/// Graph distance at most two.
pub fn close(g: &Graph, u: u32, v: u32) -> bool {
    if u == v || g.has_edge(u, v) {
        return true;
    }
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Equal => return true,
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
        }
    }
    false
}

/// Vertices within distance two of `v`, ascending.
pub fn close_ball(g: &Graph, v: u32) -> Vec<u32> {
    let mut out = vec![v];
    for &u in g.neighbors(v) {
        out.push(u);
        out.extend_from_slice(g.neighbors(u));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn check_path(g: &Graph, path: &[u32]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::param("empty path"));
    }
    if path.iter().any(|&v| v as usize >= g.n()) {
        return Err(Error::param("path vertex out of range"));
    }
    if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::param("consecutive path vertices are not adjacent"));
    }
    let mut seen = path.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::param("path repeats a vertex"));
    }
    Ok(())
}

/// A path is short when one of its vertices is close to both endpoints.
pub fn short_path(g: &Graph, path: &[u32]) -> Result<bool> {
    check_path(g, path)?;
    let (s, t) = (path[0], path[path.len() - 1]);
    Ok(path.iter().any(|&x| close(g, x, s) && close(g, x, t)))
}

/// Good segments of the Hamilton cycle and their pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SegmentCatalog {
    /// Segment length in vertices, `floor(c sqrt n)`.
    pub m: usize,
    /// Number of vertices whose chord spans at most `m` positions of the
    /// cycle (twice the number of such chords).
    pub x: usize,
    /// How many of the `n` cyclic windows of `m` vertices contain no chord.
    pub good_windows: usize,
    /// Start positions of a maximal non-overlapping family of good windows,
    /// chosen greedily clockwise; an even count.
    pub segments: Vec<u32>,
    /// `(sigma_j, sigma_{n1 + j})` as start positions.
    pub pairs: Vec<(u32, u32)>,
}

fn cyc_dist(a: u32, b: u32, n: u32) -> u32 {
    let d = a.abs_diff(b);
    d.min(n - d)
}

pub fn find_good_segments(cm: &CubicModelGraph, c: f64) -> Result<SegmentCatalog> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::param(alloc::format!("c = {c} outside (0, 1)")));
    }
    let n = cm.n();
    let n32 = n as u32;
    let m = (floor(c * sqrt(n as f64)) as usize).max(1);
    let mut x = 0;
    // bad[s] counts chords inside the window starting at position s.
    let mut diff = vec![0i64; n + 1];
    for v in 0..n32 {
        let u = cm.partner[v as usize];
        let (pv, pu) = (cm.position(v), cm.position(u));
        let d = cyc_dist(pv, pu, n32);
        if d as usize <= m {
            x += 1;
        }
        if v > u || d as usize >= m {
            continue;
        }
        // Chord occupies the shorter arc from `lo` forward by d.
        let lo = if (pv + d) % n32 == pu { pv } else { pu };
        // Windows starting at lo - (m - 1 - d) ..= lo contain it.
        let span = m - d as usize;
        let first = (lo as usize + n - (span - 1)) % n;
        add_range(&mut diff, first, span, n);
    }
    let mut good = vec![false; n];
    let mut run = 0i64;
    for s in 0..n {
        run += diff[s];
        good[s] = run == 0;
    }
    let good_windows = good.iter().filter(|&&b| b).count();
    let mut segments = Vec::new();
    let mut s = 0;
    while s + m <= n {
        if good[s] {
            segments.push(s as u32);
            s += m;
        } else {
            s += 1;
        }
    }
    if segments.len() % 2 == 1 {
        segments.pop();
    }
    let n1 = segments.len() / 2;
    let pairs = (0..n1).map(|j| (segments[j], segments[n1 + j])).collect();
    Ok(SegmentCatalog { m, x, good_windows, segments, pairs })
}

fn add_range(diff: &mut [i64], first: usize, len: usize, n: usize) {
    if first + len <= n {
        diff[first] += 1;
        diff[first + len] -= 1;
    } else {
        diff[first] += 1;
        diff[n] -= 1;
        diff[0] += 1;
        diff[first + len - n] -= 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum HSource {
    /// Built from a pair of good segments with exactly three cross chords.
    SegmentPair,
    /// Built from a cycle and an ear found by local breadth-first search.
    LocalSearch,
}

/// Two branch vertices joined by three internally disjoint paths.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HSubgraph {
    pub v: u32,
    pub w: u32,
    /// Each path runs from `v` to `w`.
    pub paths: [Vec<u32>; 3],
    /// `(a1, b3), (a2, b1), (a3, b2)` for segment-pair subgraphs.
    pub chords: Option<[(u32, u32); 3]>,
    /// Start positions of the segment pair used.
    pub segment_pair: Option<(u32, u32)>,
    pub source: HSource,
}

impl HSubgraph {
    /// All vertices of `H`, ascending.
    pub fn vertices(&self) -> Vec<u32> {
        let mut all: Vec<u32> = self.paths.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        self.paths.iter().any(|p| p.windows(2).any(|w| (w[0], w[1]) == (a, b) || (w[0], w[1]) == (b, a)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HReport {
    /// Three internally disjoint `v`-`w` paths in `g`.
    pub p1: bool,
    /// Every path has an even number of edges.
    pub p2: bool,
    /// `H` is induced and no outside path of length at most four joins two
    /// of its vertices.
    pub p3: bool,
    /// All three paths are long.
    pub p4: bool,
    /// `H` avoids the forbidden set.
    pub pf: bool,
}

impl HReport {
    pub fn all(&self) -> bool {
        self.p1 && self.p2 && self.p3 && self.p4 && self.pf
    }
}

/// Checks every property of `h` against the adjacency of `g`.
pub fn verify_h(g: &Graph, h: &HSubgraph, forbidden: &[u32]) -> HReport {
    let n = g.n();
    let mut r = HReport::default();
    let in_range = h.paths.iter().flatten().all(|&x| (x as usize) < n) && (h.v as usize) < n && (h.w as usize) < n;
    if !in_range {
        return r;
    }
    r.p1 = h.v != h.w
        && h.paths.iter().all(|p| {
            p.len() >= 2 && p[0] == h.v && p[p.len() - 1] == h.w && check_path(g, p).is_ok()
        })
        && {
            let mut inner: Vec<u32> =
                h.paths.iter().flat_map(|p| p[1..p.len() - 1].iter().copied()).collect();
            let len = inner.len();
            inner.sort_unstable();
            inner.dedup();
            inner.len() == len
        };
    r.p2 = h.paths.iter().all(|p| p.len() >= 2 && (p.len() - 1) % 2 == 0);
    r.p4 = r.p1 && h.paths.iter().all(|p| short_path(g, p) == Ok(false));
    let verts = h.vertices();
    let mut in_h = vec![false; n];
    verts.iter().for_each(|&x| in_h[x as usize] = true);
    r.pf = forbidden.iter().all(|&f| (f as usize) >= n || !in_h[f as usize]);
    r.p3 = r.p1 && outside_clear(g, h, &verts, &in_h);
    r
}

// No non-H edge between H vertices and no path of length 2..=4 whose
// interior avoids H between two distinct H vertices.
fn outside_clear(g: &Graph, h: &HSubgraph, verts: &[u32], in_h: &[bool]) -> bool {
    let mut dist: hashbrown::HashMap<u32, u32> = hashbrown::HashMap::new();
    let mut queue = VecDeque::new();
    for &s in verts {
        for &u in g.neighbors(s) {
            if in_h[u as usize] && !h.has_edge(s, u) {
                return false;
            }
        }
        dist.clear();
        queue.clear();
        for &u in g.neighbors(s) {
            if !in_h[u as usize] && dist.insert(u, 1).is_none() {
                queue.push_back(u);
            }
        }
        while let Some(x) = queue.pop_front() {
            let dx = dist[&x];
            for &y in g.neighbors(x) {
                if in_h[y as usize] {
                    if y != s {
                        return false;
                    }
                    continue;
                }
                if dx < 3 && !dist.contains_key(&y) {
                    dist.insert(y, dx + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    true
}

/// Looks for `H` avoiding `forbidden`: first among the good segment pairs,
/// then by a local search around low-numbered vertices. Every returned `H`
/// has passed [`verify_h`].
pub fn find_h(cm: &CubicModelGraph, c: f64, forbidden: &[u32]) -> Result<Option<HSubgraph>> {
    if let Some(h) = find_h_segments(cm, c, forbidden)? {
        return Ok(Some(h));
    }
    Ok(find_h_local(&cm.graph, forbidden, LOCAL_STARTS))
}

/// Start vertices tried by the local search.
pub const LOCAL_STARTS: usize = 400;

/// The segment-pair search alone.
pub fn find_h_segments(cm: &CubicModelGraph, c: f64, forbidden: &[u32]) -> Result<Option<HSubgraph>> {
    let cat = find_good_segments(cm, c)?;
    let n = cm.n() as u32;
    let m = cat.m as u32;
    for &(s, t) in &cat.pairs {
        let mut cross = Vec::new();
        for i in 0..m {
            let x = cm.cycle[((s + i) % n) as usize];
            let y = cm.partner[x as usize];
            let j = (cm.position(y) + n - t) % n;
            if j < m {
                cross.push((i, j));
            }
        }
        if cross.len() != 3 {
            continue;
        }
        for (ds, dt) in [(false, false), (false, true), (true, false), (true, true)] {
            let mut ch: Vec<(u32, u32)> = cross
                .iter()
                .map(|&(i, j)| (if ds { m - 1 - i } else { i }, if dt { m - 1 - j } else { j }))
                .collect();
            ch.sort_unstable();
            let mut tr: Vec<u32> = ch.iter().map(|c| c.1).collect();
            tr.sort_unstable();
            let rank = |j: u32| tr.iter().position(|&x| x == j).unwrap();
            if (rank(ch[0].1), rank(ch[1].1), rank(ch[2].1)) != (2, 0, 1) {
                continue;
            }
            let (a1, a2, a3) = (ch[0].0, ch[1].0, ch[2].0);
            let (b1, b2, b3) = (tr[0], tr[1], tr[2]);
            let lens = [a2 - a1, a3 - a2, b2 - b1, b3 - b2];
            if lens.iter().any(|&l| l < 5) {
                continue;
            }
            if (a2 - a1 + 1 + b3 - b2) % 2 == 1 || (b2 - b1 + 1) % 2 == 1 || (a3 - a2 + 1) % 2 == 1 {
                continue;
            }
            let sv = |i: u32| cm.cycle[((s + if ds { m - 1 - i } else { i }) % n) as usize];
            let tv = |j: u32| cm.cycle[((t + if dt { m - 1 - j } else { j }) % n) as usize];
            let mut p1: Vec<u32> = (a1..=a2).rev().map(sv).collect();
            p1.extend((b2..=b3).rev().map(tv));
            let mut p2 = vec![sv(a2)];
            p2.extend((b1..=b2).map(tv));
            let mut p3: Vec<u32> = (a2..=a3).map(sv).collect();
            p3.push(tv(b2));
            let h = HSubgraph {
                v: sv(a2),
                w: tv(b2),
                paths: [p1, p2, p3],
                chords: Some([(sv(a1), tv(b3)), (sv(a2), tv(b1)), (sv(a3), tv(b2))]),
                segment_pair: Some((s, t)),
                source: HSource::SegmentPair,
            };
            if verify_h(&cm.graph, &h, forbidden).all() {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

/// Local search: around each start vertex, close an even cycle through it
/// and attach an ear found by breadth-first search outside the cycle.
pub fn find_h_local(g: &Graph, forbidden: &[u32], starts: usize) -> Option<HSubgraph> {
    let n = g.n();
    let mut banned = vec![false; n];
    forbidden.iter().filter(|&&f| (f as usize) < n).for_each(|&f| banned[f as usize] = true);
    let radius = (2.0 * crate::math::ln(n.max(2) as f64) / core::f64::consts::LN_2) as u32 + 2;
    for s in (0..n as u32).filter(|&s| !banned[s as usize]).take(starts) {
        for cycle in cycles_through(g, s, &banned, radius, 6) {
            if let Some(h) = ear_theta(g, &cycle, &banned, radius, forbidden) {
                return Some(h);
            }
        }
    }
    None
}

// Even cycles through s found from non-tree edges joining different
// branches of a BFS tree rooted at s; shortest first.
fn cycles_through(g: &Graph, s: u32, banned: &[bool], radius: u32, limit: usize) -> Vec<Vec<u32>> {
    let mut parent: hashbrown::HashMap<u32, (u32, u32, u32)> = hashbrown::HashMap::new();
    parent.insert(s, (s, 0, u32::MAX));
    let mut order = vec![s];
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let (_, dx, bx) = parent[&x];
        if dx >= radius {
            continue;
        }
        for &y in g.neighbors(x) {
            if banned[y as usize] || parent.contains_key(&y) {
                continue;
            }
            let branch = if x == s { y } else { bx };
            parent.insert(y, (x, dx + 1, branch));
            order.push(y);
            queue.push_back(y);
        }
    }
    let mut cands = Vec::new();
    for &x in &order {
        let (px, dx, bx) = parent[&x];
        for &y in g.neighbors(x) {
            if x >= y || y == px || x == s || y == s {
                continue;
            }
            let Some(&(py, dy, by)) = parent.get(&y) else { continue };
            if py == x || bx == by {
                continue;
            }
            let len = dx + dy + 1;
            if len % 2 == 0 && len >= 12 {
                cands.push((len, x, y));
            }
        }
    }
    cands.sort_unstable();
    let walk = |mut z: u32| {
        let mut p = vec![z];
        while z != s {
            z = parent[&z].0;
            p.push(z);
        }
        p
    };
    cands
        .into_iter()
        .take(limit)
        .map(|(_, x, y)| {
            // s ... x then y ... back to s.
            let mut c = walk(x);
            c.reverse();
            let mut back = walk(y);
            back.pop();
            c.extend(back);
            c
        })
        .collect()
}

fn ear_theta(g: &Graph, cycle: &[u32], banned: &[bool], radius: u32, forbidden: &[u32]) -> Option<HSubgraph> {
    let len = cycle.len();
    let mut on_cycle: hashbrown::HashMap<u32, usize> = hashbrown::HashMap::new();
    for (i, &c) in cycle.iter().enumerate() {
        on_cycle.insert(c, i);
    }
    // Cycles with a chord cannot give an induced H.
    for (i, &c) in cycle.iter().enumerate() {
        for &u in g.neighbors(c) {
            if let Some(&j) = on_cycle.get(&u) {
                let d = i.abs_diff(j);
                if d != 1 && d != len - 1 {
                    return None;
                }
            }
        }
    }
    // Multi-source BFS outside the cycle, labelled by cycle index.
    let mut info: hashbrown::HashMap<u32, (u32, usize, u32)> = hashbrown::HashMap::new();
    let mut queue = VecDeque::new();
    for (i, &c) in cycle.iter().enumerate() {
        for &u in g.neighbors(c) {
            if on_cycle.contains_key(&u) || banned[u as usize] {
                continue;
            }
            if info.contains_key(&u) {
                // Two cycle vertices share a neighbor: ear of length 2, too short.
                continue;
            }
            info.insert(u, (0, i, c));
            queue.push_back(u);
        }
    }
    let mut order = Vec::new();
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let (dx, lx, _) = info[&x];
        if dx >= radius {
            continue;
        }
        for &y in g.neighbors(x) {
            if on_cycle.contains_key(&y) || banned[y as usize] || info.contains_key(&y) {
                continue;
            }
            info.insert(y, (dx + 1, lx, x));
            queue.push_back(y);
        }
    }
    let mut cands = Vec::new();
    for &x in &order {
        let (dx, lx, _) = info[&x];
        for &y in g.neighbors(x) {
            if x >= y {
                continue;
            }
            let Some(&(dy, ly, _)) = info.get(&y) else { continue };
            if lx == ly {
                continue;
            }
            let ear = dx + dy + 3;
            let arc = lx.abs_diff(ly);
            if ear % 2 == 0 && ear >= 6 && arc % 2 == 0 && arc >= 6 && len - arc >= 6 {
                cands.push((ear, x, y));
            }
        }
    }
    cands.sort_unstable();
    let up = |mut z: u32| {
        let mut p = vec![z];
        loop {
            let (d, _, par) = info[&z];
            if d == 0 {
                p.push(par);
                return p;
            }
            z = par;
            p.push(z);
        }
    };
    for (_, x, y) in cands.into_iter().take(40) {
        // Ear from the cycle vertex of x's tree to that of y's tree.
        let mut ear = up(x);
        ear.reverse();
        let mut tail = up(y);
        ear.append(&mut tail);
        let (i, j) = (info[&x].1, info[&y].1);
        let (v, w) = (cycle[i], cycle[j]);
        let (lo, hi) = (i.min(j), i.max(j));
        let mut arc1: Vec<u32> = cycle[lo..=hi].to_vec();
        let mut arc2: Vec<u32> = cycle[hi..].iter().chain(cycle[..=lo].iter()).copied().collect();
        arc2.reverse();
        if i > j {
            arc1.reverse();
            arc2.reverse();
        }
        let h = HSubgraph { v, w, paths: [arc1, arc2, ear], chords: None, segment_pair: None, source: HSource::LocalSearch };
        if verify_h(g, &h, forbidden).all() {
            return Some(h);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn close_and_short() {
        let c = Graph::cycle(12);
        assert!(close(&c, 0, 1));
        assert!(close(&c, 0, 2));
        assert!(!close(&c, 0, 3));
        assert!(short_path(&c, &[0, 1, 2, 3, 4]).unwrap());
        assert!(!short_path(&c, &[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(short_path(&c, &[0, 2]).is_err());
        let p = Graph::path(8);
        assert!(!short_path(&p, &[1, 2, 3, 4, 5, 6]).unwrap());
    }

    #[test]
    fn k4_segments() {
        let cm = crate::graph::gen_cubic_cycle_matching(4, crate::rng::RngSeed::new(1, 0)).unwrap();
        let cat = find_good_segments(&cm, 0.5).unwrap();
        assert_eq!(cat.m, 1);
        assert_eq!(cat.good_windows, 4);
    }
}
