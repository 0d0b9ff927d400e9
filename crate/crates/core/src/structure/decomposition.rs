//! The endgame level decomposition `U_0 ⊇ U_1 ⊇ ... ⊇ U_l` and its checker.
//!
//! Write `L_i = U_i \ U_{i+1}`. Every edge inside `U_0` gets one label:
//!
//! * `Internal` when both ends lie in the last level `U_l`,
//! * `Other` when both ends lie in the same `L_i`,
//! * `Heavy` or `Light` when the ends lie in different levels.
//!
//! The light edges together with the `Internal` edges form the graph `F`
//! that Alice's endgame strategy plays on.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::ln;
use crate::strategy::ParameterSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum EdgeLabel {
    Heavy,
    Light,
    Internal,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StopReason {
    /// The last level has at most `ln n` vertices.
    Small,
    /// The next level would have been empty; it is kept as an empty `U_l`.
    Empty,
    /// The next level would have equalled the current one.
    Stalled,
}

/// Per-property verdicts, recomputed from adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerifyReport {
    /// Levels are nested and labels cover exactly the edges inside `U_0`
    /// with kinds matching the level structure.
    pub well_formed: bool,
    /// Each vertex of `L_i` has at most one light neighbor in `U_{i+1}`.
    pub p1: bool,
    /// For `i >= 2`, every edge between `U_i` and `L_{i-1}` is light.
    pub p2: bool,
    /// Each vertex of `U_1` has at most `beta/10` heavy neighbors in `L_0`.
    pub p3: bool,
    /// `d_{U_i}(v) <= beta/3` for `v` in `L_i`.
    pub p4: bool,
    /// `G[U_l]` has cyclomatic number at most one.
    pub p5: bool,
    /// `F` has at most one independent cycle, and none when `U_l` is acyclic.
    pub forest: bool,
}

impl VerifyReport {
    pub fn all(&self) -> bool {
        self.well_formed && self.p1 && self.p2 && self.p3 && self.p4 && self.p5 && self.forest
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("well_formed", self.well_formed),
            ("p1", self.p1),
            ("p2", self.p2),
            ("p3", self.p3),
            ("p4", self.p4),
            ("p5", self.p5),
            ("forest", self.forest),
        ];
        checks.iter().filter(|c| !c.1).map(|c| c.0).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Decomposition {
    /// `U_0, U_1, ..., U_l`, each ascending.
    pub levels: Vec<Vec<u32>>,
    /// One label per edge `(u, v)`, `u < v`, inside `U_0`; sorted.
    pub labels: Vec<(u32, u32, EdgeLabel)>,
    pub u1a_prime: Vec<u32>,
    pub u1a: Vec<u32>,
    pub u1b: Vec<u32>,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub a1: Vec<u32>,
    pub u1c: Vec<u32>,
    /// `U'_{i+1}` for every level built past the first.
    pub deep_seeds: Vec<Vec<u32>>,
    /// Edges from `L_0` into `A_1`, whose label the construction had to choose.
    pub ambiguous_edges: usize,
    pub stop: StopReason,
    pub report: VerifyReport,
}

/// Which cap a failed construction ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapViolation {
    /// `r <= 5 |U_{1,a}|` while growing `U_{1,b}`.
    U1b,
    /// `s <= 3 |A_1|` while growing `U_1`.
    U1,
    /// `r <= 7 |U'_{i+1}|` while growing a deeper level.
    Deep(usize),
}

fn cap_error(c: CapViolation, got: usize, cap: usize) -> Error {
    let what: String = match c {
        CapViolation::U1b => "r <= 5|U_1a| (growing U_1b)".into(),
        CapViolation::U1 => "s <= 3|A_1| (growing U_1)".into(),
        CapViolation::Deep(i) => alloc::format!("r <= 7|U'_{i}| (growing U_{i})"),
    };
    Error::Decomposition(alloc::format!("cap {what} exceeded: {got} > {cap}"))
}

// Adds the lowest-id vertex of `within \ set` with at least `need` neighbors
// in the counted part until none is left. `counted` marks which members of
// the growing set contribute to the count. Returns the number added.
fn close_under(
    g: &Graph,
    within: &[bool],
    set: &mut [bool],
    counted: &mut [bool],
    need: usize,
    cap: usize,
) -> core::result::Result<usize, usize> {
    let n = g.n();
    let mut cnt = vec![0usize; n];
    let mut ready = BTreeSet::new();
    for v in 0..n as u32 {
        if within[v as usize] && !set[v as usize] {
            cnt[v as usize] = g.neighbors(v).iter().filter(|&&u| counted[u as usize]).count();
            if cnt[v as usize] >= need {
                ready.insert(v);
            }
        }
    }
    let mut added = 0;
    while let Some(x) = ready.pop_first() {
        added += 1;
        if added > cap {
            return Err(added);
        }
        set[x as usize] = true;
        counted[x as usize] = true;
        for &u in g.neighbors(x) {
            let ui = u as usize;
            if within[ui] && !set[ui] {
                cnt[ui] += 1;
                if cnt[ui] == need {
                    ready.insert(u);
                }
            }
        }
    }
    Ok(added)
}

fn members(mask: &[bool]) -> Vec<u32> {
    (0..mask.len() as u32).filter(|&v| mask[v as usize]).collect()
}

fn mask_of(n: usize, set: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n];
    set.iter().for_each(|&v| m[v as usize] = true);
    m
}

/// Builds the decomposition of the endgame set `u0` and attaches the result
/// of [`verify_decomposition`].
///
/// Fails with [`Error::Decomposition`] naming the cap when a growth step runs
/// past its size cap.
pub fn build_decomposition(g: &Graph, u0: &[u32], ps: &ParameterSet) -> Result<Decomposition> {
    let n = g.n();
    let mut u0v: Vec<u32> = u0.to_vec();
    u0v.sort_unstable();
    u0v.dedup();
    if u0v.last().is_some_and(|&v| v as usize >= n) {
        return Err(Error::param("endgame set has out-of-range vertices"));
    }
    let small = ln(n.max(1) as f64);
    let beta = ps.beta;
    let mut dec = Decomposition {
        levels: vec![u0v.clone()],
        labels: Vec::new(),
        u1a_prime: Vec::new(),
        u1a: Vec::new(),
        u1b: Vec::new(),
        a: Vec::new(),
        b: Vec::new(),
        a1: Vec::new(),
        u1c: Vec::new(),
        deep_seeds: Vec::new(),
        ambiguous_edges: 0,
        stop: StopReason::Small,
        report: VerifyReport::default(),
    };
    if (u0v.len() as f64) <= small {
        return Ok(finish(g, dec, ps));
    }
    let in0 = mask_of(n, &u0v);

    // Level 1: top-degree seed, closure at threshold 3, then the repair set A_1.
    let d0: Vec<usize> = (0..n as u32)
        .map(|v| if in0[v as usize] { g.induced_degree_mask(&in0, v) } else { 0 })
        .collect();
    dec.u1a_prime = u0v.iter().copied().filter(|&v| d0[v as usize] as f64 >= ps.delta1()).collect();
    let quota = ((2.0 * ps.tau1() * ps.gamma * n as f64) as usize)
        .max(dec.u1a_prime.len())
        .min(u0v.len());
    let mut by_degree = u0v.clone();
    by_degree.sort_by_key(|&v| (core::cmp::Reverse(d0[v as usize]), v));
    let mut u1a = by_degree[..quota].to_vec();
    u1a.sort_unstable();
    dec.u1a = u1a;

    let mut in1b = mask_of(n, &dec.u1a);
    let mut counted = in1b.clone();
    close_under(g, &in0, &mut in1b, &mut counted, 3, 5 * dec.u1a.len())
        .map_err(|r| cap_error(CapViolation::U1b, r, 5 * dec.u1a.len()))?;
    dec.u1b = members(&in1b);

    let nb1b = |v: u32| g.induced_degree_mask(&in1b, v);
    dec.a = u0v.iter().copied().filter(|&v| !in1b[v as usize] && nb1b(v) == 2).collect();
    let in_a = mask_of(n, &dec.a);
    dec.b = dec
        .u1b
        .iter()
        .copied()
        .filter(|&v| g.induced_degree_mask(&in_a, v) as f64 > beta / 20.0)
        .collect();
    let mut in_a1 = vec![false; n];
    for &x in &dec.b {
        for &u in g.neighbors(x) {
            if in0[u as usize] {
                in_a1[u as usize] = true;
            }
        }
    }
    dec.a1 = members(&in_a1);
    let mut in1 = in1b.clone();
    let mut fresh = vec![false; n];
    for &v in &dec.a1 {
        in1[v as usize] = true;
        if !in1b[v as usize] {
            fresh[v as usize] = true;
        }
    }
    dec.u1c = members(&in1);
    let cap = 3 * dec.a1.len();
    close_under(g, &in0, &mut in1, &mut fresh, 2, cap).map_err(|s| cap_error(CapViolation::U1, s, cap))?;
    let u1 = members(&in1);

    if u1.len() == u0v.len() {
        dec.stop = StopReason::Stalled;
        return Ok(finish(g, dec, ps));
    }
    let mut current = in1;
    let mut size = u1.len();
    dec.levels.push(u1);
    if size == 0 {
        dec.stop = StopReason::Empty;
        return Ok(finish(g, dec, ps));
    }

    // Deeper levels: high-degree seed plus closure at threshold 2.
    loop {
        if size as f64 <= small {
            dec.stop = StopReason::Small;
            break;
        }
        let i = dec.levels.len() - 1;
        let thr = if i == 1 { ps.delta2() } else { ps.delta_deep() };
        let seed: Vec<u32> = (0..n as u32)
            .filter(|&v| current[v as usize] && g.induced_degree_mask(&current, v) as f64 >= thr)
            .collect();
        dec.deep_seeds.push(seed.clone());
        if seed.is_empty() {
            dec.levels.push(Vec::new());
            dec.stop = StopReason::Empty;
            break;
        }
        let mut next = mask_of(n, &seed);
        let mut counted = next.clone();
        let cap = 7 * seed.len();
        close_under(g, &current, &mut next, &mut counted, 2, cap)
            .map_err(|r| cap_error(CapViolation::Deep(i + 1), r, cap))?;
        let members_next = members(&next);
        if members_next.len() == size {
            dec.stop = StopReason::Stalled;
            break;
        }
        size = members_next.len();
        dec.levels.push(members_next);
        current = next;
    }
    Ok(finish(g, dec, ps))
}

/// Level index of each vertex (`u32::MAX` outside `U_0`), assuming nesting.
pub fn level_index(n: usize, levels: &[Vec<u32>]) -> Vec<u32> {
    let mut lvl = vec![u32::MAX; n];
    for (i, set) in levels.iter().enumerate() {
        for &v in set {
            if (v as usize) < n {
                lvl[v as usize] = i as u32;
            }
        }
    }
    lvl
}

fn finish(g: &Graph, mut dec: Decomposition, ps: &ParameterSet) -> Decomposition {
    let n = g.n();
    let lvl = level_index(n, &dec.levels);
    let top = (dec.levels.len() - 1) as u32;
    let in1b = mask_of(n, &dec.u1b);
    let in_a1 = mask_of(n, &dec.a1);
    let in1 = if dec.levels.len() > 1 { mask_of(n, &dec.levels[1]) } else { vec![false; n] };
    let mut labels = Vec::new();
    let mut ambiguous = 0;
    for (u, v) in g.edges() {
        let (lu, lv) = (lvl[u as usize], lvl[v as usize]);
        if lu == u32::MAX || lv == u32::MAX {
            continue;
        }
        let label = if lu == top && lv == top {
            EdgeLabel::Internal
        } else if lu == lv {
            EdgeLabel::Other
        } else if lu.min(lv) > 0 {
            EdgeLabel::Light
        } else {
            // An L_0 vertex x has at most two neighbors in U_1b and at most one
            // in U_1 \ U_1b. A lone U_1 edge is light; otherwise only the
            // edge into U_1 \ U_1b is.
            let (x, y) = if lu == 0 { (u, v) } else { (v, u) };
            if in_a1[y as usize] {
                ambiguous += 1;
            }
            if g.induced_degree_mask(&in1, x) == 1 || !in1b[y as usize] {
                EdgeLabel::Light
            } else {
                EdgeLabel::Heavy
            }
        };
        labels.push((u, v, label));
    }
    dec.labels = labels;
    dec.ambiguous_edges = ambiguous;
    dec.report = verify_decomposition(g, &dec, ps);
    dec
}

impl Decomposition {
    /// Index `l` of the last level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn label(&self, u: u32, v: u32) -> Option<EdgeLabel> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.labels
            .binary_search_by(|&(x, y, _)| (x, y).cmp(&(a, b)))
            .ok()
            .map(|i| self.labels[i].2)
    }

    /// Edges of `F`: the light edges plus the edges inside `U_l`.
    pub fn forest_edges(&self) -> Vec<(u32, u32)> {
        self.labels
            .iter()
            .filter(|l| matches!(l.2, EdgeLabel::Light | EdgeLabel::Internal))
            .map(|l| (l.0, l.1))
            .collect()
    }
}

// Cyclomatic number m - n + c of the graph formed by `edges`.
fn cyclomatic(n: usize, edges: &[(u32, u32)]) -> usize {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    let mut extra = 0;
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            extra += 1;
        } else {
            parent[a as usize] = b;
        }
    }
    extra
}

/// Recomputes every property of `dec` from the adjacency of `g`.
pub fn verify_decomposition(g: &Graph, dec: &Decomposition, ps: &ParameterSet) -> VerifyReport {
    let n = g.n();
    let mut r = VerifyReport { well_formed: true, p1: true, p2: true, p3: true, p4: true, p5: true, forest: true };
    if dec.levels.is_empty() {
        r.well_formed = false;
        return r;
    }
    let masks: Vec<Vec<bool>> = dec
        .levels
        .iter()
        .map(|set| {
            let mut m = vec![false; n];
            for &v in set {
                if (v as usize) < n {
                    m[v as usize] = true;
                } else {
                    r.well_formed = false;
                }
            }
            m
        })
        .collect();
    for w in dec.levels.windows(2) {
        if w[1].iter().any(|v| w[0].binary_search(v).is_err()) {
            r.well_formed = false;
        }
    }
    for set in &dec.levels {
        if set.windows(2).any(|w| w[0] >= w[1]) {
            r.well_formed = false;
        }
    }
    let lvl = level_index(n, &dec.levels);
    let top = (dec.levels.len() - 1) as u32;
    let in0 = &masks[0];

    // Labels must match the edges inside U_0 one for one.
    let mut expected = g.edges().filter(|&(u, v)| in0[u as usize] && in0[v as usize]);
    let mut given = dec.labels.iter();
    loop {
        match (expected.next(), given.next()) {
            (None, None) => break,
            (Some((u, v)), Some(&(a, b, label))) if (u, v) == (a, b) => {
                let (lu, lv) = (lvl[u as usize], lvl[v as usize]);
                let ok = match label {
                    EdgeLabel::Internal => lu == top && lv == top,
                    EdgeLabel::Other => lu == lv && lu != top,
                    EdgeLabel::Heavy | EdgeLabel::Light => lu != lv,
                };
                if !ok {
                    r.well_formed = false;
                }
            }
            _ => {
                r.well_formed = false;
                break;
            }
        }
    }

    let label_of = |u: u32, v: u32| dec.label(u, v);
    for v in 0..n as u32 {
        let lv = lvl[v as usize];
        if lv == u32::MAX {
            continue;
        }
        // P1 and P4 concern v in L_i with i < l.
        let mut light_up = 0;
        let mut deg_here = 0;
        let mut heavy_down = 0;
        for &u in g.neighbors(v) {
            let lu = lvl[u as usize];
            if lu == u32::MAX {
                continue;
            }
            if lu >= lv {
                deg_here += 1;
            }
            let label = label_of(u, v);
            if lu > lv && label == Some(EdgeLabel::Light) {
                light_up += 1;
            }
            if lv >= 1 && lu == 0 && label == Some(EdgeLabel::Heavy) {
                heavy_down += 1;
            }
            // P2: v in U_i, u in L_{i-1}, i >= 2.
            if lv > lu && lu >= 1 && label != Some(EdgeLabel::Light) {
                r.p2 = false;
            }
        }
        if lv < top {
            if light_up > 1 {
                r.p1 = false;
            }
            if deg_here as f64 > ps.beta / 3.0 {
                r.p4 = false;
            }
        }
        if lv >= 1 && heavy_down as f64 > ps.beta / 10.0 {
            r.p3 = false;
        }
    }

    let top_mask = &masks[top as usize];
    let top_edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| top_mask[u as usize] && top_mask[v as usize])
        .collect();
    let top_cycles = cyclomatic(n, &top_edges);
    r.p5 = top_cycles <= 1;
    let f_edges: Vec<(u32, u32)> = dec
        .labels
        .iter()
        .filter(|l| matches!(l.2, EdgeLabel::Light | EdgeLabel::Internal))
        .filter(|l| g.has_edge(l.0, l.1))
        .map(|l| (l.0, l.1))
        .collect();
    let f_cycles = cyclomatic(n, &f_edges);
    r.forest = f_cycles <= top_cycles.min(1);
    r
}

/// Fault kinds for mutation testing of [`verify_decomposition`]. Each one,
/// when applicable, yields a decomposition that violates some checked
/// property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Remove one label.
    DropLabel,
    /// Give one label a kind that contradicts the levels.
    WrongKind,
    /// Label a pair that is not an edge inside `U_0`.
    ForeignLabel,
    /// Relabel a heavy edge light at a vertex that already has a light edge up.
    HeavyToLight,
    /// Move a vertex with at least two neighbors in its own level down one
    /// level, labelling its new upward edges light.
    Demote,
    /// Drop a vertex of `U_{i+1}` from `U_i` only.
    BreakNesting,
}

impl Fault {
    pub const ALL: [Fault; 6] =
        [Fault::DropLabel, Fault::WrongKind, Fault::ForeignLabel, Fault::HeavyToLight, Fault::Demote, Fault::BreakNesting];
}

impl Decomposition {
    /// Applies `fault` at a random place, or returns `None` if this
    /// decomposition offers no place for it.
    pub fn inject_fault<R: Rng + ?Sized>(&self, g: &Graph, fault: Fault, rng: &mut R) -> Option<Decomposition> {
        let mut d = self.clone();
        let n = g.n();
        match fault {
            Fault::DropLabel => {
                if d.labels.is_empty() {
                    return None;
                }
                let i = rng.gen_range(0..d.labels.len());
                d.labels.remove(i);
            }
            Fault::WrongKind => {
                if d.labels.is_empty() {
                    return None;
                }
                let i = rng.gen_range(0..d.labels.len());
                d.labels[i].2 = match d.labels[i].2 {
                    EdgeLabel::Heavy | EdgeLabel::Light | EdgeLabel::Internal => EdgeLabel::Other,
                    EdgeLabel::Other => EdgeLabel::Light,
                };
            }
            Fault::ForeignLabel => {
                let u0 = &d.levels[0];
                let mut pairs = Vec::new();
                for _ in 0..64 {
                    let (a, b) = if u0.len() >= 2 && rng.gen_bool(0.5) {
                        (*u0.choose(rng)?, *u0.choose(rng)?)
                    } else {
                        (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32))
                    };
                    let (a, b) = (a.min(b), a.max(b));
                    if a != b && d.label(a, b).is_none() {
                        pairs.push((a, b));
                        break;
                    }
                }
                let (a, b) = *pairs.first()?;
                let pos = d.labels.partition_point(|l| (l.0, l.1) < (a, b));
                d.labels.insert(pos, (a, b, EdgeLabel::Light));
            }
            Fault::HeavyToLight => {
                let lvl = level_index(n, &d.levels);
                let candidates: Vec<usize> = (0..d.labels.len())
                    .filter(|&i| {
                        let (u, v, l) = d.labels[i];
                        if l != EdgeLabel::Heavy {
                            return false;
                        }
                        let x = if lvl[u as usize] < lvl[v as usize] { u } else { v };
                        g.neighbors(x).iter().any(|&y| {
                            lvl[y as usize] != u32::MAX
                                && lvl[y as usize] > lvl[x as usize]
                                && d.label(x, y) == Some(EdgeLabel::Light)
                        })
                    })
                    .collect();
                let &i = candidates.choose(rng)?;
                d.labels[i].2 = EdgeLabel::Light;
            }
            Fault::Demote => {
                let lvl = level_index(n, &d.levels);
                let candidates: Vec<u32> = (0..n as u32)
                    .filter(|&v| {
                        let l = lvl[v as usize];
                        l != u32::MAX
                            && l >= 1
                            && g.neighbors(v).iter().filter(|&&u| lvl[u as usize] != u32::MAX && lvl[u as usize] >= l).count() >= 2
                    })
                    .collect();
                let &v = candidates.choose(rng)?;
                let l = lvl[v as usize] as usize;
                let pos = d.levels[l].binary_search(&v).ok()?;
                d.levels[l].remove(pos);
                let new_lvl = level_index(n, &d.levels);
                let top = (d.levels.len() - 1) as u32;
                for lab in d.labels.iter_mut() {
                    if lab.0 != v && lab.1 != v {
                        continue;
                    }
                    let (lu, lw) = (new_lvl[lab.0 as usize], new_lvl[lab.1 as usize]);
                    lab.2 = if lu == top && lw == top {
                        EdgeLabel::Internal
                    } else if lu == lw {
                        EdgeLabel::Other
                    } else {
                        EdgeLabel::Light
                    };
                }
            }
            Fault::BreakNesting => {
                let i = (1..d.levels.len()).rev().find(|&i| !d.levels[i].is_empty())?;
                let v = *d.levels[i].choose(rng)?;
                let pos = d.levels[i - 1].binary_search(&v).ok()?;
                d.levels[i - 1].remove(pos);
            }
        }
        Some(d)
    }
}
