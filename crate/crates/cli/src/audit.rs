//! Structural audits over sampled graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use colorgame_core::strategy::RandomPlayer;
use colorgame_core::structure::availability::{availability_deficit, edge_span_check};
use colorgame_core::structure::cubic::{close_ball, find_good_segments, find_h, find_h_segments};
use colorgame_core::structure::density::{degree_subset_check, density_scan, sparse_sigma_limit, Certainty};
use colorgame_core::{GameState, ParameterSet, Player, RngSeed, Strategy};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::harness::{load_fixed, sample_graph, trial_stream};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DensityAudit {
    pub theta: f64,
    pub sigma: f64,
    /// Graphs with a set `S`, `|S| <= sigma n`, `e(S) >= theta |S|`.
    pub witnesses: u32,
    /// Graphs where no witness was found but none was ruled out either.
    pub inconclusive: u32,
    pub mean_max_density: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ColoringAudit {
    pub k: u32,
    pub beta: f64,
    pub delta: f64,
    pub tau: f64,
    /// Moves of random play before the coloring is inspected.
    pub moves: usize,
    /// Colorings with some uncolored vertex below `beta / 2` available colors.
    pub deficit_colorings: u32,
    pub deficit_vertices: u64,
    /// Colorings whose uncolored set has at least `tau |U|` vertices of
    /// inner degree `>= delta`.
    pub degree_subset_hits: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SpanAudit {
    pub s: usize,
    pub sets_per_graph: usize,
    pub violations: u32,
    pub max_edges: usize,
    pub bound: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SegmentAudit {
    pub c: f64,
    pub m: usize,
    pub mean_x: f64,
    /// `2 m n / (n - 1)`.
    pub expected_x: f64,
    pub mean_good_windows: f64,
    /// `(1 - c^2) n`.
    pub good_target: f64,
    pub mean_segments: f64,
    pub h_from_segments: u32,
    pub h_found: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub config: ExperimentConfig,
    pub samples: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParameterSet>,
    pub density: DensityAudit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringAudit>,
    pub edge_span: SpanAudit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub segments: Option<SegmentAudit>,
    pub errors: Vec<String>,
}

#[derive(Default)]
struct One {
    witness: bool,
    inconclusive: bool,
    max_density: f64,
    deficit: Option<(bool, u64, bool, usize)>,
    span: Option<(bool, usize, f64)>,
    seg: Option<(usize, usize, usize, usize, bool, bool)>,
}

pub fn audit(cfg: &ExperimentConfig) -> CliResult<AuditReport> {
    if cfg.trials == 0 {
        return Err(CliError::config("trials must be positive"));
    }
    let fixed = load_fixed(&cfg.model)?;
    let n = cfg.model.n;
    let d = cfg.model.d;
    let params = ParameterSet::derive(n.max(1), d, cfg.alpha).ok();
    let theta = cfg.theta.or(params.map(|p| p.theta_lower)).unwrap_or(1.5);
    let sigma = match cfg.sigma {
        Some(s) => s,
        None => sparse_sigma_limit(d.max(1.0), theta).map(|s| s.clamp(f64::MIN_POSITIVE, 1.0)).unwrap_or(1.0),
    };
    let span_s = ((n as f64 / d.max(1.0)).ceil() as usize).clamp(1, n.max(1));
    let span_sets = 20;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))?;
    let results: Vec<Result<One, String>> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let base = RngSeed::new(cfg.seed, trial_stream(0, t));
                audit_one(cfg, fixed.as_ref(), base, params, theta, sigma, span_s, span_sets).map_err(|e| e.to_string())
            })
            .collect()
    });
    let mut density = DensityAudit { theta, sigma, ..Default::default() };
    let mut coloring = params.map(|p| ColoringAudit {
        k: p.k,
        beta: p.beta,
        delta: p.delta1(),
        tau: p.tau1(),
        moves: n / 2,
        ..Default::default()
    });
    let mut edge_span = SpanAudit { s: span_s, sets_per_graph: span_sets, ..Default::default() };
    let mut seg_sum = (0usize, 0usize, 0usize, 0usize, 0u32, 0u32);
    let mut seg_seen = 0u32;
    let mut errors = Vec::new();
    let mut ok = 0u32;
    for (t, r) in results.into_iter().enumerate() {
        let one = match r {
            Ok(o) => o,
            Err(e) => {
                errors.push(format!("sample {t}: {e}"));
                continue;
            }
        };
        ok += 1;
        density.witnesses += one.witness as u32;
        density.inconclusive += one.inconclusive as u32;
        density.mean_max_density += one.max_density;
        if let (Some(c), Some((def, verts, hit, _))) = (coloring.as_mut(), one.deficit) {
            c.deficit_colorings += def as u32;
            c.deficit_vertices += verts;
            c.degree_subset_hits += hit as u32;
        }
        if let Some((viol, edges, bound)) = one.span {
            edge_span.violations += viol as u32;
            edge_span.max_edges = edge_span.max_edges.max(edges);
            edge_span.bound = bound;
        }
        if let Some((m, x, good, segs, hs, h)) = one.seg {
            seg_seen += 1;
            seg_sum.0 = m;
            seg_sum.1 += x;
            seg_sum.2 += good;
            seg_sum.3 += segs;
            seg_sum.4 += hs as u32;
            seg_sum.5 += h as u32;
        }
    }
    if ok > 0 {
        density.mean_max_density /= ok as f64;
    }
    let segments = (seg_seen > 0).then(|| {
        let s = seg_seen as f64;
        let nf = n as f64;
        SegmentAudit {
            c: cfg.c,
            m: seg_sum.0,
            mean_x: seg_sum.1 as f64 / s,
            expected_x: 2.0 * seg_sum.0 as f64 * nf / (nf - 1.0),
            mean_good_windows: seg_sum.2 as f64 / s,
            good_target: (1.0 - cfg.c * cfg.c) * nf,
            mean_segments: seg_sum.3 as f64 / s,
            h_from_segments: seg_sum.4,
            h_found: seg_sum.5,
        }
    });
    Ok(AuditReport { config: cfg.clone(), samples: ok, params, density, coloring, edge_span, segments, errors })
}

#[allow(clippy::too_many_arguments)]
fn audit_one(
    cfg: &ExperimentConfig,
    fixed: Option<&crate::graph_io::GraphFile>,
    base: RngSeed,
    params: Option<ParameterSet>,
    theta: f64,
    sigma: f64,
    span_s: usize,
    span_sets: usize,
) -> CliResult<One> {
    let sample = sample_graph(&cfg.model, fixed, base.derive(1))?;
    let g = &sample.graph;
    let mut one = One::default();
    let scan = density_scan(g, sigma, theta)?;
    one.witness = scan.witness.is_some();
    one.inconclusive = scan.witness.is_none() && scan.certainty == Certainty::Heuristic;
    one.max_density = scan.max_density;
    if let Some(ps) = params {
        let mut a = RandomPlayer::new(base.derive(2));
        let mut b = RandomPlayer::new(base.derive(3));
        let mut st = GameState::new(g, ps.k, Player::Alice)?;
        for _ in 0..g.n() / 2 {
            if st.detect_dead_vertex().is_some() {
                break;
            }
            let m = match st.to_move() {
                Player::Alice => a.choose(&st),
                Player::Bob => b.choose(&st),
            };
            let Some(m) = m else { break };
            st.apply_move(m).map_err(colorgame_core::Error::from)?;
        }
        let classes: Vec<Vec<u32>> = (1..=ps.k).map(|c| st.class(c).to_vec()).collect();
        let deficit = availability_deficit(g, &classes, ps.beta)?;
        let u: Vec<u32> = st.uncolored().collect();
        let sub = degree_subset_check(g, &u, ps.delta1(), ps.tau1())?;
        one.deficit = Some((!deficit.is_empty(), deficit.len() as u64, sub.verdict && !u.is_empty(), st.num_colored()));
    }
    if g.n() > 0 {
        let p = (cfg.model.d / g.n() as f64).min(1.0);
        let span = edge_span_check(g, span_s.min(g.n()), span_sets, p, base.derive(4))?;
        one.span = Some((span.violated, span.max_edges, span.bound));
    }
    if let Some(cm) = &sample.cubic {
        let cat = find_good_segments(cm, cfg.c)?;
        let forbidden = close_ball(g, 0);
        let hs = find_h_segments(cm, cfg.c, &forbidden)?.is_some();
        let h = hs || find_h(cm, cfg.c, &forbidden)?.is_some();
        one.seg = Some((cat.m, cat.x, cat.good_windows, cat.segments.len(), hs, h));
    }
    Ok(one)
}
