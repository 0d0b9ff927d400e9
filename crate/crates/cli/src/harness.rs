//! Seeded Monte Carlo trials, win-rate tables and color-count bracketing.
//!
//! Trial `t` at color count `k` draws everything from the master seed on
//! stream `k << 32 | t`: the graph from sub-seed 1, Alice from 2 and Bob from
//! 3. Results are collected in trial order, so output does not depend on the
//! number of workers.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use colorgame_core::graph::{gen_cubic_cycle_matching, gen_gnp, gen_random_tree, gen_regular_config};
use colorgame_core::{play_game, CubicModelGraph, GameState, Graph, Outcome, Player, Reason, RngSeed};

use crate::config::{ExperimentConfig, ModelKind, ModelSpec};
use crate::error::{CliError, CliResult};
use crate::graph_io::{read_graph, GraphFile};
use crate::players::{build, Table};

/// One refereed game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u32,
    pub stream: u64,
    pub n: usize,
    pub k: u32,
    pub winner: Option<Player>,
    pub reason: Option<String>,
    pub moves: u32,
    pub phase_switch_move: Option<u32>,
    pub h_found: Option<bool>,
    pub decomposition_ok: Option<bool>,
    pub decomposition_failure: Option<String>,
    pub fell_back: bool,
    pub max_colored_f_neighbors: Option<u32>,
    pub f_neighbor_limit: Option<u32>,
    pub invariant_violations: u32,
    pub phase2_moves: u32,
    pub plan_broken: bool,
    pub replay_ok: bool,
    pub error: Option<String>,
    pub wall_ms: Option<f64>,
}

impl TrialRecord {
    fn empty(trial: u32, stream: u64, k: u32) -> Self {
        TrialRecord {
            trial,
            stream,
            n: 0,
            k,
            winner: None,
            reason: None,
            moves: 0,
            phase_switch_move: None,
            h_found: None,
            decomposition_ok: None,
            decomposition_failure: None,
            fell_back: false,
            max_colored_f_neighbors: None,
            f_neighbor_limit: None,
            invariant_violations: 0,
            phase2_moves: 0,
            plan_broken: false,
            replay_ok: false,
            error: None,
            wall_ms: None,
        }
    }

    pub const CSV_HEADER: &'static str = "trial,stream,n,k,winner,reason,moves,phase_switch_move,h_found,\
decomposition_ok,fell_back,max_colored_f_neighbors,invariant_violations,phase2_moves,plan_broken,replay_ok,error,wall_ms";

    pub fn csv_line(&self) -> String {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map(T::to_string).unwrap_or_default()
        }
        let error = self.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.trial,
            self.stream,
            self.n,
            self.k,
            opt(&self.winner),
            opt(&self.reason),
            self.moves,
            opt(&self.phase_switch_move),
            opt(&self.h_found),
            opt(&self.decomposition_ok),
            self.fell_back,
            opt(&self.max_colored_f_neighbors),
            self.invariant_violations,
            self.phase2_moves,
            self.plan_broken,
            self.replay_ok,
            error,
            opt(&self.wall_ms),
        )
    }
}

pub fn reason_str(r: &Reason) -> String {
    match r {
        Reason::AllColored => "all_colored".into(),
        Reason::DeadVertex(v) => format!("dead_vertex:{v}"),
        Reason::IllegalMove(p) => format!("illegal_move:{p}"),
    }
}

/// Whether replaying the transcript reaches a position that ends the game
/// for the recorded reason.
pub fn replay_matches(g: &Graph, k: u32, first: Player, out: &Outcome) -> bool {
    let Ok(st) = GameState::replay(g, k, first, &out.transcript) else {
        return false;
    };
    match out.reason {
        Reason::AllColored => st.all_colored() && out.winner == Player::Alice,
        Reason::DeadVertex(v) => {
            !st.is_colored(v) && st.avail_count(v) == 0 && out.winner == Player::Bob
        }
        Reason::IllegalMove(p) => st.to_move() == p && out.winner == p.other(),
    }
}

/// A sampled graph with its cubic model when the model has one.
pub struct Sample {
    pub graph: Graph,
    pub cubic: Option<CubicModelGraph>,
}

/// Loads the fixed graph of a `file` model.
pub fn load_fixed(model: &ModelSpec) -> CliResult<Option<GraphFile>> {
    match (&model.kind, &model.graph) {
        (ModelKind::File, Some(path)) => Ok(Some(read_graph(path)?)),
        _ => Ok(None),
    }
}

pub fn sample_graph(model: &ModelSpec, fixed: Option<&GraphFile>, seed: RngSeed) -> CliResult<Sample> {
    let (graph, cubic) = match model.kind {
        ModelKind::Gnp => (gen_gnp(model.n, (model.d / model.n as f64).min(1.0), seed)?, None),
        ModelKind::Regular => {
            if model.d.fract() != 0.0 || model.d < 0.0 {
                return Err(CliError::config(format!("regular model needs an integer d, got {}", model.d)));
            }
            (gen_regular_config(model.n, model.d as usize, seed)?, None)
        }
        ModelKind::Cubic => {
            let cm = gen_cubic_cycle_matching(model.n, seed)?;
            (cm.graph.clone(), Some(cm))
        }
        ModelKind::Tree => (gen_random_tree(model.n, seed)?, None),
        ModelKind::File => {
            let f = fixed.ok_or_else(|| CliError::config("model = file needs `graph`"))?;
            (f.graph.clone(), f.cubic.clone())
        }
    };
    if model.plant == 0 {
        return Ok(Sample { graph, cubic });
    }
    if model.plant > graph.n() {
        return Err(CliError::config(format!("cannot plant {} vertices in {}", model.plant, graph.n())));
    }
    let mut edges: Vec<(u32, u32)> = graph.edges().collect();
    for u in 0..model.plant as u32 {
        for v in u + 1..model.plant as u32 {
            if !graph.has_edge(u, v) {
                edges.push((u, v));
            }
        }
    }
    Ok(Sample { graph: Graph::from_edges(graph.n(), &edges)?, cubic: None })
}

pub fn trial_stream(k: u32, trial: u32) -> u64 {
    (k as u64) << 32 | trial as u64
}

pub fn run_trial(cfg: &ExperimentConfig, fixed: Option<&GraphFile>, k: u32, trial: u32) -> TrialRecord {
    let stream = trial_stream(k, trial);
    let start = cfg.timing.then(Instant::now);
    let mut rec = TrialRecord::empty(trial, stream, k);
    if let Err(e) = play_trial(cfg, fixed, k, RngSeed::new(cfg.seed, stream), &mut rec) {
        rec.error = Some(e.to_string());
    }
    rec.wall_ms = start.map(|s| s.elapsed().as_secs_f64() * 1e3);
    rec
}

fn play_trial(cfg: &ExperimentConfig, fixed: Option<&GraphFile>, k: u32, base: RngSeed, rec: &mut TrialRecord) -> CliResult<()> {
    let sample = sample_graph(&cfg.model, fixed, base.derive(1))?;
    let g = &sample.graph;
    rec.n = g.n();
    let d = match cfg.model.kind {
        ModelKind::Gnp => cfg.model.d,
        _ if g.n() > 0 => 2.0 * g.m() as f64 / g.n() as f64,
        _ => 0.0,
    };
    let table = Table { graph: g, cubic: sample.cubic.as_ref(), k, first: cfg.first, d, alpha: cfg.alpha, c: cfg.c };
    let mut alice = build(&cfg.alice, Player::Alice, &table, base.derive(2))?;
    let mut bob = build(&cfg.bob, Player::Bob, &table, base.derive(3))?;
    let out = play_game(g, k, alice.as_mut(), bob.as_mut(), cfg.first)?;
    rec.winner = Some(out.winner);
    rec.reason = Some(reason_str(&out.reason));
    rec.moves = out.transcript.len() as u32;
    rec.replay_ok = replay_matches(g, k, cfg.first, &out);
    let (ra, rb) = (alice.report(), bob.report());
    rec.phase_switch_move = ra.phase_switch_move;
    rec.decomposition_ok = ra.decomposition_ok;
    rec.decomposition_failure = ra.decomposition_failure;
    rec.fell_back = ra.fell_back;
    rec.max_colored_f_neighbors = ra.max_colored_f_neighbors;
    rec.f_neighbor_limit = ra.f_neighbor_limit;
    rec.invariant_violations = ra.invariant_violations;
    rec.phase2_moves = ra.phase2_moves;
    rec.h_found = rb.h_found;
    rec.plan_broken = rb.plan_broken;
    Ok(())
}

fn pool(workers: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::config(format!("thread pool: {e}")))
}

/// Every trial of every color count, ordered by `(k, trial)`.
pub fn run_all(cfg: &ExperimentConfig) -> CliResult<Vec<TrialRecord>> {
    cfg.validate()?;
    let fixed = load_fixed(&cfg.model)?;
    let jobs: Vec<(u32, u32)> = (cfg.k_min..=cfg.k_max).flat_map(|k| (0..cfg.trials).map(move |t| (k, t))).collect();
    let pool = pool(cfg.workers)?;
    Ok(pool.install(|| jobs.par_iter().map(|&(k, t)| run_trial(cfg, fixed.as_ref(), k, t)).collect()))
}

/// Wilson score interval for `wins` successes in `n` trials.
pub fn wilson(wins: u32, n: u32, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = wins as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub k: u32,
    pub trials: u32,
    /// Trials that produced a game (the rest hit an error).
    pub completed: u32,
    pub errors: u32,
    pub alice_wins: u32,
    pub bob_wins: u32,
    pub alice_freq: f64,
    pub alice_ci: [f64; 2],
    pub bob_freq: f64,
    pub bob_ci: [f64; 2],
    pub phase_switches: u32,
    pub fell_back: u32,
    pub phase2_moves: u64,
    pub invariant_violations: u32,
    pub h_found: u32,
    pub plan_broken: u32,
    pub replay_failures: u32,
}

impl RateRow {
    pub const CSV_HEADER: &'static str = "k,trials,completed,errors,alice_wins,bob_wins,alice_freq,alice_ci_low,\
alice_ci_high,bob_freq,phase_switches,fell_back,phase2_moves,invariant_violations,h_found,plan_broken,replay_failures";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.k,
            self.trials,
            self.completed,
            self.errors,
            self.alice_wins,
            self.bob_wins,
            self.alice_freq,
            self.alice_ci[0],
            self.alice_ci[1],
            self.bob_freq,
            self.phase_switches,
            self.fell_back,
            self.phase2_moves,
            self.invariant_violations,
            self.h_found,
            self.plan_broken,
            self.replay_failures,
        )
    }
}

pub fn summarize(k: u32, records: &[TrialRecord]) -> RateRow {
    let done: Vec<&TrialRecord> = records.iter().filter(|r| r.winner.is_some()).collect();
    let completed = done.len() as u32;
    let alice_wins = done.iter().filter(|r| r.winner == Some(Player::Alice)).count() as u32;
    let bob_wins = completed - alice_wins;
    let freq = |w: u32| if completed == 0 { 0.0 } else { w as f64 / completed as f64 };
    let (a_lo, a_hi) = wilson(alice_wins, completed, Z95);
    let (b_lo, b_hi) = wilson(bob_wins, completed, Z95);
    RateRow {
        k,
        trials: records.len() as u32,
        completed,
        errors: records.len() as u32 - completed,
        alice_wins,
        bob_wins,
        alice_freq: freq(alice_wins),
        alice_ci: [a_lo, a_hi],
        bob_freq: freq(bob_wins),
        bob_ci: [b_lo, b_hi],
        phase_switches: done.iter().filter(|r| r.phase_switch_move.is_some()).count() as u32,
        fell_back: done.iter().filter(|r| r.fell_back).count() as u32,
        phase2_moves: done.iter().map(|r| r.phase2_moves as u64).sum(),
        invariant_violations: done.iter().map(|r| r.invariant_violations).sum(),
        h_found: done.iter().filter(|r| r.h_found == Some(true)).count() as u32,
        plan_broken: done.iter().filter(|r| r.plan_broken).count() as u32,
        replay_failures: done.iter().filter(|r| !r.replay_ok).count() as u32,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub config: ExperimentConfig,
    pub rows: Vec<RateRow>,
    /// Color counts at which Alice's frequency is lower than at the count
    /// before.
    pub monotonicity_violations: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub records: Option<Vec<TrialRecord>>,
}

fn rows_of(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Vec<RateRow> {
    let per = cfg.trials as usize;
    (cfg.k_min..=cfg.k_max).zip(records.chunks(per)).map(|(k, chunk)| summarize(k, chunk)).collect()
}

fn monotonicity(rows: &[RateRow]) -> Vec<u32> {
    rows.windows(2).filter(|w| w[1].alice_freq < w[0].alice_freq).map(|w| w[1].k).collect()
}

pub fn estimate_win_rate(cfg: &ExperimentConfig, keep_records: bool) -> CliResult<EstimateReport> {
    let records = run_all(cfg)?;
    let rows = rows_of(cfg, &records);
    Ok(EstimateReport {
        config: cfg.clone(),
        monotonicity_violations: monotonicity(&rows),
        rows,
        records: keep_records.then_some(records),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceLine {
    pub alpha: f64,
    /// `alpha d / ln d`.
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketReport {
    pub config: ExperimentConfig,
    pub rows: Vec<RateRow>,
    pub threshold: f64,
    /// Largest `k` at which Bob wins at least `threshold` of the games.
    pub k_lo: Option<u32>,
    /// Smallest `k` at which Alice wins at least `threshold` of the games.
    pub k_hi: Option<u32>,
    /// Both ends exist and `k_lo < k_hi`.
    pub bracket: bool,
    /// `d / ln d`, when `d > 1`.
    pub big_d: Option<f64>,
    pub k_lo_over_d: Option<f64>,
    pub k_hi_over_d: Option<f64>,
    pub reference: Vec<ReferenceLine>,
    pub warnings: Vec<String>,
}

/// Reference constants reported next to a bracket.
pub const REFERENCE_ALPHAS: [f64; 2] = [4.0 / 7.0, 12.0];

pub fn bracket_chi_g(cfg: &ExperimentConfig) -> CliResult<BracketReport> {
    let records = run_all(cfg)?;
    let rows = rows_of(cfg, &records);
    let th = cfg.threshold;
    let k_lo = rows.iter().filter(|r| r.completed > 0 && r.bob_freq >= th).map(|r| r.k).max();
    let k_hi = rows.iter().filter(|r| r.completed > 0 && r.alice_freq >= th).map(|r| r.k).min();
    let mut warnings = Vec::new();
    let bad = monotonicity(&rows);
    if !bad.is_empty() {
        warnings.push(format!("Alice's win frequency decreases at k = {bad:?}"));
    }
    let bracket = matches!((k_lo, k_hi), (Some(a), Some(b)) if a < b);
    if !bracket {
        warnings.push(match (k_lo, k_hi) {
            (None, _) => "no bracket: Bob never reaches the threshold in the range".to_string(),
            (_, None) => "no bracket: Alice never reaches the threshold in the range".to_string(),
            (Some(a), Some(b)) => format!("no bracket: k_lo = {a} is not below k_hi = {b}"),
        });
    }
    let d = cfg.model.d;
    let big_d = (d > 1.0).then(|| d / d.ln());
    let reference = big_d
        .map(|bd| REFERENCE_ALPHAS.iter().map(|&alpha| ReferenceLine { alpha, k: alpha * bd }).collect())
        .unwrap_or_default();
    Ok(BracketReport {
        config: cfg.clone(),
        rows,
        threshold: th,
        k_lo,
        k_hi,
        bracket,
        big_d,
        k_lo_over_d: big_d.zip(k_lo).map(|(bd, k)| k as f64 / bd),
        k_hi_over_d: big_d.zip(k_hi).map(|(bd, k)| k as f64 / bd),
        reference,
        warnings,
    })
}
