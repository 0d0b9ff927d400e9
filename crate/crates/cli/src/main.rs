use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use colorgame::audit::audit;
use colorgame::config::{parse_format, parse_player, Format};
use colorgame::graph_io::{parse_transcript, read_graph, write_graph};
use colorgame::harness::{bracket_chi_g, estimate_win_rate, reason_str, sample_graph, trial_stream, RateRow, TrialRecord};
use colorgame::players::{build, Human, Table};
use colorgame::{CliError, CliResult, ExperimentConfig};
use colorgame_core::solver::{chromatic_number, exact_chi_g_capped, Solver, DEFAULT_SIZE_CAP};
use colorgame_core::structure::chernoff::chernoff_bounds;
use colorgame_core::structure::cubic::{close_ball, find_h, verify_h};
use colorgame_core::structure::decomposition::build_decomposition;
use colorgame_core::{play_game, GameState, ParameterSet, Player, RngSeed, Strategy};

#[derive(Parser)]
#[command(name = "colorgame", version, about = "Simulate and analyze the graph coloring game")]
struct Cli {
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format: json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Experiment settings: a config file, then these flags, then `--set`.
#[derive(Args, Default)]
struct ExpArgs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<f64>,
    /// Graph file (implies model = file).
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    alice: Option<String>,
    #[arg(long)]
    bob: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    k_min: Option<u32>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    first: Option<String>,
    /// Any config key, as `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample one graph from a model and print it as a graph file.
    Generate(ExpArgs),
    /// Play one game on a graph file.
    Play {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "greedy")]
        alice: String,
        #[arg(long, default_value = "random")]
        bob: String,
        #[arg(long, default_value = "alice")]
        first: String,
        /// Let a human play this side from the terminal.
        #[arg(long)]
        interactive: Option<String>,
        /// Also write the transcript to this file.
        #[arg(long)]
        transcript: Option<PathBuf>,
        #[arg(long, default_value_t = 13.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
    },
    /// Replay a transcript and report the final position.
    Replay {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "alice")]
        first: String,
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Alice's win frequency per color count.
    Estimate {
        #[command(flatten)]
        exp: ExpArgs,
        /// Include one record per game.
        #[arg(long)]
        records: bool,
    },
    /// Color counts where each side wins at least the threshold.
    Bracket(ExpArgs),
    /// Chromatic and game chromatic number of a small graph.
    Exact {
        #[arg(long)]
        graph: String,
        /// Also solve the game for this many colors.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value = "alice")]
        first: String,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Level decomposition of an endgame set.
    Decompose {
        #[arg(long)]
        graph: String,
        /// Degree parameter (default: average degree).
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = 13.0)]
        alpha: f64,
        /// File listing the endgame set (default: all vertices).
        #[arg(long)]
        u0: Option<PathBuf>,
    },
    /// Search a cycle-plus-matching graph for the subgraph `H`.
    FindH {
        /// Graph file with a cycle/matching trailer; otherwise one is sampled.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        c: f64,
        /// Alice's opening vertex; `H` must stay at distance > 2 from it.
        #[arg(long)]
        forbid: Option<u32>,
    },
    /// Structural statistics over sampled graphs.
    Audit(ExpArgs),
    /// Binomial tail bounds.
    Chernoff {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        mu: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(2)
        }
    }
}

struct Globals {
    seed: Option<u64>,
    workers: Option<usize>,
    format: Option<Format>,
    out: Option<PathBuf>,
}

impl Globals {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(p) => std::fs::write(p, text)?,
            None => {
                let mut s = std::io::stdout().lock();
                s.write_all(text.as_bytes())?;
                s.flush()?;
            }
        }
        Ok(())
    }

    fn json<T: Serialize>(&self, value: &T, what: &str) -> CliResult<()> {
        if self.format == Some(Format::Csv) {
            return Err(CliError::config(format!("csv output is not available for {what}")));
        }
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text)
    }
}

fn experiment(args: &ExpArgs, g: &Globals) -> CliResult<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
    }
    let flags: [(&str, Option<String>); 13] = [
        ("model", args.model.clone()),
        ("n", args.n.map(|x| x.to_string())),
        ("d", args.d.map(|x| x.to_string())),
        ("graph", args.graph.clone()),
        ("alice", args.alice.clone()),
        ("bob", args.bob.clone()),
        ("k", args.k.map(|x| x.to_string())),
        ("k_min", args.k_min.map(|x| x.to_string())),
        ("k_max", args.k_max.map(|x| x.to_string())),
        ("trials", args.trials.map(|x| x.to_string())),
        ("alpha", args.alpha.map(|x| x.to_string())),
        ("c", args.c.map(|x| x.to_string())),
        ("first", args.first.clone()),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    for kv in &args.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::config(format!("--set expects key=value, got `{kv}`")))?;
        cfg.set(k, v)?;
    }
    if let Some(s) = g.seed {
        cfg.seed = s;
    }
    if let Some(w) = g.workers {
        cfg.workers = w;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> CliResult<()> {
    let mut g = Globals {
        seed: cli.seed,
        workers: cli.workers,
        format: cli.format.as_deref().map(parse_format).transpose()?,
        out: cli.out,
    };
    match cli.cmd {
        Cmd::Generate(args) => {
            let cfg = experiment(&args, &g)?;
            let fixed = colorgame::harness::load_fixed(&cfg.model)?;
            let s = sample_graph(&cfg.model, fixed.as_ref(), RngSeed::new(cfg.seed, trial_stream(0, 0)).derive(1))?;
            if g.format == Some(Format::Csv) {
                return Err(CliError::config("generate writes graph files only"));
            }
            g.emit(&write_graph(&s.graph, s.cubic.as_ref()))
        }
        Cmd::Play { graph, k, alice, bob, first, interactive, transcript, alpha, c } => {
            let file = read_graph(&graph)?;
            let gr = &file.graph;
            let first = parse_player(&first)?;
            let d = if gr.n() > 0 { 2.0 * gr.m() as f64 / gr.n() as f64 } else { 0.0 };
            let table = Table { graph: gr, cubic: file.cubic.as_ref(), k, first, d, alpha, c };
            let base = RngSeed::new(g.seed(), 0);
            let human = interactive.as_deref().map(parse_player).transpose()?;
            let make = |side: Player, name: &str, tag: u64| -> CliResult<Box<dyn Strategy>> {
                if human == Some(side) {
                    Ok(Box::new(Human::new(std::io::stdin().lock(), std::io::stderr())))
                } else {
                    build(name, side, &table, base.derive(tag))
                }
            };
            let mut a = make(Player::Alice, &alice, 2)?;
            let mut b = make(Player::Bob, &bob, 3)?;
            let out = play_game(gr, k, a.as_mut(), b.as_mut(), first)?;
            if let Some(path) = transcript {
                std::fs::write(path, serde_json::to_string_pretty(&out.transcript)?)?;
            }
            let value = json!({
                "winner": out.winner,
                "reason": reason_str(&out.reason),
                "moves": out.transcript.len(),
                "transcript": out.transcript,
                "alice": { "strategy": a.name(), "report": a.report() },
                "bob": { "strategy": b.name(), "report": b.report() },
            });
            g.json(&value, "play")
        }
        Cmd::Replay { graph, k, first, transcript } => {
            let file = read_graph(&graph)?;
            let moves = parse_transcript(&std::fs::read_to_string(transcript)?)?;
            let st = GameState::replay(&file.graph, k, parse_player(&first)?, &moves)?;
            let (winner, reason) = match st.detect_dead_vertex() {
                Some(v) => (Some(Player::Bob), Some(format!("dead_vertex:{v}"))),
                None if st.all_colored() => (Some(Player::Alice), Some("all_colored".to_string())),
                None => (None, None),
            };
            let value = json!({
                "moves": moves.len(),
                "finished": winner.is_some(),
                "winner": winner,
                "reason": reason,
                "to_move": st.to_move(),
                "colors": st.colors(),
            });
            g.json(&value, "replay")
        }
        Cmd::Estimate { exp, records } => {
            let cfg = experiment(&exp, &g)?;
            g.format = g.format.or(cfg.format);
            let report = estimate_win_rate(&cfg, records)?;
            if g.format == Some(Format::Csv) {
                let mut text = String::new();
                if let Some(recs) = &report.records {
                    text.push_str(TrialRecord::CSV_HEADER);
                    text.push('\n');
                    for r in recs {
                        text.push_str(&r.csv_line());
                        text.push('\n');
                    }
                } else {
                    rows_csv(&mut text, &report.rows);
                }
                return g.emit(&text);
            }
            g.json(&report, "estimate")
        }
        Cmd::Bracket(exp) => {
            let cfg = experiment(&exp, &g)?;
            g.format = g.format.or(cfg.format);
            let report = bracket_chi_g(&cfg)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if g.format == Some(Format::Csv) {
                let mut text = String::new();
                rows_csv(&mut text, &report.rows);
                return g.emit(&text);
            }
            g.json(&report, "bracket")
        }
        Cmd::Exact { graph, k, first, cap } => {
            let file = read_graph(&graph)?;
            let gr = &file.graph;
            let chi = chromatic_number(gr)?;
            let chi_g = exact_chi_g_capped(gr, cap)?;
            let first = parse_player(&first)?;
            let winner = match k {
                Some(k) => Some(Solver::with_options(gr, k, first, cap, true)?.solve()),
                None => None,
            };
            let value = json!({
                "n": gr.n(),
                "m": gr.m(),
                "max_degree": gr.max_degree(),
                "chromatic_number": chi,
                "game_chromatic_number": chi_g,
                "k": k,
                "first": first,
                "winner": winner,
            });
            g.json(&value, "exact")
        }
        Cmd::Decompose { graph, d, alpha, u0 } => {
            let file = read_graph(&graph)?;
            let gr = &file.graph;
            let d = d.unwrap_or(if gr.n() > 0 { 2.0 * gr.m() as f64 / gr.n() as f64 } else { 0.0 });
            let ps = ParameterSet::derive(gr.n(), d, alpha)?;
            let set: Vec<u32> = match u0 {
                Some(p) => std::fs::read_to_string(p)?
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| CliError::config(format!("`{t}` is not a vertex number"))))
                    .collect::<CliResult<_>>()?,
                None => (0..gr.n() as u32).collect(),
            };
            let dec = build_decomposition(gr, &set, &ps)?;
            let value = json!({
                "params": ps,
                "level_sizes": dec.levels.iter().map(Vec::len).collect::<Vec<_>>(),
                "stop": dec.stop,
                "verified": dec.report.all(),
                "failures": dec.report.failures(),
                "forest_edges": dec.forest_edges().len(),
                "decomposition": dec,
            });
            g.json(&value, "decompose")
        }
        Cmd::FindH { graph, n, c, forbid } => {
            let cm = match graph {
                Some(path) => read_graph(&path)?
                    .cubic
                    .ok_or_else(|| CliError::config("graph file has no cycle/matching trailer"))?,
                None => colorgame_core::graph::gen_cubic_cycle_matching(n, RngSeed::new(g.seed(), 0).derive(1))?,
            };
            let forbidden = forbid.map(|v| close_ball(&cm.graph, v)).unwrap_or_default();
            let h = find_h(&cm, c, &forbidden)?;
            let report = h.as_ref().map(|h| verify_h(&cm.graph, h, &forbidden));
            let value = json!({ "n": cm.n(), "found": h.is_some(), "h": h, "verified": report });
            g.json(&value, "find-h")
        }
        Cmd::Audit(exp) => {
            let cfg = experiment(&exp, &g)?;
            let report = audit(&cfg)?;
            g.json(&report, "audit")
        }
        Cmd::Chernoff { n, p, eps, mu } => {
            let b = chernoff_bounds(n, p, eps, mu)?;
            g.json(&json!({ "n": n, "p": p, "eps": eps, "mu": mu, "bounds": b }), "chernoff")
        }
    }
}

fn rows_csv(text: &mut String, rows: &[RateRow]) {
    text.push_str(RateRow::CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&r.csv_line());
        text.push('\n');
    }
}
