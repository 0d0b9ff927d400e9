//! Experiment configuration.
//!
//! Config files hold `key = value` lines; `#` starts a comment. Keys:
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `model` | `gnp`, `regular`, `cubic`, `tree` or `file` | `gnp` |
//! | `n` | vertices per graph | `1000` |
//! | `d` | expected (gnp) or exact (regular) degree | `10` |
//! | `graph` | graph file for `model = file` | |
//! | `plant` | size of a clique planted on vertices `0..plant` | `0` |
//! | `alice`, `bob` | strategy names | `greedy`, `mirror` |
//! | `alpha` | two-phase constant | `13` |
//! | `c` | segment constant for the cubic search | `0.5` |
//! | `k` | a single color count (sets both ends of the range) | |
//! | `k_min`, `k_max` | color range | `3`, `3` |
//! | `trials` | games per color count | `100` |
//! | `first` | `alice` or `bob` | `alice` |
//! | `threshold` | win frequency for bracketing | `0.95` |
//! | `theta`, `sigma` | density target and size fraction for `audit` | derived |
//! | `seed` | master seed | `1` |
//! | `workers` | worker threads, `0` for all cores | `0` |
//! | `format` | `json` or `csv` | `json` |
//! | `timing` | record wall time per trial | `false` |
//!
//! Later assignments override earlier ones, so command-line flags applied
//! after the file win.

use serde::{Deserialize, Serialize};

use colorgame_core::Player;

use crate::error::{CliError, CliResult};
use crate::players::STRATEGY_NAMES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gnp,
    Regular,
    Cubic,
    Tree,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    pub d: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    pub plant: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub alice: String,
    pub bob: String,
    pub alpha: f64,
    pub c: f64,
    pub k_min: u32,
    pub k_max: u32,
    pub trials: u32,
    pub first: Player,
    pub threshold: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    pub seed: u64,
    /// Thread count; not echoed.
    #[serde(skip)]
    pub workers: usize,
    #[serde(skip)]
    pub format: Option<Format>,
    /// Record wall time per trial (makes output nondeterministic).
    #[serde(skip)]
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: ModelSpec { kind: ModelKind::Gnp, n: 1000, d: 10.0, graph: None, plant: 0 },
            alice: "greedy".into(),
            bob: "mirror".into(),
            alpha: 13.0,
            c: 0.5,
            k_min: 3,
            k_max: 3,
            trials: 100,
            first: Player::Alice,
            threshold: 0.95,
            theta: None,
            sigma: None,
            seed: 1,
            workers: 0,
            format: None,
            timing: false,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value.parse().map_err(|_| CliError::config(format!("`{key}`: cannot parse `{value}`")))
}

impl ExperimentConfig {
    /// Applies one assignment.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        let value = value.trim();
        match key.trim() {
            "model" => {
                self.model.kind = match value {
                    "gnp" => ModelKind::Gnp,
                    "regular" => ModelKind::Regular,
                    "cubic" => ModelKind::Cubic,
                    "tree" => ModelKind::Tree,
                    "file" => ModelKind::File,
                    _ => return Err(CliError::config(format!("unknown model `{value}`"))),
                }
            }
            "n" => self.model.n = num("n", value)?,
            "d" => self.model.d = num("d", value)?,
            "graph" => {
                self.model.graph = Some(value.to_string());
                self.model.kind = ModelKind::File;
            }
            "plant" => self.model.plant = num("plant", value)?,
            "alice" => self.alice = value.to_string(),
            "bob" => self.bob = value.to_string(),
            "alpha" => self.alpha = num("alpha", value)?,
            "c" => self.c = num("c", value)?,
            "k" => {
                self.k_min = num("k", value)?;
                self.k_max = self.k_min;
            }
            "k_min" => self.k_min = num("k_min", value)?,
            "k_max" => self.k_max = num("k_max", value)?,
            "trials" => self.trials = num("trials", value)?,
            "first" => self.first = parse_player(value)?,
            "threshold" => self.threshold = num("threshold", value)?,
            "theta" => self.theta = Some(num("theta", value)?),
            "sigma" => self.sigma = Some(num("sigma", value)?),
            "seed" => self.seed = num("seed", value)?,
            "workers" => self.workers = num("workers", value)?,
            "format" => self.format = Some(parse_format(value)?),
            "timing" => self.timing = num("timing", value)?,
            other => return Err(CliError::config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every assignment of a config file.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Parse { line: i + 1, message: "expected `key = value`".into() })?;
            self.set(k, v).map_err(|e| CliError::Parse { line: i + 1, message: e.to_string() })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> CliResult<Self> {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.k_min == 0 || self.k_min > self.k_max {
            return Err(CliError::config(format!("bad color range {}..={}", self.k_min, self.k_max)));
        }
        if self.trials == 0 {
            return Err(CliError::config("trials must be positive"));
        }
        if self.model.kind == ModelKind::File && self.model.graph.is_none() {
            return Err(CliError::config("model = file needs `graph`"));
        }
        if !(self.threshold > 0.0 && self.threshold <= 1.0) {
            return Err(CliError::config("threshold must lie in (0, 1]"));
        }
        for (name, side, other) in [(&self.alice, "alice", "mirror"), (&self.bob, "bob", "two-phase")] {
            if !STRATEGY_NAMES.contains(&name.as_str()) {
                return Err(CliError::config(format!(
                    "unknown strategy `{name}` (expected one of {})",
                    STRATEGY_NAMES.join(", ")
                )));
            }
            if name == other || (side == "alice" && name == "cubic") {
                return Err(CliError::config(format!("strategy `{name}` cannot play {side}")));
            }
        }
        Ok(())
    }
}

pub fn parse_player(s: &str) -> CliResult<Player> {
    match s {
        "alice" => Ok(Player::Alice),
        "bob" => Ok(Player::Bob),
        _ => Err(CliError::config(format!("unknown player `{s}`"))),
    }
}

pub fn parse_format(s: &str) -> CliResult<Format> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        _ => Err(CliError::config(format!("unknown format `{s}`"))),
    }
}
