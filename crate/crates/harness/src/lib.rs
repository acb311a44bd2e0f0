//! Experiment driver for the cycle embedder.
//!
//! A [`TrialSpec`] names a host family, a random model with a grid of
//! constants `C` (edge probability `C/n`), a grid of sizes and a battery of
//! cycle orientations. [`run_trials`] embeds every battery pattern into
//! `trials` seeded perturbed hosts per grid point. Trials run in parallel
//! but every seed is derived from the master seed and the cell coordinates,
//! and results are assembled in grid order, so a report depends only on the
//! spec.
//!
//! The constructive embedder consumes bidirected edges, so the default model
//! is `D*(n, p)`. Success there lower-bounds success under `D(n, p)` at the
//! same `p` by the standard coupling.

mod emit;
mod run;

pub use emit::{emit, scan_to_csv, sweep_to_csv, to_csv, to_json, to_plotdata, write_text, Format};
pub use run::{
    estimate_thresholds, run_trials, threshold_scan, CellReport, ResolvedConstants, ScanReport, ScanRow,
    TrialReport,
};

use digraph_core::{io::read_edge_list, Digraph, OrientationPattern, Sign};
use embed::EmbedConfig;
use rand::Rng;
use randgen::{derive_seed, gen_bipartite_extremal, gen_oneway_extremal, rng_for, ModelKind};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// 2 for a bad spec, 3 for i/o trouble.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::InvalidSpec(_) => 2,
            HarnessError::Io(_) => 3,
        }
    }
}

impl From<csv::Error> for HarnessError {
    fn from(e: csv::Error) -> Self {
        HarnessError::Io(std::io::Error::other(e))
    }
}

/// Serde name of a unit enum variant.
pub(crate) fn serde_tag<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn invalid(msg: impl Into<String>) -> HarnessError {
    HarnessError::InvalidSpec(msg.into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HostSpec {
    Empty,
    Complete,
    /// Complete bipartite digraph with a part of `⌊αn⌋` vertices.
    Bipartite { alpha: f64 },
    /// All edges from a part of `⌊αn⌋` vertices to the rest.
    Oneway { alpha: f64 },
    /// Edge list on disk; its vertex count must match the size grid.
    File { path: PathBuf },
}

impl HostSpec {
    pub fn build(&self, n: usize) -> Result<Digraph, HarnessError> {
        let gen = |r: Result<Digraph, randgen::GenError>| r.map_err(|e| invalid(e.to_string()));
        match self {
            HostSpec::Empty => Ok(Digraph::new(n)),
            HostSpec::Complete => Ok(Digraph::complete(n)),
            HostSpec::Bipartite { alpha } => gen(gen_bipartite_extremal(n, *alpha)),
            HostSpec::Oneway { alpha } => gen(gen_oneway_extremal(n, *alpha)),
            HostSpec::File { path } => {
                let f = std::fs::File::open(path)?;
                let d = read_edge_list(std::io::BufReader::new(f)).map_err(|e| invalid(e.to_string()))?;
                if d.n() != n {
                    return Err(invalid(format!("{} has {} vertices, grid asks for {n}", path.display(), d.n())));
                }
                Ok(d)
            }
        }
    }
}

/// Whether grid values are constants `C` (with `p = C/n`, capped at 1) or
/// probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridScale {
    C,
    P,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BatteryItem {
    Consistent,
    /// Alternating signs; for odd lengths one pair of neighbours repeats.
    Antidirected,
    /// `count` uniformly random sign sequences, fixed by the master seed.
    Random { count: usize },
    /// Runs of `block` equal signs, alternating.
    Blocky { block: usize },
}

impl std::str::FromStr for BatteryItem {
    type Err = String;

    /// `consistent`, `antidirected`, `random:COUNT` or `blocky:LEN`.
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |a: Option<&str>| -> Result<usize, String> {
            a.ok_or_else(|| format!("{name} needs a number"))?
                .parse()
                .map_err(|e| format!("{s}: {e}"))
        };
        match name {
            "consistent" => Ok(BatteryItem::Consistent),
            "antidirected" => Ok(BatteryItem::Antidirected),
            "random" => Ok(BatteryItem::Random { count: num(arg)? }),
            "blocky" => Ok(BatteryItem::Blocky { block: num(arg)? }),
            _ => Err(format!("unknown battery item {s:?}")),
        }
    }
}

/// Named cycle patterns of length `k` for the battery, in battery order.
pub fn battery_patterns(battery: &[BatteryItem], k: usize, master_seed: u64) -> Vec<(String, OrientationPattern)> {
    let cycle = |signs: Vec<Sign>| OrientationPattern::cycle(signs).expect("k ≥ 2");
    let alt = |i: usize| if i.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let mut out = Vec::new();
    for item in battery {
        match item {
            BatteryItem::Consistent => out.push(("consistent".into(), cycle(vec![Sign::Plus; k]))),
            BatteryItem::Antidirected => {
                let name = if k.is_multiple_of(2) { "antidirected" } else { "near-antidirected" };
                out.push((name.into(), cycle((0..k).map(alt).collect())));
            }
            BatteryItem::Random { count } => {
                let mut rng = rng_for(derive_seed(master_seed, 0xba77), k as u64);
                for j in 0..*count {
                    let signs = (0..k).map(|_| if rng.random::<bool>() { Sign::Plus } else { Sign::Minus });
                    out.push((format!("random-{j}"), cycle(signs.collect())));
                }
            }
            BatteryItem::Blocky { block } => {
                let b = (*block).max(1);
                out.push((format!("blocky-{b}"), cycle((0..k).map(|i| alt(i / b)).collect())));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialSpec {
    pub host: HostSpec,
    pub model: ModelKind,
    pub scale: GridScale,
    /// Sorted ascending for threshold scans.
    pub c_grid: Vec<f64>,
    pub n_grid: Vec<usize>,
    pub battery: Vec<BatteryItem>,
    /// Cycle length; Hamilton cycles when unset.
    pub cycle_len: Option<usize>,
    pub trials: usize,
    /// Embedder settings; its seed is replaced per trial.
    pub config: EmbedConfig,
    pub master_seed: u64,
}

impl TrialSpec {
    pub fn new(host: HostSpec, config: EmbedConfig) -> Self {
        TrialSpec {
            host,
            model: ModelKind::Bidirected,
            scale: GridScale::C,
            c_grid: vec![10.0],
            n_grid: vec![50],
            battery: vec![BatteryItem::Consistent, BatteryItem::Antidirected, BatteryItem::Random { count: 3 }],
            cycle_len: None,
            trials: 10,
            config,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.c_grid.is_empty() || self.n_grid.is_empty() || self.battery.is_empty() {
            return Err(invalid("grids and battery must be non-empty"));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if let Some(c) = self.c_grid.iter().find(|c| !(c.is_finite() && **c >= 0.0)) {
            return Err(invalid(format!("grid value {c} must be finite and non-negative")));
        }
        if self.scale == GridScale::P && self.c_grid.iter().any(|&p| p > 1.0) {
            return Err(invalid("probabilities must lie in [0, 1]"));
        }
        if self.battery.iter().any(|b| matches!(b, BatteryItem::Random { count: 0 })) {
            return Err(invalid("random battery item needs a positive count"));
        }
        for &n in &self.n_grid {
            let k = self.cycle_len.unwrap_or(n);
            if n < 2 || k < 2 || k > n {
                return Err(invalid(format!("cycle of length {k} in {n} vertices")));
            }
            self.config.validate(n).map_err(|e| invalid(e.to_string()))?;
        }
        Ok(())
    }

    /// Edge probability for grid value `c` at size `n`.
    pub fn probability(&self, c: f64, n: usize) -> f64 {
        match self.scale {
            GridScale::C => (c / n as f64).min(1.0),
            GridScale::P => c,
        }
    }
}
