use crate::{battery_patterns, invalid, serde_tag, HarnessError, TrialSpec};
use digraph_core::verify_embedding;
use embed::{embed_cycle, EmbedOutcome};
use randgen::{derive_seed, perturb, RandomModel};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// One grid point and battery pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub n: usize,
    pub c: f64,
    pub p: f64,
    pub pattern: String,
    pub k: usize,
    pub trials: usize,
    /// Verified embeddings only.
    pub successes: usize,
    pub strategies: BTreeMap<String, usize>,
    /// Stage tag of every failure; sums to `trials − successes`.
    pub failure_stages: BTreeMap<String, usize>,
    pub witnesses: usize,
    pub witnesses_valid: usize,
    pub mean_ms: f64,
    pub max_ms: f64,
}

impl CellReport {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn counts_consistent(&self) -> bool {
        self.successes + self.failure_stages.values().sum::<usize>() == self.trials
            && self.strategies.values().sum::<usize>() == self.trials
    }
}

/// Derived constants the embedder used at each size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolvedConstants {
    pub n: usize,
    pub k: usize,
    pub witness_t: usize,
    pub absorbed_len: usize,
    pub short_limit: f64,
    pub p: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub spec: TrialSpec,
    pub resolved: Vec<ResolvedConstants>,
    pub cells: Vec<CellReport>,
    pub elapsed_ms: f64,
}

struct Attempt {
    found: bool,
    strategy: String,
    stage: Option<String>,
    witness: Option<bool>,
    ms: f64,
}

/// Runs every cell of the spec.
pub fn run_trials(spec: &TrialSpec) -> Result<TrialReport, HarnessError> {
    spec.validate()?;
    let start = Instant::now();
    let hosts = spec
        .n_grid
        .iter()
        .map(|&n| spec.host.build(n))
        .collect::<Result<Vec<_>, _>>()?;
    let batteries: Vec<_> = spec
        .n_grid
        .iter()
        .map(|&n| battery_patterns(&spec.battery, spec.cycle_len.unwrap_or(n), spec.master_seed))
        .collect();

    let jobs: Vec<(usize, usize, usize)> = (0..spec.n_grid.len())
        .flat_map(|ni| (0..spec.c_grid.len()).flat_map(move |ci| (0..spec.trials).map(move |t| (ni, ci, t))))
        .collect();
    let results: Vec<Vec<Attempt>> = jobs
        .par_iter()
        .map(|&(ni, ci, t)| {
            let n = spec.n_grid[ni];
            let p = spec.probability(spec.c_grid[ci], n);
            let seed = derive_seed(derive_seed(derive_seed(spec.master_seed, ni as u64), ci as u64), t as u64);
            let model = RandomModel::new(spec.model, n, p, seed);
            let d = perturb(&hosts[ni], &model).map_err(|e| invalid(e.to_string()))?;
            let cfg = spec.config.clone().with_seed(derive_seed(seed, 1));
            batteries[ni]
                .iter()
                .map(|(_, c)| {
                    let t0 = Instant::now();
                    let out = embed_cycle(&d, c, &cfg).map_err(|e| invalid(e.to_string()))?;
                    let ms = t0.elapsed().as_secs_f64() * 1e3;
                    Ok(match out {
                        EmbedOutcome::Found { strategy, embedding } => Attempt {
                            found: verify_embedding(&d, &embedding),
                            strategy: serde_tag(&strategy),
                            stage: None,
                            witness: None,
                            ms,
                        },
                        EmbedOutcome::Failed(f) => Attempt {
                            found: false,
                            strategy: serde_tag(&f.strategy),
                            witness: f.witness.as_ref().map(|w| w.is_valid(&d)),
                            stage: Some(f.stage),
                            ms,
                        },
                    })
                })
                .collect()
        })
        .collect::<Result<_, HarnessError>>()?;

    let mut cells = Vec::new();
    for (ni, &n) in spec.n_grid.iter().enumerate() {
        for (ci, &c) in spec.c_grid.iter().enumerate() {
            let base = (ni * spec.c_grid.len() + ci) * spec.trials;
            for (pi, (name, pat)) in batteries[ni].iter().enumerate() {
                let mut cell = CellReport {
                    n,
                    c,
                    p: spec.probability(c, n),
                    pattern: name.clone(),
                    k: pat.k(),
                    trials: spec.trials,
                    successes: 0,
                    strategies: BTreeMap::new(),
                    failure_stages: BTreeMap::new(),
                    witnesses: 0,
                    witnesses_valid: 0,
                    mean_ms: 0.0,
                    max_ms: 0.0,
                };
                for a in results[base..base + spec.trials].iter().map(|r| &r[pi]) {
                    *cell.strategies.entry(a.strategy.clone()).or_default() += 1;
                    if a.found {
                        cell.successes += 1;
                    } else {
                        let stage = a.stage.clone().unwrap_or_else(|| "verification".into());
                        *cell.failure_stages.entry(stage).or_default() += 1;
                    }
                    if let Some(valid) = a.witness {
                        cell.witnesses += 1;
                        cell.witnesses_valid += usize::from(valid);
                    }
                    cell.mean_ms += a.ms / spec.trials as f64;
                    cell.max_ms = cell.max_ms.max(a.ms);
                }
                cells.push(cell);
            }
        }
    }
    let resolved = spec
        .n_grid
        .iter()
        .map(|&n| ResolvedConstants {
            n,
            k: spec.cycle_len.unwrap_or(n),
            witness_t: spec.config.witness_t(n),
            absorbed_len: spec.config.absorbed_len(n),
            short_limit: spec.config.short_limit(n),
            p: spec.c_grid.iter().map(|&c| spec.probability(c, n)).collect(),
        })
        .collect();
    Ok(TrialReport {
        spec: spec.clone(),
        resolved,
        cells,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: usize,
    pub pattern: String,
    pub k: usize,
    /// Smallest grid value reaching the target rate; `None` is above the grid.
    pub c_star: Option<f64>,
    pub rates: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub target_rate: f64,
    pub rows: Vec<ScanRow>,
    pub report: TrialReport,
}

/// Per `(n, pattern)`, the first grid value whose success rate reaches
/// `target_rate`.
pub fn estimate_thresholds(report: &TrialReport, target_rate: f64) -> Vec<ScanRow> {
    let mut rows: Vec<ScanRow> = Vec::new();
    let mut index: BTreeMap<(usize, String), usize> = BTreeMap::new();
    for cell in &report.cells {
        let key = (cell.n, cell.pattern.clone());
        let i = *index.entry(key).or_insert_with(|| {
            rows.push(ScanRow {
                n: cell.n,
                pattern: cell.pattern.clone(),
                k: cell.k,
                c_star: None,
                rates: Vec::new(),
            });
            rows.len() - 1
        });
        let row = &mut rows[i];
        row.rates.push(cell.success_rate());
        if row.c_star.is_none() && cell.success_rate() >= target_rate {
            row.c_star = Some(cell.c);
        }
    }
    rows
}

/// Runs the spec and estimates thresholds. The grid must be ascending.
pub fn threshold_scan(spec: &TrialSpec, target_rate: f64) -> Result<ScanReport, HarnessError> {
    if !spec.c_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(invalid("scan grid must be strictly ascending"));
    }
    if !(0.0..=1.0).contains(&target_rate) {
        return Err(invalid(format!("target rate {target_rate} outside [0, 1]")));
    }
    let report = run_trials(spec)?;
    Ok(ScanReport {
        target_rate,
        rows: estimate_thresholds(&report, target_rate),
        report,
    })
}
