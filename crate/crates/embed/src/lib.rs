//! Embedding oriented cycles into perturbed digraphs.
//!
//! [`embed_cycle`] follows the case analysis by cycle length: digons and
//! triangles by direct neighbourhood search, short cycles as a long
//! bidirected path closed through a few extra vertices, and long cycles
//! through a global absorber. A success is always a verified copy. A failure
//! names the stage that gave up and carries a pseudorandomness witness when
//! there is one. On small hosts it is also checked against the brute-force
//! oracle.

mod brute;
mod cases;
mod sweep;

pub use brute::{brute_force_contains, BRUTE_FORCE_MAX_N};
pub use sweep::{universality_sweep, SweepReport, SweepRow};

use absorb_semi::SemiParams;
use absorb_total::TotalParams;
use digraph_core::{verify_embedding, Digraph, Embedding, OrientationPattern, PseudorandomWitness};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Host has large minimum semi-degree.
    Semi,
    /// Host has large minimum total degree.
    Total,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Assertions {
    Light,
    /// Also re-check every reported witness against the host.
    Full,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbedConfig {
    pub regime: Regime,
    pub alpha: f64,
    pub eta: f64,
    pub epsilon: f64,
    /// Perturbation constant of the random part; recorded, not used here.
    pub c: f64,
    pub seed: u64,
    /// Absorber builds tried, each with its own derived seed.
    pub retries: usize,
    /// Length of the absorbed subpath; `⌈αn/4⌉` when unset.
    pub absorbed_len: Option<usize>,
    pub semi: Option<SemiParams>,
    pub total: Option<TotalParams>,
    /// `(m, βm)` of the reservoir closing short cycles in the total regime.
    pub reservoir: Option<(usize, usize)>,
    /// Close long cycles like short ones when no absorber fits the host.
    pub fallback: bool,
    /// Failures on hosts up to this size are checked by brute force.
    pub oracle_max_n: usize,
    pub assertions: Assertions,
}

impl EmbedConfig {
    pub fn semi(alpha: f64) -> Self {
        EmbedConfig {
            regime: Regime::Semi,
            alpha,
            eta: 0.5,
            epsilon: 0.02,
            c: 0.0,
            seed: 0,
            retries: 3,
            absorbed_len: None,
            semi: None,
            total: None,
            reservoir: None,
            fallback: true,
            oracle_max_n: 9,
            assertions: Assertions::Full,
        }
    }

    pub fn total(alpha: f64) -> Self {
        EmbedConfig {
            regime: Regime::Total,
            eta: alpha,
            ..Self::semi(alpha)
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Witness size `⌈εn⌉`, at least 1.
    pub fn witness_t(&self, n: usize) -> usize {
        ((self.epsilon * n as f64 - 1e-9).ceil() as usize).max(1)
    }

    pub fn absorbed_len(&self, n: usize) -> usize {
        self.absorbed_len
            .unwrap_or_else(|| (self.alpha * n as f64 / 4.0 - 1e-9).ceil() as usize)
    }

    /// Short cycles end at `αn/2` (semi-degree) or
    /// `(1 − 13ε/α − 8ε)n` (total degree).
    pub fn short_limit(&self, n: usize) -> f64 {
        let n = n as f64;
        match self.regime {
            Regime::Semi => self.alpha * n / 2.0,
            Regime::Total => (1.0 - 13.0 * self.epsilon / self.alpha - 8.0 * self.epsilon) * n,
        }
    }

    pub fn validate(&self, n: usize) -> Result<(), EmbedError> {
        let frac = |x: f64| x > 0.0 && x < 1.0;
        let bad = if !frac(self.alpha) {
            Some(format!("alpha = {} must lie in (0, 1)", self.alpha))
        } else if !(self.eta > 0.0 && self.eta <= 1.0) {
            Some(format!("eta = {} must lie in (0, 1]", self.eta))
        } else if !frac(self.epsilon) {
            Some(format!("epsilon = {} must lie in (0, 1)", self.epsilon))
        } else if self.retries == 0 {
            Some("retries must be at least 1".into())
        } else if self.oracle_max_n > BRUTE_FORCE_MAX_N {
            Some(format!("oracle_max_n exceeds {BRUTE_FORCE_MAX_N}"))
        } else if self.absorbed_len.is_some_and(|p| p < 4) {
            Some("absorbed path needs at least 4 vertices".into())
        } else if self.absorbed_len.is_some_and(|p| p > n) {
            Some(format!("absorbed path longer than the {n} host vertices"))
        } else if self
            .semi
            .as_ref()
            .is_some_and(|s| s.m == 0 || s.beta_m == 0 || s.slots == 0 || s.witness_t == 0)
        {
            Some("semi-degree absorber sizes must be positive".into())
        } else if self
            .total
            .as_ref()
            .is_some_and(|s| s.m == 0 || s.beta_m == 0 || s.slots == 0 || s.witness_t == 0 || s.r < 2)
        {
            Some("total-degree absorber sizes must be positive, with r ≥ 2".into())
        } else if self.reservoir.is_some_and(|(m, bm)| m == 0 || bm == 0) {
            Some("reservoir sizes must be positive".into())
        } else {
            None
        };
        bad.map_or(Ok(()), |s| Err(EmbedError::InvalidConfig(s)))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmbedError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("target must be a cycle pattern")]
    NotACycle,
    #[error("cycle on {k} vertices does not fit in {n}")]
    BadLength { k: usize, n: usize },
    #[error("brute force is limited to {max} vertices, got {n}")]
    TooLarge { n: usize, max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Digon,
    /// Bidirected edge between two neighbourhoods of one vertex.
    NeighbourhoodEdge,
    /// Exhaustive triangle search.
    TriangleSearch,
    /// Long bidirected path closed by a three-edge connector.
    ShortPath,
    /// Long bidirected path closed through a reservoir.
    ReservoirClose,
    SemiAbsorber,
    TotalAbsorber,
    /// Short-path closing used because no absorber fits the host.
    ShortFallback,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The construction gave up; nothing is known about the target.
    StrategyFailed,
    /// The construction gave up but the oracle found a copy.
    Incomplete,
    /// The oracle confirms there is no copy.
    OracleAbsent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FailureReport {
    pub strategy: Strategy,
    pub stage: String,
    pub witness: Option<PseudorandomWitness>,
    /// Whether the witness holds in the host, under full assertions.
    pub witness_checked: Option<bool>,
    pub verdict: Verdict,
    pub diagnostic: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum EmbedOutcome {
    Found { strategy: Strategy, embedding: Embedding },
    Failed(FailureReport),
}

impl EmbedOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, EmbedOutcome::Found { .. })
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            EmbedOutcome::Found { embedding, .. } => Some(embedding),
            EmbedOutcome::Failed(_) => None,
        }
    }

    pub fn strategy(&self) -> Strategy {
        match self {
            EmbedOutcome::Found { strategy, .. } => *strategy,
            EmbedOutcome::Failed(f) => f.strategy,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }
}

/// Copy of the cycle `c` in `d`, or a report of where the construction
/// stopped.
pub fn embed_cycle(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> Result<EmbedOutcome, EmbedError> {
    let n = d.n();
    if !c.is_cycle() {
        return Err(EmbedError::NotACycle);
    }
    let k = c.k();
    if k > n {
        return Err(EmbedError::BadLength { k, n });
    }
    cfg.validate(n)?;
    let (strategy, res) = cases::dispatch(d, c, cfg);
    Ok(finish(d, c, cfg, strategy, res))
}

fn finish(
    d: &Digraph,
    c: &OrientationPattern,
    cfg: &EmbedConfig,
    strategy: Strategy,
    res: Result<Vec<usize>, cases::Fail>,
) -> EmbedOutcome {
    let fail = match res {
        Ok(vertices) => {
            let e = Embedding::new(c.clone(), vertices);
            if verify_embedding(d, &e) {
                return EmbedOutcome::Found { strategy, embedding: e };
            }
            cases::Fail::new("verification", format!("construction returned {:?}", e.vertices))
        }
        Err(f) => f,
    };
    let verdict = if d.n() <= cfg.oracle_max_n {
        match brute_force_contains(d, c) {
            Ok(Some(_)) => Verdict::Incomplete,
            Ok(None) => Verdict::OracleAbsent,
            Err(_) => Verdict::StrategyFailed,
        }
    } else {
        Verdict::StrategyFailed
    };
    let witness_checked = match (&fail.witness, cfg.assertions) {
        (Some(w), Assertions::Full) => Some(w.is_valid(d)),
        _ => None,
    };
    EmbedOutcome::Failed(FailureReport {
        strategy,
        stage: fail.stage.to_string(),
        witness: fail.witness,
        witness_checked,
        verdict,
        diagnostic: fail.diagnostic,
    })
}
