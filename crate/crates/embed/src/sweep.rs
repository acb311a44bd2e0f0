use crate::{brute_force_contains, embed_cycle, EmbedConfig, EmbedError, EmbedOutcome, Strategy, Verdict};
use digraph_core::{all_sign_strings, Digraph, OrientationPattern, Sign};
use rand::Rng;
use randgen::rng_for;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub pattern: String,
    pub found: bool,
    pub strategy: Strategy,
    pub verdict: Option<Verdict>,
    pub stage: Option<String>,
    /// Brute-force answer, on hosts small enough for it.
    pub oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn found(&self) -> usize {
        self.rows.iter().filter(|r| r.found).count()
    }

    pub fn all_found(&self) -> bool {
        self.rows.iter().all(|r| r.found)
    }

    /// Rows where the construction failed although a copy exists.
    pub fn incomplete(&self) -> usize {
        self.rows.iter().filter(|r| !r.found && r.oracle == Some(true)).count()
    }
}

/// Runs [`embed_cycle`] on every orientation of each length in `lengths`
/// when there are at most `per_length` of them, and on `per_length` seeded
/// random orientations otherwise.
pub fn universality_sweep(
    d: &Digraph,
    lengths: &[usize],
    per_length: usize,
    cfg: &EmbedConfig,
) -> Result<SweepReport, EmbedError> {
    let n = d.n();
    let mut rows = Vec::new();
    for &k in lengths {
        if k < 2 || k > n {
            return Err(EmbedError::BadLength { k, n });
        }
        let exhaustive = k < usize::BITS as usize - 1 && (1usize << k) <= per_length;
        let patterns: Vec<Vec<Sign>> = if exhaustive {
            all_sign_strings(k).collect()
        } else {
            let mut rng = rng_for(cfg.seed, 1000 + k as u64);
            (0..per_length)
                .map(|_| (0..k).map(|_| if rng.random::<bool>() { Sign::Plus } else { Sign::Minus }).collect())
                .collect()
        };
        for signs in patterns {
            let c = OrientationPattern::cycle(signs).expect("k ≥ 2");
            let out = embed_cycle(d, &c, cfg)?;
            let oracle = (n <= cfg.oracle_max_n)
                .then(|| brute_force_contains(d, &c).map(|e| e.is_some()))
                .transpose()?;
            let (verdict, stage) = match &out {
                EmbedOutcome::Found { .. } => (None, None),
                EmbedOutcome::Failed(f) => (Some(f.verdict), Some(f.stage.clone())),
            };
            rows.push(SweepRow {
                k,
                pattern: c.to_string(),
                found: out.is_found(),
                strategy: out.strategy(),
                verdict,
                stage,
                oracle,
            });
        }
    }
    Ok(SweepReport { n, rows })
}
