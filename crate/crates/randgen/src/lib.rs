//! Seeded generators: the two random digraph models, the two extremal host
//! families, and edge-union perturbation.
//!
//! All randomness flows through [`rng_for`], a ChaCha8 stream keyed by a
//! 64-bit seed and a stream number. Trials derive their own seeds with
//! [`derive_seed`], so results do not depend on which thread ran which
//! trial.
//!
//! The harness perturbs hosts with the coupled model `D*(n, p)` because the
//! constructions only consume bidirected edges. Success under `D*(n, p)`
//! lower-bounds success under `D(n, p)`: a coupling places `D*(n, p)`-like
//! bidirected pairs inside `D(n, p)` for any fixed family of oriented graphs.
//! That inequality is used, not re-proved, here.

use digraph_core::{CoreError, Digraph};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Name and version of the generator behind every seeded stream. Changing
/// the algorithm must change this string.
pub const RNG_NAME: &str = "chacha8-stream-v1";

pub type Rng64 = ChaCha8Rng;

/// Independent stream `stream` of the generator keyed by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> Rng64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Child seed number `index` of `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    rng_for(master, index.wrapping_add(1)).next_u64()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// `D(n, p)`: every ordered pair independently.
    Directed,
    /// `D*(n, p)`: every unordered pair contributes both edges or neither.
    Bidirected,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomModel {
    pub kind: ModelKind,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl RandomModel {
    pub fn new(kind: ModelKind, n: usize, p: f64, seed: u64) -> Self {
        RandomModel { kind, n, p, seed }
    }

    /// `p = c / n`, clamped to 1.
    pub fn with_constant(kind: ModelKind, n: usize, c: f64, seed: u64) -> Self {
        let p = if n == 0 { 0.0 } else { (c / n as f64).min(1.0) };
        RandomModel { kind, n, p, seed }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("alpha = {alpha} gives an empty part for n = {n} (need 0 < alpha < 1/2)")]
    BadAlpha { alpha: f64, n: usize },
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub fn gen_random(model: &RandomModel) -> Result<Digraph, GenError> {
    if !(0.0..=1.0).contains(&model.p) || model.p.is_nan() {
        return Err(GenError::BadProbability(model.p));
    }
    let n = model.n;
    let mut d = Digraph::new(n);
    let mut rng = rng_for(model.seed, 0);
    match model.kind {
        ModelKind::Directed => {
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.random_bool(model.p) {
                        d.add_edge(u, v)?;
                    }
                }
            }
        }
        ModelKind::Bidirected => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(model.p) {
                        d.add_bi_edge(u, v)?;
                    }
                }
            }
        }
    }
    Ok(d)
}

/// Size of the small part: `⌊alpha·n⌋`, with a little slack so that
/// products like `0.3 · 10` round to the intended integer.
pub fn small_part_size(n: usize, alpha: f64) -> Result<usize, GenError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(GenError::BadAlpha { alpha, n });
    }
    let s = (alpha * n as f64 + 1e-9).floor() as usize;
    if s == 0 || s >= n {
        return Err(GenError::BadAlpha { alpha, n });
    }
    Ok(s)
}

/// Complete bipartite digraph with parts `0..s` and `s..n`, `s = ⌊αn⌋`,
/// every cross pair joined in both directions.
pub fn gen_bipartite_extremal(n: usize, alpha: f64) -> Result<Digraph, GenError> {
    let s = small_part_size(n, alpha)?;
    let mut d = Digraph::new(n);
    for a in 0..s {
        for b in s..n {
            d.add_bi_edge(a, b)?;
        }
    }
    Ok(d)
}

/// All edges from `S = 0..s` to `T = s..n`, `s = ⌊αn⌋`, and nothing else.
pub fn gen_oneway_extremal(n: usize, alpha: f64) -> Result<Digraph, GenError> {
    let s = small_part_size(n, alpha)?;
    let mut d = Digraph::new(n);
    for a in 0..s {
        for b in s..n {
            d.add_edge(a, b)?;
        }
    }
    Ok(d)
}

/// `host ∪ G` for `G` drawn from `model`.
pub fn perturb(host: &Digraph, model: &RandomModel) -> Result<Digraph, GenError> {
    let g = gen_random(model)?;
    Ok(host.union(&g)?)
}

/// Uniform `k`-subset of `0..n` in ascending order.
pub fn sample_subset<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let mut v = rand::seq::index::sample(rng, n, k.min(n)).into_vec();
    v.sort_unstable();
    v
}
