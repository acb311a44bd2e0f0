//! Absorbers for oriented paths in digraphs with large minimum total degree.
//!
//! Without a semi-degree bound a vertex may only have many neighbours on one
//! side, so every splice happens at a swap vertex of the pattern, where both
//! pattern edges point the same way. Connections run through a reservoir `X`
//! split into `X⁺` and `X⁻` by which side is large.

mod global;
mod local;
mod longpath;
mod reservoir;

pub use global::{
    activate_global_total, build_global_absorber_total, segment_pattern, GlobalAbsorberTotal,
    TotalSegmentation,
};
pub use local::{activate_local_total, build_local_absorber_total, LocalAbsorberTotal};
pub use longpath::long_path_with_degrees;
pub use reservoir::{build_reservoir, chain_absorb, link_through_reservoir, Reservoir};

use digraph_core::{Digraph, OrientationPattern, PatternKind, PseudorandomWitness, Sign, VertexSet};
use montgomery::MontError;
use pseudo::PseudoError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TotalError {
    #[error("{stage}: {source}")]
    Pseudo {
        stage: &'static str,
        #[source]
        source: PseudoError,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("vertex {vertex} has no usable neighbours left")]
    NeighbourhoodTooSmall { vertex: usize },
    #[error("vertex {vertex} has fewer than αn/2 neighbours on both sides")]
    LowDegree { vertex: usize },
    #[error("degree partition side {side:?} has {got} vertices, need {need}")]
    SmallSide { side: Sign, got: usize, need: usize },
    #[error("no reservoir passed the checks in {retries} samples")]
    ReservoirSampling { retries: usize },
    #[error("need {needed} swap vertices, found {found}")]
    NotEnoughSwaps { needed: usize, found: usize },
    #[error("no cut of the pattern leaves enough good segments")]
    NoSegmentation,
    #[error("endpoints are not compatible with the pattern")]
    NotCompatible,
    #[error("{0} is not a slot of this absorber")]
    NotASlot(usize),
    #[error(transparent)]
    Template(#[from] MontError),
    #[error("template has no perfect matching for the leftover reservoir vertices")]
    MatchingDefect,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

impl TotalError {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(PseudoError) -> TotalError {
        move |source| TotalError::Pseudo { stage, source }
    }

    pub(crate) fn missing(stage: &'static str, witness: Option<PseudorandomWitness>) -> TotalError {
        TotalError::Pseudo {
            stage,
            source: PseudoError::NotFound { witness },
        }
    }

    /// The pseudorandomness witness behind a failure, if any.
    pub fn witness(&self) -> Option<&PseudorandomWitness> {
        match self {
            TotalError::Pseudo { source, .. } => source.witness(),
            _ => None,
        }
    }
}

/// Size parameters of the total-degree global absorber.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TotalParams {
    /// Degree fraction; sides count as large from `αn/2` on.
    pub alpha: f64,
    pub m: usize,
    pub beta_m: usize,
    /// Size of the leftover set an activation absorbs, nominally `9εn`.
    pub r: usize,
    /// Vertices per segment of `P¹`, nominally `516/η`.
    pub seg_len: usize,
    /// Template degree cap and slots per local absorber.
    pub slots: usize,
    pub witness_t: usize,
    pub x_retries: usize,
}

pub const DEFAULT_SLOTS: usize = 40;
pub const DEFAULT_SEG_LEN: usize = 129;
pub const DEFAULT_X_RETRIES: usize = 100;

impl TotalParams {
    /// `β = α/7`, `m = ⌈αη³n/50000⌉`, `p = ⌈516/η⌉`, `r = ⌈9εn⌉`.
    pub fn asymptotic(n: usize, alpha: f64, eta: f64, epsilon: f64) -> Self {
        let m = ((alpha * eta.powi(3) * n as f64 / 50000.0).ceil() as usize).max(1);
        let beta_m = ((alpha / 7.0 * m as f64).round() as usize).max(1);
        let en = epsilon * n as f64;
        TotalParams {
            alpha,
            m,
            beta_m,
            r: ((9.0 * en - 1e-9).ceil() as usize).max(2),
            seg_len: (516.0 / eta).ceil() as usize,
            slots: DEFAULT_SLOTS,
            witness_t: ((en - 1e-9).ceil() as usize).max(1),
            x_retries: DEFAULT_X_RETRIES,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta_m as f64 / self.m as f64
    }

    pub fn x_len(&self) -> usize {
        self.m + self.beta_m
    }

    /// `ℓ = βm + r − 4`, the length of the chained piece.
    pub fn chain_len(&self) -> usize {
        (self.beta_m + self.r).saturating_sub(4)
    }

    /// Swap vertices a segment needs to host a local absorber with the full
    /// number of slots: `3·40 + 7 = 127` by default.
    pub fn good_threshold(&self) -> usize {
        3 * self.slots + 7
    }

    /// `|A| = k − r`.
    pub fn absorber_size(&self, k: usize) -> usize {
        k - self.r
    }
}

/// Positions `i ∈ {2, …, k−1}` where `u_i` has pattern indegree 0 or 2.
pub fn swap_vertices(p: &OrientationPattern) -> Vec<usize> {
    if p.kind() != PatternKind::Path || p.k() < 3 {
        return Vec::new();
    }
    (2..p.k()).filter(|&i| p.in_degree_at(i) != 1).collect()
}

pub(crate) fn at_least(deg: usize, frac: f64, n: usize) -> bool {
    deg as f64 >= frac * n as f64
}

/// `d^{σ(u₁u₂)}(v) ≥ αn` and `d^{σ(u_k u_{k−1})}(v′) ≥ αn`.
pub fn is_compatible(d: &Digraph, v: usize, v_end: usize, p: &OrientationPattern, alpha: f64) -> bool {
    let k = p.k();
    k >= 2
        && at_least(d.degree(v, p.step(1, 2)), alpha, d.n())
        && at_least(d.degree(v_end, p.step(k, k - 1)), alpha, d.n())
}

/// The side on which `v` has more neighbours, `+` on ties.
pub fn larger_side(d: &Digraph, v: usize) -> Sign {
    if d.out_degree(v) >= d.in_degree(v) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// `V⁺ ∪ V⁻ = V(D)` with `d*(v) ≥ αn/2` on `V*`.
pub fn partition_by_degree(d: &Digraph, alpha: f64) -> Result<(VertexSet, VertexSet), TotalError> {
    partition_within(d, &d.vertex_set(), alpha)
}

/// The same split of `allowed`, with degrees still counted in all of `D`.
///
/// With `U*` the vertices of large `*`-degree: if `U⁺ ∖ U⁻` is large it is
/// `V⁺` and `V⁻ = U⁻`; symmetrically for `U⁻ ∖ U⁺`; otherwise the
/// intersection is dealt in id order to whichever side is currently smaller.
pub fn partition_within(
    d: &Digraph,
    allowed: &VertexSet,
    alpha: f64,
) -> Result<(VertexSet, VertexSet), TotalError> {
    let n = d.n();
    let half = alpha / 2.0;
    let mut up = VertexSet::new(n);
    let mut um = VertexSet::new(n);
    for v in allowed.iter() {
        let big_out = at_least(d.out_degree(v), half, n);
        let big_in = at_least(d.in_degree(v), half, n);
        if !big_out && !big_in {
            return Err(TotalError::LowDegree { vertex: v });
        }
        if big_out {
            up.insert(v);
        }
        if big_in {
            um.insert(v);
        }
    }
    let only_plus = up.difference(&um);
    let only_minus = um.difference(&up);
    let enough = |s: &VertexSet| at_least(s.len(), half, n);
    if enough(&only_plus) {
        return Ok((only_plus, um));
    }
    if enough(&only_minus) {
        return Ok((up, only_minus));
    }
    let both = up.intersection(&um);
    let mut vp = only_plus;
    let mut vm = only_minus;
    for v in both.iter() {
        if vp.len() <= vm.len() {
            vp.insert(v);
        } else {
            vm.insert(v);
        }
    }
    Ok((vp, vm))
}
