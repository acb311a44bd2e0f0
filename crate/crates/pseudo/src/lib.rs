//! Constructive consequences of bipseudorandomness.
//!
//! A digraph is `t`-bipseudorandom when any two disjoint `t`-sets are joined
//! by a bidirected edge. Each routine here either builds the promised object
//! or returns the pair of sets that broke the promise, as a
//! [`PseudorandomWitness`] that callers can re-check exhaustively.

mod exact;
mod search;

pub use exact::{falsify_bipseudorandom, is_bipseudorandom_exact};
pub use search::{
    bidirected_edge_between, connecting_path, long_bidirected_path,
    long_bidirected_path_within, split_disjoint, three_edge_connector, witness_if_separated,
};

use digraph_core::PseudorandomWitness;

/// The set-size parameter `t = max(1, ⌈εn⌉)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PseudoParams {
    pub t: usize,
    pub epsilon: f64,
}

impl PseudoParams {
    pub fn from_epsilon(n: usize, epsilon: f64) -> Self {
        let t = ((epsilon * n as f64) - 1e-9).ceil().max(1.0) as usize;
        PseudoParams { t, epsilon }
    }

    pub fn with_t(n: usize, t: usize) -> Self {
        let t = t.max(1);
        PseudoParams {
            t,
            epsilon: if n == 0 { 0.0 } else { t as f64 / n as f64 },
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PseudoError {
    #[error("vertex sets overlap at {0}")]
    Overlap(usize),
    #[error("no blocks given")]
    NoBlocks,
    #[error("target length {target} exceeds the {available} available vertices")]
    TargetTooLong { target: usize, available: usize },
    #[error("exhaustive check refused for n = {n}, t = {t}")]
    TooLarge { n: usize, t: usize },
    #[error("invalid set size t = {0}")]
    BadT(usize),
    #[error("endpoints must be distinct and outside the allowed set")]
    BadEndpoints,
    #[error("search failed{}", if .witness.is_some() { " with witness" } else { "" })]
    NotFound {
        witness: Option<PseudorandomWitness>,
    },
}

impl PseudoError {
    pub fn witness(&self) -> Option<&PseudorandomWitness> {
        match self {
            PseudoError::NotFound { witness } => witness.as_ref(),
            _ => None,
        }
    }
}
