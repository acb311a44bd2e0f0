//! Absorbers for oriented paths in digraphs with large minimum semi-degree.
//!
//! A local absorber is a bidirected spine `v₁ … v₂ₖ₊₂` hanging off a start
//! vertex `v`, built so that any one of `k` slot vertices can be spliced in
//! between `v₂ᵢ` and `v₂ᵢ₊₁`. The global absorber strings `3m` of them
//! together, one per vertex of `Z` in a [`montgomery`] template, and adds a
//! reservoir `X` that soaks up an arbitrary leftover set `R`.

mod connect;
mod global;
mod local;

pub use connect::absorb_r_into_x;
pub use global::{activate_global_semi, build_global_absorber_semi, GlobalAbsorberSemi};
pub use local::{activate_local_semi, build_local_absorber_semi, LocalAbsorberSemi};

use montgomery::MontError;
use pseudo::PseudoError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AbsorbError {
    #[error("vertex {vertex} has no usable neighbours left")]
    NeighbourhoodTooSmall { vertex: usize },
    #[error("{stage}: {source}")]
    Pseudo {
        stage: &'static str,
        #[source]
        source: PseudoError,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not a slot of this absorber")]
    NotASlot(usize),
    #[error("no reservoir passed the degree check in {retries} samples")]
    XSampling { retries: usize },
    #[error(transparent)]
    Template(#[from] MontError),
    #[error("template has no perfect matching for the leftover reservoir vertices")]
    MatchingDefect,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

impl AbsorbError {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(PseudoError) -> AbsorbError {
        move |source| AbsorbError::Pseudo { stage, source }
    }

    /// The pseudorandomness witness behind a failure, if any.
    pub fn witness(&self) -> Option<&digraph_core::PseudorandomWitness> {
        match self {
            AbsorbError::Pseudo { source, .. } => source.witness(),
            _ => None,
        }
    }
}

/// Size parameters of the global absorber.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemiParams {
    /// Template size: `|X| = m + βm`, `|Y| = 2m`, `|Z| = 3m`.
    pub m: usize,
    pub beta_m: usize,
    /// Slots per local absorber, also the template degree cap.
    pub slots: usize,
    /// Vertices left off the long bidirected path when absorbing `R`,
    /// nominally `2εn`.
    pub leftover: usize,
    /// Set size used for witnesses, nominally `⌈εn⌉`.
    pub witness_t: usize,
    /// Reservoir samples tried before giving up.
    pub x_retries: usize,
}

pub const DEFAULT_SLOTS: usize = 40;
pub const DEFAULT_X_RETRIES: usize = 100;

impl SemiParams {
    /// Constants as in the asymptotic argument: `p = ηα/2024`, `β = α/10`,
    /// `ε = pβ/6`, `m = ⌊pn⌋ + 1`, `βm` rounded to the nearest positive integer.
    pub fn asymptotic(n: usize, alpha: f64, eta: f64) -> Self {
        let p = eta * alpha / 2024.0;
        let beta = alpha / 10.0;
        let eps = p * beta / 6.0;
        let m = (p * n as f64).floor() as usize + 1;
        let beta_m = ((beta * m as f64).round() as usize).max(1);
        Self::with_epsilon(n, m, beta_m, eps)
    }

    /// Explicit `m`, `βm` and `ε`.
    pub fn with_epsilon(n: usize, m: usize, beta_m: usize, epsilon: f64) -> Self {
        let en = epsilon * n as f64;
        SemiParams {
            m,
            beta_m,
            slots: DEFAULT_SLOTS,
            leftover: ((2.0 * en).round() as usize).max(1),
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

    /// Pattern positions consumed by one local absorber, excluding the
    /// shared start.
    pub fn stride(&self) -> usize {
        2 * self.slots + 4
    }

    /// `|X ∪ Y| + 1 + 3m·(2·slots + 3)`, which is `(252 + β)m + 1` for 40 slots.
    pub fn absorber_size(&self) -> usize {
        3 * self.m + self.beta_m + 1 + 3 * self.m * (2 * self.slots + 3)
    }

    /// Required number of neighbours in `X` for every vertex and direction.
    pub fn x_degree_threshold(&self) -> usize {
        2 * self.beta_m + 2
    }
}
