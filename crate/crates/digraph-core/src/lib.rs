//! Digraphs on dense vertex ids, orientation patterns of paths and cycles,
//! and independent verification of embeddings and pseudorandomness
//! witnesses.
//!
//! Every other crate in the workspace builds on these types. Digraphs are
//! built once and then shared read-only.

mod digraph;
mod embedding;
pub mod io;
mod pattern;
mod vset;

pub use digraph::Digraph;
pub use embedding::{
    closing_sign, concat, forward_path, is_bidirected_path, verify_embedding, Embedding,
    PseudorandomWitness, WitnessMode,
};
pub use pattern::{all_sign_strings, OrientationPattern, PatternKind, Sign};
pub use vset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex counts differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("pattern needs at least two vertices")]
    PatternTooShort,
    #[error("positions {i}..{j} invalid for a pattern on {k} vertices")]
    BadRange { i: usize, j: usize, k: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}
