use crate::digraph::Digraph;
use crate::pattern::{OrientationPattern, PatternKind, Sign};
use crate::vset::VertexSet;
use serde::{Deserialize, Serialize};

/// A vertex sequence claimed to realise `pattern`. Nothing is checked at
/// construction; use [`verify_embedding`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub pattern: OrientationPattern,
    pub vertices: Vec<usize>,
}

impl Embedding {
    pub fn new(pattern: OrientationPattern, vertices: Vec<usize>) -> Self {
        Embedding { pattern, vertices }
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("non-empty embedding")
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.vertices.iter().copied())
    }
}

/// Whether `e` is a copy of its pattern in `d`: right length, distinct
/// vertices in range, and every pattern edge present with its orientation.
/// A two-vertex cycle needs both edges.
pub fn verify_embedding(d: &Digraph, e: &Embedding) -> bool {
    let p = &e.pattern;
    let vs = &e.vertices;
    if vs.len() != p.k() {
        return false;
    }
    let mut seen = VertexSet::new(d.n());
    for &v in vs {
        if v >= d.n() || !seen.insert(v) {
            return false;
        }
    }
    if p.is_digon() {
        return d.has_bi_edge(vs[0], vs[1]);
    }
    let k = vs.len();
    p.signs()
        .iter()
        .enumerate()
        .all(|(i, &s)| d.has_signed_edge(vs[i], vs[(i + 1) % k], s))
}

/// Every consecutive pair of `path` is joined in both directions.
pub fn is_bidirected_path(d: &Digraph, path: &[usize]) -> bool {
    let mut seen = VertexSet::new(d.n());
    for &v in path {
        if v >= d.n() || !seen.insert(v) {
            return false;
        }
    }
    path.windows(2).all(|w| d.has_bi_edge(w[0], w[1]))
}

/// Appends `next` to `walk`; the two must share the joining vertex.
pub fn concat(walk: &mut Vec<usize>, next: &[usize]) {
    match (walk.last(), next.first()) {
        (None, _) => walk.extend_from_slice(next),
        (Some(&a), Some(&b)) => {
            assert_eq!(a, b, "concatenated paths must share their joining vertex");
            walk.extend_from_slice(&next[1..]);
        }
        (Some(_), None) => {}
    }
}

/// An all-forward path pattern on `k ≥ 2` vertices; bidirected paths
/// realise it trivially.
pub fn forward_path(k: usize) -> OrientationPattern {
    OrientationPattern::consistent(PatternKind::Path, k).expect("k >= 2")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessMode {
    Directed,
    Bidirected,
}

/// Two disjoint `t`-sets with no edge from `u` to `w` (directed mode) or no
/// bidirected pair across (bidirected mode).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudorandomWitness {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub mode: WitnessMode,
    pub t: usize,
}

impl PseudorandomWitness {
    pub fn bidirected(u: Vec<usize>, w: Vec<usize>, t: usize) -> Self {
        PseudorandomWitness {
            u,
            w,
            mode: WitnessMode::Bidirected,
            t,
        }
    }

    /// Exhaustive check over `U × W`.
    pub fn is_valid(&self, d: &Digraph) -> bool {
        if self.t == 0 || self.u.len() != self.t || self.w.len() != self.t {
            return false;
        }
        let us = VertexSet::from_iter(d.n(), self.u.iter().copied().filter(|&x| x < d.n()));
        let ws = VertexSet::from_iter(d.n(), self.w.iter().copied().filter(|&x| x < d.n()));
        if us.len() != self.t || ws.len() != self.t || !us.is_disjoint(&ws) {
            return false;
        }
        for &a in &self.u {
            for &b in &self.w {
                let bad = match self.mode {
                    WitnessMode::Directed => d.has_edge(a, b),
                    WitnessMode::Bidirected => d.has_edge(a, b) && d.has_edge(b, a),
                };
                if bad {
                    return false;
                }
            }
        }
        true
    }
}

/// The sign of the closing edge `u_k → u_1` check used by callers that
/// build cycles from paths.
pub fn closing_sign(p: &OrientationPattern) -> Sign {
    assert!(p.is_cycle());
    p.sigma(p.k())
}
