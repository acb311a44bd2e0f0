use crate::pattern::Sign;
use crate::vset::VertexSet;
use crate::CoreError;

/// Loop-free digraph on vertices `0..n` with at most one edge per ordered pair.
///
/// Out-, in- and bidirected neighbourhoods are stored as bitsets and kept in
/// sync by [`Digraph::add_edge`].
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_adj: Vec<VertexSet>,
    in_adj: Vec<VertexSet>,
    bi_adj: Vec<VertexSet>,
    edges: usize,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            out_adj: vec![VertexSet::new(n); n],
            in_adj: vec![VertexSet::new(n); n],
            bi_adj: vec![VertexSet::new(n); n],
            edges: 0,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(
        n: usize,
        edges: I,
    ) -> Result<Self, CoreError> {
        let mut d = Digraph::new(n);
        for (u, v) in edges {
            d.add_edge(u, v)?;
        }
        Ok(d)
    }

    /// Complete bidirected digraph.
    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.add_edge(u, v).expect("valid edge");
                }
            }
        }
        d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// Inserts `u → v`; returns whether the edge is new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, CoreError> {
        if u >= self.n || v >= self.n {
            return Err(CoreError::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(CoreError::Loop(u));
        }
        if !self.out_adj[u].insert(v) {
            return Ok(false);
        }
        self.in_adj[v].insert(u);
        self.edges += 1;
        if self.out_adj[v].contains(u) {
            self.bi_adj[u].insert(v);
            self.bi_adj[v].insert(u);
        }
        Ok(true)
    }

    /// Inserts both `u → v` and `v → u`.
    pub fn add_bi_edge(&mut self, u: usize, v: usize) -> Result<(), CoreError> {
        self.add_edge(u, v)?;
        self.add_edge(v, u)?;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out_adj[u].contains(v)
    }

    pub fn has_bi_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bi_adj[u].contains(v)
    }

    /// Edge between `u` and `v` oriented by `s`: `+` is `u → v`, `−` is `v → u`.
    pub fn has_signed_edge(&self, u: usize, v: usize, s: Sign) -> bool {
        match s {
            Sign::Plus => self.has_edge(u, v),
            Sign::Minus => self.has_edge(v, u),
        }
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.in_adj[v]
    }

    pub fn bi_neighbors(&self, v: usize) -> &VertexSet {
        &self.bi_adj[v]
    }

    /// `N^+(v)` for `+`, `N^-(v)` for `−`: the vertices that can follow `v`
    /// along a pattern edge of sign `s`.
    pub fn neighbors(&self, v: usize, s: Sign) -> &VertexSet {
        match s {
            Sign::Plus => &self.out_adj[v],
            Sign::Minus => &self.in_adj[v],
        }
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn degree(&self, v: usize, s: Sign) -> usize {
        self.neighbors(v, s).len()
    }

    pub fn total_degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// `δ⁰(D)`; zero for the empty vertex set.
    pub fn min_semidegree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    /// `δ(D)`; zero for the empty vertex set.
    pub fn min_total_degree(&self) -> usize {
        (0..self.n).map(|v| self.total_degree(v)).min().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_adj[u].iter().map(move |v| (u, v)))
    }

    /// Edge union of two digraphs on the same vertex set.
    pub fn union(&self, other: &Digraph) -> Result<Digraph, CoreError> {
        if self.n != other.n {
            return Err(CoreError::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut d = self.clone();
        for (u, v) in other.edges() {
            d.add_edge(u, v)?;
        }
        Ok(d)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, m={})", self.n, self.edges)
    }
}
