//! Orientation patterns of paths and cycles.
//!
//! A pattern on `k` vertices `u_1, …, u_k` is a sign sequence: sign `i` is
//! `+` when the edge between `u_i` and `u_{i+1}` points forward. Paths carry
//! `k − 1` signs, cycles `k` (the last one joins `u_k` to `u_1`). Positions
//! in this module are 1-based so that the construction code can follow the
//! usual `u_i` indexing literally.

use crate::CoreError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientationPattern {
    kind: PatternKind,
    signs: Vec<Sign>,
}

impl OrientationPattern {
    pub fn path(signs: Vec<Sign>) -> Result<Self, CoreError> {
        if signs.is_empty() {
            return Err(CoreError::PatternTooShort);
        }
        Ok(OrientationPattern {
            kind: PatternKind::Path,
            signs,
        })
    }

    /// A cycle pattern; two signs denote the digon.
    pub fn cycle(signs: Vec<Sign>) -> Result<Self, CoreError> {
        if signs.len() < 2 {
            return Err(CoreError::PatternTooShort);
        }
        Ok(OrientationPattern {
            kind: PatternKind::Cycle,
            signs,
        })
    }

    pub fn new(kind: PatternKind, signs: Vec<Sign>) -> Result<Self, CoreError> {
        match kind {
            PatternKind::Path => Self::path(signs),
            PatternKind::Cycle => Self::cycle(signs),
        }
    }

    pub fn consistent(kind: PatternKind, k: usize) -> Result<Self, CoreError> {
        let len = Self::sign_count(kind, k)?;
        Self::new(kind, vec![Sign::Plus; len])
    }

    /// Alternating signs starting with `+`. An odd cycle cannot alternate
    /// everywhere; its last sign repeats the first.
    pub fn antidirected(kind: PatternKind, k: usize) -> Result<Self, CoreError> {
        let len = Self::sign_count(kind, k)?;
        let signs = (0..len)
            .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
            .collect();
        Self::new(kind, signs)
    }

    fn sign_count(kind: PatternKind, k: usize) -> Result<usize, CoreError> {
        if k < 2 {
            return Err(CoreError::PatternTooShort);
        }
        Ok(match kind {
            PatternKind::Path => k - 1,
            PatternKind::Cycle => k,
        })
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == PatternKind::Cycle
    }

    pub fn is_digon(&self) -> bool {
        self.is_cycle() && self.signs.len() == 2
    }

    /// Number of vertices `k`.
    pub fn k(&self) -> usize {
        match self.kind {
            PatternKind::Path => self.signs.len() + 1,
            PatternKind::Cycle => self.signs.len(),
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// `σ(u_i u_{i+1})`; for cycles `i = k` refers to the closing edge.
    pub fn sigma(&self, i: usize) -> Sign {
        assert!(
            i >= 1 && i <= self.signs.len(),
            "edge index {i} out of range"
        );
        self.signs[i - 1]
    }

    /// `σ(u_a u_b)` for adjacent positions `a`, `b`.
    pub fn step(&self, a: usize, b: usize) -> Sign {
        let k = self.k();
        if b == a + 1 || (self.is_cycle() && a == k && b == 1) {
            self.sigma(a)
        } else if a == b + 1 || (self.is_cycle() && b == k && a == 1) {
            self.sigma(b).flip()
        } else {
            panic!("positions {a} and {b} are not adjacent")
        }
    }

    /// Indegree of `u_i` inside the pattern.
    pub fn in_degree_at(&self, i: usize) -> usize {
        let k = self.k();
        let mut d = 0;
        let prev = if i > 1 {
            Some(i - 1)
        } else if self.is_cycle() {
            Some(k)
        } else {
            None
        };
        let next = if i < k {
            Some(i + 1)
        } else if self.is_cycle() {
            Some(1)
        } else {
            None
        };
        for j in [prev, next].into_iter().flatten() {
            if self.step(j, i) == Sign::Plus {
                d += 1;
            }
        }
        d
    }

    /// Outdegree (`+`) or indegree (`−`) of `u_i` inside the pattern.
    pub fn degree_at(&self, i: usize, s: Sign) -> usize {
        let k = self.k();
        let nbrs = (i > 1 || self.is_cycle()) as usize + (i < k || self.is_cycle()) as usize;
        let ind = self.in_degree_at(i);
        match s {
            Sign::Minus => ind,
            Sign::Plus => nbrs - ind,
        }
    }

    /// The path `(u_i, …, u_j)` oriented exactly as here. For cycles the
    /// window wraps around, so `j` may exceed `k` (up to `i + k − 1`).
    pub fn subpattern(&self, i: usize, j: usize) -> Result<OrientationPattern, CoreError> {
        let k = self.k();
        let ok = match self.kind {
            PatternKind::Path => i >= 1 && i < j && j <= k,
            PatternKind::Cycle => i >= 1 && i <= k && i < j && j < i + k,
        };
        if !ok {
            return Err(CoreError::BadRange { i, j, k });
        }
        let len = self.signs.len();
        let signs = (i..j).map(|e| self.signs[(e - 1) % len]).collect();
        OrientationPattern::path(signs)
    }

    /// The pattern read backwards: `u_k` becomes the first vertex.
    pub fn reversed(&self) -> OrientationPattern {
        let signs = self.signs.iter().rev().map(|s| s.flip()).collect();
        OrientationPattern {
            kind: self.kind,
            signs,
        }
    }

    /// Cycle pattern whose first vertex is the old `u_{r+1}`.
    pub fn rotated(&self, r: usize) -> OrientationPattern {
        assert!(self.is_cycle(), "only cycles rotate");
        let len = self.signs.len();
        let signs = (0..len).map(|e| self.signs[(e + r) % len]).collect();
        OrientationPattern {
            kind: self.kind,
            signs,
        }
    }

    /// Every edge points forward (or every edge backward).
    pub fn is_consistent(&self) -> bool {
        self.signs.iter().all(|&s| s == self.signs[0])
    }

    /// Number of vertices of pattern-indegree exactly one.
    pub fn count_indegree_one(&self) -> usize {
        (1..=self.k()).filter(|&i| self.in_degree_at(i) == 1).count()
    }
}

impl fmt::Display for OrientationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            PatternKind::Path => "path",
            PatternKind::Cycle => "cycle",
        };
        write!(f, "{kind} ")?;
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for OrientationPattern {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let kind = match parts.next() {
            Some("path") => PatternKind::Path,
            Some("cycle") => PatternKind::Cycle,
            other => {
                return Err(CoreError::Parse(format!(
                    "expected `path` or `cycle`, got {other:?}"
                )))
            }
        };
        let body = parts
            .next()
            .ok_or_else(|| CoreError::Parse("missing sign string".into()))?;
        if parts.next().is_some() {
            return Err(CoreError::Parse("trailing input after sign string".into()));
        }
        let signs = body
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| CoreError::Parse(format!("bad sign {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        OrientationPattern::new(kind, signs)
    }
}

/// All `2^len` sign strings of length `len`, in binary counting order with
/// `+` as the zero digit.
pub fn all_sign_strings(len: usize) -> impl Iterator<Item = Vec<Sign>> {
    assert!(len < usize::BITS as usize);
    (0usize..(1 << len)).map(move |mask| {
        (0..len)
            .map(|b| {
                if mask >> b & 1 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect()
    })
}
