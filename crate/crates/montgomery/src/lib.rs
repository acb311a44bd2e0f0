//! A sparse bipartite template `H` between `X ∪ Y` and `Z` with
//! `|X| = m + βm`, `|Y| = 2m`, `|Z| = 3m`, in which deleting any `βm`
//! vertices of `X` leaves a perfect matching.
//!
//! No explicit construction is used. Each `z` draws up to half the degree
//! cap of neighbours in `X` and in `Y` over random rounds, subject to the
//! cap on both sides, and the result is smoke-tested before being handed
//! out. Robustness for an arbitrary `X′` is then checked lazily by
//! [`robust_matching`], which reports `None` on a defective template.

mod matching;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

pub const DEFAULT_DEGREE_CAP: usize = 40;

/// Templates tried per build before giving up.
pub const MAX_BUILD_ATTEMPTS: usize = 10;

/// Largest `m` accepted by [`verify_template_exhaustive`].
pub const EXHAUSTIVE_MAX_M: usize = 6;

const SMOKE_SAMPLES: usize = 64;
const SMOKE_EXHAUSTIVE_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MontError {
    #[error("beta·m = {beta}·{m} is not an integer")]
    NonIntegerBetaM { m: usize, beta: f64 },
    #[error("beta = {0} outside [0, 1]")]
    BadBeta(f64),
    #[error("expected {expected} vertices of X, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("index {0} is not a vertex of X")]
    NotInX(usize),
    #[error("index {0} repeated")]
    Duplicate(usize),
    #[error("exhaustive check refused for m = {0}")]
    TooLarge(usize),
    #[error("no robust template after {0} attempts")]
    Defective(usize),
    #[error("degree cap {cap} exceeded at {side} vertex {index}")]
    DegreeCap {
        side: &'static str,
        index: usize,
        cap: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Left vertices are numbered `0..|X|` for `X` and `|X|..|X|+|Y|` for `Y`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MontgomeryTemplate {
    m: usize,
    beta_m: usize,
    degree_cap: usize,
    z_adj: Vec<Vec<usize>>,
}

impl MontgomeryTemplate {
    /// Template with explicit neighbourhoods; `z_adj[j]` lists left indices.
    pub fn from_adjacency(
        m: usize,
        beta_m: usize,
        degree_cap: usize,
        mut z_adj: Vec<Vec<usize>>,
    ) -> Result<Self, MontError> {
        if z_adj.len() != 3 * m {
            return Err(MontError::WrongSize {
                expected: 3 * m,
                got: z_adj.len(),
            });
        }
        let left = 3 * m + beta_m;
        for nb in &mut z_adj {
            nb.sort_unstable();
            nb.dedup();
            if let Some(&bad) = nb.iter().find(|&&l| l >= left) {
                return Err(MontError::Parse(format!("left index {bad} out of range")));
            }
        }
        let t = MontgomeryTemplate {
            m,
            beta_m,
            degree_cap,
            z_adj,
        };
        t.check_degree_caps()?;
        Ok(t)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn beta_m(&self) -> usize {
        self.beta_m
    }

    pub fn beta(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.beta_m as f64 / self.m as f64
        }
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn x_len(&self) -> usize {
        self.m + self.beta_m
    }

    pub fn y_len(&self) -> usize {
        2 * self.m
    }

    pub fn z_len(&self) -> usize {
        3 * self.m
    }

    pub fn left_len(&self) -> usize {
        self.x_len() + self.y_len()
    }

    pub fn is_x(&self, left: usize) -> bool {
        left < self.x_len()
    }

    /// Left neighbours of `z`, ascending.
    pub fn neighbors_of_z(&self, z: usize) -> &[usize] {
        &self.z_adj[z]
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.left_len()];
        for nb in &self.z_adj {
            for &l in nb {
                deg[l] += 1;
            }
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        let z = self.z_adj.iter().map(Vec::len).max().unwrap_or(0);
        z.max(self.left_degrees().into_iter().max().unwrap_or(0))
    }

    pub fn edge_count(&self) -> usize {
        self.z_adj.iter().map(Vec::len).sum()
    }

    pub fn check_degree_caps(&self) -> Result<(), MontError> {
        let cap = self.degree_cap;
        if let Some(j) = self.z_adj.iter().position(|nb| nb.len() > cap) {
            return Err(MontError::DegreeCap {
                side: "Z",
                index: j,
                cap,
            });
        }
        if let Some(l) = self.left_degrees().iter().position(|&d| d > cap) {
            return Err(MontError::DegreeCap {
                side: "X∪Y",
                index: l,
                cap,
            });
        }
        Ok(())
    }

    /// Header `|X| |Y| |Z| cap edges`, then one `z left` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<(), MontError> {
        let io = |e: std::io::Error| MontError::Io(e.to_string());
        writeln!(
            out,
            "{} {} {} {} {}",
            self.x_len(),
            self.y_len(),
            self.z_len(),
            self.degree_cap,
            self.edge_count()
        )
        .map_err(io)?;
        for (z, nb) in self.z_adj.iter().enumerate() {
            for &l in nb {
                writeln!(out, "{z} {l}").map_err(io)?;
            }
        }
        Ok(())
    }

    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self, MontError> {
        let mut lines = input
            .lines()
            .map(|l| l.map_err(|e| MontError::Io(e.to_string())))
            .filter(|l| !matches!(l, Ok(s) if s.trim().is_empty() || s.starts_with('#')));
        let header = lines
            .next()
            .ok_or_else(|| MontError::Parse("missing header".into()))??;
        let h = parse_numbers(&header, 5)?;
        let (x, y, z, cap, e) = (h[0], h[1], h[2], h[3], h[4]);
        let m = z / 3;
        if z != 3 * m || y != 2 * m || x < m {
            return Err(MontError::Parse(format!("inconsistent sizes {x} {y} {z}")));
        }
        let mut z_adj = vec![Vec::new(); z];
        let mut count = 0;
        for line in lines {
            let v = parse_numbers(&line?, 2)?;
            if v[0] >= z {
                return Err(MontError::Parse(format!("z index {} out of range", v[0])));
            }
            z_adj[v[0]].push(v[1]);
            count += 1;
        }
        if count != e {
            return Err(MontError::Parse(format!("expected {e} edges, read {count}")));
        }
        MontgomeryTemplate::from_adjacency(m, x - m, cap, z_adj)
    }
}

fn parse_numbers(line: &str, want: usize) -> Result<Vec<usize>, MontError> {
    let v: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
    match v {
        Ok(v) if v.len() == want => Ok(v),
        _ => Err(MontError::Parse(format!("bad line {line:?}"))),
    }
}

/// `βm` as an integer, if it is one.
pub fn beta_m_of(m: usize, beta: f64) -> Result<usize, MontError> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(MontError::BadBeta(beta));
    }
    let x = beta * m as f64;
    let r = x.round();
    if (x - r).abs() > 1e-9 {
        return Err(MontError::NonIntegerBetaM { m, beta });
    }
    Ok(r as usize)
}

pub fn build_template(m: usize, beta: f64, seed: u64) -> Result<MontgomeryTemplate, MontError> {
    build_template_with_cap(m, beta, DEFAULT_DEGREE_CAP, seed)
}

/// Random template that passes its smoke test: exhaustive when the number
/// of `X′` choices is small, otherwise a seeded sample of them.
pub fn build_template_with_cap(
    m: usize,
    beta: f64,
    cap: usize,
    seed: u64,
) -> Result<MontgomeryTemplate, MontError> {
    let beta_m = beta_m_of(m, beta)?;
    for attempt in 0..MAX_BUILD_ATTEMPTS as u64 {
        let s = randgen::derive_seed(seed, attempt);
        let t = random_template(m, beta_m, cap, s);
        t.check_degree_caps()?;
        if smoke_test(&t, s) {
            return Ok(t);
        }
    }
    Err(MontError::Defective(MAX_BUILD_ATTEMPTS))
}

fn random_template(m: usize, beta_m: usize, cap: usize, seed: u64) -> MontgomeryTemplate {
    let mut rng = randgen::rng_for(seed, 0);
    let (nx, ny, nz) = (m + beta_m, 2 * m, 3 * m);
    let x_want = cap.div_ceil(2).min(nx);
    let y_want = (cap - cap.div_ceil(2)).min(ny);
    let mut z_adj: Vec<Vec<usize>> = vec![Vec::new(); nz];
    let mut left_deg = vec![0usize; nx + ny];
    let mut x_got = vec![0usize; nz];
    let mut y_got = vec![0usize; nz];
    let mut order: Vec<usize> = (0..nz).collect();
    let mut eligible = Vec::new();
    for _ in 0..x_want.max(y_want) {
        order.shuffle(&mut rng);
        for &z in &order {
            for (range, got, want) in [
                (0..nx, &mut x_got, x_want),
                (nx..nx + ny, &mut y_got, y_want),
            ] {
                if got[z] >= want {
                    continue;
                }
                eligible.clear();
                eligible.extend(
                    range.filter(|&l| left_deg[l] < cap && !z_adj[z].contains(&l)),
                );
                if eligible.is_empty() {
                    continue;
                }
                let l = eligible[rng.random_range(0..eligible.len())];
                z_adj[z].push(l);
                left_deg[l] += 1;
                got[z] += 1;
            }
        }
    }
    for nb in &mut z_adj {
        nb.sort_unstable();
    }
    MontgomeryTemplate {
        m,
        beta_m,
        degree_cap: cap,
        z_adj,
    }
}

fn smoke_test(t: &MontgomeryTemplate, seed: u64) -> bool {
    if t.z_adj.iter().any(Vec::is_empty) && t.m > 0 {
        return false;
    }
    if binomial(t.x_len(), t.m) <= SMOKE_EXHAUSTIVE_LIMIT {
        return all_choices_match(t);
    }
    let mut rng = randgen::rng_for(seed, 1);
    (0..SMOKE_SAMPLES).all(|_| {
        let xs = randgen::sample_subset(&mut rng, t.x_len(), t.m);
        matches!(robust_matching(t, &xs), Ok(Some(_)))
    })
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u64 = 1;
    for i in 0..k as u64 {
        r = r.saturating_mul(n as u64 - i) / (i + 1);
    }
    r
}

fn all_choices_match(t: &MontgomeryTemplate) -> bool {
    let (n, k) = (t.x_len(), t.m);
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !matches!(robust_matching(t, &idx), Ok(Some(_))) {
            return false;
        }
        // next k-combination of 0..n in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return true;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Perfect matching of `Z` into `X′ ∪ Y`: entry `j` is the left vertex
/// matched to `z_j`. `None` means the template is defective for this `X′`.
pub fn robust_matching(
    t: &MontgomeryTemplate,
    x_prime: &[usize],
) -> Result<Option<Vec<usize>>, MontError> {
    if x_prime.len() != t.m {
        return Err(MontError::WrongSize {
            expected: t.m,
            got: x_prime.len(),
        });
    }
    let mut ok = vec![false; t.left_len()];
    for &x in x_prime {
        if !t.is_x(x) {
            return Err(MontError::NotInX(x));
        }
        if ok[x] {
            return Err(MontError::Duplicate(x));
        }
        ok[x] = true;
    }
    for flag in &mut ok[t.x_len()..] {
        *flag = true;
    }
    let mates = matching::max_matching(&t.z_adj, t.left_len(), &ok);
    let Some(mates) = mates.into_iter().collect::<Option<Vec<usize>>>() else {
        return Ok(None);
    };
    let mut used = vec![false; t.left_len()];
    for (z, &l) in mates.iter().enumerate() {
        assert!(ok[l] && !used[l] && t.z_adj[z].binary_search(&l).is_ok());
        used[l] = true;
    }
    Ok(Some(mates))
}

/// Whether every `m`-subset of `X` leaves a perfect matching.
pub fn verify_template_exhaustive(t: &MontgomeryTemplate) -> Result<bool, MontError> {
    if t.m > EXHAUSTIVE_MAX_M {
        return Err(MontError::TooLarge(t.m));
    }
    Ok(all_choices_match(t))
}
