use crate::{at_least, larger_side, partition_by_degree, swap_vertices, TotalError};
use digraph_core::{concat, Digraph, Embedding, OrientationPattern, PatternKind, Sign, VertexSet};
use pseudo::{connecting_path, split_disjoint, three_edge_connector, witness_if_separated};
use randgen::{derive_seed, rng_for, sample_subset};
use serde::{Deserialize, Serialize};

/// `X = X⁺ ∪ X⁻` of size `(1+β)m`, all sorted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reservoir {
    pub alpha: f64,
    pub m: usize,
    pub beta_m: usize,
    pub x: Vec<usize>,
    pub x_plus: Vec<usize>,
    pub x_minus: Vec<usize>,
}

impl Reservoir {
    pub fn x_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.x.iter().copied())
    }

    /// `X⁺` or `X⁻`.
    pub fn side(&self, n: usize, s: Sign) -> VertexSet {
        let v = match s {
            Sign::Plus => &self.x_plus,
            Sign::Minus => &self.x_minus,
        };
        VertexSet::from_iter(n, v.iter().copied())
    }

    /// Exhaustive check of the three defining properties.
    pub fn is_valid(&self, d: &Digraph) -> bool {
        let n = d.n();
        let x = self.x_set(n);
        if x.len() != self.m + self.beta_m {
            return false;
        }
        let half = self.alpha / 2.0;
        let need = 2 * self.beta_m;
        let neighbourhoods = (0..n).all(|v| {
            Sign::BOTH.iter().all(|&s| {
                !at_least(d.degree(v, s), half, n) || d.neighbors(v, s).intersection_len(&x) >= need
            })
        });
        let xp = self.side(n, Sign::Plus);
        let xm = self.side(n, Sign::Minus);
        let split = xp.is_disjoint(&xm)
            && xp.union(&xm) == x
            && xp.len() >= need
            && xm.len() >= need
            && xp.iter().all(|v| at_least(d.out_degree(v), half, n))
            && xm.iter().all(|v| at_least(d.in_degree(v), half, n));
        neighbourhoods && split
    }
}

/// Samples `X` until it is a reservoir, splitting it along a degree
/// partition of the whole vertex set.
pub fn build_reservoir(
    d: &Digraph,
    alpha: f64,
    m: usize,
    beta_m: usize,
    seed: u64,
    retries: usize,
) -> Result<Reservoir, TotalError> {
    let n = d.n();
    if m + beta_m > n || beta_m == 0 {
        return Err(TotalError::InvalidInput(format!(
            "reservoir of size {} with βm = {beta_m} in {n} vertices",
            m + beta_m
        )));
    }
    let (vp, _) = partition_by_degree(d, alpha)?;
    for attempt in 0..retries {
        let mut rng = rng_for(derive_seed(seed, attempt as u64), 0);
        let x = sample_subset(&mut rng, n, m + beta_m);
        let (x_plus, x_minus): (Vec<usize>, Vec<usize>) = x.iter().partition(|&&v| vp.contains(v));
        let res = Reservoir {
            alpha,
            m,
            beta_m,
            x,
            x_plus,
            x_minus,
        };
        if res.is_valid(d) {
            return Ok(res);
        }
    }
    Err(TotalError::ReservoirSampling { retries })
}

/// Lowest `(a, b)` with `a ∈ A`, `b ∈ B` joined both ways, or the witness
/// from disjoint halves of the two sets.
pub(crate) fn bi_edge_across(
    d: &Digraph,
    a: &VertexSet,
    b: &VertexSet,
    t: usize,
    stage: &'static str,
) -> Result<(usize, usize), TotalError> {
    if let Some(e) = a
        .iter()
        .find_map(|x| d.bi_neighbors(x).first_common(b).map(|y| (x, y)))
    {
        return Ok(e);
    }
    let parts = split_disjoint(&[a.clone(), b.clone()], usize::MAX);
    Err(TotalError::missing(stage, witness_if_separated(&parts[0], &parts[1], t)))
}

/// Copy of `p` from `v` to `v_end` whose interior lies in `X ∖ used`.
///
/// Two vertices at a time: `v_{2i}` is a neighbour of `v_{2i−1}` on the side
/// the pattern asks for, and `v_{2i+1}` a bidirected neighbour of it in the
/// half of `X` whose large side matches the next edge. For even `k` the last
/// two interior vertices come from one bidirected edge between the two end
/// neighbourhoods; for odd `k` the last three from a connecting path.
pub fn link_through_reservoir(
    d: &Digraph,
    res: &Reservoir,
    v: usize,
    v_end: usize,
    p: &OrientationPattern,
    used: &VertexSet,
    t: usize,
) -> Result<Embedding, TotalError> {
    let n = d.n();
    let k = p.k();
    if p.kind() != PatternKind::Path || k < 4 {
        return Err(TotalError::InvalidInput(format!("link needs a path on at least 4 vertices, got {k}")));
    }
    let x = res.x_set(n);
    if v == v_end || x.contains(v) || x.contains(v_end) {
        return Err(TotalError::InvalidInput("link endpoints must be distinct and outside X".into()));
    }
    let mut free = x.difference(used);
    let sides = [res.side(n, Sign::Plus), res.side(n, Sign::Minus)];
    let half_of = |s: Sign| &sides[(s == Sign::Minus) as usize];

    let mut walk = vec![v];
    let last_pair = if k.is_multiple_of(2) { k - 3 } else { k - 4 };
    let mut i = 1;
    while 2 * i < last_pair {
        let cur = walk[2 * i - 2];
        let b1 = d.neighbors(cur, p.sigma(2 * i - 1)).intersection(&free);
        let b2 = half_of(p.sigma(2 * i + 1)).intersection(&free);
        let (a, b) = bi_edge_across(d, &b1, &b2, t, "link step through X")?;
        free.remove(a);
        free.remove(b);
        walk.push(a);
        walk.push(b);
        i += 1;
    }
    debug_assert_eq!(walk.len(), last_pair);
    let cur = *walk.last().expect("walk starts at v");
    if k.is_multiple_of(2) {
        let c = three_edge_connector(d, cur, v_end, [p.sigma(k - 3), p.sigma(k - 2), p.sigma(k - 1)], &free, t)
            .map_err(TotalError::at("closing edge of link"))?;
        concat(&mut walk, &c);
    } else {
        let cands = [
            d.neighbors(cur, p.sigma(k - 4)).intersection(&free),
            free.clone(),
            d.neighbors(v_end, p.step(k, k - 1)).intersection(&free),
        ];
        let blocks = split_disjoint(&cands, usize::MAX);
        let tail = connecting_path(d, &blocks, t).map_err(TotalError::at("closing path of link"))?;
        walk.extend(tail);
        walk.push(v_end);
    }
    debug_assert_eq!(walk.len(), k);
    Ok(Embedding::new(p.clone(), walk))
}

/// Copy of `p` from `v` to `v_end` through all of `R` and `|p| − |R|`
/// reservoir vertices.
///
/// The inner vertices of `R` are placed in id order at swap vertices whose
/// edges point to their larger side, at least three positions apart, and
/// consecutive ones are linked through the reservoir.
#[allow(clippy::too_many_arguments)]
pub fn chain_absorb(
    d: &Digraph,
    res: &Reservoir,
    r: &VertexSet,
    v: usize,
    v_end: usize,
    p: &OrientationPattern,
    used: &VertexSet,
    t: usize,
) -> Result<Embedding, TotalError> {
    let n = d.n();
    let k = p.k();
    if v == v_end || !r.contains(v) || !r.contains(v_end) {
        return Err(TotalError::InvalidInput("endpoints must be distinct vertices of R".into()));
    }
    if r.intersects(&res.x_set(n)) {
        return Err(TotalError::InvalidInput("R meets the reservoir".into()));
    }
    if k < r.len() {
        return Err(TotalError::SizeMismatch { expected: r.len(), got: k });
    }
    let mut order = vec![v];
    order.extend(r.iter().filter(|&u| u != v && u != v_end));
    order.push(v_end);

    let swaps = swap_vertices(p);
    let needed = (4 * r.len()).saturating_sub(6);
    if swaps.len() < needed {
        return Err(TotalError::NotEnoughSwaps { needed, found: swaps.len() });
    }
    let mut cuts = vec![1];
    for &u in &order[1..order.len() - 1] {
        let side = larger_side(d, u);
        let prev = *cuts.last().expect("starts at 1");
        let next = swaps
            .iter()
            .copied()
            .find(|&i| i >= prev + 3 && p.degree_at(i, side) == 2)
            .ok_or(TotalError::NotEnoughSwaps { needed, found: swaps.len() })?;
        cuts.push(next);
    }
    if k < cuts.last().expect("non-empty") + 3 {
        return Err(TotalError::NotEnoughSwaps { needed, found: swaps.len() });
    }
    cuts.push(k);

    let mut taken = used.clone();
    let mut walk = vec![v];
    for (w, ends) in cuts.windows(2).enumerate() {
        let piece = p.subpattern(ends[0], ends[1]).expect("cuts increase");
        let q = link_through_reservoir(d, res, order[w], order[w + 1], &piece, &taken, t)?;
        for &x in &q.vertices[1..q.vertices.len() - 1] {
            taken.insert(x);
        }
        concat(&mut walk, &q.vertices);
    }
    Ok(Embedding::new(p.clone(), walk))
}
