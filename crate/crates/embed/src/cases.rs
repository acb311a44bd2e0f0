use crate::{brute_force_contains, EmbedConfig, Regime, Strategy, BRUTE_FORCE_MAX_N};
use absorb_semi::{activate_global_semi, build_global_absorber_semi, AbsorbError, SemiParams};
use absorb_total::{
    activate_global_total, build_global_absorber_total, build_reservoir, long_path_with_degrees,
    segment_pattern, TotalError, TotalParams,
};
use digraph_core::{Digraph, OrientationPattern, PseudorandomWitness, VertexSet};
use pseudo::{long_bidirected_path, split_disjoint, three_edge_connector, witness_if_separated, PseudoError};
use randgen::derive_seed;
use std::fmt::Display;

/// Where a construction stopped.
pub(crate) struct Fail {
    pub stage: &'static str,
    pub witness: Option<PseudorandomWitness>,
    pub diagnostic: String,
}

impl Fail {
    pub fn new(stage: &'static str, diagnostic: impl Into<String>) -> Self {
        Fail { stage, witness: None, diagnostic: diagnostic.into() }
    }
}

trait Witnessed: Display {
    fn witness_ref(&self) -> Option<&PseudorandomWitness>;
}

impl Witnessed for PseudoError {
    fn witness_ref(&self) -> Option<&PseudorandomWitness> {
        self.witness()
    }
}

impl Witnessed for AbsorbError {
    fn witness_ref(&self) -> Option<&PseudorandomWitness> {
        self.witness()
    }
}

impl Witnessed for TotalError {
    fn witness_ref(&self) -> Option<&PseudorandomWitness> {
        self.witness()
    }
}

fn at<E: Witnessed>(stage: &'static str) -> impl FnOnce(E) -> Fail {
    move |e| Fail {
        stage,
        witness: e.witness_ref().cloned(),
        diagnostic: e.to_string(),
    }
}

type Built = Result<Vec<usize>, Fail>;

pub(crate) fn dispatch(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> (Strategy, Built) {
    let n = d.n();
    let k = c.k();
    if k == 2 {
        return (Strategy::Digon, digon(d));
    }
    let short = (k as f64) <= cfg.short_limit(n);
    match cfg.regime {
        Regime::Semi => match k {
            3 => (Strategy::NeighbourhoodEdge, neighbourhood_edge(d, c, cfg)),
            _ if short => (Strategy::ShortPath, short_path(d, c, cfg)),
            _ => long_semi(d, c, cfg),
        },
        Regime::Total => {
            let good = c.count_indegree_one() as f64 <= (1.0 - cfg.eta) * n as f64;
            if !good || (k == 3 && c.is_consistent()) {
                return direct_search(d, c, cfg);
            }
            match k {
                3 => (Strategy::NeighbourhoodEdge, neighbourhood_edge(d, c, cfg)),
                _ if short => (Strategy::ReservoirClose, reservoir_close(d, c, cfg)),
                _ => long_total(d, c, cfg),
            }
        }
    }
}

/// Cycles outside the absorbing range: exhaustive on tiny hosts, otherwise
/// the short closings.
fn direct_search(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> (Strategy, Built) {
    if d.n() <= BRUTE_FORCE_MAX_N {
        let res = match brute_force_contains(d, c) {
            Ok(Some(e)) => Ok(e.vertices),
            Ok(None) => Err(Fail::new("brute force", "no copy exists")),
            Err(e) => Err(Fail::new("brute force", e.to_string())),
        };
        return (Strategy::BruteForce, res);
    }
    if c.k() == 3 {
        return (Strategy::TriangleSearch, triangle_search(d, c));
    }
    (Strategy::ShortFallback, total_fallback(d, c, cfg))
}

fn digon(d: &Digraph) -> Built {
    (0..d.n())
        .find_map(|u| d.bi_neighbors(u).iter().find(|&w| w > u).map(|w| vec![u, w]))
        .ok_or_else(|| Fail::new("digon", "no bidirected edge"))
}

/// Vertex `v` and a bidirected edge `ab` with `a` on the side of `v` the
/// first edge needs and `b` on the side the closing edge needs, over all
/// rotations of the triangle.
fn neighbourhood_edge(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> Built {
    let mut first_gap = None;
    for v in 0..d.n() {
        for r in 0..3 {
            let p = c.rotated(r);
            let a = d.neighbors(v, p.sigma(1));
            let b = d.neighbors(v, p.step(1, 3));
            for x in a.iter().filter(|&x| x != v) {
                let mut bb = b.clone();
                bb.remove(x);
                bb.remove(v);
                if let Some(y) = d.bi_neighbors(x).first_common(&bb) {
                    return Ok(unrotate(&[v, x, y], r));
                }
            }
            if first_gap.is_none() {
                first_gap = Some((a.clone(), b.clone()));
            }
        }
    }
    let mut f = Fail::new("bidirected edge between neighbourhoods", "no vertex sees a suitable edge");
    if let Some((a, b)) = first_gap {
        let parts = split_disjoint(&[a, b], usize::MAX);
        f.witness = witness_if_separated(&parts[0], &parts[1], cfg.witness_t(d.n()));
    }
    Err(f)
}

fn triangle_search(d: &Digraph, c: &OrientationPattern) -> Built {
    for u in 0..d.n() {
        for v in d.neighbors(u, c.sigma(1)).iter() {
            let ws = d.neighbors(v, c.sigma(2)).intersection(d.neighbors(u, c.step(1, 3)));
            let hit = ws.iter().find(|&w| w != u && w != v);
            if let Some(w) = hit {
                return Ok(vec![u, v, w]);
            }
        }
    }
    Err(Fail::new("triangle search", "no copy of the triangle"))
}

/// `orig[(j + r) mod k] = rot[j]`.
fn unrotate(rot: &[usize], r: usize) -> Vec<usize> {
    let k = rot.len();
    let mut orig = vec![0; k];
    for (j, &x) in rot.iter().enumerate() {
        orig[(j + r) % k] = x;
    }
    orig
}

/// Bidirected path for `u₃ … u_k`, closed by a connector `u_k u₁ u₂ u₃`
/// outside it.
fn short_path(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> Built {
    let k = c.k();
    let t = cfg.witness_t(d.n());
    let q = long_bidirected_path(d, &d.empty_set(), k - 2, t).map_err(at("long bidirected path"))?;
    let (first, last) = (q[0], q[k - 3]);
    if first == last {
        return Err(Fail::new("long bidirected path", "path on one vertex cannot be closed"));
    }
    let rest = d.vertex_set().difference(&VertexSet::from_iter(d.n(), q.iter().copied()));
    let [_, x1, x2, _] = three_edge_connector(d, last, first, [c.sigma(k), c.sigma(1), c.sigma(2)], &rest, t)
        .map_err(at("closing connector"))?;
    let mut vs = vec![x1, x2];
    vs.extend(q);
    Ok(vs)
}

fn reservoir_sizes(cfg: &EmbedConfig, n: usize) -> (usize, usize) {
    cfg.reservoir.unwrap_or_else(|| {
        let m = ((12.0 * cfg.epsilon * n as f64 / cfg.alpha).round() as usize).max(3);
        let beta_m = ((cfg.alpha * m as f64 / 12.0).round() as usize).max(1);
        (m.max(3 * beta_m), beta_m)
    })
}

/// Path `u₁ … u₄ … ` read backwards from `u₁` through `u_k` to `u₄`, built
/// outside a reservoir, then closed by a connector `u₁ u₂ u₃ u₄` inside it.
fn reservoir_close(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> Built {
    let n = d.n();
    let k = c.k();
    let t = cfg.witness_t(n);
    let half = cfg.alpha / 2.0;
    let (m, beta_m) = reservoir_sizes(cfg, n);
    let res = build_reservoir(d, half, m, beta_m, derive_seed(cfg.seed, 2), absorb_total::DEFAULT_X_RETRIES)
        .map_err(at("reservoir"))?;
    let x = res.x_set(n);
    let q = long_path_with_degrees(d, &x, k - 2, c.sigma(1), c.step(4, 3), half, t)
        .map_err(at("long path with endpoint degrees"))?;
    let (v, v_end) = (q[0], q[k - 3]);
    let [_, a, b, _] = three_edge_connector(d, v, v_end, [c.sigma(1), c.sigma(2), c.sigma(3)], &x, t)
        .map_err(at("closing through the reservoir"))?;
    let mut vs = vec![v, a, b];
    vs.extend(q[1..].iter().rev());
    Ok(vs)
}

fn total_fallback(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> Built {
    reservoir_close(d, c, cfg).or_else(|_| short_path(d, c, cfg))
}

fn build_retrying<T, E>(cfg: &EmbedConfig, mut build: impl FnMut(u64) -> Result<T, E>) -> Result<T, E> {
    let mut last = None;
    for attempt in 0..cfg.retries {
        match build(derive_seed(cfg.seed, 100 + attempt as u64)) {
            Ok(x) => return Ok(x),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `R`: the two given vertices and the lowest free ones, `size` in total.
fn leftover_set(d: &Digraph, taken: &VertexSet, ends: [usize; 2], size: usize) -> Result<VertexSet, Fail> {
    let free = d.vertex_set().difference(taken);
    let extra = size
        .checked_sub(2)
        .ok_or_else(|| Fail::new("leftover", format!("absorber leaves {size} positions")))?;
    let picked = free.lowest(extra);
    if picked.len() < extra {
        return Err(Fail::new("leftover", format!("{} free vertices, need {extra}", picked.len())));
    }
    Ok(VertexSet::from_iter(d.n(), picked.into_iter().chain(ends)))
}

/// Absorber for `u₁ … u_p`, bidirected path for the rest of the cycle, and
/// every vertex not used by either absorbed.
fn long_semi(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> (Strategy, Built) {
    let n = d.n();
    let k = c.k();
    let p = cfg.absorbed_len(n).min(k);
    let params = cfg.semi.clone().unwrap_or_else(|| SemiParams::asymptotic(n, cfg.alpha, cfg.eta));
    if p < 4 || params.absorber_size() + 2 > p {
        return sized_out(d, c, cfg, format!("absorber needs {} > {p}", params.absorber_size() + 2));
    }
    let run = || -> Built {
        let path = c.subpattern(1, p).map_err(|e| Fail::new("absorbed path", e.to_string()))?;
        let t = cfg.witness_t(n);
        let gab = build_retrying(cfg, |s| build_global_absorber_semi(d, &path, &params, s))
            .map_err(at("semi-degree absorber"))?;
        let a = gab.vertex_set(n);
        let q = long_bidirected_path(d, &a, k - p + 2, t).map_err(at("path outside the absorber"))?;
        let (v, v_end) = (q[0], q[q.len() - 1]);
        let taken = a.union(&VertexSet::from_iter(n, q.iter().copied()));
        let r = leftover_set(d, &taken, [v, v_end], p - a.len())?;
        let e = activate_global_semi(d, &gab, &r, v_end, v).map_err(at("activation"))?;
        let mut vs = e.vertices;
        vs.extend_from_slice(&q[1..q.len() - 1]);
        Ok(vs)
    };
    (Strategy::SemiAbsorber, run())
}

/// Rotation whose first `p` positions hold the most swap vertices.
fn best_rotation(c: &OrientationPattern, p: usize) -> usize {
    let k = c.k();
    let swap: Vec<usize> = (1..=k).map(|i| usize::from(c.in_degree_at(i) != 1)).collect();
    let mut cur: usize = swap[..p].iter().sum();
    let (mut best, mut arg) = (cur, 0);
    for r in 1..k {
        cur = cur + swap[(r + p - 1) % k] - swap[r - 1];
        if cur > best {
            (best, arg) = (cur, r);
        }
    }
    arg
}

fn long_total(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> (Strategy, Built) {
    let n = d.n();
    let k = c.k();
    let p = cfg.absorbed_len(n).min(k);
    let params = cfg
        .total
        .clone()
        .unwrap_or_else(|| TotalParams::asymptotic(n, cfg.alpha, cfg.eta, cfg.epsilon));
    if p < 4 {
        return sized_out(d, c, cfg, format!("absorbed path of {p} vertices"));
    }
    let r = best_rotation(c, p);
    let rc = c.rotated(r);
    let path = match rc.subpattern(1, p) {
        Ok(path) => path,
        Err(e) => return (Strategy::TotalAbsorber, Err(Fail::new("absorbed path", e.to_string()))),
    };
    if let Err(e) = segment_pattern(&path, &params) {
        return sized_out(d, c, cfg, e.to_string());
    }
    let run = || -> Built {
        let t = cfg.witness_t(n);
        let gab = build_retrying(cfg, |s| build_global_absorber_total(d, &path, &params, s))
            .map_err(at("total-degree absorber"))?;
        let a = gab.vertex_set(n);
        let q = long_path_with_degrees(d, &a, k - p + 2, rc.sigma(1), rc.step(p, p - 1), cfg.alpha, t)
            .map_err(at("path outside the absorber"))?;
        let (v, v_end) = (q[0], q[q.len() - 1]);
        let taken = a.union(&VertexSet::from_iter(n, q.iter().copied()));
        let rs = leftover_set(d, &taken, [v, v_end], p - a.len())?;
        let e = activate_global_total(d, &gab, &rs, v, v_end).map_err(at("activation"))?;
        let mut vs = e.vertices;
        vs.extend(q[1..q.len() - 1].iter().rev());
        Ok(unrotate(&vs, r))
    };
    (Strategy::TotalAbsorber, run())
}

/// No absorber fits: close the cycle like a short one if allowed.
fn sized_out(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig, why: String) -> (Strategy, Built) {
    if !cfg.fallback {
        return (long_strategy(cfg), Err(Fail::new("absorber sizing", why)));
    }
    let res = match cfg.regime {
        Regime::Semi => short_path(d, c, cfg),
        Regime::Total => total_fallback(d, c, cfg),
    };
    (Strategy::ShortFallback, res)
}

fn long_strategy(cfg: &EmbedConfig) -> Strategy {
    match cfg.regime {
        Regime::Semi => Strategy::SemiAbsorber,
        Regime::Total => Strategy::TotalAbsorber,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrotate_inverts_rotation() {
        let c: OrientationPattern = "cycle ++-+-".parse().unwrap();
        let r = 2;
        let rot = [10, 11, 12, 13, 14];
        let orig = unrotate(&rot, r);
        assert_eq!(orig, vec![13, 14, 10, 11, 12]);
        let rc = c.rotated(r);
        for j in 1..=5 {
            assert_eq!(rc.sigma(j), c.sigma((j + r - 1) % 5 + 1));
        }
    }

    #[test]
    fn rotation_prefers_swap_dense_window() {
        let c: OrientationPattern = "cycle ++++++-+-+".parse().unwrap();
        let r = best_rotation(&c, 4);
        let rc = c.rotated(r);
        let swaps = (1..=4).filter(|&i| rc.in_degree_at(i) != 1).count();
        assert_eq!(swaps, 4);
    }
}
