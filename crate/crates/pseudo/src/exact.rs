use crate::PseudoError;
use digraph_core::{Digraph, PseudorandomWitness, VertexSet};
use rand::seq::SliceRandom;

const EXACT_MAX_N: usize = 16;

/// Exhaustive check. `Ok(None)` means every pair of disjoint `t`-sets is
/// joined by a bidirected edge; otherwise the lowest failing pair found.
///
/// For each `t`-set `U`, every vertex outside `U` with no bidirected
/// neighbour in `U` is a candidate; `t` of them complete a witness.
pub fn is_bipseudorandom_exact(
    d: &Digraph,
    t: usize,
) -> Result<Option<PseudorandomWitness>, PseudoError> {
    let n = d.n();
    if t == 0 {
        return Err(PseudoError::BadT(t));
    }
    if 2 * t > n {
        return Ok(None);
    }
    if t == 1 {
        for u in 0..n {
            let mut far = d.vertex_set().difference(d.bi_neighbors(u));
            far.remove(u);
            if let Some(w) = far.first() {
                return Ok(Some(PseudorandomWitness::bidirected(vec![u], vec![w], 1)));
            }
        }
        return Ok(None);
    }
    if n > EXACT_MAX_N {
        return Err(PseudoError::TooLarge { n, t });
    }
    let full: u32 = (1u32 << n) - 1;
    let bi: Vec<u32> = (0..n)
        .map(|v| d.bi_neighbors(v).iter().fold(0u32, |m, w| m | (1 << w)))
        .collect();
    for mask in 1u32..=full {
        if mask.count_ones() as usize != t {
            continue;
        }
        let reach = bits(mask).fold(0u32, |m, v| m | bi[v]);
        let rest = full & !mask & !reach;
        if rest.count_ones() as usize >= t {
            let u = bits(mask).collect();
            let w = bits(rest).take(t).collect();
            return Ok(Some(PseudorandomWitness::bidirected(u, w, t)));
        }
    }
    Ok(None)
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Random search for a witness: each sample draws `2t` distinct vertices
/// and splits them into two halves. `None` is inconclusive.
pub fn falsify_bipseudorandom(
    d: &Digraph,
    t: usize,
    samples: usize,
    seed: u64,
) -> Option<PseudorandomWitness> {
    let n = d.n();
    if t == 0 || 2 * t > n {
        return None;
    }
    let mut rng = randgen::rng_for(seed, 1);
    let mut verts: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        let (chosen, _) = verts.partial_shuffle(&mut rng, 2 * t);
        let mut u = chosen[..t].to_vec();
        let mut w = chosen[t..].to_vec();
        u.sort_unstable();
        w.sort_unstable();
        let uw = VertexSet::from_iter(n, u.iter().copied());
        let ws = VertexSet::from_iter(n, w.iter().copied());
        let joined = uw.iter().any(|a| d.bi_neighbors(a).intersects(&ws));
        if !joined {
            return Some(PseudorandomWitness::bidirected(u, w, t));
        }
    }
    None
}
