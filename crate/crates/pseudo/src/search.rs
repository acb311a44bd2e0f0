use crate::PseudoError;
use digraph_core::{Digraph, PseudorandomWitness, Sign, VertexSet};

/// Lowest `(u, w)` in scan order with `u ∈ U`, `w ∈ W` joined both ways.
pub fn bidirected_edge_between(
    d: &Digraph,
    u: &VertexSet,
    w: &VertexSet,
) -> Result<Option<(usize, usize)>, PseudoError> {
    if let Some(x) = u.first_common(w) {
        return Err(PseudoError::Overlap(x));
    }
    Ok(u.iter()
        .find_map(|a| d.bi_neighbors(a).first_common(w).map(|b| (a, b))))
}

/// Given disjoint sets already known to have no bidirected edge across,
/// the `t` lowest of each, if both are large enough.
pub fn witness_if_separated(
    u: &VertexSet,
    w: &VertexSet,
    t: usize,
) -> Option<PseudorandomWitness> {
    if t >= 1 && u.len() >= t && w.len() >= t && u.is_disjoint(w) {
        Some(PseudorandomWitness::bidirected(u.lowest(t), w.lowest(t), t))
    } else {
        None
    }
}

/// Pairwise disjoint subsets `B'_i ⊆ B_i`, dealt round-robin: in each round
/// every block that is below `cap` takes its lowest untaken candidate.
pub fn split_disjoint(cands: &[VertexSet], cap: usize) -> Vec<VertexSet> {
    let Some(first) = cands.first() else {
        return Vec::new();
    };
    let n = first.universe();
    let mut taken = VertexSet::new(n);
    let mut out = vec![VertexSet::new(n); cands.len()];
    let mut sizes = vec![0usize; cands.len()];
    let mut active: Vec<usize> = (0..cands.len()).collect();
    while !active.is_empty() {
        active.retain(|&i| {
            if sizes[i] >= cap {
                return false;
            }
            match cands[i].first_common_excluding(&cands[i], &taken) {
                Some(v) => {
                    taken.insert(v);
                    out[i].insert(v);
                    sizes[i] += 1;
                    true
                }
                None => false,
            }
        });
    }
    out
}

/// A bidirected path `(v_1, …, v_ℓ)` with `v_i ∈ B_i`.
///
/// Forward pass: `A_1 = B_1` and `A_{i+1}` is the set of vertices of
/// `B_{i+1}` with a bidirected neighbour in `A_i`. Backward pass: `v_ℓ` is the
/// lowest vertex of `A_ℓ` and each `v_i` the lowest vertex of `A_i` joined to
/// `v_{i+1}`. The search only gives up when a frontier empties; the
/// reported witness is then `(A_i, B_{i+1} \ A_{i+1})` from the first step
/// where both have at least `t` vertices.
pub fn connecting_path(
    d: &Digraph,
    blocks: &[VertexSet],
    t: usize,
) -> Result<Vec<usize>, PseudoError> {
    if blocks.is_empty() {
        return Err(PseudoError::NoBlocks);
    }
    if t == 0 {
        return Err(PseudoError::BadT(t));
    }
    let mut seen = VertexSet::new(d.n());
    for b in blocks {
        if let Some(x) = seen.first_common(b) {
            return Err(PseudoError::Overlap(x));
        }
        seen.union_with(b);
    }
    let mut frontiers: Vec<VertexSet> = Vec::with_capacity(blocks.len());
    frontiers.push(blocks[0].clone());
    let mut witness = None;
    for i in 1..blocks.len() {
        let prev = &frontiers[i - 1];
        let mut next = VertexSet::new(d.n());
        for v in blocks[i].iter() {
            if d.bi_neighbors(v).intersects(prev) {
                next.insert(v);
            }
        }
        if witness.is_none() {
            witness = witness_if_separated(prev, &blocks[i].difference(&next), t);
        }
        let empty = next.is_empty();
        frontiers.push(next);
        if empty {
            return Err(PseudoError::NotFound { witness });
        }
    }
    if frontiers[0].is_empty() {
        return Err(PseudoError::NotFound { witness: None });
    }
    let l = blocks.len();
    let mut path = vec![0usize; l];
    path[l - 1] = frontiers[l - 1].first().expect("non-empty frontier");
    for i in (0..l - 1).rev() {
        path[i] = d
            .bi_neighbors(path[i + 1])
            .first_common(&frontiers[i])
            .expect("frontier vertices have a predecessor");
    }
    Ok(path)
}

/// Bidirected path on exactly `target_len` vertices avoiding `forbidden`.
pub fn long_bidirected_path(
    d: &Digraph,
    forbidden: &VertexSet,
    target_len: usize,
    t: usize,
) -> Result<Vec<usize>, PseudoError> {
    let allowed = d.vertex_set().difference(forbidden);
    long_bidirected_path_within(d, &allowed, target_len, t)
}

/// Depth-first search in the bidirected subgraph induced by `allowed`,
/// neighbours in ascending order, stopping as soon as the stack holds
/// `target_len` vertices.
///
/// The search keeps three sets: unvisited, the current stack, and finished.
/// A vertex is finished only once it has no unvisited bidirected neighbour,
/// so no bidirected edge ever joins finished and unvisited vertices. If the
/// search runs dry, the two sets at the first moment both reach size `t`
/// form the witness.
pub fn long_bidirected_path_within(
    d: &Digraph,
    allowed: &VertexSet,
    target_len: usize,
    t: usize,
) -> Result<Vec<usize>, PseudoError> {
    let available = allowed.len();
    if target_len > available || target_len == 0 {
        return Err(PseudoError::TargetTooLong {
            target: target_len,
            available,
        });
    }
    if t == 0 {
        return Err(PseudoError::BadT(t));
    }
    let mut unvisited = allowed.clone();
    let mut n_unvisited = available;
    let mut finished = VertexSet::new(d.n());
    let mut n_finished = 0usize;
    let mut stack: Vec<usize> = Vec::new();
    let mut witness = None;
    let mut step = 0usize;
    loop {
        if stack.len() >= target_len {
            stack.truncate(target_len);
            return Ok(stack);
        }
        match stack.last() {
            None => match unvisited.first() {
                Some(x) => {
                    unvisited.remove(x);
                    n_unvisited -= 1;
                    stack.push(x);
                }
                None => return Err(PseudoError::NotFound { witness }),
            },
            Some(&top) => match d.bi_neighbors(top).first_common(&unvisited) {
                Some(y) => {
                    unvisited.remove(y);
                    n_unvisited -= 1;
                    stack.push(y);
                }
                None => {
                    stack.pop();
                    finished.insert(top);
                    n_finished += 1;
                }
            },
        }
        if witness.is_none() && n_unvisited >= t && n_finished >= t {
            witness = witness_if_separated(&unvisited, &finished, t);
        }
        step += 1;
        if cfg!(debug_assertions) && step.is_multiple_of(97) {
            debug_assert!(finished
                .iter()
                .all(|f| !d.bi_neighbors(f).intersects(&unvisited)));
        }
    }
}

/// A copy `(v, x, y, v')` of the three-edge path with signs `signs`, with
/// `x ∈ N^{σ₁}(v)`, `y` on the matching side of `v'`, `x–y` bidirected and
/// `x, y ∈ allowed`.
pub fn three_edge_connector(
    d: &Digraph,
    v: usize,
    v_end: usize,
    signs: [Sign; 3],
    allowed: &VertexSet,
    t: usize,
) -> Result<[usize; 4], PseudoError> {
    if v == v_end || allowed.contains(v) || allowed.contains(v_end) {
        return Err(PseudoError::BadEndpoints);
    }
    let b1 = d.neighbors(v, signs[0]).intersection(allowed);
    let b2 = d.neighbors(v_end, signs[2].flip()).intersection(allowed);
    for x in b1.iter() {
        if let Some(y) = d.bi_neighbors(x).first_common(&b2) {
            return Ok([v, x, y, v_end]);
        }
    }
    let parts = split_disjoint(&[b1, b2], usize::MAX);
    Err(PseudoError::NotFound {
        witness: witness_if_separated(&parts[0], &parts[1], t),
    })
}
