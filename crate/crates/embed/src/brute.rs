use crate::EmbedError;
use digraph_core::{verify_embedding, Digraph, Embedding, OrientationPattern, Sign};

/// Largest host the exhaustive search accepts.
pub const BRUTE_FORCE_MAX_N: usize = 10;

/// First copy of `p` in `d` in lexicographic vertex order, by backtracking
/// from every start vertex. Works for paths and cycles.
pub fn brute_force_contains(d: &Digraph, p: &OrientationPattern) -> Result<Option<Embedding>, EmbedError> {
    let n = d.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(EmbedError::TooLarge { n, max: BRUTE_FORCE_MAX_N });
    }
    let k = p.k();
    if k > n {
        return Ok(None);
    }
    let mut vs = Vec::with_capacity(k);
    let mut used = vec![false; n];
    for s in 0..n {
        vs.push(s);
        used[s] = true;
        if extend(d, p, &mut vs, &mut used) {
            let e = Embedding::new(p.clone(), vs);
            debug_assert!(verify_embedding(d, &e));
            return Ok(Some(e));
        }
        used[s] = false;
        vs.pop();
    }
    Ok(None)
}

fn edge(d: &Digraph, a: usize, b: usize, s: Sign) -> bool {
    d.has_signed_edge(a, b, s)
}

fn extend(d: &Digraph, p: &OrientationPattern, vs: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let k = p.k();
    let i = vs.len();
    if i == k {
        return match (p.is_cycle(), k) {
            (false, _) => true,
            (true, 2) => d.has_bi_edge(vs[0], vs[1]),
            (true, _) => edge(d, vs[k - 1], vs[0], p.sigma(k)),
        };
    }
    let last = vs[i - 1];
    for x in d.neighbors(last, p.sigma(i)).iter() {
        if used[x] {
            continue;
        }
        vs.push(x);
        used[x] = true;
        if extend(d, p, vs, used) {
            return true;
        }
        used[x] = false;
        vs.pop();
    }
    false
}
