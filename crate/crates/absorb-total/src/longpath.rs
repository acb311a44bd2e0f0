use crate::{partition_within, TotalError};
use digraph_core::{Digraph, Sign, VertexSet};
use pseudo::{long_bidirected_path_within, witness_if_separated};

/// Bidirected path on exactly `k` vertices outside `used` whose first vertex
/// has `d^{star1} ≥ αn/2` and whose last has `d^{star2} ≥ αn/2`.
///
/// The vertices outside `used` are split by large side. With different
/// stars, a path in `V^{star1}` is joined near its end to the start of a path
/// in `V^{star2}`. With equal stars, a path in that side is used directly if
/// it is long enough, otherwise it makes a detour through the other side,
/// leaving near its start and coming back a little further on.
pub fn long_path_with_degrees(
    d: &Digraph,
    used: &VertexSet,
    k: usize,
    star1: Sign,
    star2: Sign,
    alpha: f64,
    t: usize,
) -> Result<Vec<usize>, TotalError> {
    if k < 2 || t == 0 {
        return Err(TotalError::InvalidInput(format!("path on {k} vertices with t = {t}")));
    }
    let allowed = d.vertex_set().difference(used);
    let (vp, vm) = partition_within(d, &allowed, alpha)?;
    let side = |s: Sign| if s == Sign::Plus { &vp } else { &vm };
    let reach = |s: Sign| side(s).len().saturating_sub(2 * t).min(k + t);
    let grow = |s: Sign, len: usize| {
        long_bidirected_path_within(d, side(s), len, t).map_err(TotalError::at("long path in one side"))
    };

    if star1 != star2 {
        let (a, b) = (reach(star1), reach(star2));
        if a == 0 || b == 0 || a + b < k + 2 * t {
            return Err(TotalError::SizeMismatch { expected: k + 2 * t, got: a + b });
        }
        let q1 = grow(star1, a)?;
        let q2 = grow(star2, b)?;
        let (i, j) = join(d, tail_window(&q1, t), head_window(&q2, t), t)?;
        let len1 = i + 1;
        let keep1 = k.saturating_sub(q2.len() - j).max(1);
        if keep1 > len1 {
            return Err(TotalError::SizeMismatch { expected: k, got: len1 + q2.len() - j });
        }
        let mut path = q1[len1 - keep1..len1].to_vec();
        path.extend_from_slice(&q2[j..j + (k - keep1)]);
        return Ok(path);
    }

    let s = star1;
    let a = reach(s);
    if a >= k {
        return grow(s, k);
    }
    if a < 2 * t + 1 {
        return Err(TotalError::SizeMismatch { expected: 2 * t + 1, got: a });
    }
    let c = (k + 4 * t).saturating_sub(a + 4).max(2 * t);
    if reach(s.flip()) < c {
        return Err(TotalError::SizeMismatch { expected: c, got: reach(s.flip()) });
    }
    let q = grow(s, a)?;
    let o = long_bidirected_path_within(d, side(s.flip()), c, t)
        .map_err(TotalError::at("long path in the other side"))?;
    // Leave `q` among its first t vertices, come back among the next t.
    let (a1, b1) = join(d, (0..t).map(|x| (x, q[x])).collect(), head_window(&o, t), t)?;
    let back: Vec<(usize, usize)> = (t..2 * t).map(|x| (x, q[x])).collect();
    let (b2, a2) = join(d, tail_window(&o, t), back, t)?;
    let mut path = q[..=a1].to_vec();
    path.extend_from_slice(&o[b1..=b2]);
    path.extend_from_slice(&q[a2..]);
    if b1 > b2 || path.len() < k {
        return Err(TotalError::SizeMismatch { expected: k, got: path.len() });
    }
    let mut excess = path.len() - k;
    let tail = q.len() - a2;
    let cut_tail = excess.min(tail - 1);
    path.truncate(path.len() - cut_tail);
    excess -= cut_tail;
    if excess > a1 {
        return Err(TotalError::SizeMismatch { expected: k, got: path.len() - a1 });
    }
    Ok(path.split_off(excess))
}

/// Last `t` positions of `q`, latest first.
fn tail_window(q: &[usize], t: usize) -> Vec<(usize, usize)> {
    (q.len().saturating_sub(t)..q.len()).rev().map(|i| (i, q[i])).collect()
}

fn head_window(q: &[usize], t: usize) -> Vec<(usize, usize)> {
    (0..t.min(q.len())).map(|i| (i, q[i])).collect()
}

/// First pair of positions in the two windows joined by a bidirected edge.
fn join(
    d: &Digraph,
    left: Vec<(usize, usize)>,
    right: Vec<(usize, usize)>,
    t: usize,
) -> Result<(usize, usize), TotalError> {
    for &(i, x) in &left {
        for &(j, y) in &right {
            if d.has_bi_edge(x, y) {
                return Ok((i, j));
            }
        }
    }
    let n = d.n();
    let l = VertexSet::from_iter(n, left.iter().map(|p| p.1));
    let r = VertexSet::from_iter(n, right.iter().map(|p| p.1));
    Err(TotalError::missing("joining two long paths", witness_if_separated(&l, &r, t)))
}
