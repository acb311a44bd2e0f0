use crate::AbsorbError;
use digraph_core::{concat, Digraph, Embedding, OrientationPattern, PatternKind, Sign, VertexSet};
use pseudo::{long_bidirected_path_within, three_edge_connector};

/// Copy of `pattern` from `v` to `v_end` covering `R` and exactly
/// `|pattern| − |R|` vertices of `X`.
///
/// A few vertices `X′` of `X` are thrown in with `R`, and a long bidirected
/// path is found in `R ∪ X′ ∖ {v, v_end}`. The `leftover` vertices it misses,
/// together with `v` and the path ends, are threaded with three-edge
/// connectors whose middle vertices come from the rest of `X`:
///
/// `(v, x₀, x₀′, r₁, x₁, x₁′, r₂, …, w) ∘ path ∘ (w′, x, x′, v_end)`.
#[allow(clippy::too_many_arguments)]
pub fn absorb_r_into_x(
    d: &Digraph,
    x: &VertexSet,
    r: &VertexSet,
    v: usize,
    v_end: usize,
    pattern: &OrientationPattern,
    leftover: usize,
    witness_t: usize,
) -> Result<Embedding, AbsorbError> {
    let k = pattern.k();
    if pattern.kind() != PatternKind::Path {
        return Err(AbsorbError::InvalidInput("pattern must be a path".into()));
    }
    if v == v_end || !r.contains(v) || !r.contains(v_end) {
        return Err(AbsorbError::InvalidInput(
            "endpoints must be distinct vertices of R".into(),
        ));
    }
    if !r.is_disjoint(x) {
        return Err(AbsorbError::InvalidInput("R meets X".into()));
    }
    let need_x = k.checked_sub(r.len()).ok_or(AbsorbError::SizeMismatch {
        expected: r.len(),
        got: k,
    })?;
    let connectors = leftover + 2;
    let spare = need_x
        .checked_sub(2 * connectors)
        .ok_or_else(|| {
            AbsorbError::InvalidInput(format!(
                "pattern uses {need_x} vertices of X, fewer than the {} the connectors need",
                2 * connectors
            ))
        })?;
    if x.len() < need_x {
        return Err(AbsorbError::SizeMismatch {
            expected: need_x,
            got: x.len(),
        });
    }

    let x_spare = VertexSet::from_iter(d.n(), x.lowest(spare));
    let mut x_free = x.difference(&x_spare);
    let mut r0 = r.union(&x_spare);
    r0.remove(v);
    r0.remove(v_end);
    let target = r0
        .len()
        .checked_sub(leftover)
        .filter(|&t| t >= 1)
        .ok_or_else(|| {
            AbsorbError::InvalidInput(format!(
                "{} vertices to route but {leftover} are left over",
                r0.len()
            ))
        })?;
    let long = long_bidirected_path_within(d, &r0, target, witness_t)
        .map_err(AbsorbError::at("long path through R"))?;
    let on_path = VertexSet::from_iter(d.n(), long.iter().copied());

    let mut stops = vec![v];
    stops.extend(r0.difference(&on_path).iter());
    stops.push(long[0]);
    debug_assert_eq!(stops.len(), leftover + 2);

    let signs_at = |a: usize| -> [Sign; 3] { [pattern.sigma(a), pattern.sigma(a + 1), pattern.sigma(a + 2)] };
    let mut walk = vec![v];
    for (i, pair) in stops.windows(2).enumerate() {
        let c = three_edge_connector(d, pair[0], pair[1], signs_at(3 * i + 1), &x_free, witness_t)
            .map_err(AbsorbError::at("connector through X"))?;
        x_free.remove(c[1]);
        x_free.remove(c[2]);
        concat(&mut walk, &c);
    }
    concat(&mut walk, &long);
    let last = *long.last().expect("non-empty path");
    let c = three_edge_connector(d, last, v_end, signs_at(k - 3), &x_free, witness_t)
        .map_err(AbsorbError::at("final connector through X"))?;
    concat(&mut walk, &c);
    if walk.len() != k {
        return Err(AbsorbError::SizeMismatch {
            expected: k,
            got: walk.len(),
        });
    }
    Ok(Embedding::new(pattern.clone(), walk))
}
