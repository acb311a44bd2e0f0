use crate::{larger_side, swap_vertices, TotalError};
use digraph_core::{Digraph, Embedding, OrientationPattern, PatternKind, VertexSet};
use pseudo::{connecting_path, split_disjoint};
use serde::{Deserialize, Serialize};

/// Local absorber `(A, start, end)` for slots `z₁ … z_ℓ` and hub `z`.
///
/// `A = {start} ∪ spine ∪ {end}` has `k − 2` vertices. Slot `z_j` enters
/// at pattern position `slot_positions[j]` and the hub at `hub_position`,
/// both swap vertices whose edges point to the vertex's larger side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalAbsorberTotal {
    pub segment: OrientationPattern,
    pub start: usize,
    pub end: usize,
    /// `v₁ … v_{k−4}`.
    pub spine: Vec<usize>,
    pub slots: Vec<usize>,
    pub hub: usize,
    pub slot_positions: Vec<usize>,
    pub hub_position: usize,
}

impl LocalAbsorberTotal {
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.spine.len() + 2);
        v.push(self.start);
        v.extend_from_slice(&self.spine);
        v.push(self.end);
        v
    }
}

/// Greedy positions `i₁ < … < i_{ℓ+1}` for the given sides: each a swap
/// vertex with both edges on its side, gaps at least 2 from position 2, the
/// hub gap at least 3, and the last one at most `k − 3`.
fn place(segment: &OrientationPattern, sides: &[digraph_core::Sign]) -> Option<Vec<usize>> {
    let k = segment.k();
    let swaps = swap_vertices(segment);
    let mut prev = 2;
    let mut out = Vec::with_capacity(sides.len());
    for (j, &s) in sides.iter().enumerate() {
        let gap = if j + 1 == sides.len() { 3 } else { 2 };
        let i = swaps
            .iter()
            .copied()
            .find(|&i| i >= prev + gap && segment.degree_at(i, s) == 2)?;
        out.push(i);
        prev = i;
    }
    (prev + 3 <= k).then_some(out)
}

/// Builds the absorber on `segment` from `v` to `v_end`, avoiding
/// `forbidden`.
///
/// Spine block `B_b` holds the vertex at position `b + 1`. The two blocks
/// around each slot or hub position are its neighbours on its large side, the
/// first and last blocks are neighbours of `v` and `v_end` as the segment
/// demands, and all other blocks are unrestricted.
#[allow(clippy::too_many_arguments)]
pub fn build_local_absorber_total(
    d: &Digraph,
    segment: &OrientationPattern,
    v: usize,
    v_end: usize,
    slots: &[usize],
    hub: usize,
    forbidden: &VertexSet,
    witness_t: usize,
) -> Result<LocalAbsorberTotal, TotalError> {
    let n = d.n();
    let k = segment.k();
    if segment.kind() != PatternKind::Path || slots.is_empty() {
        return Err(TotalError::InvalidInput("need a path segment and at least one slot".into()));
    }
    let mut special = VertexSet::from_iter(n, [v, v_end, hub]);
    for &s in slots {
        special.insert(s);
    }
    if special.len() != slots.len() + 3 {
        return Err(TotalError::InvalidInput("start, end, hub and slots must be distinct".into()));
    }
    if forbidden.contains(v) || forbidden.contains(v_end) {
        return Err(TotalError::InvalidInput("endpoints must lie outside the forbidden set".into()));
    }

    let mut sides: Vec<_> = slots.iter().map(|&s| larger_side(d, s)).collect();
    sides.push(larger_side(d, hub));
    let positions = place(segment, &sides).ok_or_else(|| TotalError::NotEnoughSwaps {
        needed: 3 * slots.len() + 7,
        found: swap_vertices(segment).len(),
    })?;
    let (slot_positions, hub_position) = (positions[..slots.len()].to_vec(), positions[slots.len()]);

    let removed = forbidden.union(&special);
    let open = d.vertex_set().difference(&removed);
    let len = k - 4;
    let mut owners = vec![None; len + 1];
    let mut cands = vec![open.clone(); len + 1];
    let mut restrict = |b: usize, owner: usize, set: &VertexSet| {
        cands[b] = set.difference(&removed);
        owners[b] = Some(owner);
    };
    restrict(1, v, d.neighbors(v, segment.step(1, 2)));
    for (j, &s) in slots.iter().enumerate() {
        let nb = d.neighbors(s, sides[j]);
        restrict(slot_positions[j] - 2, s, nb);
        restrict(slot_positions[j] - 1, s, nb);
    }
    let nb = d.neighbors(hub, sides[slots.len()]);
    restrict(hub_position - 3, hub, nb);
    restrict(hub_position - 2, hub, nb);
    restrict(len, v_end, d.neighbors(v_end, segment.step(k, k - 1)));

    let blocks = split_disjoint(&cands[1..], usize::MAX);
    if let Some(b) = blocks.iter().position(VertexSet::is_empty) {
        return Err(match owners[b + 1] {
            Some(vertex) => TotalError::NeighbourhoodTooSmall { vertex },
            None => TotalError::SizeMismatch { expected: len, got: open.len() },
        });
    }
    let spine = connecting_path(d, &blocks, witness_t).map_err(TotalError::at("local absorber spine"))?;
    Ok(LocalAbsorberTotal {
        segment: segment.clone(),
        start: v,
        end: v_end,
        spine,
        slots: slots.to_vec(),
        hub,
        slot_positions,
        hub_position,
    })
}

/// `(v, v₁ … v_{i−2}, s, v_{i−1} … v_{h−3}, z, v_{h−2} … v_{k−4}, v′)` for
/// the slot `s` at position `i` and the hub at position `h`.
pub fn activate_local_total(a: &LocalAbsorberTotal, s: usize) -> Result<Embedding, TotalError> {
    let j = a.slots.iter().position(|&x| x == s).ok_or(TotalError::NotASlot(s))?;
    let i = a.slot_positions[j];
    let h = a.hub_position;
    let mut vs = Vec::with_capacity(a.segment.k());
    vs.push(a.start);
    vs.extend_from_slice(&a.spine[..i - 2]);
    vs.push(s);
    vs.extend_from_slice(&a.spine[i - 2..h - 3]);
    vs.push(a.hub);
    vs.extend_from_slice(&a.spine[h - 3..]);
    vs.push(a.end);
    Ok(Embedding::new(a.segment.clone(), vs))
}
