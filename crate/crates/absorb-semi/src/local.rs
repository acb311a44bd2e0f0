use crate::AbsorbError;
use digraph_core::{Digraph, Embedding, OrientationPattern, PatternKind, VertexSet};
use pseudo::{connecting_path, split_disjoint};
use serde::{Deserialize, Serialize};

/// Start `v`, spine `v₁ … v₂ₖ₊₂` and slots `s₁ … sₖ`; `end` is the external
/// endpoint `z`. The absorber's own vertex set is `{v} ∪ spine`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalAbsorberSemi {
    pub segment: OrientationPattern,
    pub start: usize,
    pub end: usize,
    pub spine: Vec<usize>,
    pub slots: Vec<usize>,
}

impl LocalAbsorberSemi {
    pub fn k(&self) -> usize {
        self.slots.len()
    }

    /// `{v} ∪ spine`, `2k + 3` vertices.
    pub fn vertices(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.spine.len() + 1);
        v.push(self.start);
        v.extend_from_slice(&self.spine);
        v
    }
}

/// Local absorber for `(slots, z)` starting at `v` and avoiding `forbidden`.
///
/// Block `B₁` sits next to `v`, blocks `B₂ᵢ` and `B₂ᵢ₊₁` are the neighbours of
/// `sᵢ` on the sides the segment demands, and `B₂ₖ₊₂` sits next to `z`. The
/// candidate sets are made disjoint round-robin and a connecting path
/// through them is the spine.
pub fn build_local_absorber_semi(
    d: &Digraph,
    segment: &OrientationPattern,
    v: usize,
    slots: &[usize],
    z: usize,
    forbidden: &VertexSet,
    witness_t: usize,
) -> Result<LocalAbsorberSemi, AbsorbError> {
    let k = slots.len();
    let n = d.n();
    if segment.kind() != PatternKind::Path || segment.k() != 2 * k + 5 {
        return Err(AbsorbError::InvalidInput(format!(
            "segment has {} vertices, need a path on {}",
            segment.k(),
            2 * k + 5
        )));
    }
    if k == 0 {
        return Err(AbsorbError::InvalidInput("no slots".into()));
    }
    let mut removed = forbidden.clone();
    removed.insert(v);
    removed.insert(z);
    let mut slot_set = VertexSet::new(n);
    for &s in slots {
        if !slot_set.insert(s) || s == v || s == z {
            return Err(AbsorbError::InvalidInput(format!(
                "slot {s} repeats or clashes with v or z"
            )));
        }
    }
    removed.union_with(&slot_set);
    if forbidden.contains(v) || v == z {
        return Err(AbsorbError::InvalidInput(
            "start must be outside the forbidden set and differ from z".into(),
        ));
    }

    let mut owners = Vec::with_capacity(2 * k + 2);
    let mut cands = Vec::with_capacity(2 * k + 2);
    let mut push = |owner: usize, side| {
        owners.push(owner);
        cands.push(d.neighbors(owner, side).difference(&removed));
    };
    push(v, segment.step(1, 2));
    for (i, &s) in slots.iter().enumerate() {
        let i = i + 1;
        push(s, segment.step(2 * i + 2, 2 * i + 1));
        push(s, segment.step(2 * i + 2, 2 * i + 3));
    }
    push(z, segment.step(2 * k + 5, 2 * k + 4));

    let blocks = split_disjoint(&cands, usize::MAX);
    if let Some(i) = blocks.iter().position(VertexSet::is_empty) {
        return Err(AbsorbError::NeighbourhoodTooSmall { vertex: owners[i] });
    }
    let spine =
        connecting_path(d, &blocks, witness_t).map_err(AbsorbError::at("local absorber spine"))?;
    debug_assert!(spine.iter().all(|&x| x < n && !removed.contains(x)));
    Ok(LocalAbsorberSemi {
        segment: segment.clone(),
        start: v,
        end: z,
        spine,
        slots: slots.to_vec(),
    })
}

/// The segment copy `(v, v₁, …, v₂ᵢ, sᵢ, v₂ᵢ₊₁, …, v₂ₖ₊₂, z)`.
pub fn activate_local_semi(a: &LocalAbsorberSemi, s: usize) -> Result<Embedding, AbsorbError> {
    let i = a
        .slots
        .iter()
        .position(|&x| x == s)
        .ok_or(AbsorbError::NotASlot(s))?
        + 1;
    let mut vs = Vec::with_capacity(a.segment.k());
    vs.push(a.start);
    vs.extend_from_slice(&a.spine[..2 * i]);
    vs.push(s);
    vs.extend_from_slice(&a.spine[2 * i..]);
    vs.push(a.end);
    Ok(Embedding::new(a.segment.clone(), vs))
}
