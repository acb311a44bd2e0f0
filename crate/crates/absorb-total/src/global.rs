use crate::local::{activate_local_total, build_local_absorber_total, LocalAbsorberTotal};
use crate::longpath::long_path_with_degrees;
use crate::reservoir::{bi_edge_across, build_reservoir, chain_absorb, link_through_reservoir, Reservoir};
use crate::{is_compatible, partition_within, TotalError, TotalParams};
use digraph_core::{concat, verify_embedding, Digraph, Embedding, OrientationPattern, PatternKind, Sign, VertexSet};
use montgomery::{build_template_with_cap, robust_matching, MontgomeryTemplate};
use pseudo::{connecting_path, split_disjoint};
use serde::{Deserialize, Serialize};

const TEMPLATE_STREAM: u64 = 1 << 40;

/// Cut of the pattern into `P⁰ = u₁…u₄`, `P¹ = u₄…u_{j+1}`,
/// `P² = u_{j+1}…u_{j+ℓ}`, `P³ = u_{j+ℓ}…u_{k−3}` and `P⁴ = u_{k−3}…u_k`.
///
/// `P¹` is further cut into segments `P¹ᵢ = u_{ip+5}…u_{(i+1)p+4}` for
/// `0 ≤ i ≤ s` and a remainder `u_{(s+1)p+5}…u_j`. When `mirrored` is set,
/// all positions refer to the reversed pattern.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TotalSegmentation {
    pub mirrored: bool,
    pub k: usize,
    pub j: usize,
    pub ell: usize,
    pub seg_len: usize,
    pub s: usize,
    pub good: Vec<bool>,
}

impl TotalSegmentation {
    /// First position of segment `i`.
    pub fn seg_start(&self, i: usize) -> usize {
        i * self.seg_len + 5
    }

    pub fn seg_end(&self, i: usize) -> usize {
        (i + 1) * self.seg_len + 4
    }

    pub fn good_count(&self) -> usize {
        self.good.iter().filter(|&&g| g).count()
    }
}

/// Smallest admissible `j` leaving `P²` with at least `4r − 6` swap vertices
/// and `P¹` with at least `3m` good segments; the reversed pattern is tried
/// if the pattern itself has none.
pub fn segment_pattern(p: &OrientationPattern, params: &TotalParams) -> Result<TotalSegmentation, TotalError> {
    if p.kind() != PatternKind::Path {
        return Err(TotalError::InvalidInput("pattern must be a path".into()));
    }
    if params.chain_len() < 4 || params.seg_len < 9 {
        return Err(TotalError::InvalidInput(format!(
            "chained piece has {} vertices and segments {}, need 4 and 9",
            params.chain_len(),
            params.seg_len
        )));
    }
    segment_one_way(p, params, false)
        .or_else(|| segment_one_way(&p.reversed(), params, true))
        .ok_or(TotalError::NoSegmentation)
}

fn segment_one_way(p: &OrientationPattern, params: &TotalParams, mirrored: bool) -> Option<TotalSegmentation> {
    let k = p.k();
    let ell = params.chain_len();
    let len = params.seg_len;
    // prefix[i] = swap vertices among u₁ … u_i
    let mut prefix = vec![0usize; k + 1];
    for i in 1..=k {
        let swap = i > 1 && i < k && p.in_degree_at(i) != 1;
        prefix[i] = prefix[i - 1] + swap as usize;
    }
    let inner_swaps = |a: usize, b: usize| prefix[b - 1] - prefix[a];
    let chain_need = (4 * params.r).saturating_sub(6);
    let mut good = Vec::new();
    for j in 4..=k.checked_sub(4 + ell)? {
        if j < 8 + len {
            continue;
        }
        let s = (j - 8) / len - 1;
        while good.len() <= s {
            let i = good.len();
            good.push(inner_swaps(i * len + 5, (i + 1) * len + 4) >= params.good_threshold());
        }
        let enough = good[..=s].iter().filter(|&&g| g).count() >= 3 * params.m;
        if enough && inner_swaps(j + 1, j + ell) >= chain_need {
            good.truncate(s + 1);
            return Some(TotalSegmentation {
                mirrored,
                k,
                j,
                ell,
                seg_len: len,
                s,
                good,
            });
        }
    }
    None
}

/// Reservoir, matching side `Y`, hubs `Z`, the anchor pairs `wᵢw′ᵢ`, one
/// local absorber per hub on a good segment, bidirected fillers for the
/// other segments and the path `Q³`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalAbsorberTotal {
    pub pattern: OrientationPattern,
    pub params: TotalParams,
    pub seg: TotalSegmentation,
    pub reservoir: Reservoir,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub template: MontgomeryTemplate,
    /// `(wᵢ, w′ᵢ)` for `0 ≤ i ≤ s + 2`.
    pub anchors: Vec<(usize, usize)>,
    /// Local absorber of hub `zᵢ`, in hub order.
    pub locals: Vec<LocalAbsorberTotal>,
    /// Segment index hosting each local absorber.
    pub local_segment: Vec<usize>,
    /// Copy of `P¹ᵢ` for each segment without a local absorber, and of the
    /// remainder at index `s + 1`.
    pub fillers: Vec<Option<Vec<usize>>>,
    pub q3: Vec<usize>,
}

impl GlobalAbsorberTotal {
    /// Pattern the construction works on, reversed in the mirrored case.
    pub fn working_pattern(&self) -> OrientationPattern {
        if self.seg.mirrored {
            self.pattern.reversed()
        } else {
            self.pattern.clone()
        }
    }

    /// The part of `A` that hosts the copy of `P¹` apart from `Z` and the
    /// slot partners.
    pub fn a1(&self, n: usize) -> VertexSet {
        let mut a = VertexSet::new(n);
        for &(w, w2) in &self.anchors {
            a.insert(w);
            a.insert(w2);
        }
        for l in &self.locals {
            for v in l.vertices() {
                a.insert(v);
            }
        }
        for f in self.fillers.iter().flatten() {
            for &v in f {
                a.insert(v);
            }
        }
        a
    }

    /// `A = X ∪ Y ∪ Z ∪ A¹ ∪ V(Q³)`.
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut a = self.a1(n);
        for &v in self.reservoir.x.iter().chain(&self.y).chain(&self.z).chain(&self.q3) {
            a.insert(v);
        }
        a
    }

    pub fn size(&self, n: usize) -> usize {
        self.vertex_set(n).len()
    }

    pub fn leftover_size(&self, n: usize) -> usize {
        self.pattern.k() - self.size(n)
    }

    fn left_vertex(&self, left: usize) -> usize {
        let x = &self.reservoir.x;
        if left < x.len() {
            x[left]
        } else {
            self.y[left - x.len()]
        }
    }

    pub fn diagnostic_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }
}

/// Builds the absorber for `pattern`. `|A| = k − r` and `|A¹| = j − 6m − 2`
/// are checked before returning.
pub fn build_global_absorber_total(
    d: &Digraph,
    pattern: &OrientationPattern,
    params: &TotalParams,
    seed: u64,
) -> Result<GlobalAbsorberTotal, TotalError> {
    let n = d.n();
    let m = params.m;
    let k = pattern.k();
    if m == 0 || params.beta_m == 0 || params.beta_m > m || params.r < 2 {
        return Err(TotalError::InvalidInput("need 1 ≤ βm ≤ m and r ≥ 2".into()));
    }
    if k > n {
        return Err(TotalError::SizeMismatch { expected: n, got: k });
    }
    let seg = segment_pattern(pattern, params)?;
    let work = if seg.mirrored { pattern.reversed() } else { pattern.clone() };
    let t = params.witness_t;

    let reservoir = build_reservoir(d, params.alpha, m, params.beta_m, seed, params.x_retries)?;
    let x_set = reservoir.x_set(n);
    let outside = d.vertex_set().difference(&x_set);
    let mut rest = outside.iter();
    let y: Vec<usize> = rest.by_ref().take(2 * m).collect();
    let z: Vec<usize> = rest.by_ref().take(3 * m).collect();
    if z.len() < 3 * m {
        return Err(TotalError::SizeMismatch { expected: 6 * m + params.beta_m, got: n });
    }
    let template = build_template_with_cap(m, params.beta(), params.slots, randgen::derive_seed(seed, TEMPLATE_STREAM))?;

    let mut used = x_set.clone();
    for &v in y.iter().chain(&z) {
        used.insert(v);
    }
    let (vp, vm) = partition_within(d, &d.vertex_set().difference(&used), params.alpha)?;
    let side = |s: Sign| if s == Sign::Plus { &vp } else { &vm };

    let (s, j, p) = (seg.s, seg.j, seg.seg_len);
    let mut anchors = Vec::with_capacity(s + 3);
    for i in 0..=s + 2 {
        let (a, b) = if i <= s + 1 {
            (work.step(i * p + 4, i * p + 3), work.step(i * p + 5, i * p + 6))
        } else {
            (work.step(j, j - 1), work.step(j + 1, j + 2))
        };
        let pair = bi_edge_across(
            d,
            &side(a).difference(&used),
            &side(b).difference(&used),
            t,
            "anchor pair",
        )?;
        used.insert(pair.0);
        used.insert(pair.1);
        anchors.push(pair);
    }

    let mut gab = GlobalAbsorberTotal {
        pattern: pattern.clone(),
        params: params.clone(),
        seg: seg.clone(),
        reservoir,
        y,
        z,
        template,
        anchors,
        locals: Vec::with_capacity(3 * m),
        local_segment: Vec::with_capacity(3 * m),
        fillers: vec![None; s + 2],
        q3: Vec::new(),
    };

    let hosts: Vec<usize> = (0..=s).filter(|&i| seg.good[i]).take(3 * m).collect();
    if hosts.len() < 3 * m {
        return Err(TotalError::NoSegmentation);
    }
    for (zi, &i) in hosts.iter().enumerate() {
        let segment = work.subpattern(seg.seg_start(i), seg.seg_end(i)).expect("segment fits");
        let (start, end) = (gab.anchors[i].1, gab.anchors[i + 1].0);
        let mut slots: Vec<usize> = gab.template.neighbors_of_z(zi).iter().map(|&l| gab.left_vertex(l)).collect();
        slots.sort_unstable();
        let mut forbidden = used.clone();
        forbidden.remove(start);
        forbidden.remove(end);
        let local = build_local_absorber_total(d, &segment, start, end, &slots, gab.z[zi], &forbidden, t)?;
        for &v in &local.spine {
            used.insert(v);
        }
        gab.locals.push(local);
        gab.local_segment.push(i);
    }

    for i in 0..=s + 1 {
        if gab.local_segment.contains(&i) {
            continue;
        }
        let (a, b) = if i <= s { (seg.seg_start(i), seg.seg_end(i)) } else { (seg.seg_start(i), j) };
        let piece = work.subpattern(a, b).expect("segment fits");
        let (start, end) = (gab.anchors[i].1, gab.anchors[i + 1].0);
        let path = fill_segment(d, &piece, start, end, &used, t)?;
        for &v in &path {
            used.insert(v);
        }
        gab.fillers[i] = Some(path);
    }

    let q3_len = k - j - seg.ell - 2;
    gab.q3 = long_path_with_degrees(
        d,
        &used,
        q3_len,
        work.step(j + seg.ell, j + seg.ell - 1),
        work.step(k - 3, k - 2),
        params.alpha,
        t,
    )?;

    let a1 = gab.a1(n).len();
    if a1 + 6 * m + 2 != j {
        return Err(TotalError::SizeMismatch { expected: j - 6 * m - 2, got: a1 });
    }
    let size = gab.size(n);
    if size != params.absorber_size(k) {
        return Err(TotalError::SizeMismatch { expected: params.absorber_size(k), got: size });
    }
    Ok(gab)
}

/// Copy of `piece` from `start` to `end` with a bidirected interior avoiding
/// `used`; the interior blocks are disjoint slices of what is left.
fn fill_segment(
    d: &Digraph,
    piece: &OrientationPattern,
    start: usize,
    end: usize,
    used: &VertexSet,
    t: usize,
) -> Result<Vec<usize>, TotalError> {
    let len = piece.k();
    let open = d.vertex_set().difference(used);
    let first = d.neighbors(start, piece.step(1, 2)).intersection(&open);
    let last = d.neighbors(end, piece.step(len, len - 1)).intersection(&open);
    let blocks = if len == 3 {
        vec![first.intersection(&last)]
    } else {
        let mut cands = vec![open; len - 2];
        cands[0] = first;
        cands[len - 3] = last;
        split_disjoint(&cands, usize::MAX)
    };
    let inner = connecting_path(d, &blocks, t).map_err(TotalError::at("filler segment"))?;
    let mut path = Vec::with_capacity(len);
    path.push(start);
    path.extend(inner);
    path.push(end);
    Ok(path)
}

/// Copy of the whole pattern on `A ∪ R` from `v` to `v_end`.
pub fn activate_global_total(
    d: &Digraph,
    gab: &GlobalAbsorberTotal,
    r: &VertexSet,
    v: usize,
    v_end: usize,
) -> Result<Embedding, TotalError> {
    let n = d.n();
    let a = gab.vertex_set(n);
    let k = gab.pattern.k();
    if r.intersects(&a) {
        return Err(TotalError::InvalidInput("R meets the absorber".into()));
    }
    if r.len() + a.len() != k {
        return Err(TotalError::SizeMismatch { expected: k - a.len(), got: r.len() });
    }
    if v == v_end || !r.contains(v) || !r.contains(v_end) {
        return Err(TotalError::InvalidInput("endpoints must be distinct vertices of R".into()));
    }
    if !is_compatible(d, v, v_end, &gab.pattern, gab.params.alpha / 2.0) {
        return Err(TotalError::NotCompatible);
    }
    let (v, v_end) = if gab.seg.mirrored { (v_end, v) } else { (v, v_end) };
    let mut walk = activate_forward(d, gab, r, v, v_end)?;
    if gab.seg.mirrored {
        walk.reverse();
    }
    let e = Embedding::new(gab.pattern.clone(), walk);
    debug_assert!(verify_embedding(d, &e));
    Ok(e)
}

fn activate_forward(
    d: &Digraph,
    gab: &GlobalAbsorberTotal,
    r: &VertexSet,
    v: usize,
    v_end: usize,
) -> Result<Vec<usize>, TotalError> {
    let n = d.n();
    let work = gab.working_pattern();
    let seg = &gab.seg;
    let (k, j, ell, s) = (seg.k, seg.j, seg.ell, seg.s);
    let t = gab.params.witness_t;
    let res = &gab.reservoir;
    let (w0, _) = gab.anchors[0];
    let (_, w_last) = gab.anchors[s + 2];
    let q3_start = gab.q3[0];
    let q3_end = *gab.q3.last().expect("Q³ is non-empty");

    let mut r_chain = r.clone();
    r_chain.remove(v);
    r_chain.remove(v_end);
    r_chain.insert(w_last);
    r_chain.insert(q3_start);
    let mut taken = VertexSet::new(n);
    let q2 = chain_absorb(
        d,
        res,
        &r_chain,
        w_last,
        q3_start,
        &work.subpattern(j + 1, j + ell).expect("P² fits"),
        &taken,
        t,
    )?;
    let mark = |q: &Embedding, taken: &mut VertexSet| {
        for &x in &q.vertices {
            taken.insert(x);
        }
    };
    mark(&q2, &mut taken);
    let q0 = link_through_reservoir(d, res, v, w0, &work.subpattern(1, 4).expect("P⁰ fits"), &taken, t)?;
    mark(&q0, &mut taken);
    let q4 = link_through_reservoir(d, res, q3_end, v_end, &work.subpattern(k - 3, k).expect("P⁴ fits"), &taken, t)?;
    mark(&q4, &mut taken);

    let left_over = res.x_set(n).difference(&taken);
    if left_over.len() != gab.params.m {
        return Err(TotalError::SizeMismatch { expected: gab.params.m, got: left_over.len() });
    }
    let x_prime: Vec<usize> = left_over
        .iter()
        .map(|x| res.x.binary_search(&x).expect("reservoir vertex"))
        .collect();
    let mates = robust_matching(&gab.template, &x_prime)?.ok_or(TotalError::MatchingDefect)?;

    let mut walk = q0.vertices.clone();
    walk.push(gab.anchors[0].1);
    for i in 0..=s + 1 {
        let piece = match gab.local_segment.iter().position(|&h| h == i) {
            Some(zi) => activate_local_total(&gab.locals[zi], gab.left_vertex(mates[zi]))?.vertices,
            None => gab.fillers[i].clone().expect("segment without a local absorber has a filler"),
        };
        concat(&mut walk, &piece);
        walk.push(gab.anchors[i + 1].1);
    }
    concat(&mut walk, &q2.vertices);
    concat(&mut walk, &gab.q3);
    concat(&mut walk, &q4.vertices);
    if walk.len() != k {
        return Err(TotalError::SizeMismatch { expected: k, got: walk.len() });
    }
    Ok(walk)
}
