use crate::local::{activate_local_semi, build_local_absorber_semi, LocalAbsorberSemi};
use crate::{absorb_r_into_x, AbsorbError, SemiParams};
use digraph_core::{concat, verify_embedding, Digraph, Embedding, OrientationPattern, Sign, VertexSet};
use montgomery::{build_template_with_cap, robust_matching, MontgomeryTemplate};
use pseudo::three_edge_connector;
use randgen::{derive_seed, rng_for, sample_subset};
use serde::{Deserialize, Serialize};

const TEMPLATE_STREAM: u64 = 1 << 40;

/// Reservoir `X`, matching side `Y`, hubs `z₀ … z₃ₘ` and one local absorber
/// per hub. Local `i` (1-based) starts at `z_{i−1}`, ends at `zᵢ` and has the
/// slot set `Nᵢ ⊇ N_H(zᵢ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalAbsorberSemi {
    pub pattern: OrientationPattern,
    pub params: SemiParams,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `z₁ … z₃ₘ`.
    pub z: Vec<usize>,
    pub z0: usize,
    pub template: MontgomeryTemplate,
    pub locals: Vec<LocalAbsorberSemi>,
}

impl GlobalAbsorberSemi {
    /// `A = X ∪ Y ∪ {z₃ₘ} ∪ ⋃ Aᵢ`.
    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut a = VertexSet::from_iter(n, self.x.iter().chain(&self.y).copied());
        a.insert(*self.z.last().expect("m ≥ 1"));
        for l in &self.locals {
            for v in l.vertices() {
                a.insert(v);
            }
        }
        a
    }

    pub fn size(&self, n: usize) -> usize {
        self.vertex_set(n).len()
    }

    /// Size of the leftover set `R` an activation must be given.
    pub fn leftover_size(&self, n: usize) -> usize {
        self.pattern.k() - self.size(n)
    }

    fn left_vertex(&self, left: usize) -> usize {
        if left < self.x.len() {
            self.x[left]
        } else {
            self.y[left - self.x.len()]
        }
    }

    /// Pretty JSON of every set, slot list and local spine.
    pub fn diagnostic_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }
}

/// Samples `X` until every vertex has at least `2βm + 2` in- and
/// out-neighbours in it, takes `Y`, `Z` and `z₀` as the lowest remaining
/// ids, and builds the `3m` local absorbers one after another, each
/// avoiding everything placed so far.
pub fn build_global_absorber_semi(
    d: &Digraph,
    pattern: &OrientationPattern,
    params: &SemiParams,
    seed: u64,
) -> Result<GlobalAbsorberSemi, AbsorbError> {
    let n = d.n();
    let m = params.m;
    let k = pattern.k();
    if m == 0 || params.beta_m == 0 || params.beta_m > m {
        return Err(AbsorbError::InvalidInput("need 1 ≤ βm ≤ m".into()));
    }
    if 3 * m + params.beta_m < params.slots {
        return Err(AbsorbError::InvalidInput(format!(
            "|X ∪ Y| = {} is below the {} slots per local absorber",
            3 * m + params.beta_m,
            params.slots
        )));
    }
    if pattern.is_cycle() || k < params.absorber_size() + 2 {
        return Err(AbsorbError::InvalidInput(format!(
            "path on {k} vertices cannot host an absorber on {} vertices plus two",
            params.absorber_size()
        )));
    }
    if n < params.absorber_size() + 2 {
        return Err(AbsorbError::SizeMismatch {
            expected: params.absorber_size() + 2,
            got: n,
        });
    }

    let x = sample_reservoir(d, params, seed)?;
    let x_set = VertexSet::from_iter(n, x.iter().copied());
    let outside = d.vertex_set().difference(&x_set);
    let mut rest = outside.iter();
    let y: Vec<usize> = rest.by_ref().take(2 * m).collect();
    let z: Vec<usize> = rest.by_ref().take(3 * m).collect();
    let z0 = rest.next().expect("n exceeds the absorber size");

    let template = build_template_with_cap(m, params.beta(), params.slots, derive_seed(seed, TEMPLATE_STREAM))?;
    let mut gab = GlobalAbsorberSemi {
        pattern: pattern.clone(),
        params: params.clone(),
        x,
        y,
        z,
        z0,
        template,
        locals: Vec::with_capacity(3 * m),
    };

    let xy: Vec<usize> = {
        let mut v: Vec<usize> = gab.x.iter().chain(&gab.y).copied().collect();
        v.sort_unstable();
        v
    };
    let mut used = VertexSet::from_iter(n, xy.iter().chain(&gab.z).copied());
    used.insert(z0);
    let stride = params.stride();
    for i in 1..=3 * m {
        let start = if i == 1 { z0 } else { gab.z[i - 2] };
        let hub = gab.z[i - 1];
        let slots = padded_slots(&gab, i - 1, &xy);
        let segment = pattern
            .subpattern(stride * (i - 1) + 4, stride * i + 4)
            .expect("pattern long enough");
        let mut forbidden = used.clone();
        forbidden.remove(start);
        let local = build_local_absorber_semi(d, &segment, start, &slots, hub, &forbidden, params.witness_t)?;
        for &v in &local.spine {
            used.insert(v);
        }
        gab.locals.push(local);
    }

    let size = gab.size(n);
    if size != params.absorber_size() {
        return Err(AbsorbError::SizeMismatch {
            expected: params.absorber_size(),
            got: size,
        });
    }
    Ok(gab)
}

/// `N_H(zᵢ)` topped up with the lowest other vertices of `X ∪ Y`.
fn padded_slots(gab: &GlobalAbsorberSemi, zi: usize, xy_sorted: &[usize]) -> Vec<usize> {
    let mut slots: Vec<usize> = gab
        .template
        .neighbors_of_z(zi)
        .iter()
        .map(|&l| gab.left_vertex(l))
        .collect();
    for &v in xy_sorted {
        if slots.len() >= gab.params.slots {
            break;
        }
        if !slots.contains(&v) {
            slots.push(v);
        }
    }
    slots.sort_unstable();
    slots
}

fn sample_reservoir(d: &Digraph, params: &SemiParams, seed: u64) -> Result<Vec<usize>, AbsorbError> {
    let need = params.x_degree_threshold();
    for attempt in 0..params.x_retries {
        let mut rng = rng_for(derive_seed(seed, attempt as u64), 0);
        let x = sample_subset(&mut rng, d.n(), params.x_len());
        let xs = VertexSet::from_iter(d.n(), x.iter().copied());
        let ok = (0..d.n()).all(|v| {
            Sign::BOTH
                .iter()
                .all(|&s| d.neighbors(v, s).intersection_len(&xs) >= need)
        });
        if ok {
            return Ok(x);
        }
    }
    Err(AbsorbError::XSampling {
        retries: params.x_retries,
    })
}

/// Copy of the whole pattern on `A ∪ R` from `v` to `v_end`.
///
/// `(v, x₁, x₂, z₀)` opens the path, `R ∖ {v}` and `z₃ₘ` are absorbed into
/// `X` for the tail, and the `m` reservoir vertices still unused are matched
/// to `Z` through the template. Each hub `zᵢ` then activates its local
/// absorber with its partner as the slot.
pub fn activate_global_semi(
    d: &Digraph,
    gab: &GlobalAbsorberSemi,
    r: &VertexSet,
    v: usize,
    v_end: usize,
) -> Result<Embedding, AbsorbError> {
    let n = d.n();
    let a = gab.vertex_set(n);
    let k = gab.pattern.k();
    let m = gab.params.m;
    if !r.is_disjoint(&a) {
        return Err(AbsorbError::InvalidInput("R meets the absorber".into()));
    }
    if r.len() + a.len() != k {
        return Err(AbsorbError::SizeMismatch {
            expected: k - a.len(),
            got: r.len(),
        });
    }
    if v == v_end || !r.contains(v) || !r.contains(v_end) {
        return Err(AbsorbError::InvalidInput(
            "endpoints must be distinct vertices of R".into(),
        ));
    }

    let p = &gab.pattern;
    let x_set = VertexSet::from_iter(n, gab.x.iter().copied());
    let head = three_edge_connector(
        d,
        v,
        gab.z0,
        [p.sigma(1), p.sigma(2), p.sigma(3)],
        &x_set,
        gab.params.witness_t,
    )
    .map_err(AbsorbError::at("opening connector"))?;

    let mut x_bar = x_set.clone();
    x_bar.remove(head[1]);
    x_bar.remove(head[2]);
    let hub_last = *gab.z.last().expect("m ≥ 1");
    let mut r_bar = r.clone();
    r_bar.remove(v);
    r_bar.insert(hub_last);
    let tail_start = gab.params.stride() * 3 * m + 4;
    let tail_pattern = p.subpattern(tail_start, k).expect("tail fits");
    let tail = absorb_r_into_x(
        d,
        &x_bar,
        &r_bar,
        hub_last,
        v_end,
        &tail_pattern,
        gab.params.leftover,
        gab.params.witness_t,
    )?;

    let left_over = x_bar.difference(&tail.vertex_set(n));
    if left_over.len() != m {
        return Err(AbsorbError::SizeMismatch {
            expected: m,
            got: left_over.len(),
        });
    }
    let x_prime: Vec<usize> = left_over
        .iter()
        .map(|x| gab.x.binary_search(&x).expect("reservoir vertex"))
        .collect();
    let mates = robust_matching(&gab.template, &x_prime)?.ok_or(AbsorbError::MatchingDefect)?;

    let mut walk = head.to_vec();
    for (local, &left) in gab.locals.iter().zip(&mates) {
        let piece = activate_local_semi(local, gab.left_vertex(left))?;
        concat(&mut walk, &piece.vertices);
    }
    concat(&mut walk, &tail.vertices);
    let e = Embedding::new(p.clone(), walk);
    debug_assert!(verify_embedding(d, &e));
    Ok(e)
}
