use absorb_total::*;
use digraph_core::{
    is_bidirected_path, verify_embedding, Digraph, OrientationPattern, PatternKind, Sign, VertexSet,
};
use proptest::prelude::*;
use randgen::{gen_oneway_extremal, gen_random, ModelKind, RandomModel};

fn mixed(n: usize, p: f64, q: f64, seed: u64) -> Digraph {
    let a = gen_random(&RandomModel::new(ModelKind::Directed, n, p, seed)).unwrap();
    let b = gen_random(&RandomModel::new(ModelKind::Bidirected, n, q, seed + 1)).unwrap();
    a.union(&b).unwrap()
}

fn anti(k: usize) -> OrientationPattern {
    OrientationPattern::antidirected(PatternKind::Path, k).unwrap()
}

fn params(alpha: f64, m: usize, beta_m: usize, r: usize, seg_len: usize, slots: usize) -> TotalParams {
    TotalParams {
        alpha,
        m,
        beta_m,
        r,
        seg_len,
        slots,
        witness_t: 2,
        x_retries: 200,
    }
}

#[test]
fn swap_vertices_examples() {
    let cons = OrientationPattern::consistent(PatternKind::Path, 12).unwrap();
    assert!(swap_vertices(&cons).is_empty());
    let p = "path +-+-".parse::<OrientationPattern>().unwrap();
    assert_eq!(swap_vertices(&p), vec![2, 3, 4]);
    assert_eq!(swap_vertices(&anti(9)), (2..9).collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn swap_vertices_alternate(signs in proptest::collection::vec(any::<bool>(), 1..50)) {
        let signs: Vec<Sign> = signs.into_iter().map(|b| if b { Sign::Plus } else { Sign::Minus }).collect();
        let p = OrientationPattern::path(signs.clone()).unwrap();
        let sw = swap_vertices(&p);
        // recount from the sign string: u_i is a swap vertex iff its two edges differ in sign
        let expect: Vec<usize> = (2..p.k()).filter(|&i| signs[i - 2] != signs[i - 1]).collect();
        prop_assert_eq!(&sw, &expect);
        for w in sw.windows(2) {
            prop_assert_ne!(p.in_degree_at(w[0]), p.in_degree_at(w[1]));
        }
    }
}

#[test]
fn compatibility_threshold_is_inclusive() {
    let k10 = Digraph::complete(10);
    let p = "path +-+".parse::<OrientationPattern>().unwrap();
    assert!(is_compatible(&k10, 0, 1, &p, 0.9));

    let one_way = gen_oneway_extremal(10, 0.3).unwrap();
    assert!(!is_compatible(&one_way, 5, 0, &p, 0.1));

    let mut d = Digraph::new(10);
    for w in 1..=3 {
        d.add_edge(0, w).unwrap();
        d.add_edge(w, 9).unwrap();
    }
    // u₄ is entered along u₃ → u₄, so the end needs large in-degree
    let q = "path +++".parse::<OrientationPattern>().unwrap();
    assert!(is_compatible(&d, 0, 9, &q, 0.3));
    assert!(!is_compatible(&d, 0, 9, &q, 0.31));
}

fn check_partition(d: &Digraph, alpha: f64, vp: &VertexSet, vm: &VertexSet) {
    let n = d.n();
    assert!(vp.is_disjoint(vm));
    assert_eq!(vp.len() + vm.len(), n);
    for v in vp.iter() {
        assert!(d.out_degree(v) as f64 >= alpha * n as f64 / 2.0);
    }
    for v in vm.iter() {
        assert!(d.in_degree(v) as f64 >= alpha * n as f64 / 2.0);
    }
}

#[test]
fn degree_partition_cases() {
    let k = Digraph::complete(20);
    let (vp, vm) = partition_by_degree(&k, 0.3).unwrap();
    check_partition(&k, 0.3, &vp, &vm);
    assert_eq!((vp.len(), vm.len()), (10, 10));

    let d = mixed(300, 0.4, 0.4, 3);
    let (vp, vm) = partition_by_degree(&d, 0.3).unwrap();
    check_partition(&d, 0.3, &vp, &vm);
    assert!(vp.len().abs_diff(vm.len()) <= 1);

    let one_way = gen_oneway_extremal(100, 0.3).unwrap();
    let (vp, vm) = partition_by_degree(&one_way, 0.3).unwrap();
    assert_eq!(vp.to_vec(), (0..30).collect::<Vec<_>>());
    assert_eq!(vm.to_vec(), (30..100).collect::<Vec<_>>());

    let mut sparse = Digraph::complete(20);
    for w in 0..20 {
        if w != 7 {
            sparse = remove_pair(sparse, 7, w);
        }
    }
    assert_eq!(partition_by_degree(&sparse, 0.3), Err(TotalError::LowDegree { vertex: 7 }));
}

fn remove_pair(d: Digraph, a: usize, b: usize) -> Digraph {
    let edges = d.edges().filter(|&(x, y)| !((x == a && y == b) || (x == b && y == a)));
    Digraph::from_edges(d.n(), edges).unwrap()
}

#[test]
fn reservoir_on_a_dense_host() {
    let d = mixed(1000, 0.5, 0.3, 11);
    let res = build_reservoir(&d, 0.3, 40, 6, 5, 5).unwrap();
    assert_eq!(res.x.len(), 46);
    assert!(res.is_valid(&d));
    assert!(res.x_plus.len() >= 12 && res.x_minus.len() >= 12);

    let sparse = mixed(200, 0.02, 0.0, 1);
    assert!(build_reservoir(&sparse, 0.001, 20, 6, 5, 3).is_err());
}

fn interior_in(e: &digraph_core::Embedding, x: &VertexSet, avoid: &VertexSet) -> bool {
    e.vertices[1..e.vertices.len() - 1]
        .iter()
        .all(|&v| x.contains(v) && !avoid.contains(v))
}

#[test]
fn links_of_both_parities() {
    let n = 600;
    let d = mixed(n, 0.5, 0.5, 21);
    let res = build_reservoir(&d, 0.4, 60, 10, 9, 50).unwrap();
    let x = res.x_set(n);
    let outside: Vec<usize> = (0..n).filter(|&v| !x.contains(v)).collect();
    let u = VertexSet::from_iter(n, res.x.iter().copied().take(3));
    for (i, spec) in ["path +-+", "path ++-+", "path -++-+-", "path +-++--+", "path ------"]
        .iter()
        .enumerate()
    {
        let p = spec.parse::<OrientationPattern>().unwrap();
        let (v, w) = (outside[2 * i], outside[2 * i + 1]);
        let e = link_through_reservoir(&d, &res, v, w, &p, &u, 2).unwrap();
        assert!(verify_embedding(&d, &e), "{spec}");
        assert_eq!((e.start(), e.end()), (v, w));
        assert!(interior_in(&e, &x, &u));
    }
    let k = Digraph::complete(30);
    let res = Reservoir {
        alpha: 0.5,
        m: 4,
        beta_m: 2,
        x: vec![0, 1, 2, 3, 4, 5],
        x_plus: vec![0, 2, 4],
        x_minus: vec![1, 3, 5],
    };
    let p = "path -+-".parse::<OrientationPattern>().unwrap();
    let e = link_through_reservoir(&k, &res, 10, 20, &p, &VertexSet::new(30), 1).unwrap();
    assert_eq!(e.vertices, vec![10, 0, 1, 20]);
    assert!(link_through_reservoir(&k, &res, 0, 20, &p, &VertexSet::new(30), 1).is_err());
}

#[test]
fn chain_covers_r_and_beta_m_reservoir_vertices() {
    let n = 800;
    let d = mixed(n, 0.5, 0.6, 5);
    let beta_m = 12;
    let res = build_reservoir(&d, 0.4, 60, beta_m, 1, 100).unwrap();
    let x = res.x_set(n);
    let outside: Vec<usize> = (0..n).filter(|&v| !x.contains(v)).collect();
    for size in 2..=5 {
        let r = VertexSet::from_iter(n, outside[10 * size..10 * size + size].iter().copied());
        let ends = r.to_vec();
        let (v, w) = (ends[0], *ends.last().unwrap());
        let p = anti(size + beta_m);
        let e = chain_absorb(&d, &res, &r, v, w, &p, &VertexSet::new(n), 2).unwrap();
        assert!(verify_embedding(&d, &e));
        assert_eq!((e.start(), e.end()), (v, w));
        let cover = e.vertex_set(n);
        assert!(r.is_subset(&cover));
        assert_eq!(cover.difference(&r).len(), beta_m);
        assert!(cover.difference(&r).is_subset(&x));
    }
    let r = VertexSet::from_iter(n, outside[..5].iter().copied());
    let cons = OrientationPattern::consistent(PatternKind::Path, 17).unwrap();
    assert!(matches!(
        chain_absorb(&d, &res, &r, outside[0], outside[4], &cons, &VertexSet::new(n), 2),
        Err(TotalError::NotEnoughSwaps { needed: 14, found: 0 })
    ));
}

fn check_long_path(d: &Digraph, path: &[usize], used: &VertexSet, k: usize, s1: Sign, s2: Sign, alpha: f64) {
    let n = d.n();
    assert_eq!(path.len(), k);
    assert!(is_bidirected_path(d, path));
    assert!(VertexSet::from_iter(n, path.iter().copied()).is_disjoint(used));
    assert!(d.degree(path[0], s1) as f64 >= alpha * n as f64 / 2.0);
    assert!(d.degree(path[k - 1], s2) as f64 >= alpha * n as f64 / 2.0);
}

#[test]
fn long_paths_with_prescribed_end_sides() {
    let n = 60;
    let k = Digraph::complete(n);
    let used = VertexSet::from_iter(n, 0..6);
    for (s1, s2) in [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)] {
        let p = long_path_with_degrees(&k, &used, 20, s1, s2, 0.5, 2).unwrap();
        check_long_path(&k, &p, &used, 20, s1, s2, 0.5);
    }
    // equal sides on a host split in half: the path detours through the other half
    for s in Sign::BOTH {
        let p = long_path_with_degrees(&k, &used, 40, s, s, 0.5, 2).unwrap();
        check_long_path(&k, &p, &used, 40, s, s, 0.5);
    }

    let d = mixed(300, 0.3, 0.3, 8);
    let used = VertexSet::from_iter(300, (0..300).step_by(7));
    for (s1, s2) in [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus)] {
        let p = long_path_with_degrees(&d, &used, 200, s1, s2, 0.3, 3).unwrap();
        check_long_path(&d, &p, &used, 200, s1, s2, 0.3);
    }
    let err = long_path_with_degrees(&d, &used, 256, Sign::Plus, Sign::Plus, 0.3, 3);
    assert!(matches!(err, Err(TotalError::SizeMismatch { .. })));
}

fn check_local(d: &Digraph, a: &LocalAbsorberTotal) {
    let n = d.n();
    let own = VertexSet::from_iter(n, a.vertices());
    assert_eq!(own.len(), a.segment.k() - 2);
    for &s in &a.slots {
        let e = activate_local_total(a, s).unwrap();
        assert!(verify_embedding(d, &e));
        assert_eq!((e.start(), e.end()), (a.start, a.end));
        let mut expect = own.clone();
        expect.insert(s);
        expect.insert(a.hub);
        assert_eq!(e.vertex_set(n), expect);
    }
}

#[test]
fn local_absorbers_for_one_five_and_forty_slots() {
    let n = 700;
    let d = mixed(n, 0.5, 0.7, 2);
    for (seed, l) in [1usize, 5, 40].into_iter().enumerate() {
        let slots: Vec<usize> = (10..10 + l).collect();
        let forbidden = VertexSet::from_iter(n, 100..160);
        let seg = anti(3 * l + 9);
        let a = build_local_absorber_total(&d, &seg, 200 + seed, 300, &slots, 5, &forbidden, 2).unwrap();
        assert!(a.vertices().iter().all(|&v| !forbidden.contains(v) || v == a.start));
        check_local(&d, &a);
        assert!(matches!(activate_local_total(&a, 99), Err(TotalError::NotASlot(99))));
    }
    let cons = OrientationPattern::consistent(PatternKind::Path, 30).unwrap();
    let err = build_local_absorber_total(&d, &cons, 1, 2, &[3], 4, &VertexSet::new(n), 2);
    assert!(matches!(err, Err(TotalError::NotEnoughSwaps { .. })));
}

#[test]
fn local_absorber_uses_the_larger_side_of_each_slot() {
    let n = 400;
    let base = mixed(n, 0.0, 0.7, 4);
    // slot 0 only sends edges out of itself, slot 1 only receives
    let edges = base
        .edges()
        .filter(|&(a, b)| !(a == 0 || b == 0 || a == 1 || b == 1))
        .chain((2..n).map(|w| (0, w)))
        .chain((2..n).map(|w| (w, 1)));
    let d = Digraph::from_edges(n, edges).unwrap();
    let seg = "path +-+-+-+-+-+-+-+-+-".parse::<OrientationPattern>().unwrap();
    let a = build_local_absorber_total(&d, &seg, 50, 60, &[0, 1], 70, &VertexSet::new(n), 2).unwrap();
    assert_eq!(a.segment.degree_at(a.slot_positions[0], Sign::Plus), 2);
    assert_eq!(a.segment.degree_at(a.slot_positions[1], Sign::Minus), 2);
    check_local(&d, &a);
}

#[test]
fn segmentation_counts() {
    let p = params(0.4, 6, 6, 2, 15, 2);
    assert_eq!(p.good_threshold(), 13);
    let pat = anti(300);
    let seg = segment_pattern(&pat, &p).unwrap();
    assert!(!seg.mirrored);
    // s = ⌊(j−8)/p⌋ − 1 must reach 3m − 1 = 17
    assert_eq!(seg.j, 19 * 15 + 8 - 15);
    assert_eq!(seg.s, 17);
    assert_eq!(seg.good_count(), 18);

    let tilted = tilted_pattern(300, 15);
    let seg = segment_pattern(&tilted, &p).unwrap();
    assert!(seg.mirrored);
    assert_eq!(seg.j, 278);

    let cons = OrientationPattern::consistent(PatternKind::Path, 400).unwrap();
    assert_eq!(segment_pattern(&cons, &p), Err(TotalError::NoSegmentation));
    assert_eq!(params(0.4, 40, 1, 2, 129, 40).good_threshold(), 127);
}

/// Antidirected except that, read backwards, `u_i` is not a swap vertex
/// whenever `i ≡ 4 (mod period)` and `i > period`. Those positions sit on
/// segment boundaries of the reversed pattern but inside every forward
/// segment, so only the mirrored cut works.
fn tilted_pattern(k: usize, period: usize) -> OrientationPattern {
    let mut signs = vec![Sign::Plus];
    for e in 2..k {
        let prev = signs[e - 2];
        let defect = e > period && e % period == 4;
        signs.push(if defect { prev } else { prev.flip() });
    }
    OrientationPattern::path(signs).unwrap().reversed()
}

fn check_activation(d: &Digraph, gab: &GlobalAbsorberTotal, r: &VertexSet, v: usize, w: usize) {
    let n = d.n();
    let e = activate_global_total(d, gab, r, v, w).unwrap();
    assert!(verify_embedding(d, &e));
    assert_eq!((e.start(), e.end()), (v, w));
    assert_eq!(e.vertices.len(), gab.pattern.k());
    assert_eq!(e.vertex_set(n), gab.vertex_set(n).union(r));
}

#[test]
fn global_absorber_reuse() {
    let n = 3000;
    let d = mixed(n, 0.5, 0.8, 17);
    let p = params(0.4, 30, 9, 3, 27, 6);
    let k = 2560;
    let pattern = anti(k);
    let gab = build_global_absorber_total(&d, &pattern, &p, 3).unwrap();
    let m = p.m;
    assert!(!gab.seg.mirrored);
    assert_eq!(gab.size(n), k - p.r);
    assert_eq!(gab.a1(n).len(), gab.seg.j - 6 * m - 2);
    assert!(gab.reservoir.is_valid(&d));
    assert_eq!(gab.locals.len(), 3 * m);
    for l in &gab.locals {
        check_local(&d, l);
    }
    let outside: Vec<usize> = d.vertex_set().difference(&gab.vertex_set(n)).to_vec();
    for trial in 0..20 {
        let picks = &outside[3 * trial..3 * trial + 3];
        let r = VertexSet::from_iter(n, picks.iter().copied());
        check_activation(&d, &gab, &r, picks[2], picks[0]);
    }
    let back: GlobalAbsorberTotal = serde_json::from_str(&gab.diagnostic_json()).unwrap();
    assert_eq!(back, gab);

    let r = VertexSet::from_iter(n, outside[..4].iter().copied());
    assert!(matches!(
        activate_global_total(&d, &gab, &r, outside[0], outside[1]),
        Err(TotalError::SizeMismatch { .. })
    ));
}

#[test]
fn mirrored_global_absorber() {
    let n = 2100;
    let d = mixed(n, 0.5, 0.8, 29);
    let p = params(0.4, 18, 6, 2, 27, 6);
    let pattern = tilted_pattern(1800, 27);
    let gab = build_global_absorber_total(&d, &pattern, &p, 8).unwrap();
    assert!(gab.seg.mirrored);
    assert_eq!(gab.size(n), pattern.k() - 2);
    let outside: Vec<usize> = d.vertex_set().difference(&gab.vertex_set(n)).to_vec();
    for trial in 0..5 {
        let (v, w) = (outside[2 * trial], outside[2 * trial + 1]);
        check_activation(&d, &gab, &VertexSet::from_iter(n, [v, w]), v, w);
    }
}
