use digraph_core::io::{read_edge_list, write_edge_list};
use digraph_core::{
    all_sign_strings, verify_embedding, Digraph, Embedding, OrientationPattern, PatternKind,
    PseudorandomWitness, Sign, VertexSet,
};
use proptest::prelude::*;

fn pat(s: &str) -> OrientationPattern {
    s.parse().unwrap()
}

/// Edge-by-edge check written independently of `verify_embedding`.
fn naive_contains(d: &Digraph, p: &OrientationPattern, vs: &[usize]) -> bool {
    if vs.len() != p.k() {
        return false;
    }
    for a in 0..vs.len() {
        if vs[a] >= d.n() {
            return false;
        }
        for b in 0..a {
            if vs[a] == vs[b] {
                return false;
            }
        }
    }
    if p.kind() == PatternKind::Cycle && p.k() == 2 {
        return d.has_edge(vs[0], vs[1]) && d.has_edge(vs[1], vs[0]);
    }
    let signs = p.signs();
    for i in 0..signs.len() {
        let x = vs[i];
        let y = vs[(i + 1) % vs.len()];
        let ok = if signs[i] == Sign::Plus {
            d.out_neighbors(x).contains(y)
        } else {
            d.in_neighbors(x).contains(y)
        };
        if !ok {
            return false;
        }
    }
    true
}

#[test]
fn bidirected_triangle_contains_consistent_triangle() {
    let d = Digraph::complete(3);
    let e = Embedding::new(pat("cycle +++"), vec![0, 1, 2]);
    assert!(verify_embedding(&d, &e));
}

#[test]
fn single_forward_edge_does_not_realise_backward_path() {
    let d = Digraph::from_edges(2, [(0, 1)]).unwrap();
    let e = Embedding::new(pat("path -"), vec![0, 1]);
    assert!(!verify_embedding(&d, &e));
    let e = Embedding::new(pat("path +"), vec![0, 1]);
    assert!(verify_embedding(&d, &e));
}

#[test]
fn malformed_embeddings_are_rejected() {
    let d = Digraph::complete(4);
    assert!(!verify_embedding(&d, &Embedding::new(pat("path ++"), vec![0, 1])));
    assert!(!verify_embedding(&d, &Embedding::new(pat("path ++"), vec![0, 1, 0])));
    assert!(!verify_embedding(&d, &Embedding::new(pat("path ++"), vec![0, 1, 9])));
}

#[test]
fn digon_needs_both_edges() {
    let one = Digraph::from_edges(2, [(0, 1)]).unwrap();
    let both = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
    for s in ["cycle ++", "cycle +-", "cycle -+", "cycle --"] {
        assert!(!verify_embedding(&one, &Embedding::new(pat(s), vec![0, 1])));
        assert!(verify_embedding(&both, &Embedding::new(pat(s), vec![0, 1])));
    }
}

/// Every digraph on at most four vertices, every pattern that fits and every
/// vertex sequence of the right length (repeats included).
#[test]
fn verifier_matches_naive_check_exhaustively() {
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        let mut patterns = Vec::new();
        for k in 2..=n {
            for s in all_sign_strings(k - 1) {
                patterns.push(OrientationPattern::path(s).unwrap());
            }
            for s in all_sign_strings(k) {
                patterns.push(OrientationPattern::cycle(s).unwrap());
            }
        }
        for mask in 0u32..(1 << pairs.len()) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let d = Digraph::from_edges(n, edges).unwrap();
            for p in &patterns {
                let k = p.k();
                let total = n.pow(k as u32);
                for code in 0..total {
                    let vs: Vec<usize> = (0..k).map(|i| code / n.pow(i as u32) % n).collect();
                    if k == 4 && code % 7 != 0 {
                        let mut sorted = vs.clone();
                        sorted.sort_unstable();
                        sorted.dedup();
                        if sorted.len() < 4 {
                            continue;
                        }
                    }
                    let e = Embedding::new(p.clone(), vs.clone());
                    assert_eq!(verify_embedding(&d, &e), naive_contains(&d, p, &vs));
                }
            }
        }
    }
}

#[test]
fn subpattern_slices() {
    let p = pat("path +-+-");
    assert_eq!(p.subpattern(2, 4).unwrap(), pat("path -+"));
    assert_eq!(p.subpattern(1, 5).unwrap(), p);
    assert!(p.subpattern(3, 3).is_err());
    assert!(p.subpattern(0, 2).is_err());
    assert!(p.subpattern(2, 6).is_err());
}

#[test]
fn cyclic_window_unrolls_the_cycle() {
    let c = pat("cycle ++-");
    assert_eq!(c.subpattern(3, 5).unwrap(), pat("path -+"));
    assert_eq!(c.subpattern(1, 3).unwrap(), pat("path ++"));
    assert_eq!(c.subpattern(2, 4).unwrap(), pat("path +-"));
    assert!(c.subpattern(1, 4).is_err());
}

#[test]
fn pattern_degrees_and_steps() {
    let p = pat("path +-+-");
    assert_eq!(p.k(), 5);
    let ind: Vec<usize> = (1..=5).map(|i| p.in_degree_at(i)).collect();
    assert_eq!(ind, vec![0, 2, 0, 2, 0]);
    assert_eq!(p.step(2, 1), Sign::Minus);
    assert_eq!(p.step(2, 3), Sign::Minus);
    assert_eq!(p.degree_at(3, Sign::Plus), 2);
    let c = pat("cycle +++");
    assert_eq!(c.step(3, 1), Sign::Plus);
    assert_eq!(c.step(1, 3), Sign::Minus);
    assert_eq!(c.count_indegree_one(), 3);
}

#[test]
fn reversal_reads_the_pattern_backwards() {
    let p = pat("path ++-");
    let r = p.reversed();
    assert_eq!(r, pat("path +--"));
    let d = Digraph::from_edges(4, [(0, 1), (1, 2), (3, 2)]).unwrap();
    assert!(verify_embedding(&d, &Embedding::new(p, vec![0, 1, 2, 3])));
    assert!(verify_embedding(&d, &Embedding::new(r, vec![3, 2, 1, 0])));
}

#[test]
fn rotation_moves_the_start() {
    let c = pat("cycle ++-+");
    assert_eq!(c.rotated(2), pat("cycle -+++"));
}

#[test]
fn named_orientations() {
    assert_eq!(
        OrientationPattern::antidirected(PatternKind::Cycle, 4).unwrap(),
        pat("cycle +-+-")
    );
    assert!(OrientationPattern::consistent(PatternKind::Path, 5)
        .unwrap()
        .is_consistent());
    assert!(OrientationPattern::path(vec![]).is_err());
    assert!(OrientationPattern::cycle(vec![Sign::Plus]).is_err());
}

#[test]
fn degrees_of_small_fixtures() {
    let k4 = Digraph::complete(4);
    assert_eq!(k4.min_semidegree(), 3);
    assert_eq!(k4.min_total_degree(), 6);

    let s = [0usize, 1];
    let t = [2usize, 3, 4];
    let d = Digraph::from_edges(5, s.iter().flat_map(|&a| t.iter().map(move |&b| (a, b)))).unwrap();
    assert_eq!(d.min_semidegree(), 0);
    assert_eq!(d.min_total_degree(), 2);
}

#[test]
fn loops_and_out_of_range_edges_are_rejected() {
    let mut d = Digraph::new(3);
    assert!(d.add_edge(1, 1).is_err());
    assert!(d.add_edge(0, 3).is_err());
    assert!(d.add_edge(0, 1).unwrap());
    assert!(!d.add_edge(0, 1).unwrap());
    assert_eq!(d.edge_count(), 1);
}

#[test]
fn union_requires_matching_sizes() {
    let a = Digraph::from_edges(3, [(0, 1)]).unwrap();
    let b = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let u = a.union(&b).unwrap();
    assert_eq!(u.edge_count(), 2);
    assert!(a.union(&Digraph::new(4)).is_err());
}

#[test]
fn edge_list_round_trip() {
    let d = Digraph::from_edges(5, [(0, 1), (1, 0), (3, 4), (2, 0)]).unwrap();
    let mut buf = Vec::new();
    write_edge_list(&d, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("5 4\n"));
    let back = read_edge_list(&buf[..]).unwrap();
    assert_eq!(back, d);
}

#[test]
fn edge_list_errors() {
    assert!(read_edge_list("3 2\n0 1\n".as_bytes()).is_err());
    assert!(read_edge_list("3 1\n0 0\n".as_bytes()).is_err());
    assert!(read_edge_list("3 1\n0 x\n".as_bytes()).is_err());
    assert!(read_edge_list("".as_bytes()).is_err());
    let d = read_edge_list("# comment\n2 1\n\n0 1\n".as_bytes()).unwrap();
    assert!(d.has_edge(0, 1));
}

#[test]
fn pattern_text_format() {
    assert_eq!(pat("cycle +-+").to_string(), "cycle +-+");
    assert!("loop ++".parse::<OrientationPattern>().is_err());
    assert!("path +*".parse::<OrientationPattern>().is_err());
    assert!("path".parse::<OrientationPattern>().is_err());
}

#[test]
fn witness_check_is_exhaustive() {
    let mut d = Digraph::new(6);
    d.add_bi_edge(0, 4).unwrap();
    d.add_edge(1, 3).unwrap();
    let w = PseudorandomWitness::bidirected(vec![0, 1], vec![2, 3], 2);
    assert!(w.is_valid(&d));
    let w = PseudorandomWitness::bidirected(vec![0, 1], vec![3, 4], 2);
    assert!(!w.is_valid(&d));
    let overlap = PseudorandomWitness::bidirected(vec![0, 1], vec![1, 2], 2);
    assert!(!overlap.is_valid(&d));
    let short = PseudorandomWitness::bidirected(vec![0], vec![2, 3], 2);
    assert!(!short.is_valid(&d));
}

#[test]
fn vertex_set_word_scans() {
    let a = VertexSet::from_iter(200, [3, 70, 130, 199]);
    let b = VertexSet::from_iter(200, [70, 130, 150]);
    assert_eq!(a.first_common(&b), Some(70));
    let skip = VertexSet::from_iter(200, [70]);
    assert_eq!(a.first_common_excluding(&b, &skip), Some(130));
    assert_eq!(a.intersection_len(&b), 2);
    assert_eq!(a.lowest(2), vec![3, 70]);
    assert_eq!(VertexSet::full(130).len(), 130);
}

proptest! {
    #[test]
    fn adjacency_duality(n in 2usize..20, raw in prop::collection::vec((0usize..20, 0usize..20), 0..120)) {
        let mut d = Digraph::new(n);
        for (u, v) in raw {
            let (u, v) = (u % n, v % n);
            if u != v {
                d.add_edge(u, v).unwrap();
            }
        }
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(d.out_neighbors(u).contains(v), d.in_neighbors(v).contains(u));
                prop_assert_eq!(
                    d.bi_neighbors(u).contains(v),
                    d.has_edge(u, v) && d.has_edge(v, u)
                );
            }
            prop_assert!(!d.out_neighbors(u).contains(u));
        }
        let counted: usize = (0..n).map(|v| d.out_degree(v)).sum();
        prop_assert_eq!(counted, d.edge_count());
    }

    #[test]
    fn subpattern_composes(
        signs in prop::collection::vec(any::<bool>(), 2..30),
        a in 0usize..40, b in 0usize..40, c in 0usize..40, e in 0usize..40,
    ) {
        let signs: Vec<Sign> = signs.into_iter().map(|x| if x { Sign::Plus } else { Sign::Minus }).collect();
        let p = OrientationPattern::path(signs).unwrap();
        let k = p.k();
        let i = 1 + a % (k - 1);
        let j = i + 1 + b % (k - i);
        let q = p.subpattern(i, j).unwrap();
        let len = q.k();
        let x = 1 + c % (len - 1);
        let y = x + 1 + e % (len - x);
        prop_assert_eq!(
            q.subpattern(x, y).unwrap(),
            p.subpattern(i + x - 1, i + y - 1).unwrap()
        );
    }

    #[test]
    fn reversal_is_an_involution(signs in prop::collection::vec(any::<bool>(), 1..30), cyc in any::<bool>()) {
        let signs: Vec<Sign> = signs.into_iter().map(|x| if x { Sign::Plus } else { Sign::Minus }).collect();
        let kind = if cyc && signs.len() >= 2 { PatternKind::Cycle } else { PatternKind::Path };
        let p = OrientationPattern::new(kind, signs).unwrap();
        prop_assert_eq!(p.reversed().reversed(), p);
    }
}
