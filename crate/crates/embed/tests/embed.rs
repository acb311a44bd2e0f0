use absorb_semi::SemiParams;
use absorb_total::TotalParams;
use digraph_core::{all_sign_strings, verify_embedding, Digraph, OrientationPattern, PatternKind, Sign};
use embed::{
    brute_force_contains, embed_cycle, universality_sweep, Assertions, EmbedConfig, EmbedError, EmbedOutcome, Strategy,
    Verdict,
};
use proptest::prelude::*;
use randgen::{gen_bipartite_extremal, gen_oneway_extremal, gen_random, ModelKind, RandomModel};

fn cycle(s: &str) -> OrientationPattern {
    format!("cycle {s}").parse().unwrap()
}

fn dstar(n: usize, p: f64, seed: u64) -> Digraph {
    gen_random(&RandomModel::new(ModelKind::Bidirected, n, p, seed)).unwrap()
}

fn mixed(n: usize, p: f64, q: f64, seed: u64) -> Digraph {
    let a = gen_random(&RandomModel::new(ModelKind::Directed, n, p, seed)).unwrap();
    a.union(&dstar(n, q, seed + 1)).unwrap()
}

fn found(d: &Digraph, c: &OrientationPattern, cfg: &EmbedConfig) -> EmbedOutcome {
    let out = embed_cycle(d, c, cfg).unwrap();
    if let Some(e) = out.embedding() {
        assert!(verify_embedding(d, e));
        assert_eq!(&e.pattern, c);
    }
    out
}

#[test]
fn complete_hosts_contain_every_cycle() {
    for regime in [EmbedConfig::semi(0.5), EmbedConfig::total(0.5)] {
        for n in 2..=7 {
            let d = Digraph::complete(n);
            for k in 2..=n {
                for signs in all_sign_strings(k) {
                    let c = OrientationPattern::cycle(signs).unwrap();
                    let out = found(&d, &c, &regime);
                    assert!(out.is_found(), "{c} in K{n}: {}", out.to_json());
                }
            }
        }
    }
}

#[test]
fn complete_host_strategies_by_length() {
    let d = Digraph::complete(9);
    let cfg = EmbedConfig::semi(0.5);
    assert_eq!(found(&d, &cycle("+-"), &cfg).strategy(), Strategy::Digon);
    assert_eq!(found(&d, &cycle("++-"), &cfg).strategy(), Strategy::NeighbourhoodEdge);
    // 4 ≤ αn/2 = 2.25 fails, so 4-cycles already count as long here and
    // fall back to the short closing.
    assert_eq!(found(&d, &cycle("+-+-"), &cfg).strategy(), Strategy::ShortFallback);
    let strict = EmbedConfig { fallback: false, ..cfg.clone() };
    let out = found(&d, &cycle("+-+-"), &strict);
    match out {
        EmbedOutcome::Failed(f) => {
            assert_eq!(f.stage, "absorber sizing");
            assert_eq!(f.verdict, Verdict::Incomplete);
        }
        _ => panic!("no absorber fits in 9 vertices"),
    }
    let wide = EmbedConfig::semi(0.9);
    assert_eq!(found(&d, &cycle("+-+-"), &wide).strategy(), Strategy::ShortPath);
}

#[test]
fn brute_force_examples() {
    let k3 = Digraph::complete(3);
    for c in ["+++", "++-"] {
        let e = brute_force_contains(&k3, &cycle(c)).unwrap().unwrap();
        assert!(verify_embedding(&k3, &e));
    }
    let tri = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let e = brute_force_contains(&tri, &cycle("+++")).unwrap().unwrap();
    assert_eq!(e.vertices, vec![0, 1, 2]);
    let e = brute_force_contains(&tri, &cycle("---")).unwrap().unwrap();
    assert_eq!(e.vertices, vec![0, 2, 1]);
    assert!(brute_force_contains(&tri, &cycle("++-")).unwrap().is_none());
    assert!(brute_force_contains(&tri, &cycle("+-")).unwrap().is_none());

    let one_way = gen_oneway_extremal(6, 0.3).unwrap();
    for signs in all_sign_strings(6) {
        let c = OrientationPattern::cycle(signs).unwrap();
        assert!(brute_force_contains(&one_way, &c).unwrap().is_none(), "{c}");
    }
    let out_star: OrientationPattern = "path -+".parse().unwrap();
    assert!(brute_force_contains(&one_way, &out_star).unwrap().is_some());
    let in_star: OrientationPattern = "path +-".parse().unwrap();
    assert!(brute_force_contains(&one_way, &in_star).unwrap().is_none());
    assert!(matches!(
        brute_force_contains(&Digraph::complete(11), &cycle("+++")),
        Err(EmbedError::TooLarge { n: 11, max: 10 })
    ));
}

#[test]
fn extremal_hosts_yield_no_hamilton_cycle() {
    for n in 4..=8 {
        for (d, name) in [
            (gen_bipartite_extremal(n, 0.3).unwrap(), "bipartite"),
            (gen_oneway_extremal(n, 0.3).unwrap(), "one-way"),
        ] {
            for cfg in [EmbedConfig::semi(0.3), EmbedConfig::total(0.3)] {
                for signs in all_sign_strings(n) {
                    let c = OrientationPattern::cycle(signs).unwrap();
                    assert!(brute_force_contains(&d, &c).unwrap().is_none());
                    match embed_cycle(&d, &c, &cfg).unwrap() {
                        EmbedOutcome::Failed(f) => assert_eq!(f.verdict, Verdict::OracleAbsent, "{name} {c}"),
                        EmbedOutcome::Found { .. } => panic!("{name} host n = {n} has no {c}"),
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn digon_found_iff_bidirected_edge(n in 2usize..12, edges in prop::collection::vec((0usize..12, 0usize..12), 0..30)) {
        let edges: Vec<_> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let d = Digraph::from_edges(n, edges).unwrap();
        let any = (0..n).any(|u| (0..n).any(|v| u != v && d.has_edge(u, v) && d.has_edge(v, u)));
        for cfg in [EmbedConfig::semi(0.5), EmbedConfig::total(0.5)] {
            let out = embed_cycle(&d, &cycle("++"), &cfg).unwrap();
            prop_assert_eq!(out.is_found(), any);
            prop_assert_eq!(out.strategy(), Strategy::Digon);
        }
    }

    #[test]
    fn small_random_hosts_agree_with_oracle(seed in 0u64..400, p in 0.2f64..0.9) {
        let d = mixed(8, p, p / 2.0, seed);
        for cfg in [EmbedConfig::semi(0.5), EmbedConfig::total(0.5)] {
            for k in [2, 3, 5, 8] {
                let c = OrientationPattern::antidirected(PatternKind::Cycle, k)
                    .unwrap_or_else(|_| OrientationPattern::consistent(PatternKind::Cycle, k).unwrap());
                let oracle = brute_force_contains(&d, &c).unwrap().is_some();
                match found(&d, &c, &cfg) {
                    EmbedOutcome::Found { .. } => prop_assert!(oracle),
                    EmbedOutcome::Failed(f) => {
                        let want = if oracle { Verdict::Incomplete } else { Verdict::OracleAbsent };
                        prop_assert_eq!(f.verdict, want);
                    }
                }
            }
        }
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let d = Digraph::complete(5);
    let c = cycle("+++");
    let bad = [
        EmbedConfig { alpha: 0.0, ..EmbedConfig::semi(0.5) },
        EmbedConfig { epsilon: 1.5, ..EmbedConfig::semi(0.5) },
        EmbedConfig { retries: 0, ..EmbedConfig::semi(0.5) },
        EmbedConfig { absorbed_len: Some(2), ..EmbedConfig::semi(0.5) },
        EmbedConfig { absorbed_len: Some(6), ..EmbedConfig::semi(0.5) },
        EmbedConfig { oracle_max_n: 11, ..EmbedConfig::semi(0.5) },
        EmbedConfig { reservoir: Some((0, 1)), ..EmbedConfig::total(0.5) },
    ];
    for cfg in bad {
        assert!(matches!(embed_cycle(&d, &c, &cfg), Err(EmbedError::InvalidConfig(_))), "{cfg:?}");
    }
    let path: OrientationPattern = "path ++".parse().unwrap();
    assert_eq!(embed_cycle(&d, &path, &EmbedConfig::semi(0.5)), Err(EmbedError::NotACycle));
    let long = OrientationPattern::consistent(PatternKind::Cycle, 6).unwrap();
    assert_eq!(embed_cycle(&d, &long, &EmbedConfig::semi(0.5)), Err(EmbedError::BadLength { k: 6, n: 5 }));
}

#[test]
fn failure_carries_a_valid_witness() {
    // Two cliques of 40 with no edge between them: the bidirected path
    // search must fail and the witness separates the two halves.
    let n = 80;
    let mut d = Digraph::new(n);
    for a in 0..n {
        for b in 0..n {
            if a != b && (a < 40) == (b < 40) {
                d.add_edge(a, b).unwrap();
            }
        }
    }
    let cfg = EmbedConfig { epsilon: 0.1, ..EmbedConfig::semi(0.9) };
    let c = OrientationPattern::antidirected(PatternKind::Cycle, 30).unwrap();
    assert!(found(&d, &c, &cfg).is_found());
    let c = OrientationPattern::antidirected(PatternKind::Cycle, 60).unwrap();
    let EmbedOutcome::Failed(f) = found(&d, &c, &EmbedConfig { fallback: true, ..cfg.clone() }) else {
        panic!("no bidirected path crosses the halves");
    };
    assert_eq!(f.verdict, Verdict::StrategyFailed);
    let w = f.witness.expect("separated halves give a witness");
    assert!(w.is_valid(&d));
    assert_eq!(f.witness_checked, Some(true));
    let light = EmbedConfig { assertions: Assertions::Light, ..cfg };
    let EmbedOutcome::Failed(f) = found(&d, &c, &light) else { panic!() };
    assert_eq!(f.witness_checked, None);
}

#[test]
fn outcomes_round_trip_through_json() {
    let d = Digraph::complete(6);
    let ok = found(&d, &cycle("+-++-"), &EmbedConfig::semi(0.5));
    let back: EmbedOutcome = serde_json::from_str(&ok.to_json()).unwrap();
    assert_eq!(back, ok);
    assert!(ok.to_json().contains("\"status\": \"found\""));

    let empty = Digraph::new(6);
    let bad = found(&empty, &cycle("+-++-"), &EmbedConfig::semi(0.5));
    let back: EmbedOutcome = serde_json::from_str(&bad.to_json()).unwrap();
    assert_eq!(back, bad);
    assert!(bad.to_json().contains("\"verdict\": \"oracle-absent\""));

    let cfg = EmbedConfig::total(0.4).with_seed(9);
    let back: EmbedConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn sweep_counts_rows() {
    let d = Digraph::complete(6);
    let cfg = EmbedConfig::semi(0.5);
    let all = universality_sweep(&d, &[2, 3, 4, 5, 6], 64, &cfg).unwrap();
    assert_eq!(all.rows.len(), 4 + 8 + 16 + 32 + 64);
    assert!(all.all_found());
    assert!(all.rows.iter().all(|r| r.oracle == Some(true)));
    let sampled = universality_sweep(&d, &[2, 3, 4, 5, 6], 10, &cfg).unwrap();
    assert_eq!(sampled.rows.len(), 4 + 8 + 10 + 10 + 10);
    assert_eq!(sampled, universality_sweep(&d, &[2, 3, 4, 5, 6], 10, &cfg).unwrap());
    assert!(universality_sweep(&d, &[7], 10, &cfg).is_err());
}

#[test]
fn perturbed_desk_instance_matches_oracle() {
    let host = gen_bipartite_extremal(9, 0.3).unwrap();
    let d = host.union(&dstar(9, 0.3, 4)).unwrap();
    for cfg in [EmbedConfig::semi(0.3), EmbedConfig::total(0.3)] {
        let rep = universality_sweep(&d, &(2..=9).collect::<Vec<_>>(), 512, &cfg).unwrap();
        assert_eq!(rep.rows.len(), (2..=9).map(|k| 1 << k).sum::<usize>());
        for r in &rep.rows {
            let oracle = r.oracle.unwrap();
            assert!(!r.found || oracle, "{} claimed without a copy", r.pattern);
            if !r.found {
                let want = if oracle { Verdict::Incomplete } else { Verdict::OracleAbsent };
                assert_eq!(r.verdict, Some(want));
            }
        }
        assert!(rep.found() > 0);
    }
}

#[test]
fn adding_edges_keeps_curated_successes() {
    let base = dstar(60, 0.5, 11);
    let richer = base.union(&mixed(60, 0.3, 0.2, 12)).unwrap();
    let cfg = EmbedConfig::semi(0.5).with_seed(3);
    for s in ["+-", "++-", "+++", "+-+-+-", "++-+-+--+-+-"] {
        let c = cycle(s);
        assert!(found(&base, &c, &cfg).is_found(), "{c}");
        assert!(found(&richer, &c, &cfg).is_found(), "{c}");
    }
}

#[test]
fn deterministic_given_seed() {
    let d = mixed(300, 0.4, 0.3, 5);
    let c = OrientationPattern::antidirected(PatternKind::Cycle, 40).unwrap();
    for cfg in [EmbedConfig::semi(0.4).with_seed(1), EmbedConfig::total(0.4).with_seed(1)] {
        let a = embed_cycle(&d, &c, &cfg).unwrap();
        let b = embed_cycle(&d, &c, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.is_found());
    }
}

#[test]
fn total_regime_short_cases() {
    let d = mixed(400, 0.4, 0.3, 21);
    let cfg = EmbedConfig::total(0.4).with_seed(2);
    let out = found(&d, &cycle("++-"), &cfg);
    assert_eq!(out.strategy(), Strategy::NeighbourhoodEdge);
    assert!(out.is_found());
    let out = found(&d, &cycle("+++"), &cfg);
    assert_eq!(out.strategy(), Strategy::TriangleSearch);
    assert!(out.is_found());
    for k in [4, 5, 30, 70] {
        for c in [
            OrientationPattern::antidirected(PatternKind::Cycle, k).unwrap_or_else(|_| cycle(&format!("{}+", "+-".repeat(k / 2)))),
            OrientationPattern::consistent(PatternKind::Cycle, k).unwrap(),
        ] {
            let out = found(&d, &c, &cfg);
            assert_eq!(out.strategy(), Strategy::ReservoirClose, "{c}");
            assert!(out.is_found(), "{c}: {}", out.to_json());
        }
    }
    // Nearly every vertex of a long consistent cycle has indegree one, so it
    // is not good and goes to direct search.
    let c = OrientationPattern::consistent(PatternKind::Cycle, 300).unwrap();
    assert_eq!(found(&d, &c, &cfg).strategy(), Strategy::ShortFallback);
}

#[test]
fn semi_long_cycle_through_absorber() {
    let n = 1500;
    let d = mixed(n, 0.5, 0.85, 31);
    let semi = SemiParams {
        m: 20,
        beta_m: 8,
        slots: 6,
        leftover: 1,
        witness_t: 1,
        x_retries: 200,
    };
    let p = semi.absorber_size() + 200;
    let cfg = EmbedConfig {
        semi: Some(semi),
        absorbed_len: Some(p),
        ..EmbedConfig::semi(0.5).with_seed(4)
    };
    for c in [
        OrientationPattern::antidirected(PatternKind::Cycle, n).unwrap(),
        OrientationPattern::consistent(PatternKind::Cycle, n - 300).unwrap(),
    ] {
        let out = found(&d, &c, &cfg);
        assert_eq!(out.strategy(), Strategy::SemiAbsorber);
        assert!(out.is_found(), "{}", out.to_json());
    }
}

#[test]
fn total_long_cycle_through_absorber() {
    let n = 3000;
    let d = mixed(n, 0.5, 0.8, 41);
    let total = TotalParams {
        alpha: 0.4,
        m: 30,
        beta_m: 9,
        r: 3,
        seg_len: 27,
        slots: 6,
        witness_t: 2,
        x_retries: 200,
    };
    let cfg = EmbedConfig {
        total: Some(total),
        absorbed_len: Some(2560),
        epsilon: 0.0005,
        ..EmbedConfig::total(0.4).with_seed(5)
    };
    // Above the short limit of about 2939, with room outside the absorber
    // for the joining path.
    let k = 2950;
    // Antidirected apart from a consistent block, which the absorbed window
    // has to avoid.
    let blocky: Vec<Sign> = (0..k)
        .map(|i| if i % 2 == 0 || (1000..1300).contains(&i) { Sign::Plus } else { Sign::Minus })
        .collect();
    for c in [
        OrientationPattern::antidirected(PatternKind::Cycle, k).unwrap(),
        OrientationPattern::cycle(blocky).unwrap(),
    ] {
        let out = found(&d, &c, &cfg);
        assert_eq!(out.strategy(), Strategy::TotalAbsorber, "{}", out.to_json());
        assert!(out.is_found(), "{}", out.to_json());
    }
}
