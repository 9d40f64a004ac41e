use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::example81::node_label;
use super::*;
use crate::error::Error;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

#[test]
fn example_8_1_y_is_trivial() {
    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    assert_eq!(ex.graph_y.node_count(), 131);
    assert!((ex.partial_product - 0.5).abs() < 1e-12);
    let verdict = solve_coboundary(&ex.graph_y, None, &opts()).unwrap();
    let f = verdict.witness().expect("trivial");
    for (got, want) in f.iter().zip(ex.expected_witness()) {
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }
    let report = verify_witness(&ex.graph_y, f, 1e-9);
    assert!(report.passed());
    assert_eq!(report.rows.len(), ex.graph_y.edges().len());
}

#[test]
fn example_8_1_s_is_not_trivial() {
    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    let verdict = solve_coboundary(&ex.graph_s, None, &opts()).unwrap();
    let TrivialityVerdict::NonTrivial { certificate, values } = verdict else {
        panic!("expected NonTrivial, got {verdict:?}");
    };
    assert_eq!(certificate.constraint, Constraint::Identification(0));
    assert!((certificate.ratio - 0.5).abs() < 1e-10);
    let again = constraint_ratio(&ex.graph_s, certificate.constraint, &values);
    assert!((again - certificate.ratio).abs() < 1e-15);
    assert!((again - 1.0).abs() > 1e-9);
}

#[test]
fn single_self_loop() {
    let mut g = OrbitGraph::new();
    let a = g.add_node("a");
    g.add_edge(a, a, "T", 1.0).unwrap();
    assert_eq!(solve_coboundary(&g, None, &opts()).unwrap().witness().unwrap(), &[1.0]);

    let mut h = OrbitGraph::new();
    let a = h.add_node("a");
    h.add_edge(a, a, "T", 2.0).unwrap();
    let v = solve_coboundary(&h, None, &opts()).unwrap();
    assert!((v.certificate().unwrap().ratio - 2.0).abs() < 1e-12);
}

#[test]
fn verdict_does_not_depend_on_base() {
    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    let reference = solve_coboundary(&ex.graph_y, None, &opts()).unwrap();
    let f0 = reference.witness().unwrap().to_vec();
    for base in ["a5", "a-3", "0", "1", "a64"] {
        let v = solve_coboundary(&ex.graph_y, Some(base), &opts()).unwrap();
        let f = v.witness().unwrap();
        let b = ex.graph_y.node(base).unwrap();
        assert!((f[b] - 1.0).abs() < 1e-15);
        for (x, y) in f.iter().zip(&f0) {
            assert!((x / y * f0[b] - 1.0).abs() < 1e-10);
        }
        let s = solve_coboundary(&ex.graph_s, Some(base), &opts()).unwrap();
        let r = s.certificate().unwrap().ratio;
        assert!((r - 0.5).abs() < 1e-10 || (r - 2.0).abs() < 1e-10);
    }
}

#[test]
fn multiplier_recovered_by_composing_edges() {
    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    let r = ex.sequence;
    for n in [-10i64, -1, 0, 3, 20] {
        for k in 1..=6usize {
            let start = ex.graph_y.node(&node_label(n)).unwrap();
            let (end, product) = ex.graph_y.follow(start, "T", k).unwrap();
            assert_eq!(ex.graph_y.label(end), node_label(n + k as i64));
            let expected: f64 = (1..=k as i64).map(|j| r.r(n + j)).product();
            assert!((product - expected).abs() < 1e-15);
        }
    }
}

#[test]
fn slow_sequence_rejected() {
    let err = build_example_8_1(2, RSequence::InverseSquare { product: 0.5 }).unwrap_err();
    assert!(matches!(err, Error::NotConverged { n: 2, .. }));
    assert!(build_example_8_1(64, RSequence::InverseSquare { product: 0.5 }).is_err());
    assert!(matches!(build_example_8_1(1, RSequence::default()), Err(Error::InvalidArgument(_))));
}

#[test]
fn inconclusive_on_non_cauchy_limit() {
    let mut g = OrbitGraph::new();
    let nodes: Vec<usize> = (0..8).map(|i| g.add_node(format!("x{i}"))).collect();
    for w in nodes.windows(2) {
        g.add_edge(w[0], w[1], "T", 2.0).unwrap();
    }
    let p = g.add_node("p");
    g.add_edge(p, p, "T", 1.0).unwrap();
    g.add_limit(nodes.clone(), p).unwrap();
    assert!(matches!(solve_coboundary(&g, None, &opts()).unwrap(), TrivialityVerdict::Inconclusive { .. }));
}

#[test]
fn disconnected_graph_rejected() {
    let mut g = OrbitGraph::<f64>::new();
    let a = g.add_node("a");
    let b = g.add_node("b");
    g.add_node("c");
    g.add_edge(a, b, "T", 1.5).unwrap();
    match solve_coboundary(&g, None, &opts()) {
        Err(Error::Disconnected(nodes)) => assert_eq!(nodes, vec!["c".to_string()]),
        other => panic!("{other:?}"),
    }
}

#[test]
fn graph_validation() {
    let mut g = OrbitGraph::<f64>::new();
    let a = g.add_node("a");
    assert_eq!(g.add_node("a"), a);
    assert!(g.add_edge(a, a, "T", 0.0).is_err());
    assert!(g.add_edge(a, 3, "T", 1.0).is_err());
    assert!(g.identify(a, 9).is_err());
    let b = g.add_node("b");
    assert!(g.add_limit(vec![a, b, a], b).is_err());
    assert!(g.add_limit(vec![], b).is_err());
}

#[test]
fn json_round_trip() {
    let ex = build_example_8_1(8, RSequence::Geometric { product: 0.5, ratio: 0.01 }).unwrap();
    let text = ex.graph_s.to_json();
    let back = OrbitGraph::<f64>::from_json(&text).unwrap();
    assert!(back.same_topology(&ex.graph_s));
    for (x, y) in back.edges().iter().zip(ex.graph_s.edges()) {
        assert_eq!(x.sigma, y.sigma);
    }
    let minimal = r#"{"nodes":["a","b"],"edges":[{"from":"a","to":"b","sigma":2.0}]}"#;
    let g = OrbitGraph::<f64>::from_json(minimal).unwrap();
    assert_eq!(g.edges()[0].generator, "");
    assert!(OrbitGraph::<f64>::from_json(r#"{"nodes":["a"],"edges":[{"from":"a","to":"z","sigma":1}]}"#).is_err());
    assert!(OrbitGraph::<f64>::from_json(r#"{"nodes":["a","a"],"edges":[]}"#).is_err());
    let indexed = OrbitGraph::<f64>::from_json(r#"{"nodes":["a","b"],"edges":[{"from":0,"to":"b","sigma":2}],"identify":[[0,1]]}"#).unwrap();
    assert_eq!((indexed.edges()[0].to, indexed.identifications()[0]), (1, (0, 1)));
    assert!(OrbitGraph::<f64>::from_json(r#"{"nodes":["a"],"edges":[{"from":0,"to":3,"sigma":1}]}"#).is_err());
}

#[test]
fn coset_examples() {
    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    assert!(coset_equivalent(&ex.graph_y, &ex.graph_y, &opts()).unwrap().is_trivial());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ring = OrbitGraph::new();
    for i in 0..5 {
        ring.add_node(format!("v{i}"));
    }
    for i in 0..5 {
        ring.add_edge(i, (i + 1) % 5, "g", rng.gen_range(0.5..2.0)).unwrap();
        ring.add_edge(i, (i + 2) % 5, "h", rng.gen_range(0.5..2.0)).unwrap();
    }
    let f: Vec<f64> = (0..5).map(|_| rng.gen_range(0.2..5.0)).collect();
    let moved = ring.reweighted(&f).unwrap();
    let v = coset_equivalent(&ring, &moved, &opts()).unwrap();
    let w = v.witness().unwrap();
    for i in 0..5 {
        assert!((w[i] * f[0] / f[i] - 1.0).abs() < 1e-12);
    }

    let ones = vec![1.0; ex.graph_s.edges().len()];
    let trivial = ex.graph_s.with_sigmas(&ones).unwrap();
    assert!(coset_equivalent(&trivial, &ex.graph_s, &opts()).unwrap().is_non_trivial());
    assert!(coset_equivalent(&ex.graph_y, &ex.graph_s, &opts()).is_err());
}

#[test]
fn randomized_coset_fixtures_have_no_false_verdicts() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for fixture in coset_fixtures(&mut rng, 50).unwrap() {
        let v = coset_equivalent(&fixture.sigma1, &fixture.sigma2, &opts()).unwrap();
        assert_eq!(v.is_trivial(), fixture.same_coset, "{}: {v:?}", fixture.name);
        assert_eq!(v.is_non_trivial(), !fixture.same_coset, "{}", fixture.name);
    }
}

#[test]
fn boundedness_examples() {
    let mut flat = OrbitGraph::new();
    let a = flat.add_node("a");
    let b = flat.add_node("b");
    flat.add_edge(a, b, "T", 1.0).unwrap();
    assert_eq!(boundedness_scan(&flat, 10), (1.0, 1.0));

    let ex = build_example_8_1(64, RSequence::default()).unwrap();
    let (lo, hi) = boundedness_scan(&ex.graph_y, 40);
    assert!(lo >= 0.5 - 1e-12 && hi <= 2.0 + 1e-12, "{lo} {hi}");
    assert!(lo < 0.6 && hi > 1.6);

    let mut looped = OrbitGraph::new();
    let a = looped.add_node("a");
    looped.add_edge(a, a, "T", 2.0).unwrap();
    for len in [1usize, 5, 12] {
        let (lo, hi) = boundedness_scan(&looped, len);
        assert!((hi - 2f64.powi(len as i32)).abs() < 1e-9);
        assert!((lo - 0.5f64.powi(len as i32)).abs() < 1e-12);
    }
}

/// Two branches `a_i`, `b_i` contracting to `p`; the quotient glues
/// `a_i` to `b_i`. Both branches converge to the same point, so the action
/// is proximal by construction.
fn two_branches(n: usize, glue: bool) -> OrbitGraph<f64> {
    let r = RSequence::default();
    let mut g = OrbitGraph::new();
    let p = g.add_node("p");
    g.add_edge(p, p, "T", 1.0).unwrap();
    for branch in ["a", "b"] {
        let nodes: Vec<usize> = (0..=n).map(|i| g.add_node(format!("{branch}{i}"))).collect();
        for (i, w) in nodes.windows(2).enumerate() {
            g.add_edge(w[0], w[1], "T", r.r(i as i64 + 1)).unwrap();
        }
        g.add_limit(nodes[1..].to_vec(), p).unwrap();
    }
    if glue {
        for i in 0..=n {
            let (a, b) = (g.node(&format!("a{i}")).unwrap(), g.node(&format!("b{i}")).unwrap());
            g.identify(a, b).unwrap();
        }
    }
    g
}

#[test]
fn triviality_passes_to_proximal_quotient() {
    let upstairs = two_branches(64, false);
    let v = solve_coboundary(&upstairs, None, &opts()).unwrap();
    assert!(v.is_trivial(), "{v:?}");
    let downstairs = two_branches(64, true);
    assert!(solve_coboundary(&downstairs, None, &opts()).unwrap().is_trivial());
}

#[test]
fn dichotomy_for_several_sequences() {
    for (p, q) in [(0.5, 0.5), (0.25, 0.3), (3.0, 0.6), (0.9, 0.1)] {
        let ex = build_example_8_1(64, RSequence::Geometric { product: p, ratio: q }).unwrap();
        assert!(solve_coboundary(&ex.graph_y, None, &opts()).unwrap().is_trivial());
        let s = solve_coboundary(&ex.graph_s, None, &opts()).unwrap();
        assert!((s.certificate().unwrap().ratio - p).abs() < 1e-10);
    }
}
