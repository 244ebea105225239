//! Worked examples checked against brute-force oracles.

use std::collections::{BTreeMap, BTreeSet};

use iasi_core::construct::{
    construct_arbitrary, construct_complete, restrict_labeling, ConstructError, ConstructionParams,
    LabelSizes, MultiplierPolicy, OffsetPolicy,
};
use iasi_core::graph::{induce_edge_labels, summarize_indices, validate_graph, GraphViolation};
use iasi_core::sumset::{compatibility_table, detect_ap, predicted_edge_cardinality, sumset};
use iasi_core::transform::{
    contract_edge, reduce_topologically, subdivide, to_line_graph, to_total_graph, TransformError,
};
use iasi_core::verify::{
    check_gcd_invariant, check_multiplier_condition, check_singleton_endpoint_rule,
    check_uniformity, classify_arithmetic, classify_edges, verify_iasi,
};
use iasi_core::{ApSet, Difference, Edge, Graph, IntegerSet, LabeledGraph, VertexId};

fn set(xs: &[u64]) -> IntegerSet {
    xs.iter().copied().collect()
}

fn brute_sum(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x + y);
        }
    }
    out.into_iter().collect()
}

fn ap(first: u64, d: u64, len: usize) -> Vec<u64> {
    (0..len as u64).map(|i| first + i * d).collect()
}

fn labeled(edges: &[(&str, &str)], labels: &[(&str, Vec<u64>)]) -> LabeledGraph {
    let g = Graph::from_edges(edges.iter().copied()).unwrap();
    let f: BTreeMap<VertexId, IntegerSet> = labels
        .iter()
        .map(|(v, l)| (VertexId::from(*v), set(l)))
        .collect();
    induce_edge_labels(g, f).unwrap()
}

fn edge_label(lg: &LabeledGraph, a: &str, b: &str) -> Vec<u64> {
    lg.edge_label(&Edge::new(a, b)).unwrap().as_slice().to_vec()
}

fn assert_arithmetic(lg: &LabeledGraph) {
    let r = classify_arithmetic(lg);
    assert!(r.is_iasi && r.arithmetic, "{r:?}");
}

#[test]
fn sumset_examples() {
    for (a, b, want) in [
        (vec![0], vec![3, 7, 9], vec![3, 7, 9]),
        (vec![0, 1, 2], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5, 6]),
        (vec![1, 2], vec![3, 4], vec![4, 5, 6]),
    ] {
        assert_eq!(brute_sum(&a, &b), want);
        assert_eq!(sumset(&set(&a), &set(&b)).unwrap().as_slice(), &want[..]);
    }
}

#[test]
fn compatibility_examples() {
    let t = compatibility_table(&set(&[1, 2]), &set(&[3, 4])).unwrap();
    assert_eq!(t.index(), 3);
    assert_eq!(t.class(5).unwrap(), &[(1, 4), (2, 3)]);
    assert!(t.saturated_classes().any(|s| s == 5));

    let t = compatibility_table(&set(&[0]), &set(&[5, 6])).unwrap();
    assert_eq!(t.index(), 2);
    assert_eq!(t.trivial_classes().count(), 2);

    let t = compatibility_table(&set(&[0, 1, 2]), &set(&[0, 1, 2])).unwrap();
    assert_eq!(t.index(), 5);
    assert_eq!(t.class(2).unwrap().len(), 3);
}

#[test]
fn ap_detection_examples() {
    assert_eq!(
        detect_ap(&set(&[3, 5, 7, 9])).unwrap(),
        Some(ApSet::new(3, 2, 4).unwrap())
    );
    assert_eq!(detect_ap(&set(&[0, 1, 3])).unwrap(), None);
    let s = detect_ap(&set(&[4])).unwrap().unwrap();
    assert_eq!(
        (s.first(), s.length(), s.difference()),
        (4, 1, Difference::Undefined)
    );
}

#[test]
fn edge_cardinality_examples() {
    for (m, n, k, a, b) in [
        (4, 3, 2, ap(0, 1, 4), ap(0, 2, 3)),
        (3, 3, 1, ap(0, 1, 3), ap(0, 1, 3)),
        (5, 1, 1, ap(0, 1, 5), vec![0]),
    ] {
        let brute = brute_sum(&a, &b).len() as u64;
        assert_eq!(predicted_edge_cardinality(m, n, k).unwrap(), brute);
    }
}

#[test]
fn graph_validation_examples() {
    assert!(validate_graph(["a", "b"], [("a", "b")]).is_ok());
    let e = validate_graph(["a"], [("a", "a")]).unwrap_err();
    assert!(e
        .violations
        .iter()
        .any(|v| matches!(v, GraphViolation::SelfLoop { .. })));
    let e = validate_graph(["a", "b", "c"], [("a", "b")]).unwrap_err();
    assert!(e
        .violations
        .iter()
        .any(|v| matches!(v, GraphViolation::IsolatedVertex { vertex: x } if x.as_str() == "c")));
}

#[test]
fn induced_edge_label_examples() {
    let lg = labeled(&[("u", "v")], &[("u", vec![1, 2]), ("v", vec![3, 4])]);
    assert_eq!(edge_label(&lg, "u", "v"), vec![4, 5, 6]);
    let lg = labeled(&[("u", "v")], &[("u", vec![0]), ("v", vec![5, 9])]);
    assert_eq!(edge_label(&lg, "u", "v"), vec![5, 9]);

    let tri = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", vec![0, 1]), ("b", vec![2, 3]), ("c", vec![4, 6])],
    );
    assert_eq!(edge_label(&tri, "a", "b"), vec![2, 3, 4]);
    assert_eq!(edge_label(&tri, "a", "c"), vec![4, 5, 6, 7]);
    assert_eq!(edge_label(&tri, "b", "c"), vec![6, 7, 8, 9]);
}

#[test]
fn index_summary_examples() {
    let lg = labeled(&[("u", "v")], &[("u", vec![0, 2, 4]), ("v", vec![1, 3, 5])]);
    let s = summarize_indices(&lg);
    let e = Edge::new("u", "v");
    assert_eq!(
        s.vertex_indexing_numbers
            .values()
            .copied()
            .collect::<Vec<_>>(),
        vec![3, 3]
    );
    assert_eq!(s.edge_indexing_numbers[&e], 5);
    assert!(s
        .vertex_deterministic_indices
        .values()
        .all(|d| *d == Difference::Step(2)));
    assert_eq!(s.edge_deterministic_indices[&e], Difference::Step(2));

    let lg = labeled(&[("u", "v")], &[("u", vec![7]), ("v", vec![1, 2])]);
    let s = summarize_indices(&lg);
    assert_eq!(s.vertex_indexing_numbers[&VertexId::from("u")], 1);
    assert_eq!(
        s.vertex_deterministic_indices[&VertexId::from("u")],
        Difference::Undefined
    );

    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1, 2]), ("v", vec![0, 4, 8])]);
    assert_eq!(edge_label(&lg, "u", "v"), brute_sum(&[0, 1, 2], &[0, 4, 8]));
    assert_eq!(edge_label(&lg, "u", "v"), vec![0, 1, 2, 4, 5, 6, 8, 9, 10]);
    assert_eq!(
        summarize_indices(&lg).edge_deterministic_indices[&Edge::new("u", "v")],
        Difference::Undefined
    );
}

#[test]
fn verify_examples() {
    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1]), ("v", vec![2, 3])]);
    assert!(verify_iasi(&lg).is_iasi);

    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1]), ("v", vec![0, 1])]);
    let v = verify_iasi(&lg);
    assert!(!v.is_iasi);
    assert_eq!(v.collision.unwrap().label, set(&[0, 1]));

    // {0}+{1,2} = {1,2} and {1,2}+{0,1} = {1,2,3}: no edge collision
    let lg = labeled(
        &[("u", "v"), ("v", "w")],
        &[("u", vec![0]), ("v", vec![1, 2]), ("w", vec![0, 1])],
    );
    assert_eq!(edge_label(&lg, "u", "v"), vec![1, 2]);
    assert_eq!(edge_label(&lg, "v", "w"), vec![1, 2, 3]);
    assert!(verify_iasi(&lg).is_iasi);
}

#[test]
fn edge_class_examples() {
    let class = |a: Vec<u64>, b: Vec<u64>| {
        let lg = labeled(&[("u", "v")], &[("u", a), ("v", b)]);
        classify_edges(&lg)[&Edge::new("u", "v")]
    };
    let c = class(vec![1], vec![2, 4]);
    assert!(c.weak && c.strong);
    let c = class(vec![0, 1, 2], vec![0, 3, 6]);
    assert!(!c.weak && c.strong && c.indexing_number == 9);
    let c = class(vec![0, 1, 2], vec![10, 11, 12]);
    assert!(!c.weak && !c.strong && c.indexing_number == 5);
}

#[test]
fn uniformity_examples() {
    let c3 = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", ap(0, 1, 3)), ("b", ap(10, 1, 3)), ("c", ap(30, 1, 3))],
    );
    let u = check_uniformity(&c3);
    assert_eq!((u.l, u.k), (Some(3), Some(5)));

    let p2 = labeled(&[("u", "v")], &[("u", vec![0, 1]), ("v", vec![5, 6, 7])]);
    assert_eq!(check_uniformity(&p2).l, None);

    let star = labeled(
        &[("c", "x"), ("c", "y")],
        &[("c", ap(0, 1, 3)), ("x", ap(10, 1, 3)), ("y", ap(20, 2, 3))],
    );
    let idx: Vec<usize> = classify_edges(&star)
        .values()
        .map(|c| c.indexing_number)
        .collect();
    assert_eq!(idx, vec![5, 7]);
    assert_eq!(check_uniformity(&star).k, None);
}

#[test]
fn arithmetic_classification_examples() {
    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1, 2]), ("v", vec![0, 2, 4])]);
    let r = classify_arithmetic(&lg);
    assert!(r.arithmetic);
    assert_eq!(
        detect_ap(lg.edge_label(&Edge::new("u", "v")).unwrap()).unwrap(),
        Some(ApSet::new(0, 1, 7).unwrap())
    );

    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1, 2]), ("v", vec![0, 4, 8])]);
    let r = classify_arithmetic(&lg);
    assert!(r.semi_arithmetic && !r.arithmetic && r.vertex_arithmetic);

    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1, 3]), ("v", vec![0, 1, 2])]);
    assert!(!classify_arithmetic(&lg).vertex_arithmetic);
}

#[test]
fn multiplier_examples() {
    let check = |du: u64, su: usize, dv: u64| {
        let lg = labeled(
            &[("u", "v")],
            &[("u", ap(0, du, su)), ("v", ap(1000, dv, 3))],
        );
        check_multiplier_condition(&lg).unwrap()
    };
    assert!(check(2, 4, 6).holds);
    let m = check(2, 2, 6);
    assert!(!m.holds);
    assert_eq!(m.violations[0].k, Some(3));
    let m = check(2, 3, 5);
    assert!(!m.holds);
    assert_eq!(m.violations[0].k, None);
}

#[test]
fn gcd_examples() {
    let path = labeled(
        &[("a", "b"), ("b", "c")],
        &[
            ("a", ap(0, 2, 3)),
            ("b", ap(100, 4, 3)),
            ("c", ap(300, 8, 3)),
        ],
    );
    let g = check_gcd_invariant(&path).unwrap();
    assert!(g.holds);
    assert_eq!((g.gcd_vertices, g.gcd_edges, g.min_vertex_index), (2, 2, 2));

    let uniform = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[
            ("a", ap(0, 7, 3)),
            ("b", ap(100, 7, 3)),
            ("c", ap(300, 7, 3)),
        ],
    );
    let g = check_gcd_invariant(&uniform).unwrap();
    assert_eq!((g.gcd_vertices, g.gcd_edges, g.min_vertex_index), (7, 7, 7));

    let star = labeled(
        &[("c", "x"), ("c", "y"), ("c", "z")],
        &[
            ("c", ap(0, 3, 3)),
            ("x", ap(100, 3, 3)),
            ("y", ap(300, 6, 3)),
            ("z", ap(700, 9, 3)),
        ],
    );
    for e in star.graph().edges() {
        let l = star.edge_label(e).unwrap();
        assert_eq!(
            detect_ap(l).unwrap().unwrap().difference(),
            Difference::Step(3)
        );
    }
    let g = check_gcd_invariant(&star).unwrap();
    assert!(g.holds);
    assert_eq!((g.gcd_vertices, g.gcd_edges, g.min_vertex_index), (3, 3, 3));
}

#[test]
fn singleton_rule_examples() {
    let lg = labeled(&[("u", "v")], &[("u", vec![3]), ("v", vec![1, 2])]);
    assert!(classify_edges(&lg)[&Edge::new("u", "v")].weak);
    assert!(check_singleton_endpoint_rule(&lg).holds);

    let lg = labeled(&[("u", "v")], &[("u", vec![0, 1]), ("v", vec![0, 2])]);
    assert_eq!(edge_label(&lg, "u", "v"), vec![0, 1, 2, 3]);
    assert!(!classify_edges(&lg)[&Edge::new("u", "v")].weak);
    assert!(check_singleton_endpoint_rule(&lg).holds);
}

fn c4() -> Graph {
    Graph::from_edges([("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")]).unwrap()
}

#[test]
fn construct_c4_fixed() {
    let mut p = ConstructionParams::new(1, 3, MultiplierPolicy::Fixed);
    p.offsets = OffsetPolicy::Explicit(vec![0, 10, 30, 20]);
    let c = construct_arbitrary(&c4(), &p).unwrap();
    for (v, l) in c.labeled.vertex_labels() {
        let a = l.min_element().unwrap();
        assert_eq!(l.as_slice(), &ap(a, 1, 3)[..], "{v}");
    }
    for l in c.labeled.edge_labels().values() {
        assert_eq!(
            detect_ap(l).unwrap().unwrap().difference(),
            Difference::Step(1)
        );
    }
    assert_arithmetic(&c.labeled);

    // first terms 0,10,20,30 around the cycle: b-c and a-d both start at 30
    p.offsets = OffsetPolicy::Explicit(vec![0, 10, 20, 30]);
    assert!(matches!(
        construct_arbitrary(&c4(), &p),
        Err(ConstructError::Collision(_))
    ));
}

#[test]
fn construct_k3_maximal() {
    let k3 = Graph::from_edges([("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
    let c = construct_arbitrary(
        &k3,
        &ConstructionParams::new(1, 3, MultiplierPolicy::Maximal),
    )
    .unwrap();
    assert_eq!(c.differences[&VertexId::from("a")], 1);
    assert!(check_multiplier_condition(&c.labeled).unwrap().holds);
    assert_arithmetic(&c.labeled);
}

#[test]
fn construct_p2_with_multiplier_three() {
    let p = ConstructionParams {
        base_difference: 2,
        label_sizes: LabelSizes::PerVertex(vec![3, 4]),
        multiplier_policy: MultiplierPolicy::Maximal,
        seed: 0,
        offsets: OffsetPolicy::Explicit(vec![0, 1]),
    };
    let g = Graph::from_edges([("u", "v")]).unwrap();
    let c = construct_arbitrary(&g, &p).unwrap();
    let lg = &c.labeled;
    assert_eq!(lg.vertex_label(&"u".into()).unwrap().as_slice(), &[0, 2, 4]);
    assert_eq!(
        lg.vertex_label(&"v".into()).unwrap().as_slice(),
        &[1, 7, 13, 19]
    );
    let e = edge_label(lg, "u", "v");
    assert_eq!(e, brute_sum(&[0, 2, 4], &[1, 7, 13, 19]));
    assert_eq!(e.len(), 12);
    assert_eq!(
        detect_ap(&set(&e)).unwrap().unwrap().difference(),
        Difference::Step(2)
    );
}

#[test]
fn complete_graph_examples() {
    let (lg, _) = construct_complete(4, (2, 2), 3, 2, &[3; 4]).unwrap();
    assert_eq!(lg.graph().edge_count(), 6);
    assert_arithmetic(&lg);

    let (lg, _) = construct_complete(3, (3, 0), 1, 1, &[3; 3]).unwrap();
    assert_arithmetic(&lg);
    assert!(lg
        .vertex_labels()
        .values()
        .all(|l| detect_ap(l).unwrap().unwrap().difference() == Difference::Step(1)));

    assert!(construct_complete(4, (2, 2), 3, 4, &[3; 4]).is_err());
}

#[test]
fn restriction_examples() {
    let (k4, _) = construct_complete(4, (2, 2), 1, 3, &[3; 4]).unwrap();
    let path = Graph::from_edges([("v0", "v1"), ("v1", "v2"), ("v2", "v3")]).unwrap();
    assert_arithmetic(&restrict_labeling(&k4, &path).unwrap());
    let single = Graph::from_edges([("v0", "v3")]).unwrap();
    assert_arithmetic(&restrict_labeling(&k4, &single).unwrap());
    let foreign = Graph::from_edges([("v0", "x")]).unwrap();
    assert!(matches!(
        restrict_labeling(&k4, &foreign),
        Err(ConstructError::NotSubgraph(_))
    ));
}

#[test]
fn contraction_examples() {
    let p3 = labeled(
        &[("u", "v"), ("v", "w")],
        &[("u", ap(0, 1, 3)), ("v", ap(10, 1, 3)), ("w", ap(20, 2, 3))],
    );
    let out = contract_edge(&p3, &Edge::new("u", "v")).unwrap();
    let x = VertexId::from("u+v");
    assert_eq!(out.vertex_label(&x).unwrap().as_slice(), &ap(10, 1, 5)[..]);
    assert!(out.graph().contains_edge(&Edge::new("u+v", "w")));
    assert_arithmetic(&out);

    let p2 = labeled(&[("u", "v")], &[("u", ap(0, 1, 3)), ("v", ap(10, 1, 3))]);
    assert!(contract_edge(&p2, &Edge::new("u", "v")).is_err());

    let tri = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", ap(0, 1, 3)), ("b", ap(10, 1, 3)), ("c", ap(30, 1, 3))],
    );
    let out = contract_edge(&tri, &Edge::new("a", "b")).unwrap();
    assert_eq!(
        (out.graph().vertex_count(), out.graph().edge_count()),
        (2, 1)
    );
}

fn path(n: usize, d: u64) -> LabeledGraph {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let edges: Vec<(&str, &str)> = names
        .windows(2)
        .map(|w| (w[0].as_str(), w[1].as_str()))
        .collect();
    let labels: Vec<(&str, Vec<u64>)> = names
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), ap(100 * 5u64.pow(i as u32), d, 3)))
        .collect();
    labeled(&edges, &labels)
}

#[test]
fn reduction_examples() {
    let p3 = path(3, 1);
    let out = reduce_topologically(&p3, &"p1".into()).unwrap();
    assert_eq!(out.graph().edge_count(), 1);
    let want = brute_sum(
        p3.vertex_label(&"p0".into()).unwrap().as_slice(),
        p3.vertex_label(&"p2".into()).unwrap().as_slice(),
    );
    assert_eq!(edge_label(&out, "p0", "p2"), want);
    assert_arithmetic(&out);

    let tri = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", ap(0, 1, 3)), ("b", ap(10, 1, 3)), ("c", ap(30, 1, 3))],
    );
    assert!(matches!(
        reduce_topologically(&tri, &"b".into()),
        Err(TransformError::Precondition(_))
    ));

    let p5 = path(5, 1);
    let once = reduce_topologically(&p5, &"p1".into()).unwrap();
    let twice = reduce_topologically(&once, &"p3".into()).unwrap();
    assert_eq!(twice.graph().vertex_count(), 3);
    assert_eq!(twice.graph().edge_count(), 2);
    assert_arithmetic(&twice);
}

#[test]
fn subdivision_examples() {
    let p2 = labeled(&[("u", "v")], &[("u", vec![0, 2, 4]), ("v", vec![1, 3, 5])]);
    let out = subdivide(&p2, &Edge::new("u", "v")).unwrap();
    let w = VertexId::from("u~v");
    assert_eq!(out.vertex_label(&w).unwrap().as_slice(), &[1, 3, 5, 7, 9]);
    for (a, b) in [("u", "u~v"), ("u~v", "v")] {
        let l = set(&edge_label(&out, a, b));
        assert_eq!(
            detect_ap(&l).unwrap().unwrap().difference(),
            Difference::Step(2)
        );
    }

    let mut c = labeled(
        &[("a", "b"), ("b", "c"), ("a", "c")],
        &[("a", ap(0, 1, 3)), ("b", ap(10, 1, 3)), ("c", ap(30, 1, 3))],
    );
    for e in [
        Edge::new("a", "b"),
        Edge::new("b", "c"),
        Edge::new("a", "c"),
    ] {
        c = subdivide(&c, &e).unwrap();
    }
    assert_eq!((c.graph().vertex_count(), c.graph().edge_count()), (6, 6));
    assert!(c.graph().vertices().all(|v| c.graph().degree(v) == 2));
    assert_arithmetic(&c);

    let once = subdivide(&p2, &Edge::new("u", "v")).unwrap();
    let twice = subdivide(&once, &Edge::new("u", "u~v")).unwrap();
    assert_eq!(
        (twice.graph().vertex_count(), twice.graph().edge_count()),
        (4, 3)
    );
    assert_arithmetic(&twice);
}

#[test]
fn line_graph_examples() {
    let p3 = path(3, 1);
    let l = to_line_graph(&p3).unwrap();
    assert_eq!((l.graph().vertex_count(), l.graph().edge_count()), (2, 1));
    for e in p3.graph().edges() {
        let name = VertexId::from(format!("{}~{}", e.lo(), e.hi()));
        assert_eq!(l.vertex_label(&name), p3.edge_label(e));
    }

    let star = labeled(
        &[("c", "x"), ("c", "y"), ("c", "z")],
        &[
            ("c", ap(0, 2, 3)),
            ("x", ap(100, 2, 3)),
            ("y", ap(500, 2, 3)),
            ("z", ap(2500, 2, 3)),
        ],
    );
    let l = to_line_graph(&star).unwrap();
    assert_eq!((l.graph().vertex_count(), l.graph().edge_count()), (3, 3));
    assert!(l
        .vertex_labels()
        .values()
        .all(|x| detect_ap(x).unwrap().unwrap().difference() == Difference::Step(2)));
    assert_arithmetic(&l);

    let c = labeled(
        &[("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")],
        &[
            ("a", ap(0, 1, 3)),
            ("b", ap(10, 1, 3)),
            ("c", ap(50, 1, 3)),
            ("d", ap(250, 1, 3)),
        ],
    );
    let l = to_line_graph(&c).unwrap();
    assert_eq!((l.graph().vertex_count(), l.graph().edge_count()), (4, 4));
    assert!(l.graph().vertices().all(|v| l.graph().degree(v) == 2));
    assert_arithmetic(&l);
}

#[test]
fn total_graph_examples() {
    let p2 = labeled(&[("u", "v")], &[("u", vec![0, 1, 2]), ("v", vec![0, 2, 4])]);
    let t = to_total_graph(&p2).unwrap();
    assert_eq!((t.graph().vertex_count(), t.graph().edge_count()), (3, 3));
    assert_eq!(
        t.vertex_label(&"u~v".into()).unwrap().as_slice(),
        &ap(0, 1, 7)[..]
    );
    assert_arithmetic(&t);

    let p3 = path(3, 4);
    let t = to_total_graph(&p3).unwrap();
    assert_eq!(t.graph().vertex_count(), 5);
    assert!(t
        .vertex_labels()
        .values()
        .all(|x| detect_ap(x).unwrap().unwrap().difference() == Difference::Step(4)));
    assert_arithmetic(&t);
}
