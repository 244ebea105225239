//! Exhaustive small-graph catalog and the property-checking harness.
//!
//! Every connected simple graph on vertices `v0..v{n-1}` is produced once per
//! adjacency bitmask (no isomorphism reduction). For each graph and each
//! multiplier policy the harness constructs an arithmetic labeling, runs the
//! verifier checks against it and applies every transformation, emitting one
//! [`CheckRecord`] per check.

use std::collections::BTreeSet;
use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::construct::{
    construct_arbitrary, numbered_vertices, restrict_labeling, ConstructionParams, LabelSizes,
    MultiplierPolicy, OffsetPolicy,
};
use crate::graph::{induce_edge_labels, Edge, Graph, LabeledGraph, VertexId};
use crate::sumset::{predicted_edge_cardinality, ApSet};
use crate::transform::{
    contract_edge, edge_vertex_name, reduce_topologically, subdivide, to_line_graph,
    to_total_graph, TransformError,
};
use crate::verify::{
    check_gcd_invariant, check_multiplier_condition, classify_arithmetic, verify_iasi,
};

pub const MIN_CATALOG_N: usize = 2;
pub const MAX_CATALOG_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("max_n={0} outside {MIN_CATALOG_N}..={MAX_CATALOG_N}")]
    OutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogGraph {
    pub graph: Graph,
    /// Name of the graph family, for the named entries.
    pub family: Option<String>,
}

impl CatalogGraph {
    pub fn id(&self) -> String {
        self.graph.canonical_id()
    }
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut reach: u64 = 1;
    loop {
        let mut next = reach;
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 && (reach >> i & 1 == 1 || reach >> j & 1 == 1) {
                next |= 1 << i | 1 << j;
            }
        }
        if next == reach {
            return reach == (1u64 << n) - 1;
        }
        reach = next;
    }
}

fn graph_from_pairs(names: &[VertexId], pairs: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(
        pairs
            .into_iter()
            .map(|(i, j)| (names[i].clone(), names[j].clone())),
    )
    .expect("catalog graphs are connected and simple")
}

/// Connected labeled graphs on exactly `n` vertices, in bitmask order.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = pair_list(n);
    let names = numbered_vertices(n);
    let masks = 1u64 << pairs.len();
    (0..masks)
        .filter(move |&m| n >= 2 && mask_connected(n, &pair_list(n), m))
        .map(move |m| {
            graph_from_pairs(
                &names,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| m >> bit & 1 == 1)
                    .map(|(_, &p)| p),
            )
        })
}

/// Every connected labeled graph on `2..=max_n` vertices, each exactly once.
pub fn enumerate_catalog(max_n: usize) -> Result<impl Iterator<Item = Graph>, CatalogError> {
    if !(MIN_CATALOG_N..=MAX_CATALOG_N).contains(&max_n) {
        return Err(CatalogError::OutOfRange(max_n));
    }
    Ok((MIN_CATALOG_N..=max_n).flat_map(connected_graphs))
}

/// Paths, cycles, complete graphs and stars on up to `max_n` vertices.
pub fn named_families(max_n: usize) -> Vec<CatalogGraph> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        let names = numbered_vertices(n);
        let named = |family: String, pairs: Vec<(usize, usize)>| CatalogGraph {
            graph: graph_from_pairs(&names, pairs),
            family: Some(family),
        };
        out.push(named(
            format!("P{n}"),
            (0..n - 1).map(|i| (i, i + 1)).collect(),
        ));
        if n >= 3 {
            out.push(named(
                format!("C{n}"),
                (0..n).map(|i| (i, (i + 1) % n)).collect(),
            ));
            out.push(named(format!("K{n}"), pair_list(n)));
            out.push(named(
                format!("K1,{}", n - 1),
                (1..n).map(|i| (0, i)).collect(),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    /// The checked statement does not hold on this input although the code
    /// behaved as specified.
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub policy: Option<MultiplierPolicy>,
    pub check: String,
    pub outcome: Outcome,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct CatalogOptions {
    pub max_n: usize,
    pub policies: Vec<MultiplierPolicy>,
    pub seed: u64,
    pub base_difference: u64,
    pub sizes: (usize, usize),
    pub transforms: bool,
    pub named_families: bool,
    pub probes: bool,
    pub timings: bool,
}

impl CatalogOptions {
    pub fn new(max_n: usize, policies: Vec<MultiplierPolicy>, seed: u64) -> Self {
        Self {
            max_n,
            policies,
            seed,
            base_difference: 1,
            sizes: (3, 3),
            transforms: true,
            named_families: true,
            probes: false,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CatalogSummary {
    pub graphs: usize,
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
    pub fallbacks: usize,
}

impl CatalogSummary {
    pub fn from_records(graphs: usize, records: &[CheckRecord]) -> Self {
        let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
        Self {
            graphs,
            records: records.len(),
            pass: count(Outcome::Pass),
            fail: count(Outcome::Fail),
            discrepancy: count(Outcome::Discrepancy),
            fallbacks: records
                .iter()
                .filter(|r| r.check == "construct")
                .filter_map(|r| r.witness.get("fallbacks").and_then(Value::as_array))
                .map(Vec::len)
                .sum(),
        }
    }

    /// 0 when every record passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.fail == 0 && self.discrepancy == 0 {
            0
        } else {
            1
        }
    }
}

struct Recorder {
    graph: String,
    family: Option<String>,
    policy: Option<MultiplierPolicy>,
    timings: bool,
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn run(&mut self, check: impl Into<String>, f: impl FnOnce() -> (Outcome, Value)) {
        let start = Instant::now();
        let (outcome, witness) = f();
        let wall_time_us = self.timings.then(|| start.elapsed().as_micros() as u64);
        self.records.push(CheckRecord {
            graph: self.graph.clone(),
            family: self.family.clone(),
            policy: self.policy,
            check: check.into(),
            outcome,
            witness,
            wall_time_us,
        });
    }
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

/// SplitMix64 step, used to give each catalog graph its own seed.
fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn bfs_spanning_tree(g: &Graph) -> Graph {
    let adj = g.adjacency();
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for root in g.vertices() {
        if !seen.insert(root) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    edges.push((v.clone(), w.clone()));
                    queue.push_back(w);
                }
            }
        }
    }
    Graph::from_edges(edges).expect("spanning forest of a graph without isolated vertices")
}

/// Classifies a transform result. Errors the transform is allowed to
/// report (label collisions, loss of the arithmetic property) are
/// discrepancies; anything else, or an `Ok` that does not re-verify as an
/// arithmetic IASI, is a failure.
fn judge_transform(result: Result<LabeledGraph, TransformError>) -> (Outcome, Value) {
    match result {
        Ok(out) => {
            let report = classify_arithmetic(&out);
            let ok = report.is_iasi && report.arithmetic;
            (
                pass_if(ok),
                json!({"vertices": out.graph().vertex_count(), "edges": out.graph().edge_count()}),
            )
        }
        Err(TransformError::Collision(c)) => (Outcome::Discrepancy, json!({"collision": c})),
        Err(TransformError::NotPreserved(r)) => (
            Outcome::Discrepancy,
            json!({"not_arithmetic": {"non_ap_vertices": r.non_ap_vertices, "non_ap_edges": r.non_ap_edges}}),
        ),
        Err(other) => (Outcome::Fail, json!({"error": other.to_string()})),
    }
}

fn run_transforms(rec: &mut Recorder, lg: &LabeledGraph) {
    let g = lg.graph();
    let components = g.components();
    let in_k2_component = |e: &Edge| {
        components
            .iter()
            .any(|c| c.len() == 2 && c.contains(e.lo()))
    };

    for e in g.edges() {
        if !in_k2_component(e) {
            rec.run(format!("contract:{e}"), || {
                judge_transform(contract_edge(lg, e))
            });
        }
    }
    for v in g.vertices() {
        let ns: Vec<&VertexId> = g.neighbors(v).collect();
        if let [a, b] = ns[..] {
            if !g.are_adjacent(a, b) {
                rec.run(format!("reduce:{v}"), || {
                    judge_transform(reduce_topologically(lg, v))
                });
            }
        }
    }
    for e in g.edges() {
        let sub = subdivide(lg, e);
        let sub_ok = sub.as_ref().ok().cloned();
        rec.run(format!("subdivide:{e}"), || judge_transform(sub));
        if let Some(sub) = sub_ok {
            rec.run(format!("round_trip:{e}"), || {
                match reduce_topologically(&sub, &edge_vertex_name(e)) {
                    Ok(back) => (pass_if(&back == lg), Value::Null),
                    Err(err) => (Outcome::Fail, json!({"error": err.to_string()})),
                }
            });
        }
    }
    if g.edge_count() >= 2 && !g.edges().any(in_k2_component) {
        rec.run("line", || judge_transform(to_line_graph(lg)));
    }
    rec.run("total", || judge_transform(to_total_graph(lg)));
}

fn check_graph(entry: &CatalogGraph, index: u64, opts: &CatalogOptions) -> Vec<CheckRecord> {
    let mut rec = Recorder {
        graph: entry.id(),
        family: entry.family.clone(),
        policy: None,
        timings: opts.timings,
        records: Vec::new(),
    };
    for &policy in &opts.policies {
        rec.policy = Some(policy);
        let params = ConstructionParams {
            base_difference: opts.base_difference,
            label_sizes: LabelSizes::Range {
                min: opts.sizes.0,
                max: opts.sizes.1,
            },
            multiplier_policy: policy,
            seed: mix(opts.seed, index),
            offsets: OffsetPolicy::Auto,
        };
        let mut built = None;
        rec.run("construct", || {
            match construct_arbitrary(&entry.graph, &params) {
                Ok(c) => {
                    let w = json!({"differences": c.differences, "fallbacks": c.fallbacks});
                    built = Some(c);
                    (Outcome::Pass, w)
                }
                Err(e) => (Outcome::Fail, json!({"error": e.to_string()})),
            }
        });
        let Some(c) = built else { continue };
        let lg = &c.labeled;

        rec.run("verify_iasi", || {
            let v = verify_iasi(lg);
            (pass_if(v.is_iasi), json!({"collision": v.collision}))
        });
        rec.run("classify_arithmetic", || {
            let r = classify_arithmetic(lg);
            (
                pass_if(r.arithmetic),
                json!({"non_ap_vertices": r.non_ap_vertices, "non_ap_edges": r.non_ap_edges}),
            )
        });
        rec.run(
            "multiplier_condition",
            || match check_multiplier_condition(lg) {
                Ok(m) => (pass_if(m.holds), json!({"violations": m.violations})),
                Err(e) => (Outcome::Fail, json!({"error": e.to_string()})),
            },
        );
        rec.run("gcd_invariant", || match check_gcd_invariant(lg) {
            Ok(g) if g.holds => (Outcome::Pass, json!(g)),
            Ok(g) => (Outcome::Discrepancy, json!(g)),
            Err(e) => (Outcome::Fail, json!({"error": e.to_string()})),
        });
        rec.run("edge_cardinality", || {
            let bad: Vec<String> = c
                .edge_params
                .iter()
                .filter(|(e, p)| {
                    predicted_edge_cardinality(p.m, p.n, p.k).ok()
                        != Some(lg.edge_labels()[*e].len() as u64)
                })
                .map(|(e, _)| e.to_string())
                .collect();
            (pass_if(bad.is_empty()), json!({"mismatched": bad}))
        });
        rec.run("restrict_spanning_tree", || {
            let tree = bfs_spanning_tree(lg.graph());
            match restrict_labeling(lg, &tree) {
                Ok(r) => (pass_if(classify_arithmetic(&r).arithmetic), Value::Null),
                Err(e) => (Outcome::Fail, json!({"error": e.to_string()})),
            }
        });
        if opts.transforms {
            run_transforms(&mut rec, lg);
        }
    }
    rec.records
}

fn ap_labeled(edges: &[(&str, &str)], labels: &[(&str, u64, u64, u64)]) -> LabeledGraph {
    let g = Graph::from_edges(edges.iter().copied()).expect("probe graphs are valid");
    let labels = labels
        .iter()
        .map(|&(v, a, d, m)| {
            (
                VertexId::from(v),
                ApSet::new(a, d, m).expect("probe labels fit").expand(),
            )
        })
        .collect();
    induce_edge_labels(g, labels).expect("probe labels are total")
}

/// Searches `K_n` for an arithmetic IASI whose vertex differences take three
/// or more distinct values.
fn three_class_complete(n: usize) -> Option<LabeledGraph> {
    const CHOICES: [u64; 4] = [1, 2, 4, 8];
    let names = numbered_vertices(n);
    let g = graph_from_pairs(&names, pair_list(n));
    let mut digits = vec![0usize; n];
    loop {
        let ds: Vec<u64> = digits.iter().map(|&i| CHOICES[i]).collect();
        if ds.iter().collect::<BTreeSet<_>>().len() >= 3 {
            let labels = names
                .iter()
                .zip(&ds)
                .enumerate()
                .map(|(i, (v, &d))| {
                    let a = 1000 * 5u64.pow(i as u32);
                    (v.clone(), ApSet::new(a, d, 4).expect("small").expand())
                })
                .collect();
            let lg = induce_edge_labels(g.clone(), labels).expect("total labeling");
            let r = classify_arithmetic(&lg);
            if r.is_iasi && r.arithmetic {
                return Some(lg);
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            digits[i] += 1;
            if digits[i] < CHOICES.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn probe_records(max_n: usize, timings: bool) -> Vec<CheckRecord> {
    let mut rec = Recorder {
        graph: String::new(),
        family: Some("probe".into()),
        policy: None,
        timings,
        records: Vec::new(),
    };

    for n in 3..=max_n.min(5) {
        rec.graph = format!("K{n}");
        rec.run("two_class_complete", || match three_class_complete(n) {
            Some(lg) => (
                Outcome::Discrepancy,
                json!({"differences": crate::graph::summarize_indices(&lg).vertex_deterministic_indices}),
            ),
            None => (Outcome::Pass, Value::Null),
        });
    }

    // differences 2, 6, 3 along a path: every edge satisfies the multiplier rule
    let path = ap_labeled(
        &[("a", "b"), ("b", "c")],
        &[("a", 0, 2, 3), ("b", 100, 6, 3), ("c", 300, 3, 3)],
    );
    rec.graph = path.graph().canonical_id();
    rec.run("gcd_invariant", || match check_gcd_invariant(&path) {
        Ok(g) if g.holds => (Outcome::Pass, json!(g)),
        Ok(g) => (Outcome::Discrepancy, json!(g)),
        Err(e) => (Outcome::Fail, json!({"error": e.to_string()})),
    });
    rec.run("contract:a-b", || {
        judge_transform(contract_edge(&path, &Edge::new("a", "b")))
    });
    rec.run("line", || judge_transform(to_line_graph(&path)));

    let p2 = induce_edge_labels(
        Graph::from_edges([("u", "v")]).expect("valid"),
        [
            (VertexId::from("u"), [0u64, 1, 3].into_iter().collect()),
            (VertexId::from("v"), [0u64, 1, 2].into_iter().collect()),
        ]
        .into_iter()
        .collect(),
    )
    .expect("total labeling");
    rec.graph = "u-v".into();
    rec.run("edge_implies_vertex_arithmetic", || {
        let r = classify_arithmetic(&p2);
        if r.edge_arithmetic_without_vertex_arithmetic {
            (
                Outcome::Discrepancy,
                json!({
                    "labels": p2.vertex_labels(),
                    "edge": p2.edge_label(&Edge::new("u", "v")).map(ToString::to_string),
                }),
            )
        } else {
            (Outcome::Pass, Value::Null)
        }
    });
    rec.records
}

/// Runs every check over the catalog. Records come back in catalog order
/// regardless of how the work was scheduled.
pub fn run_catalog_checks(
    opts: &CatalogOptions,
) -> Result<(Vec<CheckRecord>, CatalogSummary), CatalogError> {
    let mut entries: Vec<CatalogGraph> = enumerate_catalog(opts.max_n)?
        .map(|graph| CatalogGraph {
            graph,
            family: None,
        })
        .collect();
    if opts.named_families {
        entries.extend(named_families(opts.max_n));
    }
    let mut records: Vec<CheckRecord> = entries
        .par_iter()
        .enumerate()
        .map(|(i, entry)| check_graph(entry, i as u64, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    if opts.probes {
        records.extend(probe_records(opts.max_n, opts.timings));
    }
    let summary = CatalogSummary::from_records(entries.len(), &records);
    Ok((records, summary))
}

pub fn write_jsonl<W: Write>(records: &[CheckRecord], mut out: W) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
