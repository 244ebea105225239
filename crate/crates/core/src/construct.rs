//! Constructive arithmetic labelings.
//!
//! [`construct_arbitrary`] labels any graph by a breadth-first traversal in
//! which each new vertex's common difference is a bounded multiple of an
//! already-labeled neighbor's. [`construct_complete`] labels `K_n` from a
//! two-part partition, and [`restrict_labeling`] carries a labeling to a
//! subgraph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    induce_edge_labels, validate_graph, Edge, Element, Graph, LabeledGraph, LabelingError, VertexId,
};
use crate::sumset::{ApSet, IntegerSet, SetError};
use crate::verify::{verify_iasi, Collision, MIN_ARITHMETIC_LABEL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("labels would overflow u64: {0}")]
    Overflow(String),
    #[error("constructed labeling is not injective: {} and {} share {}", .0.first, .0.second, .0.label)]
    Collision(Collision),
    #[error("{0} is not part of the labeled graph")]
    NotSubgraph(Element),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

impl From<SetError> for ConstructError {
    fn from(e: SetError) -> Self {
        ConstructError::Overflow(e.to_string())
    }
}

/// How the multiplier `k` relating a new vertex to its traversal parent is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplierPolicy {
    /// `k = 1` everywhere.
    Fixed,
    /// `k` uniform in `1..=|f(parent)|`.
    Random,
    /// `k = |f(parent)|`.
    Maximal,
}

impl std::str::FromStr for MultiplierPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fixed" => Ok(Self::Fixed),
            "random" => Ok(Self::Random),
            "maximal" => Ok(Self::Maximal),
            other => Err(format!("unknown policy {other:?} (fixed|random|maximal)")),
        }
    }
}

impl std::fmt::Display for MultiplierPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Fixed => "fixed",
            Self::Random => "random",
            Self::Maximal => "maximal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelSizes {
    /// Sizes drawn uniformly from `min..=max` per vertex.
    Range { min: usize, max: usize },
    /// One size per vertex, in lexicographic vertex order.
    PerVertex(Vec<usize>),
}

/// Rule producing the first terms of the vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OffsetPolicy {
    /// `Geometric { base: 5 }` when it fits in `u64`, otherwise `Sidon`.
    #[default]
    Auto,
    /// `stride * (2p*i + (i^2 mod p))`: pairwise sums of first terms are distinct.
    Sidon,
    /// `stride * base^i`: small non-negative combinations of first terms are distinct.
    Geometric { base: u64 },
    /// Given first terms, in lexicographic vertex order.
    Explicit(Vec<u64>),
}

impl std::str::FromStr for OffsetPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            "sidon" => Ok(Self::Sidon),
            "geometric" => Ok(Self::Geometric {
                base: GEOMETRIC_BASE,
            }),
            other => other
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map(Self::Explicit)
                .map_err(|_| format!("unknown offset policy {other:?}")),
        }
    }
}

const GEOMETRIC_BASE: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub base_difference: u64,
    pub label_sizes: LabelSizes,
    pub multiplier_policy: MultiplierPolicy,
    pub seed: u64,
    #[serde(default)]
    pub offsets: OffsetPolicy,
}

impl ConstructionParams {
    pub fn new(base_difference: u64, size: usize, multiplier_policy: MultiplierPolicy) -> Self {
        Self {
            base_difference,
            label_sizes: LabelSizes::Range {
                min: size,
                max: size,
            },
            multiplier_policy,
            seed: 0,
            offsets: OffsetPolicy::Auto,
        }
    }

    fn validate(&self) -> Result<(), ConstructError> {
        if self.base_difference == 0 {
            return Err(ConstructError::InvalidParams(
                "base difference must be positive".into(),
            ));
        }
        match &self.label_sizes {
            LabelSizes::Range { min, max } => {
                if *min < MIN_ARITHMETIC_LABEL || min > max {
                    return Err(ConstructError::InvalidParams(format!(
                        "label size range {min}..={max} must satisfy 3 <= min <= max"
                    )));
                }
            }
            LabelSizes::PerVertex(sizes) => {
                if let Some(s) = sizes.iter().find(|&&s| s < MIN_ARITHMETIC_LABEL) {
                    return Err(ConstructError::InvalidParams(format!(
                        "label size {s} below {MIN_ARITHMETIC_LABEL}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Fallback {
    /// The policy's multiple of the parent clashed with another labeled
    /// neighbor; the largest neighbor difference was used instead.
    MaxNeighbor {
        vertex: VertexId,
        rejected: u64,
        chosen: u64,
    },
    /// No admissible difference was found; the whole labeling was redone
    /// with every difference equal to the base difference.
    Uniform { vertex: VertexId },
}

/// Realized parameters of one edge: `m` is the size of the endpoint with the
/// smaller difference, `n` the other size, and `k` the ratio of differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeParams {
    pub m: u64,
    pub n: u64,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub labeled: LabeledGraph,
    pub differences: BTreeMap<VertexId, u64>,
    pub edge_params: BTreeMap<Edge, EdgeParams>,
    pub fallbacks: Vec<Fallback>,
}

impl Construction {
    pub fn used_uniform_fallback(&self) -> bool {
        self.fallbacks
            .iter()
            .any(|f| matches!(f, Fallback::Uniform { .. }))
    }
}

/// Whether two adjacent vertices' differences satisfy the bounded-multiple rule.
fn admissible(d_a: u64, size_a: usize, d_b: u64, size_b: usize) -> bool {
    let (small, small_size, large) = if d_a <= d_b {
        (d_a, size_a, d_b)
    } else {
        (d_b, size_b, d_a)
    };
    large % small == 0 && large / small <= small_size as u64
}

/// Breadth-first order per component, each rooted at its smallest vertex,
/// paired with the traversal parent.
fn bfs_order(g: &Graph) -> Vec<(VertexId, Option<VertexId>)> {
    let adj = g.adjacency();
    let mut seen = BTreeSet::new();
    let mut order = Vec::with_capacity(g.vertex_count());
    for root in g.vertices() {
        if !seen.insert(root) {
            continue;
        }
        order.push((root.clone(), None));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if seen.insert(w) {
                    order.push((w.clone(), Some(v.clone())));
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

fn draw_sizes(
    g: &Graph,
    sizes: &LabelSizes,
    rng: &mut ChaCha8Rng,
) -> Result<BTreeMap<VertexId, usize>, ConstructError> {
    match sizes {
        LabelSizes::Range { min, max } => Ok(g
            .vertices()
            .map(|v| (v.clone(), rng.gen_range(*min..=*max)))
            .collect()),
        LabelSizes::PerVertex(list) => {
            if list.len() != g.vertex_count() {
                return Err(ConstructError::InvalidParams(format!(
                    "{} label sizes given for {} vertices",
                    list.len(),
                    g.vertex_count()
                )));
            }
            Ok(g.vertices().cloned().zip(list.iter().copied()).collect())
        }
    }
}

fn smallest_prime_at_least(n: u64) -> u64 {
    let is_prime = |p: u64| {
        p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
    };
    (n.max(2)..)
        .find(|&p| is_prime(p))
        .expect("primes are unbounded")
}

fn sidon_offsets(count: usize, stride: u64) -> Option<Vec<u64>> {
    let p = smallest_prime_at_least(count as u64);
    (0..count as u64)
        .map(|i| {
            (2 * p)
                .checked_mul(i)?
                .checked_add(i * i % p)?
                .checked_mul(stride)
        })
        .collect()
}

fn geometric_offsets(count: usize, stride: u64, base: u64) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut term = stride;
    for _ in 0..count {
        out.push(term);
        term = term.checked_mul(base)?;
    }
    Some(out)
}

/// First terms for `vertices` (lexicographic order) given their label spans.
///
/// Generated offsets are multiples of a stride exceeding twice the largest
/// span, and leave headroom so that sums of four labels still fit in `u64`.
fn first_terms(policy: &OffsetPolicy, spans: &[u64]) -> Result<Vec<u64>, ConstructError> {
    let n = spans.len();
    let max_span = spans.iter().copied().max().unwrap_or(0);
    let stride = max_span
        .checked_mul(2)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| ConstructError::Overflow("label span".into()))?;
    let fits = |offsets: &[u64]| {
        offsets
            .iter()
            .zip(spans)
            .all(|(a, s)| a.checked_add(*s).is_some_and(|top| top <= u64::MAX / 4))
    };
    let offsets = match policy {
        OffsetPolicy::Explicit(list) => {
            if list.len() != n {
                return Err(ConstructError::InvalidParams(format!(
                    "{} offsets given for {n} vertices",
                    list.len()
                )));
            }
            let distinct: BTreeSet<_> = list.iter().collect();
            if distinct.len() != n {
                return Err(ConstructError::InvalidParams(
                    "offsets must be distinct".into(),
                ));
            }
            if list
                .iter()
                .zip(spans)
                .any(|(a, s)| a.checked_add(*s).is_none_or(|top| top > u64::MAX / 2))
            {
                return Err(ConstructError::Overflow("explicit offsets".into()));
            }
            return Ok(list.clone());
        }
        OffsetPolicy::Sidon => sidon_offsets(n, stride),
        OffsetPolicy::Geometric { base } => {
            if *base < 2 {
                return Err(ConstructError::InvalidParams(
                    "geometric base must be >= 2".into(),
                ));
            }
            geometric_offsets(n, stride, *base)
        }
        OffsetPolicy::Auto => geometric_offsets(n, stride, GEOMETRIC_BASE)
            .filter(|o| fits(o))
            .or_else(|| sidon_offsets(n, stride)),
    };
    match offsets {
        Some(o) if fits(&o) => Ok(o),
        _ => Err(ConstructError::Overflow(format!(
            "offsets for {n} vertices with span {max_span}"
        ))),
    }
}

fn materialize(
    g: &Graph,
    differences: &BTreeMap<VertexId, u64>,
    sizes: &BTreeMap<VertexId, usize>,
    offsets: &OffsetPolicy,
) -> Result<LabeledGraph, ConstructError> {
    let spans: Vec<u64> = g
        .vertices()
        .map(|v| {
            (sizes[v] as u64 - 1)
                .checked_mul(differences[v])
                .ok_or_else(|| ConstructError::Overflow(format!("label span of {v}")))
        })
        .collect::<Result<_, _>>()?;
    let firsts = first_terms(offsets, &spans)?;
    let labels = g
        .vertices()
        .zip(firsts)
        .map(|(v, a)| {
            let ap = ApSet::new(a, differences[v], sizes[v] as u64)?;
            Ok((v.clone(), ap.expand()))
        })
        .collect::<Result<BTreeMap<_, _>, ConstructError>>()?;
    let lg = induce_edge_labels(g.clone(), labels)?;
    match verify_iasi(&lg).collision {
        Some(c) => Err(ConstructError::Collision(c)),
        None => Ok(lg),
    }
}

fn edge_params(
    g: &Graph,
    differences: &BTreeMap<VertexId, u64>,
    sizes: &BTreeMap<VertexId, usize>,
) -> BTreeMap<Edge, EdgeParams> {
    g.edges()
        .map(|e| {
            let (a, b) = e.endpoints();
            let (s, l) = if differences[a] <= differences[b] {
                (a, b)
            } else {
                (b, a)
            };
            (
                e.clone(),
                EdgeParams {
                    m: sizes[s] as u64,
                    n: sizes[l] as u64,
                    k: differences[l] / differences[s],
                },
            )
        })
        .collect()
}

/// Labels every vertex of `g` with an AP-set so that the result is an
/// arithmetic IASI.
///
/// Vertices are visited breadth-first from the lexicographically smallest
/// vertex of each component; roots get the base difference. A new vertex
/// gets `k` times its parent's difference (`k` from the policy, bounded by
/// the parent's label size) provided that value is admissible against every
/// labeled neighbor. Otherwise the largest labeled-neighbor difference is
/// tried, and failing that the labeling is redone with a single common
/// difference. Each fallback is recorded.
pub fn construct_arbitrary(
    g: &Graph,
    params: &ConstructionParams,
) -> Result<Construction, ConstructError> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let sizes = draw_sizes(g, &params.label_sizes, &mut rng)?;
    let d1 = params.base_difference;

    let mut differences: BTreeMap<VertexId, u64> = BTreeMap::new();
    let mut fallbacks = Vec::new();
    let mut uniform = false;

    for (v, parent) in bfs_order(g) {
        let Some(p) = parent else {
            differences.insert(v, d1);
            continue;
        };
        let bound = sizes[&p];
        let k = match params.multiplier_policy {
            MultiplierPolicy::Fixed => 1,
            MultiplierPolicy::Random => rng.gen_range(1..=bound),
            MultiplierPolicy::Maximal => bound,
        } as u64;
        let labeled: Vec<(u64, usize)> = g
            .neighbors(&v)
            .filter_map(|u| differences.get(u).map(|&d| (d, sizes[u])))
            .collect();
        let fits_all = |d: u64| {
            labeled
                .iter()
                .all(|&(du, su)| admissible(du, su, d, sizes[&v]))
        };
        let candidate = differences[&p].checked_mul(k);
        if let Some(d) = candidate.filter(|&d| fits_all(d)) {
            differences.insert(v, d);
            continue;
        }
        let max_neighbor = labeled
            .iter()
            .map(|&(d, _)| d)
            .max()
            .expect("parent is labeled");
        if fits_all(max_neighbor) {
            fallbacks.push(Fallback::MaxNeighbor {
                vertex: v.clone(),
                rejected: candidate.unwrap_or(u64::MAX),
                chosen: max_neighbor,
            });
            differences.insert(v, max_neighbor);
            continue;
        }
        fallbacks.push(Fallback::Uniform { vertex: v });
        uniform = true;
        break;
    }
    if uniform {
        differences = g.vertices().map(|v| (v.clone(), d1)).collect();
    }

    let labeled = materialize(g, &differences, &sizes, &params.offsets)?;
    let edge_params = edge_params(g, &differences, &sizes);
    Ok(Construction {
        labeled,
        differences,
        edge_params,
        fallbacks,
    })
}

/// Split of `K_n` into a part with difference `d` and a part with `k*d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletePartition {
    pub part_one: Vec<VertexId>,
    pub part_two: Vec<VertexId>,
    pub difference: u64,
    pub k: u64,
}

/// Vertex names `v0, v1, ...`, zero-padded so lexicographic order is numeric order.
pub fn numbered_vertices(n: usize) -> Vec<VertexId> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n)
        .map(|i| VertexId::new(format!("v{i:0width$}")))
        .collect()
}

/// Arithmetic IASI of `K_n` whose first `r` vertices have difference `d` and
/// remaining `l` vertices difference `k*d`.
pub fn construct_complete(
    n: usize,
    parts: (usize, usize),
    d: u64,
    k: u64,
    sizes: &[usize],
) -> Result<(LabeledGraph, CompletePartition), ConstructError> {
    let (r, l) = parts;
    if n < 2 {
        return Err(ConstructError::Precondition("K_n needs n >= 2".into()));
    }
    if r + l != n {
        return Err(ConstructError::Precondition(format!(
            "parts {r}+{l} != {n}"
        )));
    }
    if r == 0 {
        return Err(ConstructError::Precondition(
            "first part must be nonempty".into(),
        ));
    }
    if d == 0 || k == 0 {
        return Err(ConstructError::Precondition(
            "d and k must be positive".into(),
        ));
    }
    if sizes.len() != n {
        return Err(ConstructError::InvalidParams(format!(
            "{} label sizes given for {n} vertices",
            sizes.len()
        )));
    }
    if let Some(s) = sizes.iter().find(|&&s| s < MIN_ARITHMETIC_LABEL) {
        return Err(ConstructError::InvalidParams(format!(
            "label size {s} below {MIN_ARITHMETIC_LABEL}"
        )));
    }
    let min_part_one = *sizes[..r].iter().min().expect("r >= 1");
    if l > 0 && k > min_part_one as u64 {
        return Err(ConstructError::Precondition(format!(
            "k={k} exceeds smallest first-part label size {min_part_one}"
        )));
    }
    let kd = d
        .checked_mul(k)
        .ok_or_else(|| ConstructError::Overflow("k*d".into()))?;

    let names = numbered_vertices(n);
    let edges = names
        .iter()
        .enumerate()
        .flat_map(|(i, a)| names[i + 1..].iter().map(move |b| (a.clone(), b.clone())));
    let g = validate_graph(names.clone(), edges)
        .map_err(|e| ConstructError::Precondition(e.to_string()))?;

    let differences: BTreeMap<VertexId, u64> = names
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), if i < r { d } else { kd }))
        .collect();
    let size_map: BTreeMap<VertexId, usize> =
        names.iter().cloned().zip(sizes.iter().copied()).collect();
    let lg = materialize(&g, &differences, &size_map, &OffsetPolicy::Auto)?;
    let partition = CompletePartition {
        part_one: names[..r].to_vec(),
        part_two: names[r..].to_vec(),
        difference: d,
        k,
    };
    Ok((lg, partition))
}

/// Restriction of the labeling to the subgraph `h`.
pub fn restrict_labeling(lg: &LabeledGraph, h: &Graph) -> Result<LabeledGraph, ConstructError> {
    if let Some(v) = h.vertices().find(|v| !lg.graph().contains_vertex(v)) {
        return Err(ConstructError::NotSubgraph(Element::Vertex(v.clone())));
    }
    if let Some(e) = h.edges().find(|e| !lg.graph().contains_edge(e)) {
        return Err(ConstructError::NotSubgraph(Element::Edge(e.clone())));
    }
    let labels: BTreeMap<VertexId, IntegerSet> = h
        .vertices()
        .map(|v| (v.clone(), lg.vertex_labels()[v].clone()))
        .collect();
    Ok(induce_edge_labels(h.clone(), labels)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumset::{detect_ap, predicted_edge_cardinality, Difference};
    use crate::verify::{check_gcd_invariant, check_multiplier_condition, classify_arithmetic};

    fn assert_arithmetic_iasi(lg: &LabeledGraph) {
        assert!(verify_iasi(lg).is_iasi, "not an IASI");
        let r = classify_arithmetic(lg);
        assert!(r.arithmetic, "not arithmetic: {r:?}");
    }

    fn cycle(n: usize) -> Graph {
        let names = numbered_vertices(n);
        Graph::from_edges((0..n).map(|i| (names[i].clone(), names[(i + 1) % n].clone()))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let names = numbered_vertices(n);
        Graph::from_edges(
            (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .map(|(i, j)| (names[i].clone(), names[j].clone())),
        )
        .unwrap()
    }

    #[test]
    fn c4_fixed_policy_uniform_difference() {
        let mut p = ConstructionParams::new(1, 3, MultiplierPolicy::Fixed);
        // v0..v3 in cycle order v0-v1-v2-v3-v0
        p.offsets = OffsetPolicy::Explicit(vec![0, 10, 30, 20]);
        let c = construct_arbitrary(&cycle(4), &p).unwrap();
        for (v, l) in c.labeled.vertex_labels() {
            let a = l.min_element().unwrap();
            assert_eq!(l, &IntegerSet::new([a, a + 1, a + 2]), "{v}");
        }
        for l in c.labeled.edge_labels().values() {
            assert_eq!(
                detect_ap(l).unwrap().unwrap().difference(),
                Difference::Step(1)
            );
        }
        assert_arithmetic_iasi(&c.labeled);
        assert!(c.fallbacks.is_empty());
    }

    #[test]
    fn c4_offsets_in_cycle_order_collide() {
        // v0+v3 = v1+v2 = 30 in the first terms: two edges get the same label.
        let mut p = ConstructionParams::new(1, 3, MultiplierPolicy::Fixed);
        p.offsets = OffsetPolicy::Explicit(vec![0, 10, 20, 30]);
        let err = construct_arbitrary(&cycle(4), &p).unwrap_err();
        match err {
            ConstructError::Collision(c) => assert_eq!(c.label.min_element(), Some(30)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn k3_maximal_policy() {
        let p = ConstructionParams::new(1, 3, MultiplierPolicy::Maximal);
        let c = construct_arbitrary(&complete(3), &p).unwrap();
        assert_eq!(
            c.differences.values().copied().collect::<Vec<_>>(),
            vec![1, 3, 3]
        );
        assert_arithmetic_iasi(&c.labeled);
        assert!(check_multiplier_condition(&c.labeled).unwrap().holds);
    }

    #[test]
    fn p2_explicit_sizes_and_offsets() {
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
        assert_eq!(
            lg.vertex_label(&"u".into()).unwrap(),
            &IntegerSet::new([0, 2, 4])
        );
        assert_eq!(
            lg.vertex_label(&"v".into()).unwrap(),
            &IntegerSet::new([1, 7, 13, 19])
        );
        let edge = lg.edge_label(&Edge::new("u", "v")).unwrap();
        let ap = detect_ap(edge).unwrap().unwrap();
        assert_eq!(ap.difference(), Difference::Step(2));
        assert_eq!(edge.len(), 12);
        assert_eq!(predicted_edge_cardinality(3, 4, 3).unwrap(), 12);
    }

    #[test]
    fn deterministic_under_seed() {
        let mut p = ConstructionParams::new(2, 3, MultiplierPolicy::Random);
        p.label_sizes = LabelSizes::Range { min: 3, max: 6 };
        p.seed = 42;
        let g = complete(5);
        let a = construct_arbitrary(&g, &p).unwrap();
        let b = construct_arbitrary(&g, &p).unwrap();
        assert_eq!(a.labeled, b.labeled);
        assert_eq!(a.fallbacks, b.fallbacks);
        assert_arithmetic_iasi(&a.labeled);
    }

    #[test]
    fn edge_params_match_formula() {
        let mut p = ConstructionParams::new(1, 3, MultiplierPolicy::Random);
        p.label_sizes = LabelSizes::Range { min: 3, max: 5 };
        for seed in 0..20 {
            p.seed = seed;
            let c = construct_arbitrary(&cycle(5), &p).unwrap();
            for (e, ep) in &c.edge_params {
                let card = c.labeled.edge_label(e).unwrap().len() as u64;
                assert_eq!(card, predicted_edge_cardinality(ep.m, ep.n, ep.k).unwrap());
            }
            assert!(check_gcd_invariant(&c.labeled).unwrap().holds);
        }
    }

    #[test]
    fn disconnected_graph_labels_each_component() {
        let g = Graph::from_edges([("a", "b"), ("c", "d"), ("d", "e")]).unwrap();
        let c = construct_arbitrary(
            &g,
            &ConstructionParams::new(3, 4, MultiplierPolicy::Maximal),
        )
        .unwrap();
        assert_arithmetic_iasi(&c.labeled);
        assert_eq!(c.differences[&VertexId::from("a")], 3);
        assert_eq!(c.differences[&VertexId::from("c")], 3);
    }

    #[test]
    fn invalid_params_rejected() {
        let g = cycle(3);
        assert!(matches!(
            construct_arbitrary(&g, &ConstructionParams::new(0, 3, MultiplierPolicy::Fixed)),
            Err(ConstructError::InvalidParams(_))
        ));
        assert!(matches!(
            construct_arbitrary(&g, &ConstructionParams::new(1, 2, MultiplierPolicy::Fixed)),
            Err(ConstructError::InvalidParams(_))
        ));
        let mut p = ConstructionParams::new(1, 3, MultiplierPolicy::Fixed);
        p.offsets = OffsetPolicy::Explicit(vec![0, 0, 5]);
        assert!(matches!(
            construct_arbitrary(&g, &p),
            Err(ConstructError::InvalidParams(_))
        ));
        let p = ConstructionParams::new(u64::MAX / 2, 3, MultiplierPolicy::Fixed);
        assert!(matches!(
            construct_arbitrary(&g, &p),
            Err(ConstructError::Overflow(_))
        ));
    }

    #[test]
    fn large_graph_falls_back_to_sidon_offsets() {
        let g = cycle(60);
        let c = construct_arbitrary(&g, &ConstructionParams::new(1, 3, MultiplierPolicy::Fixed))
            .unwrap();
        assert_arithmetic_iasi(&c.labeled);
    }

    #[test]
    fn sidon_offsets_have_distinct_pair_sums() {
        let offs = sidon_offsets(30, 1).unwrap();
        let mut sums = BTreeSet::new();
        for i in 0..offs.len() {
            for j in i..offs.len() {
                assert!(sums.insert(offs[i] + offs[j]));
            }
        }
    }

    #[test]
    fn complete_examples() {
        let (lg, part) = construct_complete(4, (2, 2), 3, 2, &[3; 4]).unwrap();
        assert_eq!(lg.graph().edge_count(), 6);
        assert_eq!(part.part_two.len(), 2);
        assert_arithmetic_iasi(&lg);

        let (lg, _) = construct_complete(3, (3, 0), 1, 1, &[3; 3]).unwrap();
        assert_arithmetic_iasi(&lg);

        assert!(matches!(
            construct_complete(4, (2, 2), 3, 4, &[3; 4]),
            Err(ConstructError::Precondition(_))
        ));
        assert!(construct_complete(4, (2, 1), 3, 1, &[3; 4]).is_err());
    }

    #[test]
    fn restrict_examples() {
        let (k4, _) = construct_complete(4, (2, 2), 1, 3, &[3; 4]).unwrap();
        let names = numbered_vertices(4);
        let path = Graph::from_edges([
            (names[0].clone(), names[1].clone()),
            (names[1].clone(), names[2].clone()),
            (names[2].clone(), names[3].clone()),
        ])
        .unwrap();
        assert_arithmetic_iasi(&restrict_labeling(&k4, &path).unwrap());

        let edge = Graph::from_edges([(names[0].clone(), names[3].clone())]).unwrap();
        assert_arithmetic_iasi(&restrict_labeling(&k4, &edge).unwrap());

        let p3 = restrict_labeling(&k4, &path).unwrap();
        let foreign = Graph::from_edges([(names[0].clone(), names[2].clone())]).unwrap();
        assert_eq!(
            restrict_labeling(&p3, &foreign),
            Err(ConstructError::NotSubgraph(Element::Edge(Edge::new(
                names[0].clone(),
                names[2].clone()
            ))))
        );
    }
}
