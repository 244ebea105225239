//! IASI verification and classification of labeled graphs.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{deterministic_index, Edge, Element, LabeledGraph, VertexId};
use crate::sumset::{detect_ap, IntegerSet};

/// Smallest label size an AP vertex label needs for the arithmetic classifications.
pub const MIN_ARITHMETIC_LABEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyError {
    #[error("labeling is not vertex-arithmetic: label of {vertex} is {label}")]
    NotVertexArithmetic { vertex: VertexId, label: IntegerSet },
    #[error("labeling is not arithmetic")]
    NotArithmetic,
    #[error("graph is disconnected ({} components)", components.len())]
    Disconnected { components: Vec<ComponentGcd> },
}

/// Two distinct elements of the same kind carrying the same label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub first: Element,
    pub second: Element,
    pub label: IntegerSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IasiVerdict {
    pub is_iasi: bool,
    pub collision: Option<Collision>,
}

fn first_collision<'a, K, I>(items: I, wrap: impl Fn(&K) -> Element) -> Option<Collision>
where
    K: 'a,
    I: Iterator<Item = (&'a K, &'a IntegerSet)>,
{
    let mut seen: HashMap<&IntegerSet, &K> = HashMap::new();
    for (key, label) in items {
        if let Some(prev) = seen.insert(label, key) {
            return Some(Collision {
                first: wrap(prev),
                second: wrap(key),
                label: label.clone(),
            });
        }
    }
    None
}

/// True iff vertex labels are pairwise distinct and edge labels are pairwise
/// distinct. On failure the first colliding pair is returned.
pub fn verify_iasi(lg: &LabeledGraph) -> IasiVerdict {
    let collision = first_collision(lg.vertex_labels().iter(), |v: &VertexId| {
        Element::Vertex(v.clone())
    })
    .or_else(|| first_collision(lg.edge_labels().iter(), |e: &Edge| Element::Edge(e.clone())));
    IasiVerdict {
        is_iasi: collision.is_none(),
        collision,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub weak: bool,
    pub strong: bool,
    pub indexing_number: usize,
}

/// Weak: `|f+(uv)| = max(|f(u)|, |f(v)|)`. Strong: `|f+(uv)| = |f(u)| |f(v)|`.
pub fn classify_edges(lg: &LabeledGraph) -> BTreeMap<Edge, EdgeClass> {
    lg.edge_labels()
        .iter()
        .map(|(e, label)| {
            let (u, v) = e.endpoints();
            let m = lg.vertex_labels()[u].len();
            let n = lg.vertex_labels()[v].len();
            let card = label.len();
            (
                e.clone(),
                EdgeClass {
                    weak: card == m.max(n),
                    strong: card == m * n,
                    indexing_number: card,
                },
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Uniformity {
    /// Common edge set-indexing number, if all edges share one.
    pub k: Option<usize>,
    /// Common vertex set-indexing number, if all vertices share one.
    pub l: Option<usize>,
}

fn common<I: Iterator<Item = usize>>(mut it: I) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

pub fn check_uniformity(lg: &LabeledGraph) -> Uniformity {
    Uniformity {
        k: common(lg.edge_labels().values().map(IntegerSet::len)),
        l: common(lg.vertex_labels().values().map(IntegerSet::len)),
    }
}

/// How "the edge labels are not AP-sets" is read for semi-arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SemiReading {
    /// At least one edge label is not an AP-set.
    #[default]
    Some,
    /// No edge label is an AP-set.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub is_iasi: bool,
    pub collision: Option<Collision>,
    #[serde(serialize_with = "crate::graph::serialize_edge_map")]
    pub per_edge: BTreeMap<Edge, EdgeClass>,
    pub uniform_k: Option<usize>,
    pub vertex_uniform_l: Option<usize>,
    pub vertex_arithmetic: bool,
    pub edge_arithmetic: bool,
    pub arithmetic: bool,
    pub semi_arithmetic: bool,
    pub semi_reading: SemiReading,
    /// Vertices whose label is an AP-set of exactly two elements.
    pub sub_minimal_vertices: Vec<VertexId>,
    pub non_ap_vertices: Vec<VertexId>,
    pub non_ap_edges: Vec<Edge>,
    /// Edge-arithmetic held while vertex-arithmetic did not.
    pub edge_arithmetic_without_vertex_arithmetic: bool,
}

pub fn classify_arithmetic(lg: &LabeledGraph) -> ClassificationReport {
    classify_arithmetic_with(lg, SemiReading::default())
}

pub fn classify_arithmetic_with(lg: &LabeledGraph, reading: SemiReading) -> ClassificationReport {
    let verdict = verify_iasi(lg);
    let uniformity = check_uniformity(lg);

    let mut sub_minimal_vertices = Vec::new();
    let mut non_ap_vertices = Vec::new();
    for (v, label) in lg.vertex_labels() {
        match detect_ap(label) {
            Ok(Some(ap)) if ap.length() as usize >= MIN_ARITHMETIC_LABEL => {}
            Ok(Some(ap)) if ap.length() == 2 => sub_minimal_vertices.push(v.clone()),
            _ => non_ap_vertices.push(v.clone()),
        }
    }
    let non_ap_edges: Vec<Edge> = lg
        .edge_labels()
        .iter()
        .filter(|(_, label)| deterministic_index(label).step().is_none())
        .map(|(e, _)| e.clone())
        .collect();

    let vertex_arithmetic = sub_minimal_vertices.is_empty() && non_ap_vertices.is_empty();
    let edge_arithmetic = non_ap_edges.is_empty();
    let semi_arithmetic = vertex_arithmetic
        && match reading {
            SemiReading::Some => !edge_arithmetic,
            SemiReading::Strict => non_ap_edges.len() == lg.edge_labels().len(),
        };

    ClassificationReport {
        is_iasi: verdict.is_iasi,
        collision: verdict.collision,
        per_edge: classify_edges(lg),
        uniform_k: uniformity.k,
        vertex_uniform_l: uniformity.l,
        vertex_arithmetic,
        edge_arithmetic,
        arithmetic: vertex_arithmetic && edge_arithmetic,
        semi_arithmetic,
        semi_reading: reading,
        sub_minimal_vertices,
        non_ap_vertices,
        non_ap_edges,
        edge_arithmetic_without_vertex_arithmetic: edge_arithmetic && !vertex_arithmetic,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplierViolation {
    pub edge: Edge,
    /// Endpoint with the smaller deterministic index.
    pub smaller: VertexId,
    pub d_small: u64,
    pub d_large: u64,
    /// `d_large / d_small` when it divides evenly.
    pub k: Option<u64>,
    /// `|f(smaller)|`, the largest admissible multiplier.
    pub bound: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplierCheck {
    pub holds: bool,
    pub violations: Vec<MultiplierViolation>,
    /// Some vertex label is a two-element AP-set.
    pub sub_minimal: bool,
}

fn vertex_steps(lg: &LabeledGraph) -> Result<BTreeMap<&VertexId, u64>, VerifyError> {
    lg.vertex_labels()
        .iter()
        .map(|(v, label)| match deterministic_index(label).step() {
            Some(d) => Ok((v, d)),
            None => Err(VerifyError::NotVertexArithmetic {
                vertex: v.clone(),
                label: label.clone(),
            }),
        })
        .collect()
}

/// For every edge with indices `d_u <= d_v`, requires `d_v = k d_u` with
/// `1 <= k <= |f(u)|`.
///
/// Two-element AP labels are accepted and reported through `sub_minimal`.
pub fn check_multiplier_condition(lg: &LabeledGraph) -> Result<MultiplierCheck, VerifyError> {
    let steps = vertex_steps(lg)?;
    let sub_minimal = lg.vertex_labels().values().any(|l| l.len() == 2);
    let mut violations = Vec::new();
    for e in lg.graph().edges() {
        let (a, b) = e.endpoints();
        let (small, large) = if steps[a] <= steps[b] { (a, b) } else { (b, a) };
        let (d_small, d_large) = (steps[small], steps[large]);
        let bound = lg.vertex_labels()[small].len();
        let k = (d_large % d_small == 0).then(|| d_large / d_small);
        if !matches!(k, Some(k) if k as usize <= bound) {
            violations.push(MultiplierViolation {
                edge: e.clone(),
                smaller: small.clone(),
                d_small,
                d_large,
                k,
                bound,
            });
        }
    }
    Ok(MultiplierCheck {
        holds: violations.is_empty(),
        violations,
        sub_minimal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GcdCheck {
    pub holds: bool,
    pub gcd_vertices: u64,
    pub gcd_edges: u64,
    pub min_vertex_index: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentGcd {
    pub vertices: Vec<VertexId>,
    pub check: GcdCheck,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd_over(lg: &LabeledGraph, keep: Option<&[VertexId]>) -> GcdCheck {
    let inside = |v: &VertexId| keep.is_none_or(|k| k.contains(v));
    let vertex_steps: Vec<u64> = lg
        .vertex_labels()
        .iter()
        .filter(|(v, _)| inside(v))
        .filter_map(|(_, l)| deterministic_index(l).step())
        .collect();
    let edge_steps: Vec<u64> = lg
        .edge_labels()
        .iter()
        .filter(|(e, _)| inside(e.lo()))
        .filter_map(|(_, l)| deterministic_index(l).step())
        .collect();
    let gcd_vertices = vertex_steps.iter().copied().fold(0, gcd);
    let gcd_edges = edge_steps.iter().copied().fold(0, gcd);
    let min_vertex_index = vertex_steps.iter().copied().min().unwrap_or(0);
    GcdCheck {
        holds: gcd_vertices == gcd_edges && gcd_edges == min_vertex_index,
        gcd_vertices,
        gcd_edges,
        min_vertex_index,
    }
}

/// Compares the gcd of vertex deterministic indices, the gcd of edge
/// deterministic indices and the smallest vertex deterministic index.
///
/// Requires an arithmetic labeling of a connected graph. For a disconnected
/// graph the per-component results are returned inside the error.
pub fn check_gcd_invariant(lg: &LabeledGraph) -> Result<GcdCheck, VerifyError> {
    if !classify_arithmetic(lg).arithmetic {
        return Err(VerifyError::NotArithmetic);
    }
    let components = lg.graph().components();
    if components.len() > 1 {
        let components = components
            .into_iter()
            .map(|c| {
                let check = gcd_over(lg, Some(&c));
                ComponentGcd { vertices: c, check }
            })
            .collect();
        return Err(VerifyError::Disconnected { components });
    }
    Ok(gcd_over(lg, None))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingletonRuleCheck {
    pub holds: bool,
    /// Weak edges with no singleton endpoint.
    pub violations: Vec<Edge>,
}

/// Every weak edge must have an endpoint with a singleton label.
pub fn check_singleton_endpoint_rule(lg: &LabeledGraph) -> SingletonRuleCheck {
    let violations: Vec<Edge> = classify_edges(lg)
        .into_iter()
        .filter(|(e, class)| {
            let (u, v) = e.endpoints();
            class.weak && lg.vertex_labels()[u].len() != 1 && lg.vertex_labels()[v].len() != 1
        })
        .map(|(e, _)| e)
        .collect();
    SingletonRuleCheck {
        holds: violations.is_empty(),
        violations,
    }
}
