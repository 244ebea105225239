//! Simple undirected graphs, vertex set-labelings and the induced edge labeling.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sumset::{detect_ap, sumset, Difference, IntegerSet, SetError};

/// Opaque vertex identifier. Ordering is lexicographic on the string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

/// Unordered vertex pair stored with endpoints in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "(VertexId, VertexId)", from = "(VertexId, VertexId)")]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> &VertexId {
        &self.lo
    }

    pub fn hi(&self) -> &VertexId {
        &self.hi
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.lo, &self.hi)
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        &self.lo == v || &self.hi == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if &self.lo == v {
            Some(&self.hi)
        } else if &self.hi == v {
            Some(&self.lo)
        } else {
            None
        }
    }

    pub fn is_loop(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Serializes an edge-keyed map with `u-v` string keys, as JSON objects require.
pub fn serialize_edge_map<T: Serialize, S: serde::Serializer>(
    map: &BTreeMap<Edge, T>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    serializer.collect_map(map.iter().map(|(e, v)| (e.to_string(), v)))
}

impl From<(VertexId, VertexId)> for Edge {
    fn from((a, b): (VertexId, VertexId)) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for (VertexId, VertexId) {
    fn from(e: Edge) -> Self {
        (e.lo, e.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphViolation {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("duplicate edge {edge}")]
    DuplicateEdge { edge: Edge },
    #[error("duplicate vertex {vertex}")]
    DuplicateVertex { vertex: VertexId },
    #[error("isolated vertex {vertex}")]
    IsolatedVertex { vertex: VertexId },
    #[error("edge {edge} has endpoint {vertex} that is not a vertex")]
    DanglingEndpoint { edge: Edge, vertex: VertexId },
    #[error("graph has no vertices")]
    EmptyGraph,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct GraphError {
    pub violations: Vec<GraphViolation>,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid graph: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Simple, finite graph without isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

/// Checks a raw vertex/edge listing and canonicalizes it.
///
/// Every violation found is reported, not just the first.
pub fn validate_graph<V, E, A, B>(raw_vertices: V, raw_edges: E) -> Result<Graph, GraphError>
where
    V: IntoIterator,
    V::Item: Into<VertexId>,
    E: IntoIterator<Item = (A, B)>,
    A: Into<VertexId>,
    B: Into<VertexId>,
{
    let mut violations = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in raw_vertices {
        let v = v.into();
        if !vertices.insert(v.clone()) {
            violations.push(GraphViolation::DuplicateVertex { vertex: v });
        }
    }
    if vertices.is_empty() {
        violations.push(GraphViolation::EmptyGraph);
    }
    let mut edges = BTreeSet::new();
    for (a, b) in raw_edges {
        let e = Edge::new(a, b);
        if e.is_loop() {
            violations.push(GraphViolation::SelfLoop {
                vertex: e.lo.clone(),
            });
            continue;
        }
        let mut dangling = false;
        for end in [&e.lo, &e.hi] {
            if !vertices.contains(end) {
                violations.push(GraphViolation::DanglingEndpoint {
                    edge: e.clone(),
                    vertex: end.clone(),
                });
                dangling = true;
            }
        }
        if dangling {
            continue;
        }
        if edges.contains(&e) {
            violations.push(GraphViolation::DuplicateEdge { edge: e });
        } else {
            edges.insert(e);
        }
    }
    let touched: BTreeSet<&VertexId> = edges.iter().flat_map(|e| [&e.lo, &e.hi]).collect();
    for v in &vertices {
        if !touched.contains(v) {
            violations.push(GraphViolation::IsolatedVertex { vertex: v.clone() });
        }
    }
    if violations.is_empty() {
        Ok(Graph { vertices, edges })
    } else {
        Err(GraphError { violations })
    }
}

impl Graph {
    /// Builds a graph from its edges alone; the vertex set is their endpoints.
    pub fn from_edges<I, A, B>(edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        let edges: Vec<(VertexId, VertexId)> = edges
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        let vertices: BTreeSet<VertexId> = edges
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        validate_graph(vertices, edges)
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &VertexId> + '_ {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn are_adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        a != b && self.edges.contains(&Edge::new(a.clone(), b.clone()))
    }

    /// Neighbors of `v` in lexicographic order.
    pub fn neighbors<'a>(&'a self, v: &'a VertexId) -> impl Iterator<Item = &'a VertexId> + 'a {
        self.edges.iter().filter_map(move |e| e.other(v))
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.neighbors(v).count()
    }

    pub fn adjacency(&self) -> BTreeMap<&VertexId, Vec<&VertexId>> {
        let mut adj: BTreeMap<&VertexId, Vec<&VertexId>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(&e.lo).or_default().push(&e.hi);
            adj.entry(&e.hi).or_default().push(&e.lo);
        }
        for ns in adj.values_mut() {
            ns.sort();
        }
        adj
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.push(v.clone());
                for &w in &adj[v] {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Canonical edge-list string, e.g. `a-b,a-c`.
    pub fn canonical_id(&self) -> String {
        self.edges
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Induced subgraph on `keep`; fails if that leaves a vertex isolated.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.lo) && keep.contains(&e.hi))
            .map(|e| (e.lo.clone(), e.hi.clone()));
        validate_graph(keep.iter().cloned(), edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelingError {
    #[error("vertex {0} has no label")]
    MissingLabel(VertexId),
    #[error("vertex {0} has an empty label")]
    EmptyLabel(VertexId),
    #[error("label given for unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {edge}: {source}")]
    Arithmetic { edge: Edge, source: SetError },
}

/// A graph with a vertex set-labeling and its induced edge labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: Graph,
    vertex_labels: BTreeMap<VertexId, IntegerSet>,
    edge_labels: BTreeMap<Edge, IntegerSet>,
}

/// Labels every edge `uv` with the sumset `f(u) + f(v)`.
///
/// Non-injective labelings are accepted here; injectivity is checked by the
/// verifier.
pub fn induce_edge_labels(
    graph: Graph,
    labels: BTreeMap<VertexId, IntegerSet>,
) -> Result<LabeledGraph, LabelingError> {
    if let Some(v) = labels.keys().find(|v| !graph.contains_vertex(v)) {
        return Err(LabelingError::UnknownVertex(v.clone()));
    }
    for v in graph.vertices() {
        match labels.get(v) {
            None => return Err(LabelingError::MissingLabel(v.clone())),
            Some(l) if l.is_empty() => return Err(LabelingError::EmptyLabel(v.clone())),
            Some(_) => {}
        }
    }
    let mut edge_labels = BTreeMap::new();
    for e in graph.edges() {
        let sum =
            sumset(&labels[&e.lo], &labels[&e.hi]).map_err(|source| LabelingError::Arithmetic {
                edge: e.clone(),
                source,
            })?;
        edge_labels.insert(e.clone(), sum);
    }
    Ok(LabeledGraph {
        graph,
        vertex_labels: labels,
        edge_labels,
    })
}

impl LabeledGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_labels(&self) -> &BTreeMap<VertexId, IntegerSet> {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &BTreeMap<Edge, IntegerSet> {
        &self.edge_labels
    }

    pub fn vertex_label(&self, v: &VertexId) -> Option<&IntegerSet> {
        self.vertex_labels.get(v)
    }

    pub fn edge_label(&self, e: &Edge) -> Option<&IntegerSet> {
        self.edge_labels.get(e)
    }

    pub fn into_parts(self) -> (Graph, BTreeMap<VertexId, IntegerSet>) {
        (self.graph, self.vertex_labels)
    }

    /// Recomputes the edge labels from the vertex labels.
    pub fn rebuild(&self) -> Result<LabeledGraph, LabelingError> {
        induce_edge_labels(self.graph.clone(), self.vertex_labels.clone())
    }
}

/// Either a vertex or an edge of a labeled graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Element {
    Vertex(VertexId),
    Edge(Edge),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

/// Set-indexing numbers and deterministic indices of every element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSummary {
    pub vertex_indexing_numbers: BTreeMap<VertexId, usize>,
    #[serde(serialize_with = "serialize_edge_map")]
    pub edge_indexing_numbers: BTreeMap<Edge, usize>,
    pub vertex_deterministic_indices: BTreeMap<VertexId, Difference>,
    #[serde(serialize_with = "serialize_edge_map")]
    pub edge_deterministic_indices: BTreeMap<Edge, Difference>,
}

/// Deterministic index of a label: its common difference when it is an
/// AP-set of at least two elements, otherwise undefined.
pub fn deterministic_index(label: &IntegerSet) -> Difference {
    match detect_ap(label) {
        Ok(Some(ap)) => ap.difference(),
        _ => Difference::Undefined,
    }
}

pub fn summarize_indices(lg: &LabeledGraph) -> IndexSummary {
    IndexSummary {
        vertex_indexing_numbers: lg
            .vertex_labels
            .iter()
            .map(|(v, l)| (v.clone(), l.len()))
            .collect(),
        edge_indexing_numbers: lg
            .edge_labels
            .iter()
            .map(|(e, l)| (e.clone(), l.len()))
            .collect(),
        vertex_deterministic_indices: lg
            .vertex_labels
            .iter()
            .map(|(v, l)| (v.clone(), deterministic_index(l)))
            .collect(),
        edge_deterministic_indices: lg
            .edge_labels
            .iter()
            .map(|(e, l)| (e.clone(), deterministic_index(l)))
            .collect(),
    }
}
