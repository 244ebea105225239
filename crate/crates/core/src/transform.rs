//! Label-carrying graph transformations.
//!
//! Each operation requires an arithmetic input labeling, builds the new
//! graph, transfers set-labels to it and re-verifies the result. A result
//! that is not an IASI comes back as [`TransformError::Collision`], and one
//! that is an IASI but not arithmetic as [`TransformError::NotPreserved`];
//! labels are never repaired.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{
    induce_edge_labels, validate_graph, Edge, GraphError, LabeledGraph, LabelingError, VertexId,
};
use crate::sumset::IntegerSet;
use crate::verify::{classify_arithmetic, verify_iasi, ClassificationReport, Collision};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input labeling is not arithmetic")]
    InputNotArithmetic,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("synthesized vertex name {0} already exists")]
    NameClash(VertexId),
    #[error("result graph is invalid: {0}")]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("transferred labeling is not injective: {} and {} share {}", .0.first, .0.second, .0.label)]
    Collision(Collision),
    #[error("transferred labeling is not arithmetic (non-AP vertices {:?}, non-AP edges {:?})", .0.non_ap_vertices, .0.non_ap_edges)]
    NotPreserved(Box<ClassificationReport>),
}

/// Identifier of the vertex created from edge `e`.
pub fn edge_vertex_name(e: &Edge) -> VertexId {
    VertexId::new(format!("{}~{}", e.lo(), e.hi()))
}

fn require_arithmetic(lg: &LabeledGraph) -> Result<(), TransformError> {
    let r = classify_arithmetic(lg);
    if r.arithmetic && r.is_iasi {
        Ok(())
    } else {
        Err(TransformError::InputNotArithmetic)
    }
}

fn require_edge(lg: &LabeledGraph, e: &Edge) -> Result<(), TransformError> {
    if lg.graph().contains_edge(e) {
        Ok(())
    } else {
        Err(TransformError::UnknownEdge(e.clone()))
    }
}

fn fresh_name(existing: &BTreeSet<VertexId>, name: VertexId) -> Result<VertexId, TransformError> {
    if existing.contains(&name) {
        Err(TransformError::NameClash(name))
    } else {
        Ok(name)
    }
}

fn finish(
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
    labels: BTreeMap<VertexId, IntegerSet>,
) -> Result<LabeledGraph, TransformError> {
    let g = validate_graph(vertices, edges.into_iter().map(Into::into))?;
    let lg = induce_edge_labels(g, labels)?;
    if let Some(c) = verify_iasi(&lg).collision {
        return Err(TransformError::Collision(c));
    }
    let report = classify_arithmetic(&lg);
    if !report.arithmetic {
        return Err(TransformError::NotPreserved(Box::new(report)));
    }
    Ok(lg)
}

/// Merges the endpoints of `e` into a new vertex labeled `f+(e)`.
///
/// Edges that become parallel are collapsed.
pub fn contract_edge(lg: &LabeledGraph, e: &Edge) -> Result<LabeledGraph, TransformError> {
    require_edge(lg, e)?;
    require_arithmetic(lg)?;
    let (u, v) = e.endpoints();
    let survivors: BTreeSet<VertexId> = lg
        .graph()
        .vertices()
        .filter(|x| *x != u && *x != v)
        .cloned()
        .collect();
    let w = fresh_name(&survivors, VertexId::new(format!("{u}+{v}")))?;
    let lift = |x: &VertexId| {
        if x == u || x == v {
            w.clone()
        } else {
            x.clone()
        }
    };
    let edges: BTreeSet<Edge> = lg
        .graph()
        .edges()
        .filter(|f| *f != e)
        .map(|f| Edge::new(lift(f.lo()), lift(f.hi())))
        .collect();
    let mut labels: BTreeMap<VertexId, IntegerSet> = survivors
        .iter()
        .map(|x| (x.clone(), lg.vertex_labels()[x].clone()))
        .collect();
    labels.insert(w.clone(), lg.edge_labels()[e].clone());
    let mut vertices = survivors;
    vertices.insert(w);
    finish(vertices, edges, labels)
}

/// Removes a degree-2 vertex whose neighbors are non-adjacent and joins
/// those neighbors; surviving vertices keep their labels.
pub fn reduce_topologically(
    lg: &LabeledGraph,
    v: &VertexId,
) -> Result<LabeledGraph, TransformError> {
    let g = lg.graph();
    if !g.contains_vertex(v) {
        return Err(TransformError::UnknownVertex(v.clone()));
    }
    let ns: Vec<&VertexId> = g.neighbors(v).collect();
    let [u, w] = ns[..] else {
        return Err(TransformError::Precondition(format!(
            "vertex {v} has degree {}, expected 2",
            ns.len()
        )));
    };
    if g.are_adjacent(u, w) {
        return Err(TransformError::Precondition(format!(
            "neighbors {u} and {w} of {v} are adjacent"
        )));
    }
    require_arithmetic(lg)?;
    let vertices: BTreeSet<VertexId> = g.vertices().filter(|x| *x != v).cloned().collect();
    let mut edges: BTreeSet<Edge> = g.edges().filter(|e| !e.contains(v)).cloned().collect();
    edges.insert(Edge::new(u.clone(), w.clone()));
    let labels = vertices
        .iter()
        .map(|x| (x.clone(), lg.vertex_labels()[x].clone()))
        .collect();
    finish(vertices, edges, labels)
}

/// Inserts a new vertex on `e`, labeled `f+(e)`.
pub fn subdivide(lg: &LabeledGraph, e: &Edge) -> Result<LabeledGraph, TransformError> {
    require_edge(lg, e)?;
    require_arithmetic(lg)?;
    let mut vertices: BTreeSet<VertexId> = lg.graph().vertices().cloned().collect();
    let w = fresh_name(&vertices, edge_vertex_name(e))?;
    let mut edges: BTreeSet<Edge> = lg.graph().edges().filter(|f| *f != e).cloned().collect();
    edges.insert(Edge::new(e.lo().clone(), w.clone()));
    edges.insert(Edge::new(w.clone(), e.hi().clone()));
    let mut labels = lg.vertex_labels().clone();
    labels.insert(w.clone(), lg.edge_labels()[e].clone());
    vertices.insert(w);
    finish(vertices, edges, labels)
}

/// Edge pairs sharing an endpoint, each pair listed once.
fn adjacent_edge_pairs(lg: &LabeledGraph) -> Vec<(&Edge, &Edge)> {
    let edges: Vec<&Edge> = lg.graph().edges().collect();
    let mut out = Vec::new();
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            if a.contains(b.lo()) || a.contains(b.hi()) {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Line graph labeled by the edge labels of `lg`.
pub fn to_line_graph(lg: &LabeledGraph) -> Result<LabeledGraph, TransformError> {
    if lg.graph().edge_count() < 2 {
        return Err(TransformError::Precondition(
            "line graph needs at least two edges".into(),
        ));
    }
    require_arithmetic(lg)?;
    let name: BTreeMap<&Edge, VertexId> = lg
        .graph()
        .edges()
        .map(|e| (e, edge_vertex_name(e)))
        .collect();
    let vertices: BTreeSet<VertexId> = name.values().cloned().collect();
    let edges: BTreeSet<Edge> = adjacent_edge_pairs(lg)
        .into_iter()
        .map(|(a, b)| Edge::new(name[a].clone(), name[b].clone()))
        .collect();
    let labels = lg
        .edge_labels()
        .iter()
        .map(|(e, l)| (name[e].clone(), l.clone()))
        .collect();
    finish(vertices, edges, labels)
}

/// Total graph: points are the vertices and edges of `lg`; vertices keep
/// their labels and edge points take the edge labels.
pub fn to_total_graph(lg: &LabeledGraph) -> Result<LabeledGraph, TransformError> {
    require_arithmetic(lg)?;
    let originals: BTreeSet<VertexId> = lg.graph().vertices().cloned().collect();
    let mut name: BTreeMap<&Edge, VertexId> = BTreeMap::new();
    for e in lg.graph().edges() {
        name.insert(e, fresh_name(&originals, edge_vertex_name(e))?);
    }
    let mut edges: BTreeSet<Edge> = lg.graph().edges().cloned().collect();
    for (a, b) in adjacent_edge_pairs(lg) {
        edges.insert(Edge::new(name[a].clone(), name[b].clone()));
    }
    for e in lg.graph().edges() {
        edges.insert(Edge::new(e.lo().clone(), name[e].clone()));
        edges.insert(Edge::new(e.hi().clone(), name[e].clone()));
    }
    let mut labels = lg.vertex_labels().clone();
    for (e, l) in lg.edge_labels() {
        labels.insert(name[e].clone(), l.clone());
    }
    let mut vertices = originals;
    vertices.extend(name.into_values());
    finish(vertices, edges, labels)
}
