//! JSON labeling documents.
//!
//! ```json
//! {"graph":{"vertices":["u","v"],"edges":[["u","v"]]},
//!  "labels":{"u":[0,1,2],"v":[0,2,4]},
//!  "metadata":{"seed":7,"tool_version":"0.1.0"}}
//! ```
//!
//! Unknown fields are rejected. Label arrays that are not strictly ascending
//! are normalized on load and reported as warnings.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{validate_graph, Graph, GraphError, LabeledGraph, LabelingError, VertexId};
use crate::sumset::IntegerSet;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document at `{field}` (line {line}, column {column}): {message}")]
    Json {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tool_version: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDocument {
    pub graph: GraphDoc,
    pub labels: BTreeMap<String, Vec<u64>>,
    #[serde(default)]
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphOnlyDocument {
    graph: GraphDoc,
    #[serde(default)]
    #[allow(dead_code)]
    labels: Option<BTreeMap<String, Vec<u64>>>,
    #[serde(default)]
    #[allow(dead_code)]
    metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoadedDocument {
    pub labeled: LabeledGraph,
    pub metadata: Metadata,
    pub warnings: Vec<String>,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, DocumentError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|err| {
        let field = err.path().to_string();
        let inner = err.into_inner();
        DocumentError::Json {
            field,
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        }
    })
}

fn read(path: &Path) -> Result<String, DocumentError> {
    fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.to_owned(),
        source,
    })
}

fn build_graph(doc: &GraphDoc) -> Result<Graph, DocumentError> {
    let known: BTreeSet<&str> = doc.vertices.iter().map(String::as_str).collect();
    for (i, (a, b)) in doc.edges.iter().enumerate() {
        for end in [a, b] {
            if !known.contains(end.as_str()) {
                return Err(DocumentError::Schema {
                    field: format!("graph.edges[{i}]"),
                    message: format!("edge [{a:?}, {b:?}] references unknown vertex {end:?}"),
                });
            }
        }
    }
    Ok(validate_graph(
        doc.vertices.iter().map(|v| VertexId::new(v.as_str())),
        doc.edges
            .iter()
            .map(|(a, b)| (VertexId::new(a.as_str()), VertexId::new(b.as_str()))),
    )?)
}

/// Parses a labeling document from JSON text.
pub fn parse_document(text: &str) -> Result<LoadedDocument, DocumentError> {
    let doc: LabelingDocument = from_json(text)?;
    let graph = build_graph(&doc.graph)?;
    let mut warnings = Vec::new();
    let mut labels = BTreeMap::new();
    for (v, raw) in &doc.labels {
        let field = format!("labels.{v}");
        if !graph.contains_vertex(&VertexId::new(v.as_str())) {
            return Err(DocumentError::Schema {
                field,
                message: format!("label for unknown vertex {v:?}"),
            });
        }
        if raw.is_empty() {
            return Err(DocumentError::Schema {
                field,
                message: "label array is empty".into(),
            });
        }
        let set = match IntegerSet::from_sorted(raw.clone()) {
            Ok(set) => set,
            Err(_) => {
                warnings.push(format!(
                    "{field}: array is not strictly ascending; normalized"
                ));
                IntegerSet::new(raw.iter().copied())
            }
        };
        labels.insert(VertexId::new(v.as_str()), set);
    }
    if let Some(v) = graph
        .vertices()
        .find(|v| !doc.labels.contains_key(v.as_str()))
    {
        return Err(DocumentError::Schema {
            field: "labels".into(),
            message: format!("vertex {v:?} has no label", v = v.as_str()),
        });
    }
    let labeled = crate::graph::induce_edge_labels(graph, labels)?;
    Ok(LoadedDocument {
        labeled,
        metadata: doc.metadata,
        warnings,
    })
}

pub fn load_document(path: impl AsRef<Path>) -> Result<LoadedDocument, DocumentError> {
    parse_document(&read(path.as_ref())?)
}

/// Parses a graph from either a bare `{"vertices":..,"edges":..}` object or
/// a document with a `graph` member (labels, if present, are ignored).
pub fn parse_graph(text: &str) -> Result<Graph, DocumentError> {
    let value: serde_json::Value = from_json(text)?;
    let doc = if value.get("graph").is_some() {
        from_json::<GraphOnlyDocument>(text)?.graph
    } else {
        from_json::<GraphDoc>(text)?
    };
    build_graph(&doc)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph, DocumentError> {
    parse_graph(&read(path.as_ref())?)
}

pub fn to_document(lg: &LabeledGraph, metadata: Metadata) -> LabelingDocument {
    LabelingDocument {
        graph: GraphDoc {
            vertices: lg
                .graph()
                .vertices()
                .map(|v| v.as_str().to_owned())
                .collect(),
            edges: lg
                .graph()
                .edges()
                .map(|e| (e.lo().as_str().to_owned(), e.hi().as_str().to_owned()))
                .collect(),
        },
        labels: lg
            .vertex_labels()
            .iter()
            .map(|(v, l)| (v.as_str().to_owned(), l.as_slice().to_vec()))
            .collect(),
        metadata,
    }
}

pub fn render_document(lg: &LabeledGraph, metadata: Metadata) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(lg, metadata))
        .expect("documents always serialize");
    s.push('\n');
    s
}

pub fn save_document(
    lg: &LabeledGraph,
    metadata: Metadata,
    path: impl AsRef<Path>,
) -> Result<(), DocumentError> {
    let path = path.as_ref();
    fs::write(path, render_document(lg, metadata)).map_err(|source| DocumentError::Io {
        path: path.to_owned(),
        source,
    })
}
