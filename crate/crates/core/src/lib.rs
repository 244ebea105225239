//! Arithmetic integer additive set-indexers (IASIs) of graphs.
//!
//! A set-labeling assigns each vertex a finite set of non-negative integers
//! and each edge the sumset of its endpoint labels. This crate provides the
//! sumset arithmetic, the labeled-graph model, IASI verification and
//! classification, constructive arithmetic labelings, label-carrying graph
//! transformations, and an exhaustive small-graph checking harness.

pub mod catalog;
pub mod construct;
pub mod document;
pub mod dot;
pub mod graph;
pub mod sumset;
pub mod transform;
pub mod verify;

pub use graph::{Edge, Graph, LabeledGraph, VertexId};
pub use sumset::{ApSet, Difference, IntegerSet};
