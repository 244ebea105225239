//! Graphviz DOT export of labeled graphs.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use crate::graph::LabeledGraph;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renders one node line per vertex and one edge line per edge, both in
/// lexicographic order, with set-labels as `{a,b,c}` strings.
pub fn render_dot(lg: &LabeledGraph) -> String {
    let mut out = String::from("graph iasi {\n");
    for (v, label) in lg.vertex_labels() {
        let _ = writeln!(
            out,
            "  {} [label={}];",
            quote(v.as_str()),
            quote(&label.to_string())
        );
    }
    for (e, label) in lg.edge_labels() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(e.lo().as_str()),
            quote(e.hi().as_str()),
            quote(&label.to_string())
        );
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(lg: &LabeledGraph, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, render_dot(lg))
}
