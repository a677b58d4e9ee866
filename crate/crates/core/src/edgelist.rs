//! Plain-text edge-list format.
//!
//! One edge per line as two whitespace-separated labels. `#` starts a
//! comment line, blank lines are skipped, and `vertex <label>` declares a
//! vertex without adding an edge (used for isolated vertices). Labels are
//! interned in order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Comment prefix used to tag the distinguished vertex of a search witness.
pub const WITNESS_TAG: &str = "# witness-vertex";

pub fn parse(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        *ids.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() - 1
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", label] => {
                intern(label, &mut labels);
            }
            [a, b] => {
                if a == b {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("self-loop at `{a}`"),
                    });
                }
                let ia = intern(a, &mut labels);
                let ib = intern(b, &mut labels);
                let key = (ia.min(ib), ia.max(ib));
                if let Some(first) = seen.insert(key, line_no) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!(
                            "duplicate edge `{a}`-`{b}` (first given on line {first})"
                        ),
                    });
                }
                edges.push(key);
            }
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two labels, found {} tokens", tokens.len()),
                });
            }
        }
    }
    Graph::with_labels(labels, edges)
}

/// Reads the `# witness-vertex <label>` tag, if present.
pub fn witness_vertex(text: &str, g: &Graph) -> Result<Option<VertexId>> {
    for line in text.lines() {
        if let Some(rest) = line.trim().strip_prefix(WITNESS_TAG) {
            return g.vertex(rest.trim()).map(Some);
        }
    }
    Ok(None)
}

pub fn write(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        writeln!(out, "vertex {}", g.label(v)).unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "{} {}", g.label(a), g.label(b)).unwrap();
    }
    out
}

/// Edge list preceded by the witness tag line.
pub fn write_witness(g: &Graph, vertex: VertexId) -> String {
    format!("{} {}\n{}", WITNESS_TAG, g.label(vertex), write(g))
}
