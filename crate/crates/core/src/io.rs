//! Text format for graph instances.
//!
//! The format is DIMACS-like: a header line `p edge <n> <m>`, then `m` lines
//! `e <u> <v>` with 1-based vertex indices, and comment lines starting with
//! `c`. External index `i` maps to internal id `i - 1`. The writer compacts
//! live vertices to `1..=n` in ascending id order and emits edges in
//! lexicographic order, so writing a parsed canonical file reproduces it
//! byte for byte.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected header `p edge <n> <m>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: edge before header")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge line {found:?}")]
    BadEdge { line: usize, found: String },
    #[error("line {line}: vertex index {index} out of range 1..={n}")]
    VertexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: self-loop on vertex {index}")]
    SelfLoop { line: usize, index: usize },
    #[error("line {line}: unrecognized line {found:?}")]
    UnknownLine { line: usize, found: String },
    #[error("header declared {declared} edges but {found} distinct edges were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
}

/// Parses a graph from the text format.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut declared_edges = 0usize;
    let mut n = 0usize;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                let ok = tokens.next() == Some("edge");
                let n_tok = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let m_tok = tokens.next().and_then(|t| t.parse::<usize>().ok());
                match (ok, n_tok, m_tok, tokens.next()) {
                    (true, Some(nv), Some(mv), None) => {
                        n = nv;
                        declared_edges = mv;
                        graph = Some(Graph::with_vertices(nv));
                    }
                    _ => {
                        return Err(ParseError::BadHeader {
                            line: line_no,
                            found: raw.to_string(),
                        })
                    }
                }
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or(ParseError::EdgeBeforeHeader { line: line_no })?;
                let u = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let v = tokens.next().and_then(|t| t.parse::<usize>().ok());
                let (u, v) = match (u, v, tokens.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => {
                        return Err(ParseError::BadEdge {
                            line: line_no,
                            found: raw.to_string(),
                        })
                    }
                };
                for &i in &[u, v] {
                    if i == 0 || i > n {
                        return Err(ParseError::VertexOutOfRange {
                            line: line_no,
                            index: i,
                            n,
                        });
                    }
                }
                if u == v {
                    return Err(ParseError::SelfLoop {
                        line: line_no,
                        index: u,
                    });
                }
                g.add_edge(VertexId((u - 1) as u32), VertexId((v - 1) as u32))
                    .expect("endpoints validated");
            }
            _ => {
                return Err(ParseError::UnknownLine {
                    line: line_no,
                    found: raw.to_string(),
                })
            }
        }
    }

    let graph = graph.ok_or(ParseError::MissingHeader)?;
    if graph.edge_count() != declared_edges {
        return Err(ParseError::EdgeCountMismatch {
            declared: declared_edges,
            found: graph.edge_count(),
        });
    }
    Ok(graph)
}

/// Writes a graph in canonical form, compacting vertex ids to `1..=n`.
pub fn write_graph(g: &Graph) -> String {
    let ids: Vec<VertexId> = g.vertices().collect();
    let rank = |v: VertexId| ids.binary_search(&v).expect("live vertex") + 1;
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", rank(u), rank(v)).unwrap();
    }
    out
}
