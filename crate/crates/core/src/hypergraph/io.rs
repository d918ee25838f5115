//! Text and JSON formats.
//!
//! Text: a header line `n r`, then one edge per line as `r` space-separated
//! 1-based vertex ids. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::UniformHypergraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOutcome {
    pub graph: UniformHypergraph,
    /// Number of repeated edges that were dropped.
    pub duplicates: usize,
}

pub fn parse_hypergraph(text: &str) -> Result<ParseOutcome> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n r` header".into(),
    })?;
    let fields = parse_ints(header_line, header)?;
    let [n, r] = fields[..] else {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header must be `n r`, got {} fields", fields.len()),
        });
    };
    if n == 0 || r == 0 {
        return Err(Error::Parse {
            line: header_line,
            message: "header values must be positive".into(),
        });
    }
    if r < 2 {
        return Err(Error::Parse {
            line: header_line,
            message: "uniformity must be at least 2".into(),
        });
    }

    let mut edges = Vec::new();
    for (line, content) in lines {
        let ids = parse_ints(line, content)?;
        if ids.len() != r {
            return Err(Error::Parse {
                line,
                message: format!("edge has {} vertices, expected {r}", ids.len()),
            });
        }
        let mut edge = Vec::with_capacity(r);
        for id in ids {
            if id == 0 || id > n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {id} out of range 1..={n}"),
                });
            }
            edge.push(id - 1);
        }
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line,
                message: "repeated vertex in edge".into(),
            });
        }
        edges.push(edge);
    }
    let (graph, duplicates) = UniformHypergraph::with_duplicate_count(n, r, edges)?;
    Ok(ParseOutcome { graph, duplicates })
}

fn parse_ints(line: usize, content: &str) -> Result<Vec<usize>> {
    content
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("`{tok}` is not a non-negative integer"),
            })
        })
        .collect()
}

impl UniformHypergraph {
    /// Renders the text format with 1-based ids and a trailing newline.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.r);
        for edge in &self.edges {
            let line = edge
                .iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: HypergraphJson = serde_json::from_str(s)?;
        Self::try_from(raw)
    }
}

/// JSON mirror of the text format: `{"n": .., "r": .., "edges": [[..], ..]}`
/// with 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: usize,
    pub r: usize,
    pub edges: Vec<Vec<usize>>,
}

impl From<&UniformHypergraph> for HypergraphJson {
    fn from(h: &UniformHypergraph) -> Self {
        Self {
            n: h.n,
            r: h.r,
            edges: h
                .edges
                .iter()
                .map(|e| e.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }
}

impl TryFrom<HypergraphJson> for UniformHypergraph {
    type Error = Error;

    fn try_from(raw: HypergraphJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(raw.edges.len());
        for edge in raw.edges {
            if let Some(&bad) = edge.iter().find(|&&v| v == 0 || v > raw.n) {
                return Err(Error::InvalidEdge {
                    message: format!("vertex {bad} out of range 1..={}", raw.n),
                    edge,
                });
            }
            edges.push(edge.into_iter().map(|v| v - 1).collect());
        }
        UniformHypergraph::new(raw.n, raw.r, edges)
    }
}
