//! Uniform hypergraphs: storage, degrees, connectivity and regularity.
//!
//! Vertices are 0-based inside the library. The text and JSON formats in
//! [`io`] use 1-based ids and convert at the boundary.

mod coloring;
mod generate;
mod io;

use std::collections::VecDeque;

pub use coloring::{find_odd_coloring, OddColoring, DEFAULT_COLORING_CAP};
pub use generate::{generate, Family};
pub use io::{parse_hypergraph, HypergraphJson, ParseOutcome};

use crate::error::{Error, Result};

/// An r-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted, and the edge list itself is kept in
/// lexicographic order without duplicates, so two hypergraphs with the same
/// edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformHypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    /// Builds a hypergraph from 0-based edges, dropping duplicate edges.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_duplicate_count(n, r, edges).map(|(h, _)| h)
    }

    /// Like [`UniformHypergraph::new`] but also reports how many duplicate
    /// edges were discarded.
    pub fn with_duplicate_count(
        n: usize,
        r: usize,
        edges: Vec<Vec<usize>>,
    ) -> Result<(Self, usize)> {
        if n == 0 {
            return Err(Error::InvalidHypergraph(
                "vertex count must be positive".into(),
            ));
        }
        if r < 2 {
            return Err(Error::Uniformity {
                r,
                message: "uniformity must be at least 2".into(),
            });
        }
        let mut canonical = Vec::with_capacity(edges.len());
        for mut edge in edges {
            if edge.len() != r {
                return Err(Error::InvalidEdge {
                    edge,
                    message: format!("expected {r} vertices"),
                });
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidEdge {
                    message: format!("vertex {} out of range 1..={n}", v + 1),
                    edge,
                });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    edge,
                    message: "repeated vertex".into(),
                });
            }
            canonical.push(edge);
        }
        let before = canonical.len();
        canonical.sort_unstable();
        canonical.dedup();
        let duplicates = before - canonical.len();
        Ok((
            Self {
                n,
                r,
                edges: canonical,
            },
            duplicates,
        ))
    }

    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, Vec::new())
    }

    /// Vertex count.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniformity (edge size).
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> DegreeVector {
        let mut d = vec![0usize; self.n];
        for edge in &self.edges {
            for &v in edge {
                d[v] += 1;
            }
        }
        DegreeVector(d)
    }

    pub fn is_regular(&self) -> bool {
        self.degrees().is_constant()
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (k, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(k);
            }
        }
        inc
    }

    /// Component label for every vertex, numbered in order of each
    /// component's smallest vertex.
    fn component_labels(&self) -> (Vec<usize>, usize) {
        let inc = self.incidence();
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &k in &inc[v] {
                    for &w in &self.edges[k] {
                        if label[w] == usize::MAX {
                            label[w] = count;
                            queue.push_back(w);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// True iff every pair of vertices is joined by a walk. A single vertex
    /// is connected; an isolated vertex alongside others is not.
    pub fn is_connected(&self) -> bool {
        self.component_labels().1 == 1
    }

    /// Maximal connected pieces, ordered by smallest original vertex.
    pub fn components(&self) -> Vec<Component> {
        let (label, count) = self.component_labels();
        let mut vertices = vec![Vec::new(); count];
        let mut local = vec![0usize; self.n];
        for v in 0..self.n {
            local[v] = vertices[label[v]].len();
            vertices[label[v]].push(v);
        }
        let mut edges = vec![Vec::new(); count];
        for edge in &self.edges {
            let c = label[edge[0]];
            edges[c].push(edge.iter().map(|&v| local[v]).collect::<Vec<_>>());
        }
        vertices
            .into_iter()
            .zip(edges)
            .map(|(vertices, edges)| Component {
                // local relabeling is monotone, so edges stay sorted and distinct
                graph: Self {
                    n: vertices.len(),
                    r: self.r,
                    edges,
                },
                vertices,
            })
            .collect()
    }

    /// Adds an edge given in 0-based ids, returning a new hypergraph.
    pub fn with_edge(&self, edge: Vec<usize>) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        Self::new(self.n, self.r, edges)
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::Uniformity {
                r: other.r,
                message: format!("cannot join with a {}-uniform hypergraph", self.r),
            });
        }
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(
                other
                    .edges
                    .iter()
                    .map(|e| e.iter().map(|&v| v + shift).collect()),
            )
            .collect();
        Self::new(self.n + other.n, self.r, edges)
    }

    /// Applies a vertex permutation `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: perm.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| perm[v]).collect())
            .collect();
        Self::new(self.n, self.r, edges)
    }
}

/// A connected piece of a hypergraph, relabeled to `0..vertices.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: UniformHypergraph,
    /// `vertices[local] = original`, increasing.
    pub vertices: Vec<usize>,
}

/// Per-vertex edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(Vec<usize>);

impl DegreeVector {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn min(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// True when all degrees coincide (vacuously for an empty list).
    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|&d| d as f64).collect()
    }
}

impl std::ops::Deref for DegreeVector {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}
