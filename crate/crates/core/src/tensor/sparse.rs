use itertools::Itertools;

use super::dense::{factorial, DenseTensor};
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Coordinate-list tensor holding only nonzero entries.
///
/// Used where the dense form is too large but every entry still has to be
/// visited explicitly, e.g. applying `A(H) ⊗ B` term by term.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseTensor {
    order: usize,
    dim: usize,
    entries: Vec<(Vec<usize>, f64)>,
}

impl SparseTensor {
    pub fn new(order: usize, dim: usize, entries: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        for (idx, _) in &entries {
            if idx.len() != order {
                return Err(Error::OrderMismatch {
                    left: order,
                    right: idx.len(),
                });
            }
            if let Some(&j) = idx.iter().find(|&&j| j >= dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: j + 1,
                });
            }
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    /// Every ordering of every edge, each with value `1/(r-1)!`.
    pub fn adjacency(h: &UniformHypergraph) -> Self {
        let value = 1.0 / factorial(h.r() - 1);
        let entries = h
            .edges()
            .iter()
            .flat_map(|e| e.iter().copied().permutations(h.r()))
            .map(|idx| (idx, value))
            .collect();
        Self {
            order: h.r(),
            dim: h.n(),
            entries,
        }
    }

    pub fn degree_diagonal(h: &UniformHypergraph) -> Self {
        let entries = h
            .degrees()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (vec![i; h.r()], d as f64))
            .collect();
        Self {
            order: h.r(),
            dim: h.n(),
            entries,
        }
    }

    pub fn unit(order: usize, dim: usize) -> Self {
        Self {
            order,
            dim,
            entries: (0..dim).map(|i| (vec![i; order], 1.0)).collect(),
        }
    }

    /// Sparse form of the pairwise-distinct indicator tensor, valid for any r.
    pub fn distinct_indices(r: usize) -> Self {
        Self {
            order: r,
            dim: r,
            entries: (0..r).permutations(r).map(|p| (p, 1.0)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let mut out = vec![0.0; self.dim];
        for (idx, v) in &self.entries {
            out[idx[0]] += v * idx[1..].iter().map(|&j| x[j]).product::<f64>();
        }
        Ok(out)
    }
}

impl From<&DenseTensor> for SparseTensor {
    fn from(t: &DenseTensor) -> Self {
        let entries = (0..t.order())
            .map(|_| 0..t.dim())
            .multi_cartesian_product()
            .zip(t.entries())
            .filter(|(_, &v)| v != 0.0)
            .map(|(idx, &v)| (idx, v))
            .collect();
        Self {
            order: t.order(),
            dim: t.dim(),
            entries,
        }
    }
}

/// `Σ_k c_k (A_k ⊗ B_k)` applied without forming the products.
#[derive(Debug, Clone, Default)]
pub struct KroneckerSum {
    terms: Vec<(f64, SparseTensor, SparseTensor)>,
}

impl KroneckerSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(mut self, coefficient: f64, a: SparseTensor, b: SparseTensor) -> Result<Self> {
        if a.order != b.order {
            return Err(Error::OrderMismatch {
                left: a.order,
                right: b.order,
            });
        }
        if let Some((_, first, second)) = self.terms.first() {
            if first.order != a.order {
                return Err(Error::OrderMismatch {
                    left: first.order,
                    right: a.order,
                });
            }
            let dim = first.dim * second.dim;
            if a.dim * b.dim != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: a.dim * b.dim,
                });
            }
        }
        self.terms.push((coefficient, a, b));
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.terms.first().map_or(0, |(_, a, b)| a.dim * b.dim)
    }

    /// `(A ⊗ B) w` entry by entry: each pair of nonzeros `a_{i…}`, `b_{j…}`
    /// contributes to row `(i₁, j₁)` the product of `w` over the other pairs.
    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        let dim = self.dim();
        if w.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: w.len(),
            });
        }
        let mut out = vec![0.0; dim];
        for (c, a, b) in &self.terms {
            let m = b.dim;
            for (ia, va) in &a.entries {
                for (ib, vb) in &b.entries {
                    let rest: f64 = ia[1..]
                        .iter()
                        .zip(&ib[1..])
                        .map(|(&i, &j)| w[i * m + j])
                        .product();
                    out[ia[0] * m + ib[0]] += c * va * vb * rest;
                }
            }
        }
        Ok(out)
    }
}
