//! Tensor-times-vector products for hypergraph tensors.
//!
//! The adjacency tensor of an r-uniform hypergraph has entry `1/(r-1)!` at
//! every ordering of every edge. Summing over the `(r-1)!` orderings of the
//! other vertices cancels that factor, so `(A x)_i` is a sum over incident
//! edges of the product of the remaining coordinates.

mod dense;
mod sparse;

pub use dense::{b_tensor, direct_product, unit_tensor, DenseCap, DenseTensor, DENSE_CAP_ENV};
pub use sparse::{KroneckerSum, SparseTensor};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    Adjacency,
    DegreeDiagonal,
    SignlessLaplacian,
    Laplacian,
    Dense,
}

#[derive(Debug, Clone, Copy)]
enum Source<'a> {
    Hypergraph(&'a UniformHypergraph),
    Dense(&'a DenseTensor),
}

/// Apply-only view of A(H), D(H), Q(H) = D + A, L(H) = D - A, or a dense tensor.
#[derive(Debug, Clone)]
pub struct TensorOperator<'a> {
    kind: OperatorKind,
    source: Source<'a>,
    degrees: Vec<f64>,
}

impl<'a> TensorOperator<'a> {
    fn hypergraph(kind: OperatorKind, h: &'a UniformHypergraph) -> Self {
        let degrees = match kind {
            OperatorKind::Adjacency => Vec::new(),
            _ => h.degrees().to_f64(),
        };
        Self {
            kind,
            source: Source::Hypergraph(h),
            degrees,
        }
    }

    pub fn adjacency(h: &'a UniformHypergraph) -> Self {
        Self::hypergraph(OperatorKind::Adjacency, h)
    }

    pub fn degree_diagonal(h: &'a UniformHypergraph) -> Self {
        Self::hypergraph(OperatorKind::DegreeDiagonal, h)
    }

    pub fn signless_laplacian(h: &'a UniformHypergraph) -> Self {
        Self::hypergraph(OperatorKind::SignlessLaplacian, h)
    }

    pub fn laplacian(h: &'a UniformHypergraph) -> Self {
        Self::hypergraph(OperatorKind::Laplacian, h)
    }

    pub fn dense(t: &'a DenseTensor) -> Self {
        Self {
            kind: OperatorKind::Dense,
            source: Source::Dense(t),
            degrees: Vec::new(),
        }
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        match self.source {
            Source::Hypergraph(h) => h.r(),
            Source::Dense(t) => t.order(),
        }
    }

    pub fn dim(&self) -> usize {
        match self.source {
            Source::Hypergraph(h) => h.n(),
            Source::Dense(t) => t.dim(),
        }
    }

    pub fn source_hypergraph(&self) -> Option<&'a UniformHypergraph> {
        match self.source {
            Source::Hypergraph(h) => Some(h),
            Source::Dense(_) => None,
        }
    }

    /// Whether every entry of the tensor is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        match (self.kind, self.source) {
            (OperatorKind::Laplacian, Source::Hypergraph(h)) => h.edge_count() == 0,
            (_, Source::Hypergraph(_)) => true,
            (_, Source::Dense(t)) => t.entries().iter().all(|&v| v >= 0.0),
        }
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        Ok(out)
    }

    /// Writes `T x` into `out`. Both slices must have length `dim()`.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        debug_assert_eq!(out.len(), self.dim());
        match self.source {
            Source::Dense(t) => t.apply_into(x, out),
            Source::Hypergraph(h) => {
                let p = (h.r() - 1) as i32;
                let diag = |out: &mut [f64], sign: f64| {
                    for ((o, &d), &xi) in out.iter_mut().zip(&self.degrees).zip(x) {
                        *o += sign * d * xi.powi(p);
                    }
                };
                out.fill(0.0);
                match self.kind {
                    OperatorKind::Adjacency => adjacency_accumulate(h, x, out, 1.0),
                    OperatorKind::DegreeDiagonal => diag(out, 1.0),
                    OperatorKind::SignlessLaplacian => {
                        diag(out, 1.0);
                        adjacency_accumulate(h, x, out, 1.0);
                    }
                    OperatorKind::Laplacian => {
                        diag(out, 1.0);
                        adjacency_accumulate(h, x, out, -1.0);
                    }
                    OperatorKind::Dense => unreachable!("dense kind always has a dense source"),
                }
            }
        }
    }
}

fn check_dim(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// `out += sign * A(H) x`, one edge at a time with prefix/suffix products so
/// zero coordinates need no special casing.
fn adjacency_accumulate(h: &UniformHypergraph, x: &[f64], out: &mut [f64], sign: f64) {
    let r = h.r();
    let mut prefix = vec![1.0; r + 1];
    for edge in h.edges() {
        for k in 0..r {
            prefix[k + 1] = prefix[k] * x[edge[k]];
        }
        let mut suffix = 1.0;
        for k in (0..r).rev() {
            out[edge[k]] += sign * prefix[k] * suffix;
            suffix *= x[edge[k]];
        }
    }
}

/// `(A(H) x)_i = Σ_{e ∋ i} Π_{v ∈ e, v ≠ i} x_v`.
pub fn adjacency_apply(h: &UniformHypergraph, x: &[f64]) -> Result<Vec<f64>> {
    TensorOperator::adjacency(h).apply(x)
}

pub fn operator_apply(t: &TensorOperator<'_>, x: &[f64]) -> Result<Vec<f64>> {
    t.apply(x)
}

/// The multilinear form `xᵀ(T x)`.
pub fn rayleigh(t: &TensorOperator<'_>, x: &[f64]) -> Result<f64> {
    let y = t.apply(x)?;
    Ok(dot(x, &y))
}

/// Relative max-norm residual `‖T x − λ x^[r−1]‖∞ / ‖x^[r−1]‖∞`.
pub fn eigen_residual(t: &TensorOperator<'_>, lambda: f64, x: &[f64]) -> Result<f64> {
    let y = t.apply(x)?;
    let p = (t.order() - 1) as i32;
    let mut num: f64 = 0.0;
    let mut den: f64 = 0.0;
    for (&yi, &xi) in y.iter().zip(x) {
        let xp = xi.powi(p);
        num = num.max((yi - lambda * xp).abs());
        den = den.max(xp.abs());
    }
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(num / den)
}

/// `u ⊗ v` in lexicographic layout: `(u₁v₁, …, u₁v_m, u₂v₁, …)`.
pub fn kron_vector(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter()
        .flat_map(|&a| v.iter().map(move |&b| a * b))
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(Σ |x_i|^p)^{1/p}`.
pub fn p_norm(x: &[f64], p: usize) -> f64 {
    let p = p as f64;
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// Largest absolute entrywise difference divided by the largest entry of `b`.
pub fn relative_max_diff(a: &[f64], b: &[f64]) -> f64 {
    let num = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let den = b.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if den == 0.0 {
        num
    } else {
        num / den
    }
}
