use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Environment variable that overrides [`DenseCap::max_dim`] in [`DenseCap::from_env`].
pub const DENSE_CAP_ENV: &str = "HYPERSPEC_DENSE_CAP";

/// Size limits for fully stored tensors (`dim^order` entries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseCap {
    pub max_dim: usize,
    pub max_order: usize,
}

impl Default for DenseCap {
    fn default() -> Self {
        Self {
            max_dim: 12,
            max_order: 6,
        }
    }
}

impl DenseCap {
    /// Default cap with `max_dim` taken from `HYPERSPEC_DENSE_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut cap = Self::default();
        if let Ok(raw) = std::env::var(DENSE_CAP_ENV) {
            cap.max_dim = raw.trim().parse().map_err(|_| {
                Error::Config(format!(
                    "{DENSE_CAP_ENV}={raw:?} is not a non-negative integer"
                ))
            })?;
        }
        Ok(cap)
    }

    pub fn admits(&self, order: usize, dim: usize) -> bool {
        order <= self.max_order && dim <= self.max_dim
    }

    fn check(&self, order: usize, dim: usize) -> Result<()> {
        if self.admits(order, dim) {
            Ok(())
        } else {
            Err(Error::Capacity(format!(
                "dense tensor of order {order} and dimension {dim} exceeds cap \
                 (order <= {}, dimension <= {})",
                self.max_order, self.max_dim
            )))
        }
    }
}

/// Fully stored tensor; entry `(j₁,…,j_r)` (0-based) sits at flat index
/// `Σ j_k · dim^(r-k)`, i.e. lexicographic order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(order: usize, dim: usize, cap: &DenseCap) -> Result<Self> {
        if order < 1 || dim < 1 {
            return Err(Error::Config(format!(
                "tensor order and dimension must be positive, got {order}, {dim}"
            )));
        }
        cap.check(order, dim)?;
        Ok(Self {
            order,
            dim,
            entries: vec![0.0; dim.pow(order as u32)],
        })
    }

    pub fn from_entries(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        let expected = dim.checked_pow(order as u32).unwrap_or(usize::MAX);
        if entries.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: entries.len(),
            });
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    pub fn filled(order: usize, dim: usize, value: f64, cap: &DenseCap) -> Result<Self> {
        let mut t = Self::zeros(order, dim, cap)?;
        t.entries.fill(value);
        Ok(t)
    }

    /// A(H) with entries `1/(r-1)!` on every ordering of every edge.
    pub fn adjacency(h: &UniformHypergraph, cap: &DenseCap) -> Result<Self> {
        let mut t = Self::zeros(h.r(), h.n(), cap)?;
        let value = 1.0 / factorial(h.r() - 1);
        for edge in h.edges() {
            for perm in edge.iter().copied().permutations(h.r()) {
                t.set(&perm, value);
            }
        }
        Ok(t)
    }

    /// D(H) with `d_i` at `(i,…,i)`.
    pub fn degree_diagonal(h: &UniformHypergraph, cap: &DenseCap) -> Result<Self> {
        let mut t = Self::zeros(h.r(), h.n(), cap)?;
        for (i, &d) in h.degrees().iter().enumerate() {
            t.set(&vec![i; h.r()], d as f64);
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    fn flat(&self, index: &[usize]) -> usize {
        assert_eq!(
            index.len(),
            self.order,
            "index length must equal tensor order"
        );
        index.iter().fold(0, |acc, &j| {
            assert!(
                j < self.dim,
                "index {j} out of range for dimension {}",
                self.dim
            );
            acc * self.dim + j
        })
    }

    /// Entry at a 0-based multi-index.
    pub fn get(&self, index: &[usize]) -> f64 {
        self.entries[self.flat(index)]
    }

    pub fn set(&mut self, index: &[usize], value: f64) {
        let k = self.flat(index);
        self.entries[k] = value;
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            order: self.order,
            dim: self.dim,
            entries: self.entries.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(Self {
            order: self.order,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Full multilinear apply `(T x)_i = Σ t_{i i₂…i_r} x_{i₂}⋯x_{i_r}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        let mut out = vec![0.0; self.dim];
        self.apply_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        // products x_{i₂}⋯x_{i_r} for every trailing index, in flat order
        let mut products = vec![1.0];
        for _ in 1..self.order {
            products = products
                .iter()
                .flat_map(|&p| x.iter().map(move |&v| p * v))
                .collect();
        }
        let block = products.len();
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.entries[i * block..(i + 1) * block]
                .iter()
                .zip(&products)
                .map(|(t, p)| t * p)
                .sum();
        }
    }
}

/// Order-r, dimension-r tensor with 1 where all indices are pairwise distinct.
pub fn b_tensor(r: usize) -> Result<DenseTensor> {
    if r < 2 {
        return Err(Error::Uniformity {
            r,
            message: "the distinct-index tensor needs r >= 2".into(),
        });
    }
    let mut t = DenseTensor::zeros(r, r, &DenseCap::default())?;
    for perm in (0..r).permutations(r) {
        t.set(&perm, 1.0);
    }
    Ok(t)
}

/// Unit tensor of order r and dimension m: 1 on the main diagonal.
pub fn unit_tensor(r: usize, m: usize) -> Result<DenseTensor> {
    if r < 2 {
        return Err(Error::Config(format!(
            "unit tensor needs order >= 2, got {r}"
        )));
    }
    let mut t = DenseTensor::zeros(r, m, &DenseCap::default())?;
    for i in 0..m {
        t.set(&vec![i; r], 1.0);
    }
    Ok(t)
}

/// Direct (Kronecker) product; pair `(i, j)` maps to `i * dim(b) + j`.
pub fn direct_product(a: &DenseTensor, b: &DenseTensor, cap: &DenseCap) -> Result<DenseTensor> {
    if a.order != b.order {
        return Err(Error::OrderMismatch {
            left: a.order,
            right: b.order,
        });
    }
    let m = b.dim;
    let mut out = DenseTensor::zeros(a.order, a.dim * m, cap)?;
    let big = out.dim;
    for (flat, slot) in out.entries.iter_mut().enumerate() {
        let (mut rest, mut ia, mut ib) = (flat, 0, 0);
        let (mut sa, mut sb) = (1, 1);
        // peel pair-digits from the least significant position
        for _ in 0..a.order {
            let pair = rest % big;
            rest /= big;
            ia += (pair / m) * sa;
            ib += (pair % m) * sb;
            sa *= a.dim;
            sb *= m;
        }
        *slot = a.entries[ia] * b.entries[ib];
    }
    Ok(out)
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}
