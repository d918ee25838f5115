//! The r-fold blow-up H̃ on `V(H) × [r]` and numerical checks of the
//! identities relating it to H.
//!
//! Every base edge `{i₁,…,i_r}` is paired with every permutation
//! `(j₁,…,j_r)` of the labels, giving the edge `{(i₁,j₁),…,(i_r,j_r)}`.
//! Vertex `(i, j)` is stored at flat index `i·r + j` (0-based), the
//! lexicographic order on pairs.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{certificate_vector, degree_power_mean_bound, optimal_weights};
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::spectral::{power_iterate, spectral_radius, SolverConfig, SpectralKind};
use crate::tensor::{
    b_tensor, direct_product, eigen_residual, kron_vector, rayleigh, relative_max_diff, DenseCap,
    DenseTensor, KroneckerSum, SparseTensor, TensorOperator,
};

/// Relative max-norm agreement required of apply-equivalence checks.
pub const APPLY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupCaps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for BlowupCaps {
    fn default() -> Self {
        Self {
            max_vertices: 20_000,
            max_edges: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupHypergraph {
    pub base: UniformHypergraph,
    pub tilde: UniformHypergraph,
}

impl BlowupHypergraph {
    /// Flat 0-based index of pair `(i, j)`, both 0-based.
    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        i * self.base.r() + j
    }

    /// `[i, j, flat]` triples, all 1-based.
    pub fn vertex_map(&self) -> Vec<[usize; 3]> {
        let r = self.base.r();
        (0..self.base.n())
            .flat_map(|i| (0..r).map(move |j| [i + 1, j + 1, i * r + j + 1]))
            .collect()
    }
}

fn factorial_u128(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, v| acc.saturating_mul(v))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

pub fn blowup(h: &UniformHypergraph, caps: &BlowupCaps) -> Result<BlowupHypergraph> {
    let r = h.r();
    let vertices = r.saturating_mul(h.n());
    if vertices > caps.max_vertices {
        return Err(Error::Capacity(format!(
            "blow-up has {vertices} vertices, cap is {}",
            caps.max_vertices
        )));
    }
    let edge_count = factorial_u128(r).saturating_mul(h.edge_count() as u128);
    if edge_count > caps.max_edges as u128 {
        return Err(Error::Capacity(format!(
            "blow-up has {edge_count} edges, cap is {}",
            caps.max_edges
        )));
    }
    let mut edges = Vec::with_capacity(edge_count as usize);
    for edge in h.edges() {
        for labels in (0..r).permutations(r) {
            edges.push(edge.iter().zip(&labels).map(|(&i, &j)| i * r + j).collect());
        }
    }
    let tilde = UniformHypergraph::new(vertices, r, edges)?;
    debug_assert_eq!(tilde.edge_count() as u128, edge_count);
    Ok(BlowupHypergraph {
        base: h.clone(),
        tilde,
    })
}

/// Outcome of comparing two applies on random vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplyCheck {
    pub trials: usize,
    pub max_relative_error: f64,
    pub passed: bool,
    /// First vector on which the two sides disagreed.
    pub witness: Option<Vec<f64>>,
}

fn compare_applies(
    dim: usize,
    trials: usize,
    seed: u64,
    lhs: impl Fn(&[f64]) -> Result<Vec<f64>>,
    rhs: impl Fn(&[f64]) -> Result<Vec<f64>>,
) -> Result<ApplyCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut witness = None;
    for _ in 0..trials {
        let w: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
        let err = relative_max_diff(&lhs(&w)?, &rhs(&w)?);
        worst = worst.max(err);
        if (err.is_nan() || err > APPLY_TOLERANCE) && witness.is_none() {
            witness = Some(w);
        }
    }
    Ok(ApplyCheck {
        trials,
        max_relative_error: worst,
        passed: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductIdentityReport {
    pub apply: ApplyCheck,
    /// Entrywise comparison of A(H̃) and A(H) ⊗ B, when both fit the dense cap.
    pub entrywise: Option<bool>,
    pub passed: bool,
}

/// A(H̃) = A(H) ⊗ B, checked on the blow-up of `h`.
pub fn check_product_identity(
    h: &UniformHypergraph,
    trials: usize,
    seed: u64,
) -> Result<ProductIdentityReport> {
    let b = blowup(h, &BlowupCaps::default())?;
    check_product_identity_against(h, &b.tilde, trials, seed, &DenseCap::default())
}

/// A(`tilde`) = A(H) ⊗ B for an arbitrary candidate `tilde`.
pub fn check_product_identity_against(
    h: &UniformHypergraph,
    tilde: &UniformHypergraph,
    trials: usize,
    seed: u64,
    dense_cap: &DenseCap,
) -> Result<ProductIdentityReport> {
    let r = h.r();
    if tilde.n() != r * h.n() || tilde.r() != r {
        return Err(Error::DimensionMismatch {
            expected: r * h.n(),
            actual: tilde.n(),
        });
    }
    let product = KroneckerSum::new().term(
        1.0,
        SparseTensor::adjacency(h),
        SparseTensor::distinct_indices(r),
    )?;
    let direct = TensorOperator::adjacency(tilde);
    let apply = compare_applies(
        tilde.n(),
        trials,
        seed,
        |w| direct.apply(w),
        |w| product.apply(w),
    )?;

    let entrywise = if dense_cap.admits(r, tilde.n()) {
        let lhs = DenseTensor::adjacency(tilde, dense_cap)?;
        let rhs = direct_product(
            &DenseTensor::adjacency(h, dense_cap)?,
            &b_tensor(r)?,
            dense_cap,
        )?;
        Some(
            lhs.entries()
                .iter()
                .zip(rhs.entries())
                .all(|(x, y)| (x - y).abs() <= 1e-12),
        )
    } else {
        None
    };
    let passed = apply.passed && entrywise != Some(false);
    Ok(ProductIdentityReport {
        apply,
        entrywise,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub rho_base: f64,
    pub rho_tilde: f64,
    /// `(r−1)!`
    pub factor: f64,
    pub difference: f64,
    pub tolerance: f64,
    /// Residual of `(u ⊗ e)` on the blow-up at `(r−1)!·ρ_base`.
    pub eigenvector_residual: f64,
    pub passed: bool,
}

fn scaling_report(
    base: &TensorOperator<'_>,
    tilde: &TensorOperator<'_>,
    kind: SpectralKind,
    cfg: &SolverConfig,
) -> Result<ScalingReport> {
    let h = base.source_hypergraph().expect("hypergraph operator");
    let t = tilde.source_hypergraph().expect("hypergraph operator");
    let r = h.r();
    let factor = factorial(r - 1);
    let pair = spectral_radius(h, kind, cfg)?;
    let pair_tilde = spectral_radius(t, kind, cfg)?;
    let difference = (pair_tilde.lambda - factor * pair.lambda).abs();
    let tolerance = cfg.tolerance * (factor + 1.0);
    let lifted = kron_vector(&pair.vector, &vec![1.0; r]);
    let eigenvector_residual = eigen_residual(tilde, factor * pair.lambda, &lifted)?;
    let passed = difference <= tolerance && eigenvector_residual <= 10.0 * factor * cfg.tolerance;
    Ok(ScalingReport {
        rho_base: pair.lambda,
        rho_tilde: pair_tilde.lambda,
        factor,
        difference,
        tolerance,
        eigenvector_residual,
        passed,
    })
}

/// ρ(H̃) = (r−1)!·ρ(H) with both sides solved independently, plus the
/// Kronecker eigenvector `u ⊗ e` check.
pub fn check_spectral_scaling(h: &UniformHypergraph, cfg: &SolverConfig) -> Result<ScalingReport> {
    let b = blowup(h, &BlowupCaps::default())?;
    scaling_report(
        &TensorOperator::adjacency(h),
        &TensorOperator::adjacency(&b.tilde),
        SpectralKind::Adjacency,
        cfg,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QIdentityReport {
    /// Q(H̃) against (r−1)!(D(H) ⊗ I_r) + A(H) ⊗ B.
    pub apply: ApplyCheck,
    pub scaling: ScalingReport,
    pub passed: bool,
}

pub fn check_q_identities(
    h: &UniformHypergraph,
    cfg: &SolverConfig,
    trials: usize,
    seed: u64,
) -> Result<QIdentityReport> {
    let r = h.r();
    let b = blowup(h, &BlowupCaps::default())?;
    let rhs = KroneckerSum::new()
        .term(
            factorial(r - 1),
            SparseTensor::degree_diagonal(h),
            SparseTensor::unit(r, r),
        )?
        .term(
            1.0,
            SparseTensor::adjacency(h),
            SparseTensor::distinct_indices(r),
        )?;
    let q_tilde = TensorOperator::signless_laplacian(&b.tilde);
    let apply = compare_applies(
        b.tilde.n(),
        trials,
        seed,
        |w| q_tilde.apply(w),
        |w| rhs.apply(w),
    )?;
    let scaling = scaling_report(
        &TensorOperator::signless_laplacian(h),
        &q_tilde,
        SpectralKind::SignlessLaplacian,
        cfg,
    )?;
    let passed = apply.passed && scaling.passed;
    Ok(QIdentityReport {
        apply,
        scaling,
        passed,
    })
}

/// Whether the blow-up is connected. For r ≥ 3 this matches H itself.
pub fn check_blowup_connectivity(h: &UniformHypergraph) -> Result<bool> {
    Ok(blowup(h, &BlowupCaps::default())?.tilde.is_connected())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// `(r−1)!` times the power-mean bound.
    pub target: f64,
    /// Rayleigh quotient of A(H̃) at the certificate vector.
    pub adjacency_value: f64,
    /// Rayleigh quotient of Q(H̃) at the certificate vector.
    pub signless_value: f64,
    pub passed: bool,
}

/// Evaluates the certificate vector built from the optimal weights on
/// A(H̃) and Q(H̃).
pub fn check_certificate_chain(
    h: &UniformHypergraph,
    caps: &BlowupCaps,
) -> Result<CertificateReport> {
    let b = blowup(h, caps)?;
    let x = certificate_vector(h, &optimal_weights(h)?)?;
    let target = factorial(h.r() - 1) * degree_power_mean_bound(h);
    let adjacency_value = rayleigh(&TensorOperator::adjacency(&b.tilde), &x)?;
    let signless_value = rayleigh(&TensorOperator::signless_laplacian(&b.tilde), &x)?;
    let passed = (adjacency_value - target).abs() <= 1e-8 && signless_value >= 2.0 * target - 1e-8;
    Ok(CertificateReport {
        target,
        adjacency_value,
        signless_value,
        passed,
    })
}

/// All blow-up checks for one hypergraph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub base_connected: bool,
    pub tilde_connected: bool,
    /// Connectivity is preserved; only asserted for r ≥ 3.
    pub connectivity_passed: Option<bool>,
    pub tilde_vertices: usize,
    pub tilde_edges: usize,
    /// Edge count is r!·|E| and every (i, j) has degree (r−1)!·d_i.
    pub degree_law_passed: bool,
    /// ρ(B) from dense power iteration, when B fits the dense cap.
    pub rho_b: Option<f64>,
    pub rho_b_passed: Option<bool>,
    pub product: ProductIdentityReport,
    pub scaling: ScalingReport,
    pub q: QIdentityReport,
    /// Absent for edgeless hypergraphs.
    pub certificate: Option<CertificateReport>,
}

impl ClaimsReport {
    pub fn passed(&self) -> bool {
        self.connectivity_passed != Some(false)
            && self.degree_law_passed
            && self.rho_b_passed != Some(false)
            && self.product.passed
            && self.scaling.passed
            && self.q.passed
            && self.certificate.as_ref().is_none_or(|c| c.passed)
    }
}

pub fn verify_claims(
    h: &UniformHypergraph,
    cfg: &SolverConfig,
    trials: usize,
    seed: u64,
    caps: &BlowupCaps,
    dense_cap: &DenseCap,
) -> Result<ClaimsReport> {
    let r = h.r();
    let b = blowup(h, caps)?;
    let base_connected = h.is_connected();
    let tilde_connected = b.tilde.is_connected();

    let factor = factorial_u128(r - 1) as usize;
    let degrees = h.degrees();
    let tilde_degrees = b.tilde.degrees();
    let degree_law_passed = b.tilde.edge_count() == factor * r * h.edge_count()
        && (0..h.n())
            .all(|i| (0..r).all(|j| tilde_degrees[b.flat_index(i, j)] == factor * degrees[i]));

    let (rho_b, rho_b_passed) = if dense_cap.admits(r, r) {
        let bt = b_tensor(r)?;
        let pair = power_iterate(&TensorOperator::dense(&bt), cfg)?;
        let ok = (pair.lambda - factor as f64).abs() <= cfg.tolerance;
        (Some(pair.lambda), Some(ok))
    } else {
        (None, None)
    };

    let product = check_product_identity_against(h, &b.tilde, trials, seed, dense_cap)?;
    let scaling = scaling_report(
        &TensorOperator::adjacency(h),
        &TensorOperator::adjacency(&b.tilde),
        SpectralKind::Adjacency,
        cfg,
    )?;
    let q = check_q_identities(h, cfg, trials, seed.wrapping_add(1))?;
    let certificate = if h.edge_count() > 0 {
        Some(check_certificate_chain(h, caps)?)
    } else {
        None
    };

    Ok(ClaimsReport {
        base_connected,
        tilde_connected,
        connectivity_passed: (r >= 3).then_some(base_connected == tilde_connected),
        tilde_vertices: b.tilde.n(),
        tilde_edges: b.tilde.edge_count(),
        degree_law_passed,
        rho_b,
        rho_b_passed,
        product,
        scaling,
        q,
        certificate,
    })
}
