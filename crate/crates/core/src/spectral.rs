//! Spectral radius and Perron vector of nonnegative tensors.
//!
//! Shifted higher-order power method: with `y = T x + s·x^[r−1]` the ratios
//! `y_i / x_i^{r−1}` bracket `ρ(T) + s` from both sides at every step, and
//! the next iterate is `y^[1/(r−1)]` rescaled to unit r-norm. A positive
//! shift makes the iteration converge for weakly irreducible `T` even when
//! its diagonal is zero.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::tensor::{eigen_residual, p_norm, OperatorKind, TensorOperator};

/// Which hypergraph tensor to take the spectral radius of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectralKind {
    Adjacency,
    SignlessLaplacian,
}

impl SpectralKind {
    pub fn operator<'a>(&self, h: &'a UniformHypergraph) -> TensorOperator<'a> {
        match self {
            SpectralKind::Adjacency => TensorOperator::adjacency(h),
            SpectralKind::SignlessLaplacian => TensorOperator::signless_laplacian(h),
        }
    }
}

impl FromStr for SpectralKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" | "a" => Ok(SpectralKind::Adjacency),
            "q" | "signless-laplacian" => Ok(SpectralKind::SignlessLaplacian),
            other => Err(Error::Config(format!("unknown spectral kind `{other}`"))),
        }
    }
}

impl fmt::Display for SpectralKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectralKind::Adjacency => "adjacency",
            SpectralKind::SignlessLaplacian => "signless-laplacian",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Stop once the ratio bracket is at most this wide.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Diagonal shift. `None` picks 1 for operators with a zero diagonal
    /// (adjacency, dense) and 0 otherwise.
    pub shift: Option<f64>,
    /// Seeds the random start vectors used by restarts.
    pub seed: u64,
    /// Extra attempts from random positive starts after a non-converged run.
    pub restarts: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 100_000,
            shift: None,
            seed: 0,
            restarts: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(s) = self.shift {
            if !s.is_finite() || s < 0.0 {
                return Err(Error::Config(format!("shift must be nonnegative, got {s}")));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be positive".into()));
        }
        Ok(())
    }

    pub fn effective_shift(&self, kind: OperatorKind) -> f64 {
        self.shift.unwrap_or(match kind {
            OperatorKind::Adjacency | OperatorKind::Dense => 1.0,
            _ => 0.0,
        })
    }
}

/// Approximate Perron pair with its certified bracket.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda: f64,
    /// Nonnegative, unit r-norm.
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
}

/// JSON-facing subset of [`EigenPair`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverDiagnostics {
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl EigenPair {
    pub fn diagnostics(&self) -> SolverDiagnostics {
        SolverDiagnostics {
            lambda: self.lambda,
            lower: self.lower,
            upper: self.upper,
            residual: self.residual,
            iterations: self.iterations,
            converged: self.converged,
        }
    }
}

pub fn power_iterate(t: &TensorOperator<'_>, cfg: &SolverConfig) -> Result<EigenPair> {
    cfg.validate()?;
    if !t.is_nonnegative() {
        return Err(Error::NotNonnegative);
    }
    let n = t.dim();
    let start = normalized(vec![1.0; n], t.order());
    let mut attempt = iterate_from(t, cfg, start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.restarts {
        if attempt.converged {
            break;
        }
        let start = normalized(
            (0..n).map(|_| rng.random_range(0.5..1.5)).collect(),
            t.order(),
        );
        let next = iterate_from(t, cfg, start)?;
        attempt = Attempt {
            iterations: attempt.iterations + next.iterations,
            ..next
        };
    }
    let Attempt {
        x,
        lower,
        upper,
        iterations,
        converged,
    } = attempt;
    let shift = cfg.effective_shift(t.kind());
    let lambda = 0.5 * (lower + upper) - shift;
    let residual = eigen_residual(t, lambda, &x).unwrap_or(f64::INFINITY);
    let pair = EigenPair {
        lambda,
        vector: x,
        residual,
        iterations,
        lower: lower - shift,
        upper: upper - shift,
        converged,
    };
    if converged {
        Ok(pair)
    } else {
        Err(Error::NotConverged(Box::new(pair)))
    }
}

struct Attempt {
    x: Vec<f64>,
    lower: f64,
    upper: f64,
    iterations: usize,
    converged: bool,
}

fn normalized(mut x: Vec<f64>, r: usize) -> Vec<f64> {
    let norm = p_norm(&x, r);
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    x
}

/// Runs the bracketing iteration; bounds are for the shifted operator.
fn iterate_from(t: &TensorOperator<'_>, cfg: &SolverConfig, mut x: Vec<f64>) -> Result<Attempt> {
    let r = t.order();
    let p = (r - 1) as i32;
    let inv_p = 1.0 / (r - 1) as f64;
    let shift = cfg.effective_shift(t.kind());
    let mut y = vec![0.0; x.len()];
    let (mut lower, mut upper) = (f64::NAN, f64::NAN);
    for it in 1..=cfg.max_iterations {
        t.apply_into(&x, &mut y);
        lower = f64::INFINITY;
        upper = f64::NEG_INFINITY;
        for (yi, &xi) in y.iter_mut().zip(&x) {
            let xp = xi.powi(p);
            *yi += shift * xp;
            if xp > 0.0 {
                let ratio = *yi / xp;
                lower = lower.min(ratio);
                upper = upper.max(ratio);
            }
        }
        if !lower.is_finite() || !upper.is_finite() {
            return Err(Error::Degenerate(
                "iterate lost all positive entries".into(),
            ));
        }
        if upper - lower <= cfg.tolerance {
            return Ok(Attempt {
                x,
                lower,
                upper,
                iterations: it,
                converged: true,
            });
        }
        let next: Vec<f64> = y.iter().map(|&v| v.max(0.0).powf(inv_p)).collect();
        x = normalized(next, r);
    }
    Ok(Attempt {
        x,
        lower,
        upper,
        iterations: cfg.max_iterations,
        converged: false,
    })
}

/// ρ of A(H) or Q(H). Disconnected input is solved per component and the
/// largest radius wins (first component on ties); the winner's vector is
/// embedded with zeros elsewhere. Isolated vertices contribute 0.
pub fn spectral_radius(
    h: &UniformHypergraph,
    kind: SpectralKind,
    cfg: &SolverConfig,
) -> Result<EigenPair> {
    cfg.validate()?;
    if h.is_connected() && h.edge_count() > 0 {
        return power_iterate(&kind.operator(h), cfg);
    }

    let mut best: Option<(EigenPair, Vec<usize>)> = None;
    let (mut lower, mut upper, mut iterations) = (0.0f64, 0.0f64, 0);
    for component in h.components() {
        let pair = if component.graph.edge_count() == 0 {
            // a lone vertex: the zero tensor of dimension one
            EigenPair {
                lambda: 0.0,
                vector: vec![1.0],
                residual: 0.0,
                iterations: 0,
                lower: 0.0,
                upper: 0.0,
                converged: true,
            }
        } else {
            power_iterate(&kind.operator(&component.graph), cfg)?
        };
        lower = lower.max(pair.lower);
        upper = upper.max(pair.upper);
        iterations += pair.iterations;
        if best.as_ref().is_none_or(|(b, _)| pair.lambda > b.lambda) {
            best = Some((pair, component.vertices));
        }
    }
    let (winner, vertices) = best.expect("a hypergraph has at least one vertex");
    let mut vector = vec![0.0; h.n()];
    for (&v, &value) in vertices.iter().zip(&winner.vector) {
        vector[v] = value;
    }
    let residual = eigen_residual(&kind.operator(h), winner.lambda, &vector)?;
    Ok(EigenPair {
        lambda: winner.lambda,
        vector,
        residual,
        iterations,
        lower,
        upper,
        converged: true,
    })
}

/// True iff the vector is strictly positive and the pair's residual on the
/// given operator is within ten times `tolerance`.
pub fn perron_vector_check(
    h: &UniformHypergraph,
    kind: SpectralKind,
    pair: &EigenPair,
    tolerance: f64,
) -> bool {
    if pair.vector.len() != h.n() || pair.vector.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return false;
    }
    eigen_residual(&kind.operator(h), pair.lambda, &pair.vector)
        .is_ok_and(|res| res <= 10.0 * tolerance)
}
