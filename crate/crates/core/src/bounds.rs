//! Degree-based lower bounds on ρ(A(H)) and ρ(Q(H)), the Hölder-optimal
//! weights behind them, and equality diagnosis.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{find_odd_coloring, OddColoring, UniformHypergraph, DEFAULT_COLORING_CAP};
use crate::spectral::{spectral_radius, EigenPair, SolverConfig, SpectralKind};

/// A report declares equality when `|gap| <= EQUALITY_FACTOR * tolerance`.
pub const EQUALITY_FACTOR: f64 = 100.0;

/// Slack on top of the solver tolerance before a negative gap counts as a violation.
pub const VIOLATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// `((1/n) Σ d_i^{r/(r−1)})^{(r−1)/r}` against ρ(A).
    Adjacency,
    /// Twice the power mean against ρ(Q).
    SignlessLaplacian,
    /// `(Σ d_i)/n` against ρ(A).
    AverageDegree,
    /// `((1/n) Σ d_i²)^{1/2}` against ρ(A), graphs only.
    QuadraticMeanR2,
    /// Twice the power mean against ρ(L) = ρ(Q), odd-colorable only.
    LaplacianOddColorable,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Adjacency => "adjacency",
            BoundKind::SignlessLaplacian => "signless-laplacian",
            BoundKind::AverageDegree => "average-degree",
            BoundKind::QuadraticMeanR2 => "quadratic-mean-r2",
            BoundKind::LaplacianOddColorable => "laplacian-odd-colorable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub bound: f64,
    pub rho: f64,
    pub gap: f64,
    pub regular: bool,
    pub equality: bool,
    pub connected: bool,
    /// `equality == regular`, or `None` where that characterization does not apply.
    pub consistent: Option<bool>,
    /// False when the solver stopped before certifying `rho`.
    pub converged: bool,
}

impl BoundReport {
    pub fn is_violated(&self, tolerance: f64) -> bool {
        self.gap < -(tolerance + VIOLATION_SLACK)
    }
}

/// Hölder weights `a_i`, normalized so `Σ a_i^r = n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(a: Vec<f64>) -> Self {
        Self(a)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub fn degree_power_mean_bound(h: &UniformHypergraph) -> f64 {
    let r = h.r() as f64;
    let exponent = r / (r - 1.0);
    let sum: f64 = h.degrees().iter().map(|&d| (d as f64).powf(exponent)).sum();
    (sum / h.n() as f64).powf(1.0 / exponent)
}

pub fn q_degree_bound(h: &UniformHypergraph) -> f64 {
    2.0 * degree_power_mean_bound(h)
}

pub fn average_degree_bound(h: &UniformHypergraph) -> f64 {
    h.degrees().sum() as f64 / h.n() as f64
}

/// Square-root mean of squared degrees, the graph case of the power mean.
pub fn quadratic_mean_bound(h: &UniformHypergraph) -> f64 {
    let sum: f64 = h.degrees().iter().map(|&d| (d * d) as f64).sum();
    (sum / h.n() as f64).sqrt()
}

/// `a_i = n^{1/r} d_i^{1/(r−1)} / (Σ_j d_j^{r/(r−1)})^{1/r}`, the weights for
/// which Hölder's inequality on `Σ a_i d_i` is tight.
pub fn optimal_weights(h: &UniformHypergraph) -> Result<WeightVector> {
    if h.edge_count() == 0 {
        return Err(Error::Degenerate(
            "optimal weights need at least one edge".into(),
        ));
    }
    let r = h.r() as f64;
    let d = h.degrees().to_f64();
    let sum: f64 = d.iter().map(|&di| di.powf(r / (r - 1.0))).sum();
    let scale = (h.n() as f64).powf(1.0 / r) / sum.powf(1.0 / r);
    Ok(WeightVector(
        d.iter()
            .map(|&di| scale * di.powf(1.0 / (r - 1.0)))
            .collect(),
    ))
}

/// Vector on the blow-up's `r·n` vertices: `a_i/(rn)^{1/r}` at `(i, 1)` and
/// `1/(rn)^{1/r}` at every `(i, j)` with `j ≥ 2`, in lexicographic layout.
pub fn certificate_vector(h: &UniformHypergraph, a: &WeightVector) -> Result<Vec<f64>> {
    if a.0.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            actual: a.0.len(),
        });
    }
    let r = h.r();
    let base = ((r * h.n()) as f64).powf(-1.0 / r as f64);
    let mut x = vec![base; r * h.n()];
    for (i, &ai) in a.0.iter().enumerate() {
        x[i * r] = ai * base;
    }
    Ok(x)
}

/// Residual of `L(H) x' = λ x'^[r−1]` for `x'_v = ζ^{φ(v)} x_v`, `ζ = e^{2πi/r}`.
///
/// Multiplying row `i` by `ζ^{φ(i)}` leaves
/// `(d_i − λ) x_i^{r−1} − Σ_{e∋i} ζ^{S_e} Π_{v∈e, v≠i} x_v` with `S_e` the
/// label sum of `e`, so only edge phases are needed. Returned relative to
/// `max x_i^{r−1}` like the real residual.
pub fn laplacian_rotation_residual(
    h: &UniformHypergraph,
    coloring: &OddColoring,
    lambda: f64,
    x: &[f64],
) -> Result<f64> {
    if x.len() != h.n() || coloring.phi.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            actual: x.len().min(coloring.phi.len()),
        });
    }
    let r = h.r();
    let p = (r - 1) as i32;
    let degrees = h.degrees();
    let mut re: Vec<f64> = (0..h.n())
        .map(|i| (degrees[i] as f64 - lambda) * x[i].powi(p))
        .collect();
    let mut im = vec![0.0; h.n()];
    for e in h.edges() {
        let phase = e.iter().map(|&v| coloring.phi[v]).sum::<usize>() % r;
        let angle = TAU * phase as f64 / r as f64;
        let (s, c) = angle.sin_cos();
        for &i in e {
            let prod: f64 = e.iter().filter(|&&v| v != i).map(|&v| x[v]).product();
            re[i] -= c * prod;
            im[i] -= s * prod;
        }
    }
    let num = re
        .iter()
        .zip(&im)
        .map(|(a, b)| a.hypot(*b))
        .fold(0.0, f64::max);
    let den = x.iter().map(|v| v.abs().powi(p)).fold(0.0, f64::max);
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundVerification {
    pub n: usize,
    pub r: usize,
    pub edges: usize,
    pub connected: bool,
    pub regular: bool,
    /// Power-mean bound ≥ average-degree bound.
    pub power_mean_dominates: bool,
    pub reports: Vec<BoundReport>,
}

impl BoundVerification {
    pub fn report(&self, kind: BoundKind) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.kind == kind)
    }

    pub fn any_violated(&self, tolerance: f64) -> bool {
        self.reports.iter().any(|r| r.is_violated(tolerance))
    }

    pub fn all_consistent(&self) -> bool {
        self.power_mean_dominates && self.reports.iter().all(|r| r.consistent != Some(false))
    }

    pub fn all_converged(&self) -> bool {
        self.reports.iter().all(|r| r.converged)
    }
}

fn solve_or_last(
    h: &UniformHypergraph,
    kind: SpectralKind,
    cfg: &SolverConfig,
) -> Result<EigenPair> {
    match spectral_radius(h, kind, cfg) {
        Err(Error::NotConverged(pair)) => Ok(*pair),
        other => other,
    }
}

/// Computes ρ(A) and ρ(Q) and scores every applicable bound against them.
///
/// The quadratic-mean bound is reported only for graphs (r = 2). The Laplacian
/// bound is reported for connected odd-colorable hypergraphs within the
/// coloring cap, with ρ(L) taken as ρ(Q) once the rotated Perron vector of Q
/// passes as an L-eigenvector.
pub fn verify_bounds(h: &UniformHypergraph, cfg: &SolverConfig) -> Result<BoundVerification> {
    let connected = h.is_connected();
    let regular = h.is_regular();
    let degenerate = h.edge_count() == 0;
    let threshold = EQUALITY_FACTOR * cfg.tolerance;

    let adjacency = solve_or_last(h, SpectralKind::Adjacency, cfg)?;
    let signless = solve_or_last(h, SpectralKind::SignlessLaplacian, cfg)?;

    let power_mean = degree_power_mean_bound(h);
    let average = average_degree_bound(h);

    let report = |kind: BoundKind, bound: f64, pair: &EigenPair, characterized: bool| {
        let gap = pair.lambda - bound;
        let equality = gap.abs() <= threshold;
        let consistent = (connected && !degenerate && characterized).then_some(equality == regular);
        BoundReport {
            kind,
            bound,
            rho: pair.lambda,
            gap,
            regular,
            equality,
            connected,
            consistent,
            converged: pair.converged,
        }
    };

    // for graphs the equality case also admits semiregular bipartite graphs
    let graph = h.r() == 2;
    let mut reports = vec![
        report(BoundKind::Adjacency, power_mean, &adjacency, !graph),
        report(
            BoundKind::SignlessLaplacian,
            2.0 * power_mean,
            &signless,
            !graph,
        ),
        report(BoundKind::AverageDegree, average, &adjacency, true),
    ];
    if graph {
        reports.push(report(
            BoundKind::QuadraticMeanR2,
            quadratic_mean_bound(h),
            &adjacency,
            false,
        ));
    }
    if h.r().is_multiple_of(2) && connected && !degenerate && h.n() <= DEFAULT_COLORING_CAP {
        if let Some(coloring) = find_odd_coloring(h, DEFAULT_COLORING_CAP)? {
            let residual =
                laplacian_rotation_residual(h, &coloring, signless.lambda, &signless.vector)?;
            let mut rep = report(
                BoundKind::LaplacianOddColorable,
                2.0 * power_mean,
                &signless,
                !graph,
            );
            rep.converged &= residual <= 10.0 * cfg.tolerance;
            reports.push(rep);
        }
    }

    Ok(BoundVerification {
        n: h.n(),
        r: h.r(),
        edges: h.edge_count(),
        connected,
        regular,
        power_mean_dominates: power_mean >= average - 1e-12 * average.max(1.0),
        reports,
    })
}
