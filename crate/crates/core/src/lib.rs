//! Spectral radii of adjacency and signless-Laplacian tensors of uniform
//! hypergraphs, degree-based lower bounds on them, and the blow-up
//! construction that relates a hypergraph to an r-partite one.
//!
//! ```
//! use hyperspec::hypergraph::{generate, Family};
//! use hyperspec::spectral::{spectral_radius, SolverConfig, SpectralKind};
//! use hyperspec::bounds::degree_power_mean_bound;
//!
//! let h = generate(Family::LoosePath { r: 3, len: 2 }).unwrap();
//! let pair = spectral_radius(&h, SpectralKind::Adjacency, &SolverConfig::default()).unwrap();
//! assert!((pair.lambda - 2f64.cbrt()).abs() < 1e-8);
//! assert!(pair.lambda > degree_power_mean_bound(&h));
//! ```

pub mod blowup;
pub mod bounds;
pub mod error;
pub mod hypergraph;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use hypergraph::UniformHypergraph;
