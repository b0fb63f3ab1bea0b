//! Numerical laboratory for the exponentially weighted Ky Fan inequality.
//!
//! The crate computes Gaussian (weighted) differential entropies, the
//! sufficient-condition set 𝕊 of the weighted inequality, the improvement
//! function Λ(t) = Σ(t) − Σ(0) with its analytic derivatives, and checks every
//! closed form against an independent Gauss–Hermite quadrature oracle.
//!
//! Module map:
//!
//! - [`linalg`]: tiny SPD matrices with cached Cholesky factors.
//! - [`entropy`]: Gaussian densities, Shannon and weighted entropies, the
//!   general condition report for an arbitrary weight.
//! - [`quadrature`]: tensor-product Gauss–Hermite oracle with convergence
//!   certificates.
//! - [`ekfi`]: Σ, Λ, 𝕊 membership, gradient, Hessian, origin classification
//!   and the one-dimensional specialization.
//! - [`landscape`]: grid scans, stationary-point search, scenario summaries.
//! - [`config`], [`commands`], [`svg`]: the `wkfi` tool's inputs and outputs.

pub mod commands;
pub mod config;
pub mod ekfi;
pub mod entropy;
pub mod error;
pub mod landscape;
pub mod linalg;
pub mod quadrature;
pub mod sampling;
pub mod svg;

pub use ekfi::{F2Constant, OriginReport, RegionVerdict};
pub use entropy::{PhiVariant, Scenario, WeightFunctional};
pub use error::{Error, Result};
pub use landscape::{GridSpec, LandscapeSample, ScenarioSummary};
pub use linalg::{convex_combine, Matrix, SpdMatrix, Vector};

/// Version string embedded in every JSON output.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
