//! Maximum-likelihood estimation laboratory.
//!
//! The crate is organized around seven pieces:
//!
//! - [`families`] — parametric families (log-density, sampler, score) and
//!   the one-parameter multinomial curves used throughout.
//! - [`estimation`] — the safeguarded Newton MLE solver and the competing
//!   estimators it is compared against (Hodges shrinkage, moments,
//!   minimum chi-square, the paired-array variance MLE, constrained
//!   normal-mixture fits).
//! - [`information`] — expected/observed Fisher information, the exact
//!   conditional-variance decomposition on enumerable sample spaces, and
//!   the variance lower-bound report.
//! - [`multinomial_efficiency`] — degree-zero estimating functions on
//!   multinomial counts: Euler residuals, consistency checks, delta-method
//!   variances and the efficient gradient direction.
//! - [`infogeom`] — the information metric on parameter space, Gaussian
//!   curvature, geodesics, geodesic circles.
//! - [`montecarlo`] — a seeded, deterministic replication harness that
//!   turns asymptotic claims into finite-sample checks.
//! - [`numerics`] — adaptive quadrature, finite differences and seed
//!   derivation shared by everything above.

pub mod estimation;
pub mod families;
pub mod infogeom;
pub mod information;
pub mod montecarlo;
pub mod multinomial_efficiency;
pub mod numerics;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter vector lies outside the family's open domain.
    #[error("parameter {parameter:?} outside the domain of `{family}`")]
    ParameterOutsideDomain { family: String, parameter: Vec<f64> },

    /// An observation lies outside the family's observation space.
    #[error("observation {value} outside the observation space of `{family}`")]
    ObservationOutsideSupport { family: String, value: f64 },

    /// A caller-supplied argument is structurally invalid.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An optimizer failed to locate an interior stationary point.
    #[error("solver did not converge: {reason} (best score norm {score_norm:.3e})")]
    NonConvergence { reason: String, score_norm: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: achieved error estimate {achieved:.3e}, requested {requested:.3e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    /// Exact enumeration was asked for a sample space that is too large.
    #[error("sample space of {size} outcomes exceeds the enumeration guard of {limit}")]
    SampleSpaceTooLarge { size: u128, limit: u128 },

    /// A cell probability or metric degenerated to a singular value.
    #[error("singular value encountered: {0}")]
    Singular(String),

    /// A geodesic ray left the parameter domain.
    #[error("geodesic ray {ray} left the parameter domain near {point:?}")]
    RayLeftDomain { ray: usize, point: Vec<f64> },

    /// Boundary-value geodesic search stalled.
    #[error("geodesic shooting did not converge: best endpoint residual {residual:.3e}, tolerance {tolerance:.3e}")]
    ShootingNonConvergence { residual: f64, tolerance: f64 },

    /// An unknown registry name.
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
