//! Shared numeric kernels: adaptive quadrature, finite differences,
//! deterministic seed derivation and streaming moment accumulation.

pub mod finite_diff;
pub mod moments;
pub mod quadrature;
pub mod seed;

pub use finite_diff::{gradient, hessian_of, second_derivative, step_for};
pub use moments::MomentAccumulator;
pub use quadrature::{integrate, IntegrationRange, QuadResult};
pub use seed::mix_seed;
