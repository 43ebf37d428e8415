//! The MLE solver and every competing estimator it is compared against.

pub mod hodges;
pub mod min_chisquare;
pub mod mixture;
pub mod moments;
pub mod neyman_scott;
pub mod solver;

pub use hodges::{hodges_estimate, hodges_rule};
pub use min_chisquare::min_chisquare_fit;
pub use mixture::{constrained_mixture_mle, mixture_profile_supremum};
pub use moments::{method_of_moments, variance_mle_from_data, variance_mle_from_statistic};
pub use neyman_scott::{neyman_scott_mle, NeymanScottFit};
pub use solver::{mle_fit, FitResult, SolverConfig};
