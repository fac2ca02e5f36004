//! Deterministic quadrature rules: Gauss–Hermite, mapped Gauss–Legendre,
//! radial half-line rules, circle and 3-sphere product rules, and tensor
//! grids over ℂⁿ ≅ ℝ²ⁿ.

mod cache;
mod gauss;
mod rule;
mod sphere;
mod sum;
mod tensor;

pub use cache::{RuleCache, RuleRecord, RuleSpec};
pub use gauss::{
    gauss_gegenbauer_half, gauss_hermite, gauss_hermite_scaled, mapped_legendre, radial_rule,
    tridiagonal_eigenvalues,
};
pub use rule::{ConvergenceReport, QuadratureRule, RuleKind, RuleMeta};
pub use sphere::{sphere_rule, sphere_rule_s3};
pub use sum::{pairwise_sum, pairwise_sum_c};
pub use tensor::{tensor_rule, tensor_rule_hermite, TensorRule, TENSOR_NODE_BUDGET};

/// Default node count for 1-D rules.
pub const DEFAULT_N: usize = 200;
/// Default point count of the circle rule.
pub const DEFAULT_S1: usize = 256;
/// Default angular resolution of the 3-sphere rule (θ₁, θ₂ points; η uses half).
pub const DEFAULT_S3: usize = 64;

/// Truncation radius at which an envelope `e^{-c s²}` falls below `10^{-digits}`.
pub fn truncation_radius(c: f64, digits: f64) -> f64 {
    (digits * std::f64::consts::LN_10 / c).sqrt()
}
