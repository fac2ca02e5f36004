use super::sum::{pairwise_sum, pairwise_sum_c};
use crate::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    GaussHermite,
    MappedLegendre,
    Radial,
    SphereS1,
    SphereS3,
    Tensor,
}

impl RuleKind {
    pub fn name(self) -> &'static str {
        match self {
            RuleKind::GaussHermite => "gauss_hermite",
            RuleKind::MappedLegendre => "mapped_legendre",
            RuleKind::Radial => "radial",
            RuleKind::SphereS1 => "sphere_S1",
            RuleKind::SphereS3 => "sphere_S3",
            RuleKind::Tensor => "tensor",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RuleMeta {
    /// Number of nodes (per axis for tensor rules).
    pub order: usize,
    /// Interval `[a, b]` for interval rules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<(f64, f64)>,
    /// Truncation radius.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    /// Weight exponent δ of the radial measure `s^{2δ+1} ds`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Scale α of a Gaussian weight `e^{-α x²}`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// Angular resolution of sphere rules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Vec<usize>>,
}

/// Nodes and positive weights; `nodes` holds `dim` coordinates per node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: RuleKind,
    pub dim: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub meta: RuleMeta,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    /// Σ wᵢ f(xᵢ), summed pairwise in node order.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let terms: Vec<f64> = (0..self.len())
            .map(|i| self.weights[i] * f(self.node(i)))
            .collect();
        pairwise_sum(&terms)
    }

    pub fn integrate_c(&self, f: impl Fn(&[f64]) -> C64) -> C64 {
        let terms: Vec<C64> = (0..self.len())
            .map(|i| f(self.node(i)) * self.weights[i])
            .collect();
        pairwise_sum_c(&terms)
    }

    pub fn total_weight(&self) -> f64 {
        pairwise_sum(&self.weights)
    }
}

/// A value with its half-resolution companion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub value: C64,
    pub value_at_half_resolution: C64,
    pub est_rel_err: f64,
}

impl ConvergenceReport {
    pub fn new(value: C64, value_at_half_resolution: C64) -> Self {
        let est_rel_err = (value - value_at_half_resolution).norm() / value.norm().max(1e-300);
        ConvergenceReport {
            value,
            value_at_half_resolution,
            est_rel_err,
        }
    }

    pub fn real(value: f64, half: f64) -> Self {
        Self::new(C64::new(value, 0.0), C64::new(half, 0.0))
    }

    pub fn abs_err(&self) -> f64 {
        (self.value - self.value_at_half_resolution).norm()
    }
}
