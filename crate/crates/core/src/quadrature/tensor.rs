use super::gauss::{gauss_hermite_scaled, mapped_legendre};
use super::rule::{QuadratureRule, RuleKind, RuleMeta};
use super::sum::pairwise_sum;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest admissible tensor-grid node count.
pub const TENSOR_NODE_BUDGET: f64 = 1e8;

/// Tensor product of identical 1-D rules over the `2n` real axes of ℂⁿ,
/// ordered `(x₁..xₙ, y₁..yₙ)`. Nodes are generated on demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorRule {
    pub n: usize,
    pub axis: QuadratureRule,
}

impl TensorRule {
    pub fn kind(&self) -> RuleKind {
        RuleKind::Tensor
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n
    }

    pub fn per_axis(&self) -> usize {
        self.axis.len()
    }

    pub fn len(&self) -> usize {
        self.per_axis().pow(self.real_dim() as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `i` (last axis fastest) written into `out`; returns its weight.
    pub fn node(&self, mut i: usize, out: &mut [f64]) -> f64 {
        let p = self.per_axis();
        let d = self.real_dim();
        let mut w = 1.0;
        for a in (0..d).rev() {
            let j = i % p;
            i /= p;
            out[a] = self.axis.nodes[j];
            w *= self.axis.weights[j];
        }
        w
    }

    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let mut buf = vec![0.0; self.real_dim()];
        let terms: Vec<f64> = (0..self.len())
            .map(|i| {
                let w = self.node(i, &mut buf);
                w * f(&buf)
            })
            .collect();
        pairwise_sum(&terms)
    }

    /// Materialized rule (for small grids and serialization).
    pub fn to_rule(&self) -> QuadratureRule {
        let d = self.real_dim();
        let mut nodes = Vec::with_capacity(self.len() * d);
        let mut weights = Vec::with_capacity(self.len());
        let mut buf = vec![0.0; d];
        for i in 0..self.len() {
            weights.push(self.node(i, &mut buf));
            nodes.extend_from_slice(&buf);
        }
        QuadratureRule {
            kind: RuleKind::Tensor,
            dim: d,
            nodes,
            weights,
            meta: RuleMeta {
                order: self.per_axis(),
                ..self.axis.meta.clone()
            },
        }
    }
}

fn check_budget(n: usize, per_axis: usize) -> Result<()> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "tensor rules over C^n need n in {{1, 2}}, got {n}"
        )));
    }
    let count = (per_axis as f64).powi(2 * n as i32);
    if count > TENSOR_NODE_BUDGET {
        return Err(Error::Budget(format!(
            "tensor rule with {count:.3e} nodes exceeds {TENSOR_NODE_BUDGET:.0e}"
        )));
    }
    Ok(())
}

/// Mapped Gauss–Legendre tensor rule on `[-R, R]^{2n}`.
pub fn tensor_rule(n: usize, per_axis: usize, r: f64) -> Result<TensorRule> {
    check_budget(n, per_axis)?;
    let mut axis = mapped_legendre(per_axis, -r, r)?;
    axis.meta.radius = Some(r);
    Ok(TensorRule { n, axis })
}

/// Tensor rule built from Gauss–Hermite nodes adapted to `e^{-α x²}` per axis.
pub fn tensor_rule_hermite(n: usize, per_axis: usize, alpha: f64) -> Result<TensorRule> {
    check_budget(n, per_axis)?;
    Ok(TensorRule {
        n,
        axis: gauss_hermite_scaled(per_axis, alpha)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_integrals() {
        let t = tensor_rule(1, 64, 12.0).unwrap();
        let v = t.integrate(|z| (-(z[0] * z[0] + z[1] * z[1]) / 2.0).exp());
        assert!((v - 2.0 * PI).abs() < 1e-12);
        let t = tensor_rule(2, 48, 10.0).unwrap();
        let v = t.integrate(|z| (-z.iter().map(|a| a * a).sum::<f64>() / 2.0).exp());
        assert!((v - 4.0 * PI * PI).abs() < 1e-10);
        let t = tensor_rule_hermite(2, 12, 0.5).unwrap();
        let v = t.integrate(|z| (-z.iter().map(|a| a * a).sum::<f64>() / 2.0).exp());
        assert!((v - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn budget() {
        assert!(tensor_rule(2, 101, 1.0).is_err());
        assert!(tensor_rule(3, 4, 1.0).is_err());
        assert!(tensor_rule(2, 100, 1.0).is_ok());
    }

    #[test]
    fn materialize() {
        let t = tensor_rule(1, 3, 1.0).unwrap();
        let r = t.to_rule();
        assert_eq!(r.len(), 9);
        assert_eq!(r.dim, 2);
        assert!((r.total_weight() - 4.0).abs() < 1e-14);
    }
}
