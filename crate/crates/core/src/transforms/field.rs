use crate::error::{Error, Result};
use crate::quadrature::{pairwise_sum_c, QuadratureRule, TensorRule};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// Generating evaluator behind a sampled field.
pub trait FieldEval: Send + Sync {
    /// Value at `z = (x₁..xₙ, y₁..yₙ)`.
    fn eval(&self, z: &[f64]) -> C64;

    /// Values at several points; implementations may share work between
    /// points with equal `y`.
    fn eval_many(&self, zs: &[Vec<f64>]) -> Vec<C64> {
        zs.iter().map(|z| self.eval(z)).collect()
    }

    /// `∫_{S^{2n-1}} F(rω) dω` for a given sphere rule, when the evaluator
    /// has a faster way to form the same finite sum.
    fn sphere_sum(&self, _r: f64, _rule: &QuadratureRule) -> Option<C64> {
        None
    }
}

impl<F: Fn(&[f64]) -> C64 + Send + Sync> FieldEval for F {
    fn eval(&self, z: &[f64]) -> C64 {
        self(z)
    }
}

/// A complex function on ℂⁿ sampled on a tensor grid, together with the
/// evaluator that generated it.
#[derive(Clone)]
pub struct ComplexField {
    pub n: usize,
    pub grid: TensorRule,
    pub values: Vec<C64>,
    pub label: String,
    eval: Arc<dyn FieldEval>,
}

impl fmt::Debug for ComplexField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComplexField")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("per_axis", &self.grid.per_axis())
            .finish()
    }
}

/// JSON form of a field.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FieldRecord {
    pub dimension: usize,
    pub label: String,
    pub grid_meta: GridMeta,
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridMeta {
    pub kind: String,
    pub axes: Vec<String>,
    pub per_axis: usize,
    pub axis_nodes: Vec<f64>,
    pub axis_weights: Vec<f64>,
    pub order: String,
}

impl ComplexField {
    /// Field with precomputed grid values.
    pub fn from_parts(
        label: impl Into<String>,
        grid: TensorRule,
        values: Vec<C64>,
        eval: Arc<dyn FieldEval>,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Contract("field has non-finite samples".into()));
        }
        Ok(ComplexField {
            n: grid.n,
            grid,
            values,
            label: label.into(),
            eval,
        })
    }

    /// Samples `eval` at every grid node.
    pub fn sample(
        label: impl Into<String>,
        grid: TensorRule,
        eval: Arc<dyn FieldEval>,
    ) -> Result<Self> {
        let d = grid.real_dim();
        let values: Vec<C64> = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let mut z = vec![0.0; d];
                grid.node(i, &mut z);
                eval.eval(&z)
            })
            .collect();
        Self::from_parts(label, grid, values, eval)
    }

    pub fn evaluator(&self) -> &Arc<dyn FieldEval> {
        &self.eval
    }

    /// Evaluates the generating function off-grid.
    pub fn eval(&self, z: &[f64]) -> C64 {
        self.eval.eval(z)
    }

    /// `Σ wᵢ F(zᵢ) q(zᵢ)` over the grid, in fixed block order.
    pub fn integrate_with(&self, q: impl Fn(&[f64]) -> C64 + Sync) -> C64 {
        let d = self.grid.real_dim();
        let blocks: Vec<C64> = (0..self.values.len())
            .collect::<Vec<_>>()
            .par_chunks(4096)
            .map(|idx| {
                let mut z = vec![0.0; d];
                let mut acc = C64::new(0.0, 0.0);
                for &i in idx {
                    let w = self.grid.node(i, &mut z);
                    acc += self.values[i] * q(&z) * w;
                }
                acc
            })
            .collect();
        pairwise_sum_c(&blocks)
    }

    /// Grid supremum of `|F(z)| e^{c|z|²}`.
    pub fn weighted_sup(&self, c: f64) -> f64 {
        let d = self.grid.real_dim();
        let mut z = vec![0.0; d];
        let mut sup = 0.0f64;
        for (i, v) in self.values.iter().enumerate() {
            self.grid.node(i, &mut z);
            let r2: f64 = z.iter().map(|t| t * t).sum();
            sup = sup.max(v.norm() * (c * r2).exp());
        }
        sup
    }

    pub fn to_record(&self) -> FieldRecord {
        let names: Vec<String> = (1..=self.n)
            .map(|j| format!("x{j}"))
            .chain((1..=self.n).map(|j| format!("y{j}")))
            .collect();
        FieldRecord {
            dimension: self.n,
            label: self.label.clone(),
            grid_meta: GridMeta {
                kind: self.grid.axis.kind.name().to_string(),
                axes: names,
                per_axis: self.grid.per_axis(),
                axis_nodes: self.grid.axis.nodes.clone(),
                axis_weights: self.grid.axis.weights.clone(),
                order: "row-major, last axis fastest".into(),
            },
            values: self.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_record())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::tensor_rule_hermite;
    use std::f64::consts::PI;

    #[test]
    fn sample_and_integrate() {
        let grid = tensor_rule_hermite(1, 24, 0.25).unwrap();
        let f = ComplexField::sample(
            "gauss",
            grid,
            Arc::new(|z: &[f64]| C64::new((-(z[0] * z[0] + z[1] * z[1]) / 4.0).exp(), 0.0)),
        )
        .unwrap();
        let v = f.integrate_with(|_| C64::new(1.0, 0.0));
        assert!((v.re - 4.0 * PI).abs() < 1e-12);
        let rec = f.to_record();
        assert_eq!(rec.values.len(), 24 * 24);
        assert_eq!(rec.grid_meta.axes, vec!["x1", "y1"]);
        assert!(f.weighted_sup(0.25) <= 1.0 + 1e-12);
    }
}
