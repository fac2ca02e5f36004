use super::field::ComplexField;
use crate::error::{Error, Result};
use crate::quadrature::{pairwise_sum_c, sphere_rule, QuadratureRule, DEFAULT_S1, DEFAULT_S3};
use crate::special::kernel_for;
use crate::C64;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// `∫_{S^{2n-1}} F(rω) dω` with the given sphere rule, evaluating the
/// generating function of `F` at the sphere points.
pub fn radialize_with(f: &ComplexField, r: f64, rule: &QuadratureRule) -> Result<C64> {
    if rule.dim != 2 * f.n {
        return Err(Error::DimensionMismatch {
            expected: 2 * f.n,
            got: rule.dim,
        });
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(crate::error::out_of_range("r", r, "[0, inf)"));
    }
    if let Some(v) = f.evaluator().sphere_sum(r, rule) {
        return Ok(v);
    }
    let zs: Vec<Vec<f64>> = (0..rule.len())
        .map(|i| rule.node(i).iter().map(|t| t * r).collect())
        .collect();
    let vals = f.evaluator().eval_many(&zs);
    let terms: Vec<C64> = vals.iter().zip(&rule.weights).map(|(v, w)| v * w).collect();
    Ok(pairwise_sum_c(&terms))
}

/// Default sphere rule for ℂⁿ (`n ∈ {1, 2}`).
pub fn default_sphere(n: usize) -> Result<QuadratureRule> {
    sphere_rule(n, if n == 1 { DEFAULT_S1 } else { DEFAULT_S3 })
}

pub fn radialize(f: &ComplexField, r: f64) -> Result<C64> {
    radialize_with(f, r, &default_sphere(f.n)?)
}

/// `H_{n-1}G(r)` for `G(s) = ∫_{S^{2n-1}} F(√2 s ω) dω`, formed on the grid
/// of `F` as `2^{-n} ∫_{ℂⁿ} F(w) K(r|w|/√2) dw` with `K(x) = J_{n-1}(x)/x^{n-1}`.
pub fn radial_hankel(f: &ComplexField, r: f64) -> Result<C64> {
    Ok(radial_hankel_many(f, &[r])?[0])
}

/// [`radial_hankel`] at several radii. Grid weights are first summed over
/// nodes sharing the same `|w|²`, so each radius costs one kernel
/// evaluation per distinct radius of the grid.
pub fn radial_hankel_many(f: &ComplexField, rs: &[f64]) -> Result<Vec<C64>> {
    if let Some(&r) = rs.iter().find(|r| !(**r >= 0.0) || !r.is_finite()) {
        return Err(crate::error::out_of_range("r", r, "[0, inf)"));
    }
    let kernel = kernel_for(f.n as f64 - 1.0)?;
    let d = f.grid.real_dim();
    let mut shells: BTreeMap<u64, C64> = BTreeMap::new();
    let mut z = vec![0.0; d];
    for (i, v) in f.values.iter().enumerate() {
        let w = f.grid.node(i, &mut z);
        let r2: f64 = z.iter().map(|t| t * t).sum();
        *shells.entry(r2.to_bits()).or_insert(C64::new(0.0, 0.0)) += v * w;
    }
    let shells: Vec<(f64, C64)> = shells.into_iter().map(|(b, v)| (f64::from_bits(b).sqrt(), v)).collect();
    let scale = 0.5f64.powi(f.n as i32);
    Ok(rs
        .par_iter()
        .map(|&r| {
            let s = r / std::f64::consts::SQRT_2;
            let terms: Vec<C64> = shells.iter().map(|(w, v)| v * kernel.eval_real(s * w)).collect();
            pairwise_sum_c(&terms) * scale
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::tensor_rule_hermite;
    use crate::transforms::{wigner_field, FunctionSpec, WignerConfig};
    use std::f64::consts::PI;
    use std::sync::Arc;

    #[test]
    fn constant_field() {
        let grid = tensor_rule_hermite(2, 4, 1.0).unwrap();
        let f = ComplexField::sample("one", grid, Arc::new(|_: &[f64]| C64::new(1.0, 0.0)))
            .unwrap();
        let v = radialize(&f, 3.0).unwrap();
        assert!((v.re - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn ground_state_wigner() {
        let f = FunctionSpec::parse("hermite:k1=0,k2=0", 2).unwrap();
        let mut cfg = WignerConfig::for_pair(&f, &f).unwrap();
        cfg.per_axis = 6;
        let field = wigner_field(&f, &f, &cfg).unwrap();
        let rule = sphere_rule(2, 16).unwrap();
        for r in [0.5, 2.0] {
            let v = radialize_with(&field, r, &rule).unwrap();
            let want = PI * (-r * r / 4.0f64).exp();
            assert!((v.re - want).abs() < 1e-10, "{v} {want}");
        }
    }
}
