use super::field::{ComplexField, FieldEval};
use crate::error::{Error, Result};
use crate::quadrature::{QuadratureRule, RuleKind};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Normalization of `𝔉_s F(z) = c_n ∫_{ℂⁿ} F(w) e^{(i/2) Im(z·w̄)} dw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymplecticNorm {
    /// `c_n = (4π)^{-n}`: an involution with `𝔉_s φ_k = (-1)^k φ_k`.
    #[default]
    Involutive,
    /// `c_n = (2π)^{-n}`, which is `2ⁿ` times the involutive one.
    TwoPi,
}

impl SymplecticNorm {
    pub fn constant(self, n: usize) -> f64 {
        match self {
            SymplecticNorm::Involutive => (4.0 * PI).powi(-(n as i32)),
            SymplecticNorm::TwoPi => (2.0 * PI).powi(-(n as i32)),
        }
    }
}

const BOUNDARY_RATIO: f64 = 1e-12;

/// Rejects fields whose samples on the outermost grid nodes are not
/// negligible relative to the field maximum.
pub fn check_field_envelope(f: &ComplexField) -> Result<()> {
    let p = f.grid.per_axis();
    let d = f.grid.real_dim();
    let mut max = 0.0f64;
    let mut edge = 0.0f64;
    for (i, v) in f.values.iter().enumerate() {
        let a = v.norm();
        max = max.max(a);
        let mut k = i;
        let mut on_edge = false;
        for _ in 0..d {
            let j = k % p;
            k /= p;
            on_edge |= j == 0 || j == p - 1;
        }
        if on_edge {
            edge = edge.max(a);
        }
    }
    if edge > BOUNDARY_RATIO * max {
        return Err(Error::Contract(format!(
            "grid envelope insufficient: boundary/max = {:.3e}",
            edge / max.max(1e-300)
        )));
    }
    Ok(())
}

/// Contracts the grid samples of `f` against the symplectic kernel at `z`.
fn contract(f: &ComplexField, z: &[f64], norm: SymplecticNorm) -> C64 {
    let n = f.n;
    let p = f.grid.per_axis();
    let nodes = &f.grid.axis.nodes;
    let w = &f.grid.axis.weights;
    // axes (u₁..uₙ, v₁..vₙ); phase (1/2)Σ_j (y_j u_j - x_j v_j)
    let factor = |axis: usize| -> Vec<C64> {
        let c = if axis < n { 0.5 * z[n + axis] } else { -0.5 * z[axis - n] };
        nodes
            .iter()
            .zip(w)
            .map(|(&t, &wt)| C64::from_polar(wt, c * t))
            .collect()
    };
    let mut cur: Vec<C64> = f.values.clone();
    for axis in (0..2 * n).rev() {
        let k = factor(axis);
        let len = cur.len() / p;
        let mut next = Vec::with_capacity(len);
        for r in 0..len {
            let row = &cur[r * p..(r + 1) * p];
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..p {
                acc += k[j] * row[j];
            }
            next.push(acc);
        }
        cur = next;
    }
    cur[0] * norm.constant(n)
}

/// `𝔉_s F(z)` from the grid samples of `F`, involutive normalization.
pub fn symplectic_fourier(f: &ComplexField, z: &[f64]) -> Result<C64> {
    symplectic_fourier_with(f, z, SymplecticNorm::Involutive)
}

pub fn symplectic_fourier_with(f: &ComplexField, z: &[f64], norm: SymplecticNorm) -> Result<C64> {
    if z.len() != 2 * f.n {
        return Err(Error::DimensionMismatch {
            expected: 2 * f.n,
            got: z.len(),
        });
    }
    check_field_envelope(f)?;
    Ok(contract(f, z, norm))
}

struct SymplecticEval {
    source: Arc<ComplexField>,
    norm: SymplecticNorm,
}

impl FieldEval for SymplecticEval {
    fn eval(&self, z: &[f64]) -> C64 {
        contract(&self.source, z, self.norm)
    }

    fn eval_many(&self, zs: &[Vec<f64>]) -> Vec<C64> {
        zs.par_iter().map(|z| contract(&self.source, z, self.norm)).collect()
    }

    /// On a Hopf-coordinate rule the kernel factors over `(θ₁, θ₂)` for each
    /// η, so the same finite double sum is formed in the order
    /// `Σ_w F(w) Σ_ω W_ω e^{(i/2)r Im(ω·w̄)}`.
    fn sphere_sum(&self, r: f64, rule: &QuadratureRule) -> Option<C64> {
        let f = &self.source;
        if f.n != 2 || rule.kind != RuleKind::SphereS3 {
            return None;
        }
        let res = rule.meta.resolution.as_ref()?;
        let (m1, m2, ne) = (res[0], res[1], res[2]);
        let p = f.grid.per_axis();
        let nodes = &f.grid.axis.nodes;
        let wts = &f.grid.axis.weights;
        let h1 = 2.0 * PI / m1 as f64;
        let h2 = 2.0 * PI / m2 as f64;
        let per_eta: Vec<C64> = (0..ne)
            .into_par_iter()
            .map(|e| {
                let first = rule.node(e * m1 * m2);
                let (ce, se) = (first[0], first[2]);
                let wt = rule.weights[e * m1 * m2];
                // t1[v] = Σ_θ₁ e^{-(i/2) r cos η (v·e_θ₁)}, t2[u] likewise with sin η
                let table = |c: f64, m: usize, h: f64| -> Vec<C64> {
                    let mut t = vec![C64::new(0.0, 0.0); p * p];
                    for j in 0..m {
                        let (s, co) = (h * j as f64).sin_cos();
                        for a in 0..p {
                            for b in 0..p {
                                let ph = c * (nodes[a] * co + nodes[b] * s);
                                t[a * p + b] += C64::from_polar(1.0, ph);
                            }
                        }
                    }
                    for a in 0..p {
                        for b in 0..p {
                            t[a * p + b] *= wts[a] * wts[b];
                        }
                    }
                    t
                };
                let t1 = table(-0.5 * r * ce, m1, h1);
                let t2 = table(0.5 * r * se, m2, h2);
                let mut acc = C64::new(0.0, 0.0);
                for (u, row) in f.values.chunks_exact(p * p).enumerate() {
                    let q: C64 = row.iter().zip(&t1).map(|(x, t)| x * t).sum();
                    acc += q * t2[u];
                }
                acc * wt
            })
            .collect();
        let total: C64 = per_eta.iter().sum();
        Some(total * self.norm.constant(2))
    }
}

/// Separable map of one grid axis: `out[o] = Σ_j w_j e^{i c ζ_o ζ_j} in[j]`.
fn axis_map(values: &[C64], p: usize, stride: usize, mat: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); values.len()];
    let outer = values.len() / (p * stride);
    out.par_chunks_mut(p * stride)
        .zip(values.par_chunks(p * stride))
        .for_each(|(o, v)| {
            for inner in 0..stride {
                for a in 0..p {
                    let mut acc = C64::new(0.0, 0.0);
                    for j in 0..p {
                        acc += mat[a * p + j] * v[j * stride + inner];
                    }
                    o[a * stride + inner] = acc;
                }
            }
        });
    let _ = outer;
    out
}

/// `𝔉_s F` sampled on the grid of `F`, with an evaluator that contracts the
/// samples of `F` at arbitrary points.
pub fn symplectic_field(f: &ComplexField, norm: SymplecticNorm) -> Result<ComplexField> {
    check_field_envelope(f)?;
    let n = f.n;
    let p = f.grid.per_axis();
    let d = 2 * n;
    let z = &f.grid.axis.nodes;
    let w = &f.grid.axis.weights;
    let mut cur = f.values.clone();
    for axis in 0..d {
        // input u_j → output y_j with e^{(i/2) y u}; input v_j → x_j with e^{-(i/2) x v}
        let c = if axis < n { 0.5 } else { -0.5 };
        let mat: Vec<C64> = (0..p * p)
            .map(|k| C64::from_polar(w[k % p], c * z[k / p] * z[k % p]))
            .collect();
        let stride = p.pow((d - 1 - axis) as u32);
        cur = axis_map(&cur, p, stride, &mat);
    }
    // axes now read (y, x); swap the two halves
    let half = p.pow(n as u32);
    let mut values = vec![C64::new(0.0, 0.0); cur.len()];
    for i in 0..half {
        for j in 0..half {
            values[j * half + i] = cur[i * half + j] * norm.constant(n);
        }
    }
    let label = format!("Fs[{}]", f.label);
    let ev = SymplecticEval {
        source: Arc::new(f.clone()),
        norm,
    };
    ComplexField::from_parts(label, f.grid.clone(), values, Arc::new(ev))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{sphere_rule, tensor_rule_hermite};
    use crate::special::varphi;

    fn phi_field(k: usize, n: usize, per_axis: usize) -> ComplexField {
        let grid = tensor_rule_hermite(n, per_axis, 0.25).unwrap();
        ComplexField::sample(
            format!("phi_{k}"),
            grid,
            Arc::new(move |z: &[f64]| {
                let r2: f64 = z.iter().map(|t| t * t).sum();
                C64::new(varphi(k, n, r2).unwrap(), 0.0)
            }),
        )
        .unwrap()
    }

    #[test]
    fn eigenfunctions() {
        for n in [1usize, 2] {
            for k in 0..4usize {
                let f = phi_field(k, n, if n == 1 { 48 } else { 32 });
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let zs: [&[f64]; 2] = if n == 1 {
                    [&[0.3, -1.2], &[2.0, 1.0]]
                } else {
                    [&[0.3, -1.2, 0.4, 0.0], &[2.0, 1.0, -1.0, 0.5]]
                };
                for z in zs {
                    let v = symplectic_fourier(&f, z).unwrap();
                    let want = sign * f.eval(z);
                    assert!((v - want).norm() < 1e-9, "n={n} k={k} {v} {want}");
                }
            }
        }
    }

    #[test]
    fn grid_transform_matches_pointwise() {
        let f = phi_field(1, 2, 32);
        let g = symplectic_field(&f, SymplecticNorm::Involutive).unwrap();
        let mut z = vec![0.0; 4];
        for i in [0usize, 777, 500_000, 1_048_575] {
            f.grid.node(i, &mut z);
            let direct = contract(&f, &z, SymplecticNorm::Involutive);
            assert!((g.values[i] - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn hopf_sum_matches_naive() {
        let f = phi_field(2, 2, 32);
        let g = symplectic_field(&f, SymplecticNorm::TwoPi).unwrap();
        let rule = sphere_rule(2, 8).unwrap();
        let r = 1.7;
        let fast = g.evaluator().sphere_sum(r, &rule).unwrap();
        let zs: Vec<Vec<f64>> = (0..rule.len())
            .map(|i| rule.node(i).iter().map(|t| t * r).collect())
            .collect();
        let vals = g.evaluator().eval_many(&zs);
        let naive: C64 = vals.iter().zip(&rule.weights).map(|(v, w)| v * w).sum();
        assert!((fast - naive).norm() < 1e-11 * naive.norm().max(1.0), "{fast} {naive}");
    }

    #[test]
    fn envelope_rejected() {
        let grid = tensor_rule_hermite(1, 16, 1.0).unwrap();
        let f = ComplexField::sample("flat", grid, Arc::new(|_: &[f64]| C64::new(1.0, 0.0)))
            .unwrap();
        assert!(symplectic_fourier(&f, &[0.0, 0.0]).is_err());
    }
}
