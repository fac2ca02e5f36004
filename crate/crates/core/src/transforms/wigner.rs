use super::field::{ComplexField, FieldEval};
use super::function::FunctionSpec;
use super::line_nodes;
use crate::error::{Error, Result};
use crate::quadrature::{
    gauss_hermite_scaled, mapped_legendre, tensor_rule_hermite, ConvergenceReport, QuadratureRule,
};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::{LN_10, PI};
use std::sync::Arc;

fn check_pair(f: &FunctionSpec, g: &FunctionSpec) -> Result<usize> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: g.n,
        });
    }
    if !(1..=2).contains(&f.n) {
        return Err(Error::InvalidArgument(format!(
            "Fourier-Wigner transforms are implemented for n <= 2, got {}",
            f.n
        )));
    }
    for h in [f, g] {
        if !(h.meta.gamma > 0.0) {
            return Err(Error::Contract(format!("'{}' has no Gaussian envelope", h.id)));
        }
    }
    Ok(f.n)
}

/// Radius in `s` beyond which `|f(s+y/2) g(s-y/2)|` is below `10^{-20}`.
fn s_radius(f: &FunctionSpec, g: &FunctionSpec, y_abs: f64) -> f64 {
    let (a, b) = (f.meta.gamma, g.meta.gamma);
    let shift = 0.5 * y_abs * (a - b).abs() / (a + b);
    let digits = 20.0 * LN_10 + (f.meta.c * g.meta.c).max(1.0).ln();
    shift + (digits / (a + b)).sqrt()
}

/// Pointwise evaluator of `V(f,g)(x+iy) = (2π)^{-n/2} ∫ e^{ix·s} f(s+y/2) ḡ(s-y/2) ds`.
#[derive(Debug, Clone)]
pub struct WignerEvaluator {
    pub f: FunctionSpec,
    pub g: FunctionSpec,
    n: usize,
}

impl WignerEvaluator {
    pub fn new(f: &FunctionSpec, g: &FunctionSpec) -> Result<Self> {
        let n = check_pair(f, g)?;
        Ok(WignerEvaluator {
            f: f.clone(),
            g: g.clone(),
            n,
        })
    }

    fn s_rule(&self, x_abs: f64, y_abs: f64, half: bool) -> Result<QuadratureRule> {
        let r = s_radius(&self.f, &self.g, y_abs);
        let reach = r + y_abs / 2.0;
        let omega = x_abs + self.f.meta.frequency(reach) + self.g.meta.frequency(reach);
        let m = line_nodes(omega, r);
        mapped_legendre(if half { m / 2 } else { m }, -r, r)
    }

    /// `G(s) = f(s+y/2) ḡ(s-y/2)` on the product grid, last axis fastest.
    fn products(&self, rule: &QuadratureRule, y: &[f64]) -> Vec<C64> {
        let m = rule.len();
        let s = &rule.nodes;
        if self.n == 1 {
            s.iter()
                .map(|&t| self.f.eval(&[t + y[0] / 2.0]) * self.g.eval(&[t - y[0] / 2.0]).conj())
                .collect()
        } else {
            let mut out = Vec::with_capacity(m * m);
            for &p in s {
                for &q in s {
                    let a = self.f.eval(&[p + y[0] / 2.0, q + y[1] / 2.0]);
                    let b = self.g.eval(&[p - y[0] / 2.0, q - y[1] / 2.0]);
                    out.push(a * b.conj());
                }
            }
            out
        }
    }

    fn contract(&self, rule: &QuadratureRule, gm: &[C64], x: &[f64]) -> C64 {
        let m = rule.len();
        let e = |xv: f64| -> Vec<C64> {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&s, &w)| C64::from_polar(w, xv * s))
                .collect()
        };
        let norm = (2.0 * PI).powf(-(self.n as f64) / 2.0);
        if self.n == 1 {
            let e1 = e(x[0]);
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..m {
                acc += e1[p] * gm[p];
            }
            acc * norm
        } else {
            let e1 = e(x[0]);
            let e2 = e(x[1]);
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..m {
                let row = &gm[p * m..(p + 1) * m];
                let mut inner = C64::new(0.0, 0.0);
                for q in 0..m {
                    inner += e2[q] * row[q];
                }
                acc += e1[p] * inner;
            }
            acc * norm
        }
    }

    fn split<'a>(&self, z: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        z.split_at(self.n)
    }

    fn at(&self, z: &[f64], half: bool) -> Result<C64> {
        if z.len() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: z.len(),
            });
        }
        let (x, y) = self.split(z);
        let rule = self.s_rule(norm(x), norm(y), half)?;
        let gm = self.products(&rule, y);
        Ok(self.contract(&rule, &gm, x))
    }

    pub fn report(&self, z: &[f64]) -> Result<ConvergenceReport> {
        Ok(ConvergenceReport::new(self.at(z, false)?, self.at(z, true)?))
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|t| t * t).sum::<f64>().sqrt()
}

impl FieldEval for WignerEvaluator {
    fn eval(&self, z: &[f64]) -> C64 {
        self.at(z, false).unwrap_or(C64::new(f64::NAN, f64::NAN))
    }

    /// Points are grouped into runs sharing `y`; each run reuses one
    /// product grid `G`.
    fn eval_many(&self, zs: &[Vec<f64>]) -> Vec<C64> {
        let n = self.n;
        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        for i in 1..=zs.len() {
            if i == zs.len() || zs[i][n..] != zs[start][n..] {
                runs.push((start, i));
                start = i;
            }
        }
        let parts: Vec<Vec<C64>> = runs
            .par_iter()
            .map(|&(a, b)| {
                let y = &zs[a][n..];
                let x_max = zs[a..b].iter().map(|z| norm(&z[..n])).fold(0.0, f64::max);
                match self.s_rule(x_max, norm(y), false) {
                    Ok(rule) => {
                        let gm = self.products(&rule, y);
                        zs[a..b].iter().map(|z| self.contract(&rule, &gm, &z[..n])).collect()
                    }
                    Err(_) => vec![C64::new(f64::NAN, f64::NAN); b - a],
                }
            })
            .collect();
        parts.into_iter().flatten().collect()
    }
}

/// `V(f,g)(z)` at one point of ℂⁿ, given as `(x₁..xₙ, y₁..yₙ)`.
pub fn fourier_wigner(f: &FunctionSpec, g: &FunctionSpec, z: &[f64]) -> Result<C64> {
    WignerEvaluator::new(f, g)?.at(z, false)
}

pub fn fourier_wigner_report(
    f: &FunctionSpec,
    g: &FunctionSpec,
    z: &[f64],
) -> Result<ConvergenceReport> {
    WignerEvaluator::new(f, g)?.report(z)
}

/// `-ln` of the envelope left at the outermost node of a transform grid.
const EDGE_EXPONENT: f64 = 32.0;

/// Grid parameters for sampling `V(f,g)` over ℂⁿ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerConfig {
    /// Gauss–Hermite points per real axis of ℂⁿ.
    pub per_axis: usize,
    /// Scale α of the Gauss–Hermite weight `e^{-α t²}`.
    pub alpha: f64,
    /// Gauss–Legendre points per axis of the inner `s` integral.
    pub s_nodes: usize,
    pub s_radius: f64,
}

impl WignerConfig {
    /// Grid for integrating `V(f,g)` against Laguerre functions `φ_k`.
    pub fn for_pair(f: &FunctionSpec, g: &FunctionSpec) -> Result<Self> {
        check_pair(f, g)?;
        // V(f,f) of e^{-b|x|²/2} decays like e^{-|x|²/4b - b|y|²/4}; against
        // φ_k the geometric mean of the two widths is 1/2 for every b
        Self::with_alpha(f, g, 0.5)
    }

    /// Grid for transforming `V(f,g)` itself (no `φ_k` envelope): the
    /// outermost nodes sit where the slowest decay `e^{-γ|y|²/2}` (and its
    /// Fourier-side counterpart) is below round-off.
    pub fn for_transform(f: &FunctionSpec, g: &FunctionSpec) -> Result<Self> {
        let n = check_pair(f, g)?;
        let edge = |h: &FunctionSpec| h.meta.gamma.min(h.meta.gamma_hat.unwrap_or(h.meta.gamma));
        let c = 0.5 * edge(f).min(edge(g));
        let t = gauss_hermite_scaled(Self::per_axis_for(n), 1.0)?
            .nodes
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        Self::with_alpha(f, g, (c * t * t / EDGE_EXPONENT).min(0.5))
    }

    fn per_axis_for(n: usize) -> usize {
        if n == 1 {
            96
        } else {
            40
        }
    }

    fn with_alpha(f: &FunctionSpec, g: &FunctionSpec, alpha: f64) -> Result<Self> {
        let per_axis = Self::per_axis_for(f.n);
        // the s rule must resolve e^{ix·s} out to the outermost grid node
        let x_max = gauss_hermite_scaled(per_axis, alpha)?
            .nodes
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        let s_radius = s_radius(f, g, 0.0);
        let reach = s_radius + 6.0;
        let omega = x_max + f.meta.frequency(reach) + g.meta.frequency(reach);
        let s_nodes = ((0.6 * omega * s_radius + 40.0).ceil() as usize).clamp(128, 400);
        Ok(WignerConfig {
            per_axis,
            alpha,
            s_nodes,
            s_radius,
        })
    }

    /// Companion grid with about half the total node count.
    pub fn half(&self, n: usize) -> Self {
        let f = 0.5f64.powf(1.0 / (2.0 * n as f64));
        WignerConfig {
            per_axis: ((self.per_axis as f64 * f).round() as usize).max(2),
            s_nodes: ((self.s_nodes as f64 * 0.5f64.powf(1.0 / n as f64)).round() as usize)
                .max(16),
            ..*self
        }
    }
}

/// Samples `V(f,g)` on a Gauss–Hermite tensor grid over ℂⁿ. For each grid
/// value of `y` the product `G(s) = f(s+y/2) ḡ(s-y/2)` is formed once and
/// contracted against `e^{ix·s}` for every grid `x` as a matrix product.
pub fn wigner_field(f: &FunctionSpec, g: &FunctionSpec, cfg: &WignerConfig) -> Result<ComplexField> {
    let n = check_pair(f, g)?;
    let grid = tensor_rule_hermite(n, cfg.per_axis, cfg.alpha)?;
    let srule = mapped_legendre(cfg.s_nodes, -cfg.s_radius, cfg.s_radius)?;
    let ev = WignerEvaluator::new(f, g)?;
    let z = &grid.axis.nodes;
    let nz = z.len();
    let m = srule.len();
    // e[a][p] = w_p e^{i z_a s_p}
    let e: Vec<C64> = z
        .iter()
        .flat_map(|&za| {
            srule
                .nodes
                .iter()
                .zip(&srule.weights)
                .map(move |(&s, &w)| C64::from_polar(w, za * s))
        })
        .collect();
    let norm = (2.0 * PI).powf(-(n as f64) / 2.0);
    let ys: Vec<Vec<f64>> = if n == 1 {
        z.iter().map(|&b| vec![b]).collect()
    } else {
        z.iter().flat_map(|&b| z.iter().map(move |&c| vec![b, c])).collect()
    };
    let blocks: Vec<Vec<C64>> = ys
        .par_iter()
        .map(|y| {
            let gm = ev.products(&srule, y);
            if n == 1 {
                (0..nz)
                    .map(|a| {
                        let row = &e[a * m..(a + 1) * m];
                        let mut acc = C64::new(0.0, 0.0);
                        for p in 0..m {
                            acc += row[p] * gm[p];
                        }
                        acc * norm
                    })
                    .collect()
            } else {
                // t[p][a2] = Σ_q G[p][q] e[a2][q]
                let mut t = vec![C64::new(0.0, 0.0); m * nz];
                for p in 0..m {
                    let gr = &gm[p * m..(p + 1) * m];
                    for a2 in 0..nz {
                        let er = &e[a2 * m..(a2 + 1) * m];
                        let mut acc = C64::new(0.0, 0.0);
                        for q in 0..m {
                            acc += gr[q] * er[q];
                        }
                        t[p * nz + a2] = acc;
                    }
                }
                let mut v = vec![C64::new(0.0, 0.0); nz * nz];
                for a1 in 0..nz {
                    let er = &e[a1 * m..(a1 + 1) * m];
                    for a2 in 0..nz {
                        let mut acc = C64::new(0.0, 0.0);
                        for p in 0..m {
                            acc += er[p] * t[p * nz + a2];
                        }
                        v[a1 * nz + a2] = acc * norm;
                    }
                }
                v
            }
        })
        .collect();
    let ny = ys.len();
    let mut values = vec![C64::new(0.0, 0.0); grid.len()];
    for (yi, block) in blocks.iter().enumerate() {
        for (xi, v) in block.iter().enumerate() {
            values[xi * ny + yi] = *v;
        }
    }
    let label = format!("V({},{})", f.id, g.id);
    ComplexField::from_parts(label, grid, values, Arc::new(ev))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex44_v(z: &[f64]) -> C64 {
        let a = 0.5f64.sqrt();
        let r2: f64 = z.iter().map(|t| t * t).sum();
        let q = 0.5 * (z[0] * z[3] + z[1] * z[2]);
        C64::new((-(a / 2.0) * r2 + q).exp() / (2.0 * a), 0.0)
    }

    #[test]
    fn ground_state_1d() {
        let f = FunctionSpec::parse("hermite:k=0", 1).unwrap();
        for z in [[0.0, 0.0], [1.0, -2.0], [3.0, 2.5]] {
            let v = fourier_wigner(&f, &f, &z).unwrap();
            let want = (2.0 * PI).powf(-0.5) * (-(z[0] * z[0] + z[1] * z[1]) / 4.0).exp();
            assert!((v - want).norm() < 1e-13, "{z:?} {v} {want}");
        }
    }

    #[test]
    fn example44_pointwise() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        for z in [[0.5, -1.0, 2.0, 1.5], [3.0, 2.0, -1.0, 2.5], [0.0, 0.0, 0.0, 0.0]] {
            let v = fourier_wigner(&f, &f, &z).unwrap();
            assert!((v - ex44_v(&z)).norm() < 1e-11, "{z:?} {v} {}", ex44_v(&z));
        }
    }

    #[test]
    fn grid_matches_pointwise() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let mut cfg = WignerConfig::for_pair(&f, &f).unwrap();
        cfg.per_axis = 10;
        let field = wigner_field(&f, &f, &cfg).unwrap();
        let mut z = vec![0.0; 4];
        for i in [0usize, 1234, 5555, 9999] {
            field.grid.node(i, &mut z);
            let want = ex44_v(&z);
            assert!((field.values[i] - want).norm() < 1e-10, "{i} {z:?}");
        }
        let zs: Vec<Vec<f64>> = (0..5)
            .map(|j| vec![0.3 * j as f64, -0.2, 1.0, 0.5])
            .chain([vec![1.0, 1.0, 0.0, 2.0]])
            .collect();
        let many = field.evaluator().eval_many(&zs);
        for (z, v) in zs.iter().zip(many) {
            assert!((v - ex44_v(z)).norm() < 1e-11);
        }
    }
}
