use super::table::{CoefficientTable, Quantity, Route, TableEntry};
use crate::error::{Error, Result};
use crate::quadrature::{mapped_legendre, ConvergenceReport, QuadratureRule};
use crate::special::{hermite_phi_all, HermiteIndex};
use crate::transforms::{fourier_grid, FourierConvention, FunctionSpec};
use crate::C64;
use rayon::prelude::*;

/// Largest level served by the direct route.
pub const DIRECT_K_MAX: usize = 60;

fn check_direct(f: &FunctionSpec, kmax: usize, cap: usize) -> Result<()> {
    if f.n > 2 {
        return Err(Error::Budget(format!(
            "direct route enumerates multi-indices only for n <= 2, got n={}",
            f.n
        )));
    }
    if kmax > cap {
        return Err(Error::Budget(format!("direct route level {kmax} exceeds {cap}")));
    }
    if !(f.meta.gamma > 0.0) {
        return Err(Error::Contract(format!("'{}' has no Gaussian envelope", f.id)));
    }
    Ok(())
}

/// Gauss–Legendre line rule resolving `f` and `Φ_k`, `k ≤ kmax`.
pub(crate) fn direct_rule(f: &FunctionSpec, kmax: usize, half: bool) -> Result<QuadratureRule> {
    let turning = (2.0 * kmax as f64 + 1.0).sqrt();
    let r = f.meta.radius(20.0).max(turning + 10.0);
    let n = crate::transforms::line_nodes_pub(f.meta.frequency(r) + turning, r);
    mapped_legendre(if half { n / 2 } else { n }, -r, r)
}

/// Coefficients `(F, Φ_α)` from samples of `F` on the tensor grid of `rule`
/// (last axis fastest). Returns a `(kmax+1)^n` array, last index fastest.
pub(crate) fn coeffs_from_samples(
    n: usize,
    rule: &QuadratureRule,
    samples: &[C64],
    kmax: usize,
) -> Result<Vec<C64>> {
    let m = rule.len();
    let k1 = kmax + 1;
    // phi[i][k] = w_i Φ_k(x_i)
    let mut phi = Vec::with_capacity(m * k1);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        phi.extend(hermite_phi_all(kmax, x)?.into_iter().map(|v| v * w));
    }
    if n == 1 {
        return Ok((0..k1)
            .map(|k| (0..m).map(|i| samples[i] * phi[i * k1 + k]).sum())
            .collect());
    }
    // a[k][j] = Σ_i phi[i][k] F[i][j]
    let a: Vec<C64> = (0..k1)
        .into_par_iter()
        .flat_map_iter(|k| {
            let phi = &phi;
            (0..m).map(move |j| (0..m).map(|i| samples[i * m + j] * phi[i * k1 + k]).sum::<C64>())
        })
        .collect();
    Ok((0..k1)
        .into_par_iter()
        .flat_map_iter(|ka| {
            let (a, phi) = (&a, &phi);
            (0..k1).map(move |kb| (0..m).map(|j| a[ka * m + j] * phi[j * k1 + kb]).sum::<C64>())
        })
        .collect())
}

fn sample(f: &FunctionSpec, rule: &QuadratureRule) -> Vec<C64> {
    if f.n == 1 {
        rule.nodes.iter().map(|&x| f.eval(&[x])).collect()
    } else {
        rule.nodes
            .par_iter()
            .flat_map_iter(|&a| rule.nodes.iter().map(move |&b| f.eval(&[a, b])))
            .collect()
    }
}

fn coeff_array(f: &FunctionSpec, kmax: usize, half: bool) -> Result<Vec<C64>> {
    let rule = direct_rule(f, kmax, half)?;
    coeffs_from_samples(f.n, &rule, &sample(f, &rule), kmax)
}

fn index_of(n: usize, kmax: usize, alpha: &[usize]) -> usize {
    if n == 1 {
        alpha[0]
    } else {
        alpha[0] * (kmax + 1) + alpha[1]
    }
}

/// `(f, Φ_α)` by quadrature, with its half-resolution companion.
pub fn hermite_coeff(f: &FunctionSpec, alpha: &HermiteIndex) -> Result<ConvergenceReport> {
    if alpha.dim() != f.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: alpha.dim(),
        });
    }
    let kmax = alpha.entries.iter().copied().max().unwrap_or(0);
    check_direct(f, alpha.degree(), 200)?;
    let i = index_of(f.n, kmax, &alpha.entries);
    Ok(ConvergenceReport::new(
        coeff_array(f, kmax, false)?[i],
        coeff_array(f, kmax, true)?[i],
    ))
}

/// All `(f, Φ_α)` with `|α| ≤ kmax`, ordered by level then index.
pub fn hermite_coeffs(f: &FunctionSpec, kmax: usize) -> Result<CoefficientTable> {
    check_direct(f, kmax, DIRECT_K_MAX)?;
    let full = coeff_array(f, kmax, false)?;
    let half = coeff_array(f, kmax, true)?;
    let mut t = CoefficientTable::new(&f.id, f.n, Route::Direct, Quantity::HermiteCoeff);
    t.meta.quadrature = quad_note(f, kmax);
    for k in 0..=kmax {
        for a in HermiteIndex::of_degree(f.n, k) {
            let i = index_of(f.n, kmax, &a.entries);
            let c = full[i];
            t.entries.push(TableEntry {
                k,
                value: c.norm(),
                est_err: (c - half[i]).norm(),
                index: Some(a.entries.clone()),
                complex: Some([c.re, c.im]),
            });
        }
    }
    Ok(t)
}

fn quad_note(f: &FunctionSpec, kmax: usize) -> String {
    match direct_rule(f, kmax, false) {
        Ok(r) => {
            let (lo, hi) = r.meta.interval.unwrap_or((0.0, 0.0));
            format!("mapped_legendre N={} on [{lo:.6}, {hi:.6}] per axis", r.len())
        }
        Err(_) => String::new(),
    }
}

fn level_norms(n: usize, kmax: usize, c: &[C64]) -> Vec<f64> {
    (0..=kmax)
        .map(|k| {
            HermiteIndex::of_degree(n, k)
                .iter()
                .map(|a| c[index_of(n, kmax, &a.entries)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}

/// `‖P_k f‖₂` for `k ≤ kmax` from the Hermite coefficients.
pub fn proj_norms_direct(f: &FunctionSpec, kmax: usize) -> Result<CoefficientTable> {
    check_direct(f, kmax, DIRECT_K_MAX)?;
    let full = level_norms(f.n, kmax, &coeff_array(f, kmax, false)?);
    let half = level_norms(f.n, kmax, &coeff_array(f, kmax, true)?);
    let mut t = CoefficientTable::new(&f.id, f.n, Route::Direct, Quantity::ProjNorm);
    t.meta.quadrature = quad_note(f, kmax);
    for k in 0..=kmax {
        t.push(k, full[k], (full[k] - half[k]).abs());
    }
    Ok(t)
}

pub fn proj_norm_direct(f: &FunctionSpec, k: usize) -> Result<f64> {
    Ok(proj_norms_direct(f, k)?.entries[k].value)
}

/// Pairs `((f̂, Φ_α), (f, Φ_α))` for `|α| ≤ kmax`, with `f̂` sampled on the
/// quadrature grid by a separable Fourier quadrature.
pub fn fourier_hermite_pairs(
    f: &FunctionSpec,
    kmax: usize,
) -> Result<Vec<(HermiteIndex, C64, C64)>> {
    check_direct(f, kmax, DIRECT_K_MAX)?;
    let gh = f.meta.gamma_hat.unwrap_or(f.meta.gamma);
    let fh_meta = crate::transforms::FunctionMeta {
        gamma: gh,
        ..f.meta.clone()
    };
    let probe = FunctionSpec::derived("probe", f.n, fh_meta, |_| C64::new(0.0, 0.0));
    let rule = direct_rule(&probe, kmax, false)?;
    let fhat = fourier_grid(f, &rule.nodes, FourierConvention::Unitary, false)?;
    let a = coeffs_from_samples(f.n, &rule, &fhat, kmax)?;
    let b = coeff_array(f, kmax, false)?;
    let mut out = Vec::new();
    for k in 0..=kmax {
        for idx in HermiteIndex::of_degree(f.n, k) {
            let i = index_of(f.n, kmax, &idx.entries);
            out.push((idx, a[i], b[i]));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn spec_examples() {
        let f = FunctionSpec::parse("hermite:k=3", 1).unwrap();
        let c = hermite_coeff(&f, &HermiteIndex::new(vec![3]).unwrap()).unwrap();
        assert!((c.value.re - 1.0).abs() < 1e-12);
        let g = FunctionSpec::parse("gaussian:b=1", 1).unwrap();
        let c0 = hermite_coeff(&g, &HermiteIndex::new(vec![0]).unwrap()).unwrap();
        assert!((c0.value.re - PI.powf(0.25)).abs() < 1e-12);
        let g = FunctionSpec::parse("gaussian:b=0.4", 1).unwrap();
        let c1 = hermite_coeff(&g, &HermiteIndex::new(vec![1]).unwrap()).unwrap();
        assert!(c1.value.norm() < 1e-14);
    }

    #[test]
    fn example44_levels() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let t = proj_norms_direct(&f, 4).unwrap();
        let a = 0.5f64.sqrt();
        let mu = (1.0 - a) / (1.0 + a);
        let p0 = 2.0 * PI / (1.0 + a);
        assert!((t.entries[0].value.powi(2) / p0 - 1.0).abs() < 1e-10);
        assert!((t.entries[2].value.powi(2) / (p0 * mu) - 1.0).abs() < 1e-10);
        assert!(t.entries[1].value < 1e-10 && t.entries[3].value < 1e-10);
    }

    #[test]
    fn intertwining() {
        let f = FunctionSpec::parse("harmonic:m=1,b=0.6", 2).unwrap();
        for (a, fh, fc) in fourier_hermite_pairs(&f, 6).unwrap() {
            let ph = C64::new(0.0, -1.0).powu(a.degree() as u32);
            assert!((fh - ph * fc).norm() < 1e-10, "{:?}", a.entries);
        }
    }

    #[test]
    fn budget() {
        let f = FunctionSpec::parse("gaussian", 3).unwrap();
        assert!(proj_norms_direct(&f, 2).is_err());
        let g = FunctionSpec::parse("gaussian", 1).unwrap();
        assert!(proj_norms_direct(&g, 61).is_err());
    }
}
