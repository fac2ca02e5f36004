use super::function::{FunctionMeta, FunctionSpec};
use super::line_nodes;
use crate::error::{Error, Result};
use crate::quadrature::{mapped_legendre, pairwise_sum_c, ConvergenceReport};
use crate::C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Normalization of the Fourier integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourierConvention {
    /// `(2π)^{-n/2} ∫ f(x) e^{-ix·ξ} dx`.
    #[default]
    Unitary,
    /// `∫ f(x) e^{-ix·ξ} dx`.
    Unnormalized,
}

impl FourierConvention {
    /// Prefactor for a transform over `dims` axes.
    pub fn factor(self, dims: usize) -> f64 {
        match self {
            FourierConvention::Unitary => (2.0 * PI).powf(-(dims as f64) / 2.0),
            FourierConvention::Unnormalized => 1.0,
        }
    }
}

fn check_subset(f: &FunctionSpec, subset: &[usize]) -> Result<Vec<usize>> {
    let mut axes = subset.to_vec();
    axes.sort_unstable();
    axes.dedup();
    if axes.len() != subset.len() || axes.iter().any(|&a| a >= f.n) {
        return Err(Error::InvalidArgument(format!(
            "axis subset {subset:?} is not a subset of 0..{}",
            f.n
        )));
    }
    if !(f.meta.gamma > 0.0) {
        return Err(Error::Contract(format!("'{}' has no Gaussian envelope", f.id)));
    }
    Ok(axes)
}

fn transform_at(
    f: &FunctionSpec,
    axes: &[usize],
    p: &[f64],
    conv: FourierConvention,
    half: bool,
) -> Result<C64> {
    if axes.is_empty() {
        return Ok(f.eval(p));
    }
    let r = f.meta.radius(20.0);
    let xi_max = axes.iter().map(|&a| p[a].abs()).fold(0.0, f64::max);
    let n = line_nodes(xi_max + f.meta.frequency(r), r);
    let rule = mapped_legendre(if half { n / 2 } else { n }, -r, r)?;
    let m = rule.len();
    let d = axes.len();
    let total = m.pow(d as u32);
    let mut x = p.to_vec();
    let mut terms = Vec::with_capacity(total);
    for mut i in 0..total {
        let mut w = 1.0;
        let mut phase = 0.0;
        for &a in axes.iter().rev() {
            let j = i % m;
            i /= m;
            x[a] = rule.nodes[j];
            w *= rule.weights[j];
            phase -= rule.nodes[j] * p[a];
        }
        terms.push(f.eval(&x) * C64::from_polar(w, phase));
    }
    Ok(pairwise_sum_c(&terms) * conv.factor(d))
}

/// Unitary (partial) Fourier transform of `f` over the axes in `subset`,
/// evaluated at `p` (transformed coordinates on `subset`, spatial ones elsewhere).
pub fn fourier(f: &FunctionSpec, subset: &[usize], p: &[f64]) -> Result<C64> {
    Ok(fourier_report(f, subset, p, FourierConvention::Unitary)?.value)
}

/// Fourier transform with its half-resolution companion.
pub fn fourier_report(
    f: &FunctionSpec,
    subset: &[usize],
    p: &[f64],
    conv: FourierConvention,
) -> Result<ConvergenceReport> {
    if p.len() != f.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: p.len(),
        });
    }
    let axes = check_subset(f, subset)?;
    let full = transform_at(f, &axes, p, conv, false)?;
    let half = transform_at(f, &axes, p, conv, true)?;
    Ok(ConvergenceReport::new(full, half))
}

/// The (partial) Fourier transform as a function in its own right, evaluated
/// by quadrature at every point.
pub fn fourier_spec(
    f: &FunctionSpec,
    subset: &[usize],
    conv: FourierConvention,
) -> Result<FunctionSpec> {
    let axes = check_subset(f, subset)?;
    let full = axes.len() == f.n;
    let gh = f.meta.gamma_hat.unwrap_or(f.meta.gamma);
    let meta = FunctionMeta {
        gamma: if full { gh } else { 0.5 * gh.min(f.meta.gamma) },
        c: if full {
            f.meta.c_hat.unwrap_or(f.meta.c) * conv.factor(f.n)
                / FourierConvention::Unitary.factor(f.n)
        } else {
            f.meta.c.max(f.meta.c_hat.unwrap_or(1.0))
        },
        gamma_hat: if full { Some(f.meta.gamma) } else { None },
        c_hat: None,
        parity: f.meta.parity,
        harmonic_degree: f.meta.harmonic_degree,
        radial: f.meta.radial,
        osc: f.meta.osc,
        degree: f.meta.degree,
    };
    let tag = match conv {
        FourierConvention::Unitary => "",
        FourierConvention::Unnormalized => ",unnormalized",
    };
    let base = f.clone();
    let list: Vec<String> = axes.iter().map(|a| a.to_string()).collect();
    let id = format!("fourier[{}{tag}]({})", list.join(","), f.id);
    Ok(FunctionSpec::derived(id, f.n, meta, move |x| {
        transform_at(&base, &axes, x, conv, false).unwrap_or(C64::new(f64::NAN, f64::NAN))
    }))
}

/// Full Fourier transform of `f` (`n ≤ 2`) at every point of the tensor grid
/// `out_nodes^n` (last axis fastest), by a separable quadrature.
pub fn fourier_grid(
    f: &FunctionSpec,
    out_nodes: &[f64],
    conv: FourierConvention,
    half: bool,
) -> Result<Vec<C64>> {
    check_subset(f, &(0..f.n).collect::<Vec<_>>())?;
    if f.n > 2 {
        return Err(Error::InvalidArgument("fourier_grid needs n <= 2".into()));
    }
    let r = f.meta.radius(20.0);
    let xi_max = out_nodes.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let m = line_nodes(xi_max + f.meta.frequency(r), r);
    let rule = mapped_legendre(if half { m / 2 } else { m }, -r, r)?;
    let m = rule.len();
    let p = out_nodes.len();
    // e[i][q] = w_q e^{-i ξ_i x_q}
    let e: Vec<C64> = out_nodes
        .iter()
        .flat_map(|&xi| {
            rule.nodes
                .iter()
                .zip(&rule.weights)
                .map(move |(&x, &w)| C64::from_polar(w, -xi * x))
        })
        .collect();
    let c = conv.factor(f.n);
    if f.n == 1 {
        let fv: Vec<C64> = rule.nodes.iter().map(|&x| f.eval(&[x])).collect();
        return Ok((0..p)
            .map(|i| (0..m).map(|q| e[i * m + q] * fv[q]).sum::<C64>() * c)
            .collect());
    }
    let fv: Vec<C64> = rule
        .nodes
        .par_iter()
        .flat_map_iter(|&a| rule.nodes.iter().map(move |&b| f.eval(&[a, b])))
        .collect();
    // t[a][j] = Σ_q f[a][q] e[j][q]
    let t: Vec<C64> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let row = &fv[a * m..(a + 1) * m];
            let e = &e;
            (0..p).map(move |j| (0..m).map(|q| row[q] * e[j * m + q]).sum::<C64>())
        })
        .collect();
    Ok((0..p)
        .into_par_iter()
        .flat_map_iter(|i| {
            let e = &e;
            let t = &t;
            (0..p).map(move |j| (0..m).map(|a| e[i * m + a] * t[a * p + j]).sum::<C64>() * c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_fixed_point() {
        let f = FunctionSpec::parse("gaussian:b=1", 1).unwrap();
        for xi in [0.0, 0.7, 2.5, 6.0] {
            let r = fourier_report(&f, &[0], &[xi], FourierConvention::Unitary).unwrap();
            let want = (-xi * xi / 2.0).exp();
            assert!((r.value.re - want).abs() < 1e-10 * want.max(1e-300) + 1e-15, "{xi}");
            assert!(r.value.im.abs() < 1e-14);
        }
    }

    #[test]
    fn hermite_eigen() {
        let f = FunctionSpec::parse("hermite:k=1", 1).unwrap();
        let v = fourier(&f, &[0], &[0.8]).unwrap();
        let want = f.eval(&[0.8]) * C64::new(0.0, -1.0);
        assert!((v - want).norm() < 1e-12);
    }

    #[test]
    fn partial_and_empty() {
        let f = FunctionSpec::parse("gaussian:b=1", 2).unwrap();
        let v = fourier(&f, &[0], &[1.1, 0.4]).unwrap();
        let want = (-(1.1f64 * 1.1 + 0.16) / 2.0).exp();
        assert!((v.re - want).abs() < 1e-12);
        let e = fourier(&f, &[], &[1.1, 0.4]).unwrap();
        assert!((e.re - want).abs() < 1e-15);
        assert!(fourier(&f, &[2], &[0.0, 0.0]).is_err());
        assert!(fourier(&f, &[0], &[0.0]).is_err());
    }

    #[test]
    fn grid_matches_pointwise() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let nodes = [-2.0, 0.5, 3.0];
        let g = fourier_grid(&f, &nodes, FourierConvention::Unitary, false).unwrap();
        for (i, &a) in nodes.iter().enumerate() {
            for (j, &b) in nodes.iter().enumerate() {
                let v = fourier(&f, &[0, 1], &[a, b]).unwrap();
                assert!((g[i * 3 + j] - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn example44_transform() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let a = 0.5f64.sqrt();
        let (xi, eta) = (1.3, -0.6);
        let v = fourier_report(&f, &[0, 1], &[xi, eta], FourierConvention::Unnormalized)
            .unwrap()
            .value;
        let want =
            C64::new(-(a / 2.0) * (xi * xi + eta * eta), a * xi * eta).exp() * (2.0 * PI);
        assert!((v - want).norm() < 1e-10, "{v} {want}");
    }
}
