use super::table::{CoefficientTable, Quantity, Route};
use crate::error::{Error, Result};
use crate::quadrature::pairwise_sum;
use crate::special::varphi_all;
use crate::transforms::{wigner_field, ComplexField, FunctionSpec, WignerConfig};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `∫ V(f,f)(z) φ_k(z) dz` for `k ≤ kmax`, scaled by `(2π)^{-n/2}`, with
/// the matching sums of `|V φ_k|` (the scale of the cancellation).
fn level_integrals(field: &ComplexField, kmax: usize) -> Result<(Vec<C64>, Vec<f64>)> {
    let d = field.grid.real_dim();
    let n = field.n;
    let idx: Vec<usize> = (0..field.values.len()).collect();
    let blocks: Vec<Result<(Vec<C64>, Vec<f64>)>> = idx
        .par_chunks(4096)
        .map(|chunk| {
            let mut z = vec![0.0; d];
            let mut acc = vec![C64::new(0.0, 0.0); kmax + 1];
            let mut mag = vec![0.0; kmax + 1];
            for &i in chunk {
                let w = field.grid.node(i, &mut z);
                let r2: f64 = z.iter().map(|t| t * t).sum();
                let v = field.values[i] * w;
                for ((a, m), p) in acc.iter_mut().zip(&mut mag).zip(varphi_all(kmax, n, r2)?) {
                    *a += v * p;
                    *m += (v * p).norm();
                }
            }
            Ok((acc, mag))
        })
        .collect();
    let blocks = blocks.into_iter().collect::<Result<Vec<_>>>()?;
    let norm = (2.0 * PI).powf(-(n as f64) / 2.0);
    let sums = (0..=kmax)
        .map(|k| {
            let re: Vec<f64> = blocks.iter().map(|b| b.0[k].re).collect();
            let im: Vec<f64> = blocks.iter().map(|b| b.0[k].im).collect();
            C64::new(pairwise_sum(&re), pairwise_sum(&im)) * norm
        })
        .collect();
    let mags = (0..=kmax)
        .map(|k| pairwise_sum(&blocks.iter().map(|b| b.1[k]).collect::<Vec<_>>()) * norm)
        .collect();
    Ok((sums, mags))
}

/// Levels whose integral is within this many ulps of `Σ|V φ_k|` are
/// indistinguishable from zero.
pub const ROUNDOFF_ULPS: f64 = 64.0;

/// `‖P_k f‖₂` for `k ≤ kmax` through `(2π)^{-n/2} ∫ V(f,f) φ_k`.
///
/// The imaginary part must stay below `1e-8·max(1, ‖f‖²)`. Levels at the
/// round-off floor are reported as 0 with the floor's square root as
/// `est_err`; they and slightly negative levels are listed in the meta.
pub fn proj_norms_wigner(f: &FunctionSpec, kmax: usize) -> Result<CoefficientTable> {
    if f.n > 2 {
        return Err(Error::Budget(format!("Wigner route supports n <= 2, got n={}", f.n)));
    }
    let cfg = WignerConfig::for_pair(f, f)?;
    let (full, mag) = level_integrals(&wigner_field(f, f, &cfg)?, kmax)?;
    let (half, _) = level_integrals(&wigner_field(f, f, &cfg.half(f.n))?, kmax)?;
    let scale = f.norm_sq_exact().unwrap_or(1.0).max(1.0);
    let mut t = CoefficientTable::new(&f.id, f.n, Route::Wigner, Quantity::ProjNorm);
    t.meta.quadrature = format!(
        "gauss_hermite tensor {}^{} alpha={:.6}; s: mapped_legendre N={} on [-{:.6}, {:.6}]",
        cfg.per_axis,
        2 * f.n,
        cfg.alpha,
        cfg.s_nodes,
        cfg.s_radius,
        cfg.s_radius
    );
    for k in 0..=kmax {
        let (v, h) = (full[k], half[k]);
        if v.im.abs() > 1e-8 * scale {
            return Err(Error::Contract(format!(
                "level {k}: imaginary part {:.3e} of the Wigner integral exceeds tolerance",
                v.im
            )));
        }
        if v.re < -1e-8 * scale {
            return Err(Error::Contract(format!(
                "level {k}: squared norm {:.3e} is negative beyond tolerance",
                v.re
            )));
        }
        // cancellation round-off of the grid sum
        let floor = ROUNDOFF_ULPS * f64::EPSILON * mag[k];
        if v.re.abs() <= floor {
            t.meta.clamped.push(k);
            t.push(k, 0.0, floor.sqrt());
            continue;
        }
        if v.re < 0.0 {
            t.meta.clamped.push(k);
        }
        let a = v.re.max(0.0).sqrt();
        let b = h.re.max(0.0).sqrt();
        t.push(k, a, (a - b).abs());
    }
    Ok(t)
}

pub fn proj_norm_wigner(f: &FunctionSpec, k: usize) -> Result<f64> {
    Ok(proj_norms_wigner(f, k)?.entries[k].value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_1d() {
        let f = FunctionSpec::parse("hermite:k=0", 1).unwrap();
        let t = proj_norms_wigner(&f, 3).unwrap();
        assert!((t.entries[0].value - 1.0).abs() < 1e-10);
        for e in &t.entries[1..] {
            assert!(e.value < 1e-6, "{}", e.value);
        }
    }

    #[test]
    fn example44_levels() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let t = proj_norms_wigner(&f, 20).unwrap();
        let a = 0.5f64.sqrt();
        let mu = (1.0 - a) / (1.0 + a);
        for k in 0..=10 {
            let want = 2.0 * PI / (1.0 + a) * mu.powi(k as i32);
            let got = t.entries[2 * k].value.powi(2);
            assert!((got / want - 1.0).abs() < 1e-6, "k={k}");
        }
        for k in 0..10 {
            assert!(t.entries[2 * k + 1].value < 1e-7);
        }
    }
}
