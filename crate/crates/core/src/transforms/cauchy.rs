use crate::error::{out_of_range, Result};
use crate::quadrature::pairwise_sum_c;
use crate::C64;
use std::f64::consts::PI;

/// Smallest admissible angular sample count for `count` coefficients.
pub fn cauchy_samples(count: usize) -> usize {
    (8 * count.max(1)).next_power_of_two().max(64)
}

/// Taylor coefficients `c_0..c_{count-1}` of an analytic `g` from `M`
/// samples on the circle `|z| = radius`.
pub fn taylor_coeffs_cauchy(
    g: impl Fn(C64) -> C64,
    radius: f64,
    count: usize,
) -> Result<Vec<C64>> {
    taylor_coeffs_cauchy_m(g, radius, count, cauchy_samples(count))
}

pub fn taylor_coeffs_cauchy_m(
    g: impl Fn(C64) -> C64,
    radius: f64,
    count: usize,
    m: usize,
) -> Result<Vec<C64>> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(out_of_range("radius", radius, "(0, inf)"));
    }
    if !m.is_power_of_two() || m < 8 * count {
        return Err(out_of_range("M", m as f64, "power of two >= 8*count"));
    }
    let samples: Vec<C64> = (0..m)
        .map(|j| g(C64::from_polar(radius, 2.0 * PI * j as f64 / m as f64)))
        .collect();
    Ok(coeffs_from_samples(&samples, radius, count))
}

/// Discrete Cauchy integral applied to precomputed circle samples.
pub fn coeffs_from_samples(samples: &[C64], radius: f64, count: usize) -> Vec<C64> {
    let m = samples.len();
    (0..count)
        .map(|k| {
            let terms: Vec<C64> = samples
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let th = -2.0 * PI * ((k * j) % m) as f64 / m as f64;
                    v * C64::from_polar(1.0, th)
                })
                .collect();
            pairwise_sum_c(&terms) / (m as f64) / radius.powi(k as i32)
        })
        .collect()
}

/// Radius `√(2k/√μ)` that balances the Cauchy estimate for coefficient `k`
/// of a function growing like `e^{μ|z|²/4}`.
pub fn cauchy_radius(k: usize, mu: f64) -> f64 {
    (2.0 * k.max(1) as f64 / mu.sqrt()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_and_exp() {
        let c = taylor_coeffs_cauchy(|z| z * z, 1.0, 5).unwrap();
        for (k, v) in c.iter().enumerate() {
            let want = if k == 2 { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-15);
        }
        let c = taylor_coeffs_cauchy(|z| z.exp(), 1.0, 11).unwrap();
        let mut fact = 1.0;
        for (k, v) in c.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((v.re - 1.0 / fact).abs() < 1e-12 && v.im.abs() < 1e-12);
        }
        assert!(taylor_coeffs_cauchy(|z| z, 0.0, 1).is_err());
    }
}
