use super::line_nodes;
use super::profile::{laguerre_inner_all, radial_radius, RadialProfile};
use crate::error::{Error, Result};
use crate::quadrature::{mapped_legendre, pairwise_sum_c, radial_rule, ConvergenceReport};
use crate::special::{bessel_k, kernel_for, lgamma_pos};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UdeltaRoute {
    Integral,
    Series,
}

const SERIES_TAIL: f64 = 1e-14;
const SERIES_KMAX: usize = 400;

fn integral_at(g: &RadialProfile, delta: f64, w: C64, half: bool) -> Result<C64> {
    let kernel = kernel_for(delta)?;
    // |J_δ(iws)/(iws)^δ| ≤ C e^{|Re w| s}: the integrand peaks near |Re w|/(1+2γ)
    let shift = w.re.abs() / (1.0 + 2.0 * g.gamma);
    let r = shift + radial_radius(0.5 + g.gamma, g.c, delta, 20.0);
    let n = line_nodes(w.im.abs() + g.freq, r);
    let rule = radial_rule(delta, r, if half { n / 2 } else { n })?;
    let iw = C64::new(0.0, 1.0) * w;
    let terms: Vec<C64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&s, &wt)| g.eval(s) * kernel.eval(iw * s).unwrap_or(C64::new(f64::NAN, 0.0)) * (wt * (-s * s / 2.0).exp()))
        .collect();
    Ok(pairwise_sum_c(&terms) * (-w * w / 4.0).exp())
}

fn l2_norm(g: &RadialProfile, delta: f64) -> Result<f64> {
    let r = g.radius(delta, 18.0);
    let rule = radial_rule(delta, r, line_nodes(g.freq, r))?;
    Ok(rule.integrate(|s| g.eval(s[0]).norm_sqr()).sqrt())
}

/// Number of series terms needed so that the Cauchy–Schwarz bound
/// `‖g‖ ‖ψ_k‖ 2^{-δ-2k} |w|^{2k}/Γ(k+δ+1)` on every omitted term, summed
/// geometrically, stays below the tail tolerance.
fn series_terms(gnorm: f64, delta: f64, w_abs: f64) -> Result<usize> {
    let q = w_abs * w_abs / 4.0;
    let bound = |k: usize| {
        let kf = k as f64;
        let ln = gnorm.max(1e-300).ln() - delta * LN_2 + kf * q.max(1e-300).ln()
            - 0.5 * (LN_2 + lgamma_pos(kf + delta + 1.0) + lgamma_pos(kf + 1.0));
        ln.exp()
    };
    for k in 1..SERIES_KMAX {
        let kf = k as f64;
        let ratio = q / (kf + 1.0 + delta.max(0.0)).sqrt() / (kf + 1.0).sqrt();
        if ratio < 0.5 && bound(k) / (1.0 - ratio) < SERIES_TAIL {
            return Ok(k);
        }
    }
    Err(Error::NoConvergence(format!(
        "U_delta series needs more than {SERIES_KMAX} terms at |w| = {w_abs}"
    )))
}

fn series_sum(coeffs: &[C64], delta: f64, w: C64) -> C64 {
    let w2 = w * w;
    let mut pw = C64::new(1.0, 0.0);
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, c) in coeffs.iter().enumerate() {
        let kf = k as f64;
        let s = (-delta * LN_2 - 2.0 * kf * LN_2 - lgamma_pos(kf + delta + 1.0)).exp();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(c * pw * (sign * s));
        pw *= w2;
    }
    pairwise_sum_c(&terms)
}

/// `U_δ g(w)` by the requested route, with its half-resolution companion.
pub fn u_delta_report(
    g: &RadialProfile,
    delta: f64,
    w: C64,
    route: UdeltaRoute,
) -> Result<ConvergenceReport> {
    kernel_for(delta)?;
    match route {
        UdeltaRoute::Integral => Ok(ConvergenceReport::new(
            integral_at(g, delta, w, false)?,
            integral_at(g, delta, w, true)?,
        )),
        UdeltaRoute::Series => {
            let k = series_terms(l2_norm(g, delta)?, delta, w.norm())?;
            let reps = laguerre_inner_all(g, delta, k)?;
            let full: Vec<C64> = reps.iter().map(|r| r.value).collect();
            let half: Vec<C64> = reps.iter().map(|r| r.value_at_half_resolution).collect();
            Ok(ConvergenceReport::new(
                series_sum(&full, delta, w),
                series_sum(&half, delta, w),
            ))
        }
    }
}

pub fn u_delta(g: &RadialProfile, delta: f64, w: C64, route: UdeltaRoute) -> Result<C64> {
    Ok(u_delta_report(g, delta, w, route)?.value)
}

/// Weight `h(w) = (2^δ/π)(|w|²/2)^{δ+1} K_δ(|w|²/2)` whose moments are
/// `∫|w|^{4k} h = 2^{1+2δ+4k} Γ(k+1) Γ(k+δ+1)`.
pub fn cholewinski_weight(delta: f64, w_abs: f64) -> Result<f64> {
    let t = w_abs * w_abs / 2.0;
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(2f64.powf(delta) / PI * t.powf(delta + 1.0) * bessel_k(delta, t)?)
}

/// The weight with exponents `(2δ+1, δ+½)` in place of `(δ+1, δ)`; kept to
/// show that its moments miss the identity above.
pub fn cholewinski_weight_alt(delta: f64, w_abs: f64) -> Result<f64> {
    let t = w_abs * w_abs / 2.0;
    if t == 0.0 {
        return Ok(0.0);
    }
    Ok(2f64.powf(delta) / PI * t.powf(2.0 * delta + 1.0) * bessel_k(delta + 0.5, t)?)
}

/// `∫_ℂ |w|^{4k} h(w) dw`, computed in `t = |w|²/2` as `2π ∫ (2t)^{2k} h dt`.
pub fn cholewinski_moment(
    delta: f64,
    k: usize,
    weight: fn(f64, f64) -> Result<f64>,
) -> Result<ConvergenceReport> {
    let p = 2.0 * k as f64 + 2.0 * delta + 2.0;
    let top = p + 14.0 * p.sqrt() + 60.0;
    let run = |n: usize| -> Result<f64> {
        let rule = mapped_legendre(n, 0.0, top)?;
        let mut terms = Vec::with_capacity(n);
        for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
            let h = weight(delta, (2.0 * t).sqrt())?;
            terms.push(w * (2.0 * t).powi(2 * k as i32) * h);
        }
        Ok(2.0 * PI * crate::quadrature::pairwise_sum(&terms))
    };
    Ok(ConvergenceReport::real(run(240)?, run(120)?))
}

/// `2^{1+2δ+4k} Γ(k+1) Γ(k+δ+1)`.
pub fn cholewinski_moment_exact(delta: f64, k: usize) -> f64 {
    let kf = k as f64;
    ((1.0 + 2.0 * delta + 4.0 * kf) * LN_2 + lgamma_pos(kf + 1.0) + lgamma_pos(kf + delta + 1.0))
        .exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_constant() {
        for &d in &[0.0, 0.5, 1.5] {
            let g = RadialProfile::psi(0, d).unwrap();
            for w in [C64::new(0.0, 0.0), C64::new(1.0, 2.0), C64::new(4.0, 0.0)] {
                let want = 2f64.powf(-d - 1.0);
                let a = u_delta(&g, d, w, UdeltaRoute::Integral).unwrap();
                let b = u_delta(&g, d, w, UdeltaRoute::Series).unwrap();
                assert!((a - want).norm() < 1e-10, "int d={d} w={w}: {a}");
                assert!((b - want).norm() < 1e-10, "ser d={d} w={w}: {b}");
            }
        }
    }

    #[test]
    fn first_laguerre_monomial() {
        let d = 1.0;
        let g = RadialProfile::psi(1, d).unwrap();
        let w = C64::new(1.3, 0.4);
        let want = -w * w * 2f64.powf(-d - 3.0);
        let a = u_delta(&g, d, w, UdeltaRoute::Integral).unwrap();
        assert!((a - want).norm() < 1e-10, "{a} {want}");
    }

    #[test]
    fn moments() {
        for &d in &[0.5, 1.0, 2.0] {
            for k in [0usize, 3, 10] {
                let m = cholewinski_moment(d, k, cholewinski_weight).unwrap();
                let want = cholewinski_moment_exact(d, k);
                assert!(((m.value.re - want) / want).abs() < 1e-6, "d={d} k={k}");
            }
        }
        let m = cholewinski_moment(1.0, 2, cholewinski_weight_alt).unwrap();
        let want = cholewinski_moment_exact(1.0, 2);
        assert!(((m.value.re - want) / want).abs() > 1e-2);
    }
}
