use super::table::{CoefficientTable, Quantity, Route};
use crate::error::{Error, Result};
use crate::quadrature::{mapped_legendre, pairwise_sum, pairwise_sum_c, ConvergenceReport, QuadratureRule};
use crate::special::{harmonic_count, laguerre_psi_all, lgamma_pos, LaguerreOrder};
use crate::transforms::{laguerre_inner_all, line_nodes_pub, FunctionSpec, RadialProfile};
use crate::C64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Reduced profiles are sampled directly only above this radius.
pub const REDUCED_MIN_RADIUS: f64 = 1e-3;

/// One spherical-harmonic component `f_{mj}(r)` of a function on ℝⁿ,
/// sampled at the radial nodes of its decomposition.
#[derive(Debug, Clone)]
pub struct SphericalProfile {
    pub m: usize,
    pub j: usize,
    pub radii: Vec<f64>,
    pub values: Vec<C64>,
    /// `r^{-m} f_{mj}(r)`; below `REDUCED_MIN_RADIUS` extended by `a + b r²`.
    pub reduced: Vec<C64>,
}

/// Spherical-harmonic analysis of `f` on a radial Gauss–Legendre rule.
#[derive(Debug, Clone)]
pub struct SphericalDecomposition {
    pub n: usize,
    pub m_max: usize,
    pub rule: QuadratureRule,
    pub profiles: Vec<SphericalProfile>,
    /// `Σ_{mj} ∫|f_{mj}|² r^{n-1} dr` over the retained profiles.
    pub energy: f64,
    /// Energy in harmonics of degree above `m_max`.
    pub tail_energy: f64,
    pub angular_samples: usize,
}

impl SphericalDecomposition {
    pub fn profile(&self, m: usize, j: usize) -> Option<&SphericalProfile> {
        self.profiles.iter().find(|p| p.m == m && p.j == j)
    }

    /// `(f̃_{mj}, ψ_k^δ)` in `L²(ℝ₊, r^{2δ+1}dr)`, `δ = n/2 + m - 1`, for
    /// `k ≤ kmax`, evaluated as `∫ f_{mj} ψ_k^δ r^{m+n-1} dr` so that no
    /// division by `r^m` occurs.
    pub fn laguerre_coeffs(&self, p: &SphericalProfile, kmax: usize) -> Result<Vec<C64>> {
        let delta = self.n as f64 / 2.0 + p.m as f64 - 1.0;
        let pw = (p.m + self.n - 1) as i32;
        let mut acc = vec![Vec::with_capacity(self.rule.len()); kmax + 1];
        for (i, (&r, &w)) in self.rule.nodes.iter().zip(&self.rule.weights).enumerate() {
            let v = p.values[i] * (w * r.powi(pw));
            for (k, psi) in laguerre_psi_all(kmax, delta, r)?.into_iter().enumerate() {
                acc[k].push(v * psi);
            }
        }
        Ok(acc.iter().map(|t| pairwise_sum_c(t)).collect())
    }
}

fn sphere_area(n: usize) -> f64 {
    let h = n as f64 / 2.0;
    2.0 * PI.powf(h) / lgamma_pos(h).exp()
}

fn check_decomposable(f: &FunctionSpec) -> Result<()> {
    if f.n < 2 || (f.n != 2 && !f.meta.radial) {
        return Err(Error::InvalidArgument(format!(
            "spherical analysis needs n = 2, or n >= 2 and a radial function; got n={} for '{}'",
            f.n, f.id
        )));
    }
    if !(f.meta.gamma > 0.0) {
        return Err(Error::Contract(format!("'{}' has no Gaussian envelope", f.id)));
    }
    Ok(())
}

/// Radius and node count able to resolve `ψ_k^δ` for levels up to `level`.
fn radial_rule(f: &FunctionSpec, level: usize, half: bool) -> Result<QuadratureRule> {
    let turning = (2.0 * level as f64 + 2.0 * f.n as f64).sqrt();
    let r = f.meta.radius(20.0).max(turning + 8.0);
    let nodes = line_nodes_pub(f.meta.frequency(r) + turning, r / 2.0);
    mapped_legendre(if half { nodes / 2 } else { nodes }, 0.0, r)
}

fn angular_count(f: &FunctionSpec, m_max: usize, r: f64) -> usize {
    let content = f.meta.frequency(r) * r + m_max as f64;
    ((2.0 * content).ceil() as usize + 64).next_power_of_two().max(128)
}

/// Circular-harmonic coefficients `f_{mj}(r)` for `m ≤ m_max` (ordered
/// `(0,1), (1,1), (1,2), ...`) and the energy density `r·Σ_{m>m_max}|f_{mj}|²`.
fn circle_coeffs(f: &FunctionSpec, r: f64, m_max: usize, tab: &[(f64, f64)]) -> (Vec<C64>, f64) {
    let mm = tab.len();
    let h = 2.0 * PI / mm as f64;
    let samples: Vec<C64> = tab.iter().map(|&(c, s)| f.eval(&[r * c, r * s])).collect();
    let top = mm / 2 - 1;
    let mut out = Vec::with_capacity(2 * m_max + 1);
    let mut tail = 0.0;
    for m in 0..=top {
        let (mut a, mut b) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for (i, v) in samples.iter().enumerate() {
            let (c, s) = tab[(m * i) % mm];
            a += v * c;
            b += v * s;
        }
        if m == 0 {
            let c0 = a * (h / (2.0 * PI).sqrt());
            out.push(c0);
            continue;
        }
        let (a, b) = (a * (h / PI.sqrt()), b * (h / PI.sqrt()));
        if m <= m_max {
            out.push(a);
            out.push(b);
        } else {
            tail += a.norm_sqr() + b.norm_sqr();
        }
    }
    (out, tail * r)
}

fn decompose(f: &FunctionSpec, m_max: usize, level: usize, half: bool) -> Result<SphericalDecomposition> {
    check_decomposable(f)?;
    let rule = radial_rule(f, level, half)?;
    let rmax = rule.meta.interval.map(|i| i.1).unwrap_or(12.0);
    if f.n != 2 {
        // radial: a single m = 0 profile
        let c = sphere_area(f.n).sqrt();
        let values: Vec<C64> = rule
            .nodes
            .iter()
            .map(|&r| {
                let mut x = vec![0.0; f.n];
                x[0] = r;
                f.eval(&x) * c
            })
            .collect();
        let energy = pairwise_sum(
            &values
                .iter()
                .zip(&rule.nodes)
                .zip(&rule.weights)
                .map(|((v, r), w)| v.norm_sqr() * r.powi(f.n as i32 - 1) * w)
                .collect::<Vec<_>>(),
        );
        let p = SphericalProfile {
            m: 0,
            j: 1,
            radii: rule.nodes.clone(),
            reduced: values.clone(),
            values,
        };
        return Ok(SphericalDecomposition {
            n: f.n,
            m_max,
            rule,
            profiles: vec![p],
            energy,
            tail_energy: 0.0,
            angular_samples: 1,
        });
    }
    let mm = angular_count(f, m_max, rmax);
    let tab: Vec<(f64, f64)> = (0..mm)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / mm as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let m_max = m_max.min(mm / 2 - 1);
    let rows: Vec<(Vec<C64>, f64)> = rule
        .nodes
        .par_iter()
        .map(|&r| circle_coeffs(f, r, m_max, &tab))
        .collect();
    let small: Vec<(Vec<C64>, Vec<C64>)> = [REDUCED_MIN_RADIUS, 2.0 * REDUCED_MIN_RADIUS]
        .iter()
        .map(|&r| (circle_coeffs(f, r, m_max, &tab).0, vec![]))
        .collect();
    let mut profiles = Vec::new();
    let mut energy_terms = Vec::new();
    let mut slot = 0;
    for m in 0..=m_max {
        for j in 1..=harmonic_count(m) {
            let values: Vec<C64> = rows.iter().map(|r| r.0[slot]).collect();
            let (r1, r2) = (REDUCED_MIN_RADIUS, 2.0 * REDUCED_MIN_RADIUS);
            let g1 = small[0].0[slot] / r1.powi(m as i32);
            let g2 = small[1].0[slot] / r2.powi(m as i32);
            // g ≈ a + b r² through the two anchor points
            let b = (g2 - g1) / (r2 * r2 - r1 * r1);
            let a = g1 - b * (r1 * r1);
            let reduced = rule
                .nodes
                .iter()
                .zip(&values)
                .map(|(&r, &v)| {
                    if r >= REDUCED_MIN_RADIUS {
                        v / r.powi(m as i32)
                    } else {
                        a + b * (r * r)
                    }
                })
                .collect();
            for (i, v) in values.iter().enumerate() {
                energy_terms.push(v.norm_sqr() * rule.nodes[i] * rule.weights[i]);
            }
            profiles.push(SphericalProfile {
                m,
                j,
                radii: rule.nodes.clone(),
                values,
                reduced,
            });
            slot += 1;
        }
    }
    let tail: Vec<f64> = rows.iter().zip(&rule.weights).map(|(r, w)| r.1 * w).collect();
    Ok(SphericalDecomposition {
        n: 2,
        m_max,
        profiles,
        energy: pairwise_sum(&energy_terms),
        tail_energy: pairwise_sum(&tail),
        angular_samples: mm,
        rule,
    })
}

/// Spherical-harmonic profiles of `f` up to degree `m_max`, with the
/// energy left in higher degrees reported as `tail_energy`.
pub fn spherical_decompose(f: &FunctionSpec, m_max: usize) -> Result<SphericalDecomposition> {
    decompose(f, m_max, m_max, false)
}

/// `(g, ψ_k^δ)`, or `R_k^δ(g) = 2Γ(k+1)/Γ(k+δ+1)·(g, ψ_k^δ)` when
/// `normalized`.
pub fn laguerre_coeff(
    g: &RadialProfile,
    order: LaguerreOrder,
    normalized: bool,
) -> Result<ConvergenceReport> {
    let all = laguerre_inner_all(g, order.delta, order.k)?;
    let mut c = all[order.k];
    if normalized {
        let k = order.k as f64;
        let s = 2.0 * (lgamma_pos(k + 1.0) - lgamma_pos(k + order.delta + 1.0)).exp();
        c.value *= s;
        c.value_at_half_resolution *= s;
    }
    Ok(c)
}

/// Squared level contributions per `(L, profile)`: for every level
/// `L ≤ kmax`, the terms `|(f̃_{mj}, ψ_{k'}^δ)|²` with `k' = (L-m)/2`.
struct LevelTerms {
    /// `(L, m, k', δ, |c|²)`
    terms: Vec<(usize, usize, usize, f64, f64)>,
}

fn level_terms(d: &SphericalDecomposition, kmax: usize) -> Result<LevelTerms> {
    let mut terms = Vec::new();
    for p in d.profiles.iter().filter(|p| p.m <= kmax) {
        let kk = (kmax - p.m) / 2;
        let delta = d.n as f64 / 2.0 + p.m as f64 - 1.0;
        let c = d.laguerre_coeffs(p, kk)?;
        for (k1, v) in c.iter().enumerate() {
            terms.push((p.m + 2 * k1, p.m, k1, delta, v.norm_sqr()));
        }
    }
    terms.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    Ok(LevelTerms { terms })
}

fn norms_sq(t: &LevelTerms, kmax: usize) -> Vec<f64> {
    let mut out = vec![Vec::new(); kmax + 1];
    for &(l, _, k1, delta, c2) in &t.terms {
        let k1 = k1 as f64;
        out[l].push(2.0 * (lgamma_pos(k1 + 1.0) - lgamma_pos(k1 + delta + 1.0)).exp() * c2);
    }
    out.iter().map(|v| pairwise_sum(v)).collect()
}

/// `‖P_k f‖₂` for `k ≤ kmax` assembled from Laguerre coefficients of the
/// reduced spherical profiles.
pub fn proj_norms_spherical(f: &FunctionSpec, kmax: usize) -> Result<CoefficientTable> {
    let full = decompose(f, kmax, kmax, false)?;
    let half = decompose(f, kmax, kmax, true)?;
    let a = norms_sq(&level_terms(&full, kmax)?, kmax);
    let b = norms_sq(&level_terms(&half, kmax)?, kmax);
    let mut t = CoefficientTable::new(&f.id, f.n, Route::Spherical, Quantity::ProjNorm);
    t.meta.quadrature = format!(
        "mapped_legendre N={} on [0, {:.6}]; circle trapezoid M={}",
        full.rule.len(),
        full.rule.meta.interval.map(|i| i.1).unwrap_or(0.0),
        full.angular_samples
    );
    for k in 0..=kmax {
        let (x, y) = (a[k].max(0.0).sqrt(), b[k].max(0.0).sqrt());
        t.push(k, x, (x - y).abs());
    }
    Ok(t)
}

pub fn proj_norm_spherical(f: &FunctionSpec, k: usize) -> Result<f64> {
    Ok(proj_norms_spherical(f, k)?.entries[k].value)
}

/// How `∫_{S¹}|d_k(ω)|² dω` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DkRoute {
    /// Cauchy integrals of the vector Bargmann transform, direction by direction.
    Cauchy,
    /// Closed form in the Laguerre coefficients of the reduced profiles.
    Formula,
}

impl DkRoute {
    pub fn name(self) -> &'static str {
        match self {
            DkRoute::Cauchy => "cauchy",
            DkRoute::Formula => "formula",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cauchy" => Ok(DkRoute::Cauchy),
            "formula" => Ok(DkRoute::Formula),
            _ => Err(Error::InvalidArgument(format!("unknown d_k route '{s}'"))),
        }
    }
}

/// Directions used for the sphere integral in the Cauchy route.
pub const DK_DIRECTIONS: usize = 64;

fn dk_formula_values(d: &SphericalDecomposition, kmax: usize) -> Result<Vec<f64>> {
    let t = level_terms(d, kmax)?;
    let n = d.n as f64;
    let mut out = vec![Vec::new(); kmax + 1];
    for &(l, _, k1, delta, c2) in &t.terms {
        out[l].push((-2.0 * lgamma_pos(k1 as f64 + delta + 1.0)).exp() * c2);
    }
    Ok(out
        .iter()
        .enumerate()
        .map(|(l, v)| {
            let pre = (2.0 * PI).powf(n) * 2f64.powf(2.0 - n - 2.0 * l as f64);
            pre * pairwise_sum(v)
        })
        .collect())
}

fn dk_cauchy_values(f: &FunctionSpec, kmax: usize, half: bool) -> Result<Vec<f64>> {
    use crate::transforms::{cauchy_radius, cauchy_samples, BargmannProjector};
    let a = (2.0 * f.meta.gamma).min(0.999);
    let mu = ((1.0 - a) / (1.0 + a)).clamp(0.05, 0.95);
    let radii: Vec<f64> = (0..=kmax)
        .map(|k| if k == 0 { 1.0 } else { cauchy_radius(k, mu) })
        .collect();
    let rho = radii.iter().cloned().fold(0.0, f64::max);
    let m = cauchy_samples(kmax + 1);
    let h = 2.0 * PI / DK_DIRECTIONS as f64;
    let per_dir: Vec<Result<Vec<f64>>> = (0..DK_DIRECTIONS)
        .into_par_iter()
        .map(|i| {
            let th = h * i as f64;
            let p = BargmannProjector::new(f, [th.cos(), th.sin()], rho, half)?;
            let mut out = Vec::with_capacity(kmax + 1);
            for (k, &r) in radii.iter().enumerate() {
                let samples: Vec<C64> = (0..m)
                    .map(|j| p.eval(C64::from_polar(r, 2.0 * PI * j as f64 / m as f64)))
                    .collect();
                let c = crate::transforms::coeffs_from_samples(&samples, r, k + 1);
                out.push(c[k].norm_sqr());
            }
            Ok(out)
        })
        .collect();
    let per_dir = per_dir.into_iter().collect::<Result<Vec<_>>>()?;
    Ok((0..=kmax)
        .map(|k| h * pairwise_sum(&per_dir.iter().map(|v| v[k]).collect::<Vec<_>>()))
        .collect())
}

/// `∫_{S¹}|d_k(ω)|² dω` for `k ≤ kmax`, where `d_k(ω)` are the Taylor
/// coefficients of `z ↦ Bf(z, ω)`.
pub fn d_k_norms(f: &FunctionSpec, kmax: usize, route: DkRoute) -> Result<CoefficientTable> {
    if f.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.n });
    }
    let (a, b, note) = match route {
        DkRoute::Formula => {
            let full = decompose(f, kmax, kmax, false)?;
            let half = decompose(f, kmax, kmax, true)?;
            (
                dk_formula_values(&full, kmax)?,
                dk_formula_values(&half, kmax)?,
                format!("mapped_legendre N={} radial; circle M={}", full.rule.len(), full.angular_samples),
            )
        }
        DkRoute::Cauchy => (
            dk_cauchy_values(f, kmax, false)?,
            dk_cauchy_values(f, kmax, true)?,
            format!("{DK_DIRECTIONS} directions; M={} circle samples", cauchy_samples_for(kmax)),
        ),
    };
    let mut t = CoefficientTable::new(&f.id, 2, Route::Formula, Quantity::TaylorNormSq);
    if route == DkRoute::Cauchy {
        t.route = Route::Cauchy;
    }
    t.meta.quadrature = note;
    for k in 0..=kmax {
        t.push(k, a[k], (a[k] - b[k]).abs());
    }
    Ok(t)
}

fn cauchy_samples_for(kmax: usize) -> usize {
    crate::transforms::cauchy_samples(kmax + 1)
}

/// `‖P_{2k} f‖²` rebuilt from the `d`-norm terms through the weights
/// `c(k, m)`; equals the spherical-route value.
pub fn proj_norms_sq_via_c(f: &FunctionSpec, k: usize) -> Result<f64> {
    use crate::special::c_constant;
    if f.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.n });
    }
    let l = 2 * k;
    let d = decompose(f, l, l, false)?;
    let t = level_terms(&d, l)?;
    let mut terms = Vec::new();
    for &(lv, m, _, delta, c2) in &t.terms {
        if lv != l {
            continue;
        }
        // m is the harmonic degree 2m'
        let mh = m / 2;
        let kk = (k - mh) as f64;
        let dterm = (-2.0 * lgamma_pos(kk + delta + 1.0)).exp() * c2;
        let w = 2f64.powi(2 * mh as i32)
            * c_constant(k, mh, 2)?
            * (lgamma_pos(2.0 * k as f64 + 1.0) - 2.0 * k as f64 * std::f64::consts::LN_2).exp();
        terms.push(2.0 * w * dterm);
    }
    Ok(pairwise_sum(&terms))
}
