use super::line_nodes;
use crate::error::{Error, Result};
use crate::quadrature::{radial_rule, ConvergenceReport, QuadratureRule};
use crate::special::{laguerre_psi_all, LaguerreOrder};
use crate::C64;
use std::fmt;
use std::sync::Arc;

type Eval1 = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// A radial profile `g(s)`, `s ≥ 0`, with a Gaussian envelope
/// `|g(s)| ≤ C e^{-γ s²}`.
#[derive(Clone)]
pub struct RadialProfile {
    pub name: String,
    pub gamma: f64,
    pub c: f64,
    /// Bound on the local angular frequency of `g`.
    pub freq: f64,
    f: Eval1,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("name", &self.name)
            .field("gamma", &self.gamma)
            .field("c", &self.c)
            .finish()
    }
}

impl RadialProfile {
    /// Wraps `f`; `C` is measured as the sup of `|g| e^{γs²}` on `[0, 12]`.
    pub fn from_fn(
        name: impl Into<String>,
        gamma: f64,
        freq: f64,
        f: impl Fn(f64) -> C64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::BadParameter(format!(
                "envelope exponent must be positive, got {gamma}"
            )));
        }
        let mut c = 0.0f64;
        for i in 0..=1200 {
            let s = 0.01 * i as f64;
            c = c.max(f(s).norm() * (gamma * s * s).exp());
        }
        if !c.is_finite() {
            return Err(Error::Contract(format!("envelope e^(-{gamma} s^2) violated")));
        }
        Ok(RadialProfile {
            name: name.into(),
            gamma,
            c: c.max(1e-300),
            freq,
            f: Arc::new(f),
        })
    }

    /// `e^{-b s²}`.
    pub fn gaussian(b: f64) -> Result<Self> {
        Self::mixture(&[(1.0, b)])
    }

    /// `Σ cᵢ e^{-bᵢ s²}`.
    pub fn mixture(terms: &[(f64, f64)]) -> Result<Self> {
        if terms.is_empty() || terms.iter().any(|&(_, b)| !(b > 0.0)) {
            return Err(Error::BadParameter("mixture needs positive exponents".into()));
        }
        let gamma = terms.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
        let t: Vec<(f64, f64)> = terms.to_vec();
        let name = t
            .iter()
            .map(|(c, b)| format!("{c}*exp(-{b}s^2)"))
            .collect::<Vec<_>>()
            .join("+");
        Self::from_fn(name, gamma, 0.0, move |s| {
            C64::new(t.iter().map(|(c, b)| c * (-b * s * s).exp()).sum(), 0.0)
        })
    }

    /// The Laguerre function `ψ_k^δ`.
    pub fn psi(k: usize, delta: f64) -> Result<Self> {
        LaguerreOrder::new(k, delta)?;
        let freq = (4.0 * k as f64 + 2.0 * delta + 2.0).sqrt();
        Self::from_fn(format!("psi_{k}^{delta}"), 0.25, freq, move |s| {
            C64::new(laguerre_psi_all(k, delta, s).map(|v| v[k]).unwrap_or(f64::NAN), 0.0)
        })
    }

    pub fn eval(&self, s: f64) -> C64 {
        (self.f)(s)
    }

    /// Radius past which `C s^{2δ+1} e^{-γ s²} < 10^{-digits}`.
    pub fn radius(&self, delta: f64, digits: f64) -> f64 {
        radial_radius(self.gamma, self.c, delta, digits)
    }
}

/// Radius where `C s^{2δ+1} e^{-γ s²}` drops below `10^{-digits}`.
pub(crate) fn radial_radius(gamma: f64, c: f64, delta: f64, digits: f64) -> f64 {
    let target = digits * std::f64::consts::LN_10 + c.max(1.0).ln();
    let mut r = (target / gamma).sqrt();
    for _ in 0..6 {
        let extra = (2.0 * delta + 1.0).max(0.0) * r.max(1.0).ln();
        r = ((target + extra) / gamma).sqrt();
    }
    r
}

/// Radial rule adequate for `g` times an oscillation of frequency `omega`,
/// reaching at least `min_radius`.
pub(crate) fn profile_rule(
    g: &RadialProfile,
    delta: f64,
    omega: f64,
    min_radius: f64,
    half: bool,
) -> Result<QuadratureRule> {
    let r = g.radius(delta, 18.0).max(min_radius);
    let n = line_nodes(omega + g.freq, r);
    radial_rule(delta, r, if half { n / 2 } else { n })
}

/// Inner products `(g, ψ_k^δ)` for `k = 0..=kmax`, with half-resolution
/// companions.
pub fn laguerre_inner_all(
    g: &RadialProfile,
    delta: f64,
    kmax: usize,
) -> Result<Vec<ConvergenceReport>> {
    let turning = (4.0 * kmax as f64 + 2.0 * delta + 2.0).sqrt();
    let omega = turning;
    let run = |half: bool| -> Result<Vec<C64>> {
        let rule = profile_rule(g, delta, omega, turning + 8.0, half)?;
        let mut acc = vec![Vec::with_capacity(rule.len()); kmax + 1];
        for (i, &s) in rule.nodes.iter().enumerate() {
            let gs = g.eval(s) * rule.weights[i];
            let psi = laguerre_psi_all(kmax, delta, s)?;
            for k in 0..=kmax {
                acc[k].push(gs * psi[k]);
            }
        }
        Ok(acc.iter().map(|t| crate::quadrature::pairwise_sum_c(t)).collect())
    };
    let full = run(false)?;
    let half = run(true)?;
    Ok(full
        .into_iter()
        .zip(half)
        .map(|(a, b)| ConvergenceReport::new(a, b))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::log_gamma;

    #[test]
    fn psi_inner_products() {
        for &d in &[0.0, 1.0, 1.5] {
            let g = RadialProfile::psi(0, d).unwrap();
            let c = laguerre_inner_all(&g, d, 3).unwrap();
            let want = (log_gamma(d + 1.0).unwrap()).exp() / 2.0;
            assert!((c[0].value.re - want).abs() < 1e-12, "{d}");
            assert!(c[1].value.norm() < 1e-12);
        }
    }

    #[test]
    fn radius_monotone() {
        assert!(radial_radius(0.25, 1.0, 2.0, 18.0) > radial_radius(0.25, 1.0, 0.0, 18.0));
        let r = radial_radius(0.5, 1.0, 0.0, 18.0);
        assert!(r * (-0.5 * r * r).exp() < 1e-18 * 1.01);
    }
}
