use super::profile::{profile_rule, RadialProfile};
use crate::error::Result;
use crate::quadrature::{pairwise_sum_c, ConvergenceReport};
use crate::special::kernel_for;
use crate::C64;

fn hankel_at(g: &RadialProfile, delta: f64, r: f64, half: bool) -> Result<C64> {
    let kernel = kernel_for(delta)?;
    let rule = profile_rule(g, delta, r, 0.0, half)?;
    let terms: Vec<C64> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&s, &w)| g.eval(s) * (w * kernel.eval_real(r * s)))
        .collect();
    Ok(pairwise_sum_c(&terms))
}

/// `H_δ g(r) = ∫₀^∞ g(s) J_δ(rs)/(rs)^δ s^{2δ+1} ds`.
pub fn hankel(g: &RadialProfile, delta: f64, r: f64) -> Result<C64> {
    Ok(hankel_report(g, delta, r)?.value)
}

pub fn hankel_report(g: &RadialProfile, delta: f64, r: f64) -> Result<ConvergenceReport> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(crate::error::out_of_range("r", r, "[0, inf)"));
    }
    Ok(ConvergenceReport::new(
        hankel_at(g, delta, r, false)?,
        hankel_at(g, delta, r, true)?,
    ))
}

/// `H_δ g` as a profile with the declared envelope exponent `gamma_out`.
pub fn hankel_profile(g: &RadialProfile, delta: f64, gamma_out: f64) -> Result<RadialProfile> {
    kernel_for(delta)?;
    let inner = g.clone();
    let freq = g.radius(delta, 18.0);
    RadialProfile::from_fn(format!("H_{delta}[{}]", g.name), gamma_out, freq, move |r| {
        hankel_at(&inner, delta, r, false).unwrap_or(C64::new(f64::NAN, f64::NAN))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::laguerre_psi_all;

    #[test]
    fn psi_eigen() {
        for &d in &[0.0, 0.5, 2.0] {
            for k in [0usize, 1, 5] {
                let g = RadialProfile::psi(k, d).unwrap();
                for r in [0.0, 0.9, 3.0] {
                    let v = hankel(&g, d, r).unwrap();
                    let want = laguerre_psi_all(k, d, r).unwrap()[k] * if k % 2 == 0 { 1.0 } else { -1.0 };
                    assert!((v.re - want).abs() < 1e-10, "d={d} k={k} r={r}: {v} {want}");
                }
            }
        }
    }

    #[test]
    fn gaussian_closed_form() {
        let g = RadialProfile::gaussian(0.7).unwrap();
        let d = 1.0;
        let r: f64 = 2.2;
        let want = (2.0f64 * 0.7).powf(-d - 1.0) * (-r * r / (4.0 * 0.7)).exp();
        let rep = hankel_report(&g, d, r).unwrap();
        assert!((rep.value.re - want).abs() < 1e-12);
        assert!(rep.est_rel_err < 1e-8);
    }
}
