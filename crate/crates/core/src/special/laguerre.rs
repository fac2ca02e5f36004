use super::gamma::lgamma_pos;
use super::hermite::HERMITE_K_MAX;
use crate::error::{out_of_range, Result};
use serde::{Deserialize, Serialize};

const RESCALE: f64 = 1e100;
const LN_RESCALE: f64 = 230.25850929940458;

/// Degree and type of a Laguerre function `ψ_k^δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaguerreOrder {
    pub k: usize,
    pub delta: f64,
}

impl LaguerreOrder {
    pub fn new(k: usize, delta: f64) -> Result<Self> {
        check_delta(delta)?;
        if k > HERMITE_K_MAX {
            return Err(out_of_range("k", k as f64, "[0, 10000]"));
        }
        Ok(LaguerreOrder { k, delta })
    }
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if !(delta > -0.5) || !delta.is_finite() {
        return Err(out_of_range("delta", delta, "(-1/2, inf)"));
    }
    Ok(())
}

/// `L_k^δ(t) e^{-t/2}` for `k = 0..=kmax`.
pub fn laguerre_fn_all(kmax: usize, delta: f64, t: f64) -> Result<Vec<f64>> {
    check_delta(delta)?;
    if kmax > HERMITE_K_MAX {
        return Err(out_of_range("k", kmax as f64, "[0, 10000]"));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(out_of_range("t", t, "[0, inf)"));
    }
    let mut out = vec![0.0; kmax + 1];
    let mut ln_scale = -t / 2.0;
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for k in 0..=kmax {
        out[k] = cur * ln_scale.exp();
        if k == kmax {
            break;
        }
        let kf = k as f64;
        let next = ((2.0 * kf + delta + 1.0 - t) * cur - (kf + delta) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += LN_RESCALE;
        }
    }
    Ok(out)
}

/// `ψ_k^δ(s) = L_k^δ(s²) e^{-s²/2}`.
pub fn laguerre_psi(order: LaguerreOrder, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(out_of_range("s", s, "[0, inf)"));
    }
    Ok(*laguerre_fn_all(order.k, order.delta, s * s)?.last().unwrap())
}

/// `ψ_0^δ(s), …, ψ_kmax^δ(s)`.
pub fn laguerre_psi_all(kmax: usize, delta: f64, s: f64) -> Result<Vec<f64>> {
    if !(s >= 0.0) {
        return Err(out_of_range("s", s, "[0, inf)"));
    }
    laguerre_fn_all(kmax, delta, s * s)
}

/// `φ_k^{n-1}(z) = L_k^{n-1}(|z|²/2) e^{-|z|²/4}`, given `|z|²`.
pub fn varphi(k: usize, n: usize, z_abs_sq: f64) -> Result<f64> {
    Ok(*varphi_all(k, n, z_abs_sq)?.last().unwrap())
}

/// `φ_0^{n-1}, …, φ_kmax^{n-1}` at a point with squared modulus `z_abs_sq`.
pub fn varphi_all(kmax: usize, n: usize, z_abs_sq: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(out_of_range("n", 0.0, "[1, inf)"));
    }
    laguerre_fn_all(kmax, n as f64 - 1.0, z_abs_sq / 2.0)
}

/// `‖ψ_k^δ‖² = Γ(k+δ+1) / (2 Γ(k+1))` in `L²(ℝ₊, s^{2δ+1} ds)`.
pub fn psi_norm_sq(k: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let kf = k as f64;
    Ok(0.5 * (lgamma_pos(kf + delta + 1.0) - lgamma_pos(kf + 1.0)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let e = (-0.5f64).exp();
        assert!((laguerre_psi(LaguerreOrder::new(0, 2.5).unwrap(), 1.0).unwrap() - e).abs() < 1e-16);
        assert!((laguerre_psi(LaguerreOrder::new(1, 1.0).unwrap(), 1.0).unwrap() - e).abs() < 1e-16);
        assert!(laguerre_psi(LaguerreOrder::new(1, 0.0).unwrap(), 1.0).unwrap().abs() < 1e-16);
        assert_eq!(varphi(0, 2, 0.0).unwrap(), 1.0);
        assert!((varphi(3, 2, 0.0).unwrap() - 4.0).abs() < 1e-14);
        assert!(varphi(1, 1, 2.0).unwrap().abs() < 1e-16);
        assert!(LaguerreOrder::new(1, -0.5).is_err());
    }

    #[test]
    fn explicit_degree_two() {
        // L_2^δ(x) = (x² - 2(δ+2)x + (δ+1)(δ+2)) / 2
        for &d in &[0.0, 0.5, 1.0, 2.5] {
            for &x in &[0.0, 0.3, 2.0, 7.5] {
                let want = (x * x - 2.0 * (d + 2.0) * x + (d + 1.0) * (d + 2.0)) / 2.0
                    * (-x / 2.0f64).exp();
                let got = laguerre_fn_all(2, d, x).unwrap()[2];
                assert!((got - want).abs() < 1e-13 * (1.0 + want.abs()));
            }
        }
    }

    #[test]
    fn generating_function() {
        // Σ L_k^δ(x) r^k = (1-r)^{-δ-1} exp(-x r/(1-r))
        for &r in &[0.1, 0.5, 0.9f64] {
            for &x in &[0.5, 1.0, 4.0f64] {
                for &d in &[0.0, 1.0, 1.5f64] {
                    // crude tail bound |L_k^δ(x)e^{-x/2}| ≤ C(k+1)^δ: stop when r^K K^δ tiny
                    let mut kk = 10usize;
                    while (kk as f64).powf(d + 1.0) * r.powi(kk as i32) > 1e-14 {
                        kk += 10;
                    }
                    let v = laguerre_fn_all(kk, d, x).unwrap();
                    let mut sum = 0.0;
                    for (k, l) in v.iter().enumerate() {
                        sum += l * r.powi(k as i32);
                    }
                    let want = (1.0 - r).powf(-d - 1.0) * (-0.5 * (1.0 + r) / (1.0 - r) * x).exp();
                    assert!((sum - want).abs() < 1e-10, "r={r} x={x} d={d}");
                }
            }
        }
    }

    #[test]
    fn far_argument_does_not_overflow() {
        let v = laguerre_psi_all(400, 1.0, 40.0).unwrap();
        assert!(v.iter().all(|x| x.is_finite()));
        let w = laguerre_psi_all(5000, 0.5, 120.0).unwrap();
        assert!(w.iter().all(|x| x.is_finite()));
        assert!(w[5000] != 0.0);
    }

    #[test]
    fn norms() {
        assert!((psi_norm_sq(0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((psi_norm_sq(1, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((psi_norm_sq(2, 1.0).unwrap() - 1.5).abs() < 1e-14);
    }
}
