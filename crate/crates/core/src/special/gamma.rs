use crate::error::{out_of_range, Result};

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(out_of_range("x", x, "(0, inf)"));
    }
    Ok(lgamma_pos(x))
}

#[inline]
pub(crate) fn lgamma_pos(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `Γ(a)/Γ(b)` computed in log space.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok((log_gamma(a)? - log_gamma(b)?).exp())
}

/// `c(k, m) = 2^{2(k-m)} Γ(k-m+1) Γ(n/2+k+m) / Γ(2k+1)`.
pub fn c_constant(k: usize, m: usize, n: usize) -> Result<f64> {
    if m > k {
        return Err(out_of_range("m", m as f64, "[0, k]"));
    }
    if n == 0 {
        return Err(out_of_range("n", 0.0, "[1, inf)"));
    }
    let (kf, mf, nf) = (k as f64, m as f64, n as f64);
    let ln = 2.0 * (kf - mf) * std::f64::consts::LN_2 + lgamma_pos(kf - mf + 1.0)
        + lgamma_pos(nf / 2.0 + kf + mf)
        - lgamma_pos(2.0 * kf + 1.0);
    Ok(ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_gamma_reference_values() {
        assert_eq!(log_gamma(1.0).unwrap(), 0.0);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-16);
        let half = log_gamma(0.5).unwrap();
        assert!((half - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-15);
        let eleven = log_gamma(11.0).unwrap();
        let exact = (3628800.0f64).ln();
        assert!(((eleven - exact) / exact).abs() < 1e-14);
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
    }

    #[test]
    fn log_gamma_matches_factorials() {
        let mut ln_fact = 0.0f64;
        for n in 1..170u32 {
            if n > 1 {
                ln_fact += ((n - 1) as f64).ln();
            }
            let v = log_gamma(n as f64).unwrap();
            if ln_fact > 1.0 {
                assert!(((v - ln_fact) / ln_fact).abs() < 1e-13, "n={n}");
            }
        }
    }

    #[test]
    fn log_gamma_half_integers() {
        // Γ(m+1/2) = (2m)! √π / (4^m m!)
        for m in 1..60u32 {
            let mut ln = 0.5 * std::f64::consts::PI.ln();
            for j in 1..=m {
                ln += ((2 * j - 1) as f64).ln() - std::f64::consts::LN_2;
            }
            let v = log_gamma(m as f64 + 0.5).unwrap();
            assert!(((v - ln) / ln.abs().max(1.0)).abs() < 1e-13, "m={m}");
        }
    }

    #[test]
    fn c_constant_values() {
        for k in 0..50 {
            assert!((c_constant(k, k, 2).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((c_constant(1, 0, 2).unwrap() - 2.0).abs() < 1e-13);
        assert!((c_constant(2, 0, 2).unwrap() - 8.0 / 3.0).abs() < 1e-13);
        assert!(c_constant(2, 3, 2).is_err());
    }
}
