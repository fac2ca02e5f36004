use crate::error::{Error, Result};
use crate::quadrature::pairwise_sum_c;
use crate::transforms::FunctionSpec;
use crate::C64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

/// Angular samples of the damping integral.
pub const T_ANGULAR_SAMPLES: usize = 256;

/// `Tf(rω) = Σ_m 2^{-m/2} Σ_j f_{mj}(r) Y_{mj}(ω)` for `n = 2`.
///
/// Summing the damped harmonics in closed form gives the Poisson kernel
/// with parameter `q = 2^{-1/2}`:
/// `Tf(r, θ) = (1/2π) ∫ f(r, θ') (1-q²)/(1 - 2q cos(θ-θ') + q²) dθ'`,
/// evaluated by the trapezoid rule, which converges like `q^M`.
pub fn t_operator(f: &FunctionSpec) -> Result<FunctionSpec> {
    if f.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.n });
    }
    let m = T_ANGULAR_SAMPLES;
    let q = FRAC_1_SQRT_2;
    let h = 2.0 * PI / m as f64;
    let kernel: Arc<Vec<f64>> = Arc::new(
        (0..m)
            .map(|i| {
                let c = (h * i as f64).cos();
                h * (1.0 - q * q) / (1.0 - 2.0 * q * c + q * q) / (2.0 * PI)
            })
            .collect(),
    );
    let trig: Arc<Vec<(f64, f64)>> = Arc::new((0..m).map(|i| (h * i as f64).sin_cos()).collect());
    let g = f.clone();
    let id = format!("T[{}]", f.id);
    Ok(FunctionSpec::derived(id, 2, f.meta.clone(), move |x| {
        let r = x[0].hypot(x[1]);
        if r == 0.0 {
            return g.eval(x);
        }
        let (s0, c0) = (x[1] / r, x[0] / r);
        // nodes θ' = θ + ih, so the kernel index is i
        let terms: Vec<C64> = (0..m)
            .map(|i| {
                let (si, ci) = trig[i];
                let p = [r * (c0 * ci - s0 * si), r * (s0 * ci + c0 * si)];
                g.eval(&p) * kernel[i]
            })
            .collect();
        pairwise_sum_c(&terms)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::proj_norms_direct;

    #[test]
    fn radial_and_single_harmonic() {
        let f = FunctionSpec::parse("gaussian:b=0.5", 2).unwrap();
        let t = t_operator(&f).unwrap();
        let h = FunctionSpec::parse("harmonic:m=3,b=0.6", 2).unwrap();
        let th = t_operator(&h).unwrap();
        for &(a, b) in &[(0.3, -1.2), (2.0, 0.7), (-3.1, 2.2), (0.0, 0.0)] {
            assert!((t.eval(&[a, b]) - f.eval(&[a, b])).norm() < 1e-10);
            let want = h.eval(&[a, b]) * 2f64.powf(-1.5);
            assert!((th.eval(&[a, b]) - want).norm() < 1e-10);
        }
    }

    #[test]
    fn contraction() {
        for id in ["example44", "aniso", "chiral:m=1,b=0.8"] {
            let f = FunctionSpec::parse(id, 2).unwrap();
            let tf = t_operator(&f).unwrap();
            let a: f64 = proj_norms_direct(&f, 16).unwrap().energy();
            let b: f64 = proj_norms_direct(&tf, 16).unwrap().energy();
            assert!(b <= a * (1.0 + 1e-10), "{id}");
        }
    }
}
