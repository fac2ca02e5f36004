use super::function::FunctionSpec;
use super::line_nodes;
use crate::error::{Error, Result};
use crate::quadrature::{mapped_legendre, pairwise_sum_c, ConvergenceReport};
use crate::C64;

/// Precomputed projection of `f e^{-|x|²/2}` onto the line through `ω`:
/// `h(t) = ∫ f(tω + uω⊥) e^{-(t²+u²)/2} du`, so that
/// `Bf(z, ω) = e^{-z²/4} ∫ h(t) e^{zt} dt`.
#[derive(Debug, Clone)]
pub struct BargmannProjector {
    pub omega: [f64; 2],
    nodes: Vec<f64>,
    wh: Vec<C64>,
}

impl BargmannProjector {
    /// Projector accurate for `|z| ≤ rho`. For `n = 1` the direction is ignored.
    pub fn new(f: &FunctionSpec, omega: [f64; 2], rho: f64, half: bool) -> Result<Self> {
        Self::build(f, omega, -rho, rho, rho, half)
    }

    fn build(
        f: &FunctionSpec,
        omega: [f64; 2],
        re_lo: f64,
        re_hi: f64,
        im_max: f64,
        half: bool,
    ) -> Result<Self> {
        if f.n > 2 {
            return Err(Error::InvalidArgument(format!(
                "Bargmann transforms are implemented for n <= 2, got {}",
                f.n
            )));
        }
        if !(f.meta.gamma > 0.0) {
            return Err(Error::Contract(format!("'{}' has no Gaussian envelope", f.id)));
        }
        let norm = (omega[0] * omega[0] + omega[1] * omega[1]).sqrt();
        if f.n == 2 && (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument("omega must be a unit vector".into()));
        }
        let g = f.meta.gamma;
        let a = 0.5 + g;
        // width of e^{-a t²} down to 10^{-20} relative to its peak
        let digits = 20.0 + f.meta.c.max(1.0).log10();
        let h = (digits * std::f64::consts::LN_10 / a).sqrt();
        let lo = re_lo / (1.0 + 2.0 * g) - h;
        let hi = re_hi / (1.0 + 2.0 * g) + h;
        let freq = f.meta.frequency(hi.abs().max(lo.abs()));
        let nt = line_nodes(im_max + freq, 0.5 * (hi - lo));
        let t_rule = mapped_legendre(if half { nt / 2 } else { nt }, lo, hi)?;
        let mut wh = Vec::with_capacity(t_rule.len());
        if f.n == 1 {
            for (&t, &w) in t_rule.nodes.iter().zip(&t_rule.weights) {
                wh.push(f.eval(&[t]) * (w * (-t * t / 2.0).exp()));
            }
        } else {
            let nu = line_nodes(freq, h);
            let u_rule = mapped_legendre(if half { nu / 2 } else { nu }, -h, h)?;
            let perp = [-omega[1], omega[0]];
            let mut terms = Vec::with_capacity(u_rule.len());
            for (&t, &w) in t_rule.nodes.iter().zip(&t_rule.weights) {
                terms.clear();
                for (&u, &wu) in u_rule.nodes.iter().zip(&u_rule.weights) {
                    let x = [t * omega[0] + u * perp[0], t * omega[1] + u * perp[1]];
                    terms.push(f.eval(&x) * (wu * (-(t * t + u * u) / 2.0).exp()));
                }
                wh.push(pairwise_sum_c(&terms) * w);
            }
        }
        Ok(BargmannProjector {
            omega,
            nodes: t_rule.nodes,
            wh,
        })
    }

    pub fn eval(&self, z: C64) -> C64 {
        let terms: Vec<C64> = self
            .nodes
            .iter()
            .zip(&self.wh)
            .map(|(&t, &w)| w * (z * t).exp())
            .collect();
        pairwise_sum_c(&terms) * (-z * z / 4.0).exp()
    }
}

fn single(f: &FunctionSpec, z: C64, omega: [f64; 2]) -> Result<ConvergenceReport> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidArgument("z must be finite".into()));
    }
    let p = BargmannProjector::build(f, omega, z.re, z.re, z.im.abs(), false)?;
    let q = BargmannProjector::build(f, omega, z.re, z.re, z.im.abs(), true)?;
    Ok(ConvergenceReport::new(p.eval(z), q.eval(z)))
}

/// `Bf(z) = e^{-z²/4} ∫ f(x) e^{-x²/2} e^{zx} dx` for `n = 1`.
pub fn bargmann_1d(f: &FunctionSpec, z: C64) -> Result<C64> {
    Ok(bargmann_1d_report(f, z)?.value)
}

pub fn bargmann_1d_report(f: &FunctionSpec, z: C64) -> Result<ConvergenceReport> {
    if f.n != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: f.n });
    }
    single(f, z, [1.0, 0.0])
}

/// `Bf(z, ω) = e^{-z²/4} ∫ f(x) e^{-|x|²/2} e^{z x·ω} dx` for `n = 2`.
pub fn bargmann_vector(f: &FunctionSpec, z: C64, omega: [f64; 2]) -> Result<C64> {
    Ok(bargmann_vector_report(f, z, omega)?.value)
}

pub fn bargmann_vector_report(
    f: &FunctionSpec,
    z: C64,
    omega: [f64; 2],
) -> Result<ConvergenceReport> {
    if f.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.n });
    }
    single(f, z, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ground_states() {
        let f = FunctionSpec::parse("hermite:k=0", 1).unwrap();
        for z in [C64::new(0.0, 0.0), C64::new(1.5, -2.0), C64::new(-3.0, 0.5)] {
            let v = bargmann_1d(&f, z).unwrap();
            assert!((v - PI.powf(0.25)).norm() < 1e-12, "{z} {v}");
        }
        let g = FunctionSpec::parse("hermite:k1=0,k2=0", 2).unwrap();
        let v = bargmann_vector(&g, C64::new(0.7, 1.1), [0.6, 0.8]).unwrap();
        assert!((v - PI.sqrt()).norm() < 1e-12);
    }

    #[test]
    fn first_hermite() {
        let f = FunctionSpec::parse("hermite:k=1", 1).unwrap();
        let z = C64::new(1.2, -0.4);
        let v = bargmann_1d(&f, z).unwrap();
        let c = (2.0 / PI.sqrt()).powf(-0.5);
        assert!((v - z * c).norm() < 1e-12);
    }

    #[test]
    fn projector_matches_direct() {
        let f = FunctionSpec::parse("harmonic:m=2", 2).unwrap();
        let om = [0.8, -0.6];
        let p = BargmannProjector::new(&f, om, 5.0, false).unwrap();
        for z in [C64::new(4.0, 2.0), C64::new(-1.0, 4.5)] {
            let a = p.eval(z);
            let b = bargmann_vector(&f, z, om).unwrap();
            assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{a} {b}");
        }
    }
}
