use crate::error::{Error, Result};
use crate::transforms::{fourier_grid, fourier_spec, hankel_profile, FourierConvention, FunctionSpec, RadialProfile};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Smallest magnitude that enters an envelope estimate.
pub const UNDERFLOW_FLOOR: f64 = 1e-250;
/// Relative noise floor applied to transforms computed by quadrature.
pub const QUADRATURE_FLOOR: f64 = 1e-9;

/// Gaussian envelope `|f(x)| ≤ C* e^{-γ*|x|²}` measured on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeEstimate {
    pub gamma_star: f64,
    pub c_star: f64,
    pub annulus: [f64; 2],
    /// Raising γ* by 5% moves the weighted supremum to the outer edge.
    pub boundary_attained: bool,
    /// `a` in the convention `|f| ≤ C e^{-a|x|²/2}`.
    pub a_half: f64,
    /// `a` in the convention `|f| ≤ C e^{-a|x|²}`.
    pub a_full: f64,
    pub points: usize,
}

/// `(|x|, |f(x)|)` pairs.
type Samples = Vec<(f64, f64)>;

fn check_annulus(annulus: [f64; 2]) -> Result<()> {
    let [r0, r1] = annulus;
    if !(r0 >= 0.5) || !(r1 <= 12.0) || !(r1 > r0) {
        return Err(Error::InvalidArgument(format!(
            "annulus must satisfy 0.5 <= r0 < R <= 12, got [{r0}, {r1}]"
        )));
    }
    Ok(())
}

/// Outer fraction of the annulus that counts as its boundary.
const EDGE: f64 = 0.05;

/// `γ*` is the largest exponent for which the grid maximum of
/// `|f(x)| e^{γ|x|²}` over the annulus stays off its outer edge (the usable
/// reach `R_eff`, past which `|f|` is below the floor); `C*` is the grid
/// supremum of `|f| e^{γ*|x|²}` over `|x| ≤ R_eff`. For `C e^{-γ|x|²}` this
/// is exactly `(γ, C)`; a polynomial factor lowers γ* by `O(1/R²)`.
pub(crate) fn envelope_from_samples(
    samples: &[(f64, f64)],
    annulus: [f64; 2],
    floor_rel: f64,
) -> Result<EnvelopeEstimate> {
    let m = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let floor = UNDERFLOW_FLOOR.max(floor_rel * m);
    let usable: Vec<(f64, f64)> = samples
        .iter()
        .filter(|&&(r, v)| r >= annulus[0] && r <= annulus[1] && v >= floor && v.is_finite())
        .map(|&(r, v)| (r * r, v.ln()))
        .collect();
    if usable.len() < 2 || !(m > 0.0) {
        return Err(Error::Contract("all grid values underflow".into()));
    }
    let reach = usable.iter().map(|s| s.0).fold(0.0, f64::max).sqrt();
    let edge = reach - EDGE * (reach - annulus[0]);
    let edge2 = edge * edge;
    let at_edge = |g: f64| {
        let best = usable
            .iter()
            .fold((0.0, f64::NEG_INFINITY), |a, &(r2, lv)| {
                let w = lv + g * r2;
                if w > a.1 {
                    (r2, w)
                } else {
                    a
                }
            });
        best.0 >= edge2
    };
    let (mut lo, mut hi) = (0.0, 64.0);
    let gamma = if at_edge(0.0) {
        0.0
    } else {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at_edge(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        lo
    };
    let c = samples
        .iter()
        .filter(|s| s.0 <= reach && s.1 >= floor)
        .map(|&(r, v)| v * (gamma * r * r).exp())
        .fold(0.0, f64::max);
    Ok(EnvelopeEstimate {
        gamma_star: gamma,
        c_star: c,
        annulus,
        boundary_attained: at_edge(1.05 * gamma),
        a_half: 2.0 * gamma,
        a_full: gamma,
        points: usable.len(),
    })
}

fn polar_samples(f: &FunctionSpec, r1: f64, dr: f64, angles: usize) -> Samples {
    let nr = (r1 / dr).round() as usize;
    (0..=nr)
        .into_par_iter()
        .flat_map_iter(|i| {
            let r = i as f64 * dr;
            (0..angles).map(move |j| {
                let t = 2.0 * PI * j as f64 / angles as f64;
                (r, f.eval(&[r * t.cos(), r * t.sin()]).norm())
            })
        })
        .collect()
}

fn ray_samples(f: &FunctionSpec, r1: f64, dr: f64) -> Samples {
    let nr = (r1 / dr).round() as usize;
    (0..=nr)
        .map(|i| {
            let r = i as f64 * dr;
            let mut x = vec![0.0; f.n];
            x[0] = r;
            (r, f.eval(&x).norm())
        })
        .collect()
}

fn line_samples(f: &FunctionSpec, r1: f64, dr: f64) -> Samples {
    let nr = (r1 / dr).round() as isize;
    (-nr..=nr)
        .map(|i| {
            let x = i as f64 * dr;
            (x.abs(), f.eval(&[x]).norm())
        })
        .collect()
}

fn function_samples(f: &FunctionSpec, r1: f64, coarse: bool) -> Result<Samples> {
    match f.n {
        1 => Ok(line_samples(f, r1, if coarse { 0.02 } else { 0.005 })),
        2 => Ok(if coarse {
            polar_samples(f, r1, 0.05, 64)
        } else {
            polar_samples(f, r1, 0.02, 128)
        }),
        _ if f.meta.radial => Ok(ray_samples(f, r1, 0.01)),
        n => Err(Error::InvalidArgument(format!(
            "envelopes are sampled for n <= 2 or radial functions, got n={n}"
        ))),
    }
}

/// Envelope of `f` on the annulus `r₀ ≤ |x| ≤ R`.
pub fn hardy_envelope(f: &FunctionSpec, annulus: [f64; 2]) -> Result<EnvelopeEstimate> {
    check_annulus(annulus)?;
    envelope_from_samples(&function_samples(f, annulus[1], false)?, annulus, 0.0)
}

/// Envelope of `f̂` (unitary convention), computed by quadrature.
pub fn hardy_envelope_hat(f: &FunctionSpec, annulus: [f64; 2]) -> Result<EnvelopeEstimate> {
    check_annulus(annulus)?;
    let r1 = annulus[1];
    let samples: Samples = match f.n {
        1 | 2 => {
            let h = if f.n == 1 { 0.01 } else { 0.1 };
            let nr = (r1 / h).round() as isize;
            let nodes: Vec<f64> = (-nr..=nr).map(|i| i as f64 * h).collect();
            let vals = fourier_grid(f, &nodes, FourierConvention::Unitary, false)?;
            if f.n == 1 {
                nodes.iter().zip(&vals).map(|(x, v)| (x.abs(), v.norm())).collect()
            } else {
                let m = nodes.len();
                vals.iter()
                    .enumerate()
                    .map(|(i, v)| (nodes[i / m].hypot(nodes[i % m]), v.norm()))
                    .collect()
            }
        }
        n if f.meta.radial => {
            let (g, delta) = radial_profile(f)?;
            let gh = hankel_profile(&g, delta, f.meta.gamma_hat.unwrap_or(f.meta.gamma))?;
            let _ = n;
            (0..=(r1 / 0.02).round() as usize)
                .map(|i| {
                    let r = i as f64 * 0.02;
                    (r, gh.eval(r).norm())
                })
                .collect()
        }
        n => {
            return Err(Error::InvalidArgument(format!(
                "transform envelopes need n <= 2 or a radial function, got n={n}"
            )))
        }
    };
    envelope_from_samples(&samples, annulus, QUADRATURE_FLOOR)
}

/// Envelope of a partial Fourier transform in the variables `subset`.
pub fn hardy_envelope_partial(
    f: &FunctionSpec,
    subset: &[usize],
    annulus: [f64; 2],
) -> Result<EnvelopeEstimate> {
    check_annulus(annulus)?;
    if subset.len() == f.n {
        return hardy_envelope_hat(f, annulus);
    }
    let g = fourier_spec(f, subset, FourierConvention::Unitary)?;
    envelope_from_samples(&function_samples(&g, annulus[1], true)?, annulus, QUADRATURE_FLOOR)
}

/// Radial profile `g(s) = f(s e₁)` and the Hankel order `n/2 - 1`.
pub fn radial_profile(f: &FunctionSpec) -> Result<(RadialProfile, f64)> {
    if !f.meta.radial || f.n < 2 {
        return Err(Error::InvalidArgument(format!(
            "'{}' is not a radial function on R^n with n >= 2",
            f.id
        )));
    }
    let n = f.n;
    let h = f.clone();
    let g = RadialProfile::from_fn(format!("{}|ray", f.id), f.meta.gamma, f.meta.frequency(12.0), move |s| {
        let mut x = vec![0.0; n];
        x[0] = s;
        h.eval(&x)
    })?;
    Ok((g, n as f64 / 2.0 - 1.0))
}

/// Envelope of a radial profile on `[r₀, R]`.
pub fn profile_envelope(g: &RadialProfile, annulus: [f64; 2], floor_rel: f64) -> Result<EnvelopeEstimate> {
    check_annulus(annulus)?;
    let samples: Samples = (0..=(annulus[1] / 0.01).round() as usize)
        .map(|i| {
            let r = i as f64 * 0.01;
            (r, g.eval(r).norm())
        })
        .collect();
    envelope_from_samples(&samples, annulus, floor_rel)
}

/// Envelope of the spherical L² means `(∫_{S¹}|f(sη)|² dη)^{1/2}` of `f`
/// (or of `f̂` when `hat`), `n = 2`.
pub fn spherical_mean_envelope(f: &FunctionSpec, annulus: [f64; 2], hat: bool) -> Result<EnvelopeEstimate> {
    check_annulus(annulus)?;
    if f.n != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.n });
    }
    let (g, floor, dr, angles) = if hat {
        (fourier_spec(f, &[0, 1], FourierConvention::Unitary)?, QUADRATURE_FLOOR, 0.5, 24)
    } else {
        (f.clone(), 0.0, 0.02, 128)
    };
    let nr = (annulus[1] / dr).round() as usize;
    let h = 2.0 * PI / angles as f64;
    let samples: Samples = (0..=nr)
        .into_par_iter()
        .map(|i| {
            let r = i as f64 * dr;
            let s: f64 = (0..angles)
                .map(|j| {
                    let t = h * j as f64;
                    g.eval(&[r * t.cos(), r * t.sin()]).norm_sqr()
                })
                .sum();
            (r, (s * h).sqrt())
        })
        .collect();
    envelope_from_samples(&samples, annulus, floor)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANN: [f64; 2] = [0.5, 12.0];

    #[test]
    fn gaussian_exact() {
        for n in [1, 2, 3] {
            let f = FunctionSpec::parse("gaussian:b=0.6", n).unwrap();
            let e = hardy_envelope(&f, ANN).unwrap();
            assert!((e.gamma_star - 0.3).abs() < 1e-10, "n={n}");
            assert!((e.c_star - 1.0).abs() < 1e-10);
            assert!((e.a_half - 0.6).abs() < 1e-10);
        }
    }

    #[test]
    fn example44_and_transform() {
        let f = FunctionSpec::parse("example44", 2).unwrap();
        let a = 0.5f64.sqrt();
        let e = hardy_envelope(&f, ANN).unwrap();
        assert!((e.gamma_star - a / 2.0).abs() < 1e-10);
        let h = hardy_envelope_hat(&f, ANN).unwrap();
        assert!((h.gamma_star - a / 2.0).abs() < 1e-6, "{}", h.gamma_star);
        assert!((h.c_star - 1.0).abs() < 1e-6);
    }

    #[test]
    fn hermite_not_attained() {
        let f = FunctionSpec::parse("hermite:k=2", 1).unwrap();
        let a = hardy_envelope(&f, [3.0, 6.0]).unwrap();
        let b = hardy_envelope(&f, [6.0, 12.0]).unwrap();
        assert!(a.gamma_star < b.gamma_star && b.gamma_star < 0.5, "{} {}", a.gamma_star, b.gamma_star);
        assert!(b.gamma_star > 0.48);
    }

    #[test]
    fn boundary_flag_and_errors() {
        let f = FunctionSpec::parse("gaussian:b=0.5", 1).unwrap();
        assert!(hardy_envelope(&f, ANN).unwrap().boundary_attained);
        assert!(hardy_envelope(&f, [0.1, 12.0]).is_err());
        let z = FunctionSpec::custom("zero", 1, 1.0, |_| crate::C64::new(0.0, 0.0)).unwrap();
        assert!(hardy_envelope(&z, ANN).is_err());
    }

    #[test]
    fn spherical_means() {
        let f = FunctionSpec::parse("harmonic:m=2,b=0.8", 2).unwrap();
        let e = spherical_mean_envelope(&f, ANN, false).unwrap();
        assert!(e.gamma_star > 0.38 && e.gamma_star < 0.4, "{}", e.gamma_star);
    }
}
