use super::{guarded, Check};
use crate::error::Result;
use crate::quadrature::{gauss_hermite_scaled, mapped_legendre, radial_rule, tensor_rule_hermite};
use crate::special::{hermite_phi_all, laguerre_psi_all, psi_norm_sq, varphi};
use crate::transforms::{
    cholewinski_moment, cholewinski_moment_exact, cholewinski_weight, fourier, hankel,
    hankel_profile, symplectic_field, u_delta, ComplexField, FunctionSpec, RadialProfile,
    SymplecticNorm, UdeltaRoute,
};
use crate::C64;
use std::sync::Arc;

const HANKEL_DELTAS: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(−i)^k`.
fn minus_i_pow(k: usize) -> C64 {
    [
        C64::new(1.0, 0.0),
        C64::new(0.0, -1.0),
        C64::new(-1.0, 0.0),
        C64::new(0.0, 1.0),
    ][k % 4]
}

pub(super) fn orthonormality() -> Result<Vec<Check>> {
    const K: usize = 40;
    let mut out = Vec::new();
    // exact for polynomial degree ≤ 127 against e^{-x²}
    let rule = gauss_hermite_scaled(64, 1.0)?;
    let vals: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|&x| hermite_phi_all(K, x))
        .collect::<Result<_>>()?;
    for j in 0..=K {
        let mut worst = 0.0f64;
        for k in 0..=K {
            let g: f64 = vals.iter().zip(&rule.weights).map(|(v, w)| w * v[j] * v[k]).sum();
            let want = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((g - want).abs());
        }
        out.push(Check::below(format!("hermite row j={j}, k<={K}"), worst, 1e-10));
    }
    for &d in &[0.0, 1.0] {
        guarded(&mut out, &format!("laguerre delta={d}"), || {
            let rule = radial_rule(d, 16.0, 240)?;
            let vals: Vec<Vec<f64>> =
                rule.nodes.iter().map(|&s| laguerre_psi_all(20, d, s)).collect::<Result<_>>()?;
            let mut worst = 0.0f64;
            for j in 0..=20 {
                for k in 0..=20 {
                    let g: f64 = vals.iter().zip(&rule.weights).map(|(v, w)| w * v[j] * v[k]).sum();
                    let want = if j == k { psi_norm_sq(k, d)? } else { 0.0 };
                    worst = worst.max((g - want).abs() / psi_norm_sq(j.max(k), d)?);
                }
            }
            Ok(vec![Check::below(format!("laguerre delta={d}, j,k<=20 (relative)"), worst, 1e-10)])
        });
    }
    Ok(out)
}

fn phi_field(k: usize, n: usize, per_axis: usize) -> Result<ComplexField> {
    let grid = tensor_rule_hermite(n, per_axis, 0.25)?;
    ComplexField::sample(
        format!("phi_{k}^{}", n - 1),
        grid,
        Arc::new(move |z: &[f64]| {
            let r2: f64 = z.iter().map(|t| t * t).sum();
            C64::new(varphi(k, n, r2).unwrap_or(f64::NAN), 0.0)
        }),
    )
}

pub(super) fn fourier_eigen() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let xs: Vec<f64> = (0..=24).map(|i| -6.0 + 0.5 * i as f64).collect();
    for k in 0..=20usize {
        guarded(&mut out, &format!("fourier hermite k={k}"), || {
            let f = FunctionSpec::parse(&format!("hermite:k={k}"), 1)?;
            let mut worst = 0.0f64;
            for &x in &xs {
                let v = fourier(&f, &[0], &[x])?;
                worst = worst.max((v - minus_i_pow(k) * f.eval(&[x])).norm());
            }
            Ok(vec![Check::below(format!("fourier hermite k={k}, |xi|<=6"), worst, 1e-8)])
        });
    }
    for n in [1usize, 2] {
        for k in 0..=6usize {
            guarded(&mut out, &format!("symplectic n={n} k={k}"), || {
                let f = phi_field(k, n, if n == 1 { 64 } else { 36 })?;
                let g = symplectic_field(&f, SymplecticNorm::Involutive)?;
                let mut z = vec![0.0; 2 * n];
                let mut worst = 0.0f64;
                for i in 0..f.grid.len() {
                    f.grid.node(i, &mut z);
                    if z.iter().map(|t| t * t).sum::<f64>() <= 36.0 {
                        worst = worst.max((g.values[i] - sign(k) * f.values[i]).norm());
                    }
                }
                Ok(vec![Check::below(
                    format!("symplectic phi_{k}^{} n={n}, grid |z|<=6", n - 1),
                    worst,
                    1e-7,
                )])
            });
        }
    }
    Ok(out)
}

pub(super) fn hankel_eigen() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let rs: Vec<f64> = (0..=32).map(|i| 0.25 * i as f64).collect();
    for &d in &HANKEL_DELTAS {
        for k in 0..=20usize {
            guarded(&mut out, &format!("hankel delta={d} k={k}"), || {
                let g = RadialProfile::psi(k, d)?;
                let mut worst = 0.0f64;
                for &r in &rs {
                    let v = hankel(&g, d, r)?;
                    let want = sign(k) * laguerre_psi_all(k, d, r)?[k];
                    worst = worst.max((v - want).norm());
                }
                Ok(vec![Check::below(format!("hankel psi_{k}^{d}, r in [0,8]"), worst, 1e-8)])
            });
        }
    }
    for &d in &[0.0, 1.5] {
        guarded(&mut out, &format!("hankel inversion delta={d}"), || {
            let g = RadialProfile::mixture(&[(1.0, 1.0), (0.5, 0.4)])?;
            // H_δ e^{-b s²} decays like e^{-r²/4b}
            let hg = hankel_profile(&g, d, 0.25)?;
            let mut worst = 0.0f64;
            for r in [0.0, 0.7, 1.5, 3.0, 5.0] {
                worst = worst.max((hankel(&hg, d, r)? - g.eval(r)).norm());
            }
            Ok(vec![Check::below(format!("hankel inversion delta={d}, mixture"), worst, 1e-8)])
        });
    }
    Ok(out)
}

fn w_points() -> Vec<C64> {
    let mut w = vec![C64::new(0.0, 0.0)];
    for r in [1.0, 2.5, 4.0, 5.0] {
        for t in [0.0, 0.6, 1.3, 2.2] {
            w.push(C64::from_polar(r, t));
        }
    }
    w
}

pub(super) fn udelta() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let ws = w_points();
    for &d in &HANKEL_DELTAS {
        let profiles: Vec<(String, Result<RadialProfile>)> = vec![
            ("mixture".into(), RadialProfile::mixture(&[(1.0, 0.7), (-0.4, 1.3)])),
            ("psi_3".into(), RadialProfile::psi(3, d)),
        ];
        for (label, g) in profiles {
            guarded(&mut out, &format!("udelta routes delta={d} {label}"), || {
                let g = g?;
                let mut worst = 0.0f64;
                for &w in &ws {
                    let a = u_delta(&g, d, w, UdeltaRoute::Integral)?;
                    let b = u_delta(&g, d, w, UdeltaRoute::Series)?;
                    worst = worst.max((a - b).norm());
                }
                Ok(vec![Check::below(
                    format!("udelta series vs integral delta={d} {label}, |w|<=5"),
                    worst,
                    1e-8,
                )])
            });
        }
        guarded(&mut out, &format!("udelta hankel relation delta={d}"), || {
            let g = RadialProfile::mixture(&[(1.0, 0.7), (-0.4, 1.3)])?;
            let hg = hankel_profile(&g, d, 0.25 / 1.3)?;
            let mut worst = 0.0f64;
            for &w in &ws {
                let a = u_delta(&hg, d, w, UdeltaRoute::Integral)?;
                let b = u_delta(&g, d, C64::new(0.0, -1.0) * w, UdeltaRoute::Integral)?;
                worst = worst.max((a - b).norm());
            }
            Ok(vec![Check::below(
                format!("udelta(H g)(w) vs udelta(g)(-iw) delta={d}, |w|<=5"),
                worst,
                1e-8,
            )])
        });
    }
    Ok(out)
}

pub(super) fn cholewinski() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &d in &[0.5, 1.0, 2.0] {
        for k in 0..=10usize {
            guarded(&mut out, &format!("cholewinski delta={d} k={k}"), || {
                let m = cholewinski_moment(d, k, cholewinski_weight)?;
                let want = cholewinski_moment_exact(d, k);
                Ok(vec![Check::below(
                    format!("cholewinski moment delta={d} k={k} (relative)"),
                    ((m.value.re - want) / want).abs(),
                    1e-6,
                )])
            });
        }
    }
    // the weight integrates to the ψ_0 normalization: ∫ h = 2^{1+2δ} Γ(δ+1)
    guarded(&mut out, "cholewinski mass", || {
        let rule = mapped_legendre(400, 0.0, 12.0)?;
        let d = 1.0;
        let mass: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&r, &w)| Ok(w * 2.0 * std::f64::consts::PI * r * cholewinski_weight(d, r)?))
            .sum::<Result<f64>>()?;
        let want = cholewinski_moment_exact(d, 0);
        Ok(vec![Check::below(
            "cholewinski mass delta=1 by polar quadrature (relative)",
            ((mass - want) / want).abs(),
            1e-6,
        )])
    });
    Ok(out)
}
