use super::{guarded, Check, HARDY_2D, NULL_LEVEL};
use crate::analysis::{proj_norms_direct, proj_norms_wigner, CoefficientTable};
use crate::error::Result;
use crate::quadrature::sphere_rule;
use crate::special::varphi;
use crate::transforms::{
    fourier_report, fourier_wigner, radial_hankel_many, radialize, radialize_with, symplectic_field,
    wigner_field, FourierConvention, FunctionSpec, SymplecticNorm, WignerConfig,
};
use crate::C64;
use std::f64::consts::{PI, SQRT_2};

/// Deterministic points of ℝ⁴ inside the ball of radius 6.
fn ball_points() -> Vec<[f64; 4]> {
    let dirs = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.5, -0.5, 0.5, 0.5],
        [0.6, 0.0, -0.8, 0.0],
        [0.0, 0.8, 0.0, 0.6],
        [-0.2, 0.4, 0.4, 0.8],
        [0.7, 0.1, 0.1, 0.7],
    ];
    let mut out = vec![[0.0; 4]];
    for r in [1.5, 3.0, 4.5, 6.0] {
        for d in &dirs {
            let s = r / d.iter().map(|t| t * t).sum::<f64>().sqrt();
            out.push([d[0] * s, d[1] * s, d[2] * s, d[3] * s]);
        }
    }
    out
}

pub(super) fn wigner_identity() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    guarded(&mut out, "wigner orthogonality", || {
        let phis: Vec<FunctionSpec> = (0..4)
            .map(|k| FunctionSpec::parse(&format!("hermite:k={k}"), 1))
            .collect::<Result<_>>()?;
        let cfg = WignerConfig::for_pair(&phis[3], &phis[3])?;
        let mut fields = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                fields.push(((i, j), wigner_field(&phis[i], &phis[j], &cfg)?));
            }
        }
        let mut checks = Vec::new();
        for ((i1, j1), v1) in &fields {
            let mut worst = 0.0f64;
            for ((i2, j2), v2) in &fields {
                let mut z = vec![0.0; 2];
                let mut acc = C64::new(0.0, 0.0);
                for (idx, (a, b)) in v1.values.iter().zip(&v2.values).enumerate() {
                    acc += a * b.conj() * v1.grid.node(idx, &mut z);
                }
                // (f1, f2)(g2, g1) for orthonormal Φ_k
                let want = if i1 == i2 && j1 == j2 { 1.0 } else { 0.0 };
                worst = worst.max((acc - want).norm());
            }
            checks.push(Check::below(
                format!("wigner orthogonality V(Phi_{i1},Phi_{j1}) against all 16 pairs"),
                worst,
                1e-7,
            ));
        }
        Ok(checks)
    });
    let pts = ball_points();
    for k in 0..=6usize {
        guarded(&mut out, &format!("diagonal sum k={k}"), || {
            let specs: Vec<FunctionSpec> = (0..=k)
                .map(|a| FunctionSpec::parse(&format!("hermite:k1={a},k2={}", k - a), 2))
                .collect::<Result<_>>()?;
            let mut worst = 0.0f64;
            for z in &pts {
                let mut s = C64::new(0.0, 0.0);
                for f in &specs {
                    s += fourier_wigner(f, f, z)?;
                }
                let r2: f64 = z.iter().map(|t| t * t).sum();
                let want = varphi(k, 2, r2)? / (2.0 * PI);
                worst = worst.max((s - want).norm());
            }
            Ok(vec![Check::below(
                format!("diagonal sum |alpha|={k} vs phi_{k}^1/(2 pi), |z|<=6"),
                worst,
                1e-8,
            )])
        });
    }
    Ok(out)
}

fn ex44_level(k: usize) -> f64 {
    let a = 0.5f64.sqrt();
    2.0 * PI / (1.0 + a) * ((1.0 - a) / (1.0 + a)).powi(k as i32)
}

fn ex44_table_checks(t: &CoefficientTable, route: &str) -> Vec<Check> {
    let mut out = Vec::new();
    for k in 0..=10 {
        let got = t.entries[2 * k].value.powi(2);
        out.push(Check::below(
            format!("{route}: |P_{} f|^2 vs closed form (relative)", 2 * k),
            (got / ex44_level(k) - 1.0).abs(),
            1e-5,
        ));
    }
    for k in 0..=10 {
        out.push(Check::below(
            format!("{route}: |P_{} f|", 2 * k + 1),
            t.entries[2 * k + 1].value,
            NULL_LEVEL,
        ));
    }
    // published to five decimals
    for (k, spot) in [(0usize, 3.68060), (2, 0.63149)] {
        out.push(Check::below(
            format!("{route}: |P_{k} f|^2 vs {spot}"),
            (t.entries[k].value.powi(2) - spot).abs(),
            1e-5,
        ));
    }
    out
}

pub(super) fn example44() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let f = FunctionSpec::parse("example44", 2)?;
    let a = 0.5f64.sqrt();
    guarded(&mut out, "example44 direct route", || {
        Ok(ex44_table_checks(&proj_norms_direct(&f, 21)?, "direct"))
    });
    guarded(&mut out, "example44 wigner route", || {
        Ok(ex44_table_checks(&proj_norms_wigner(&f, 21)?, "wigner"))
    });
    guarded(&mut out, "example44 fourier transform", || {
        let mut worst = 0.0f64;
        for i in 0..=12 {
            for j in 0..=12 {
                let (xi, eta) = (-6.0 + i as f64, -6.0 + j as f64);
                if xi * xi + eta * eta > 36.0 {
                    continue;
                }
                let v = fourier_report(&f, &[0, 1], &[xi, eta], FourierConvention::Unnormalized)?
                    .value;
                let want = C64::new(-(a / 2.0) * (xi * xi + eta * eta), a * xi * eta).exp() * (2.0 * PI);
                worst = worst.max((v - want).norm());
            }
        }
        Ok(vec![Check::below("fourier transform vs closed form, |xi|<=6", worst, 1e-7)])
    });
    guarded(&mut out, "example44 wigner transform", || {
        let mut worst = 0.0f64;
        for z in ball_points() {
            let v = fourier_wigner(&f, &f, &z)?;
            let r2: f64 = z.iter().map(|t| t * t).sum();
            let q = 0.5 * (z[0] * z[3] + z[1] * z[2]);
            let want = (-(a / 2.0) * r2 + q).exp() / (2.0 * a);
            worst = worst.max((v - want).norm());
        }
        Ok(vec![Check::below("V(f,f) vs closed form, |z|<=6", worst, 1e-7)])
    });
    Ok(out)
}

/// Sphere rule resolution for radializing `V(f,f)` of the witness function
/// out to radius 8.
const WITNESS_SPHERE: usize = 24;

pub(super) fn radialization() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let rs: Vec<f64> = (1..=12).map(|i| 0.5 * i as f64).collect();
    for id in HARDY_2D {
        guarded(&mut out, &format!("radialization {id}"), || {
            let f = FunctionSpec::parse(id, 2)?;
            let v = wigner_field(&f, &f, &WignerConfig::for_transform(&f, &f)?)?;
            let hs = radial_hankel_many(&v, &rs)?;
            let mut checks = Vec::new();
            for (norm, factor, label) in [
                (SymplecticNorm::TwoPi, 4.0, "(2 pi)^-2 normalization vs 4 H_1 G"),
                (SymplecticNorm::Involutive, 1.0, "(4 pi)^-2 normalization vs H_1 G"),
            ] {
                let fs = symplectic_field(&v, norm)?;
                let mut worst = 0.0f64;
                for (&r, h) in rs.iter().zip(&hs) {
                    let lhs = radialize(&fs, SQRT_2 * r)?;
                    worst = worst.max((lhs - h * factor).norm() / (1.0 + h.norm()));
                }
                checks.push(Check::below(
                    format!("{id}: sphere integral of Fs V(f,f)(sqrt2 r) {label}, r in [0.5,6]"),
                    worst,
                    1e-6,
                ));
            }
            Ok(checks)
        });
    }
    guarded(&mut out, "example44 witness", || {
        let f = FunctionSpec::parse("example44", 2)?;
        let a = 0.5f64.sqrt();
        let mut cfg = WignerConfig::for_pair(&f, &f)?;
        // only the evaluator is used
        cfg.per_axis = 2;
        let v = wigner_field(&f, &f, &cfg)?;
        let rule = sphere_rule(2, WITNESS_SPHERE)?;
        let mut ratios = Vec::new();
        for i in 0..=4 {
            let r = 4.0 + i as f64;
            let s = radialize_with(&v, r, &rule)?;
            ratios.push(s.re / (-(a / 4.0) * r * r).exp());
        }
        // largest relative step down; negative when strictly increasing
        let worst = ratios
            .windows(2)
            .map(|w| (w[0] - w[1]) / w[0].abs())
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(vec![Check::below(
            "example44: radialized V(f,f)(r) e^{a r^2/4} increasing on [4,8] (largest relative decrease)",
            worst,
            0.0,
        )])
    });
    Ok(out)
}
