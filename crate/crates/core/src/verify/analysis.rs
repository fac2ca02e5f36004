use super::{guarded, Check, GAUSSIAN_B, HARDY_1D, HARDY_2D, NULL_LEVEL};
use crate::analysis::{
    d_k_norms, proj_norms_direct, proj_norms_spherical, proj_norms_wigner, t_operator,
    CoefficientTable, DkRoute,
};
use crate::decay::{
    bound_check, hardy_envelope, hardy_envelope_hat, theorem_check, Status, Theorem,
    GROWTH_TOL, THEOREM_ANNULUS,
};
use crate::error::Result;
use crate::special::c_constant;
use crate::transforms::{coeffs_from_samples, BargmannProjector, FunctionSpec};
use crate::C64;
use std::f64::consts::PI;

// Wigner-route levels beyond this sit near the round-off floor of the field
const ROUTE_K: usize = 10;

/// Pairwise comparison of two tables: worst relative error over the
/// levels above `null`, and the largest value among levels below it.
fn compare(label: &str, a: &CoefficientTable, b: &CoefficientTable, rel: f64, null: f64) -> Vec<Check> {
    let mut worst = 0.0f64;
    let mut null_max: Option<f64> = None;
    for (x, y) in a.entries.iter().zip(&b.entries) {
        let c = Check::agree("", x.value, y.value, rel, null);
        if c.name.ends_with("(zero level)") {
            null_max = Some(null_max.unwrap_or(0.0).max(c.measured));
        } else {
            worst = worst.max(c.measured);
        }
    }
    let mut out = vec![Check::below(format!("{label} (relative)"), worst, rel)];
    if let Some(m) = null_max {
        out.push(Check::below(format!("{label} zero levels"), m, null));
    }
    out
}

pub(super) fn routes() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let battery_2d = HARDY_2D.iter().copied().chain(["hermite:k1=1,k2=2"]);
    for id in battery_2d {
        guarded(&mut out, &format!("routes {id} n=2"), || {
            let f = FunctionSpec::parse(id, 2)?;
            let d = proj_norms_direct(&f, ROUTE_K)?;
            let w = proj_norms_wigner(&f, ROUTE_K)?;
            let s = proj_norms_spherical(&f, ROUTE_K)?;
            let mut c = compare(&format!("{id} n=2 direct vs wigner, k<={ROUTE_K}"), &d, &w, 1e-6, NULL_LEVEL);
            c.extend(compare(&format!("{id} n=2 direct vs spherical, k<={ROUTE_K}"), &d, &s, 1e-6, NULL_LEVEL));
            c.extend(compare(&format!("{id} n=2 wigner vs spherical, k<={ROUTE_K}"), &w, &s, 1e-6, NULL_LEVEL));
            Ok(c)
        });
    }
    for id in HARDY_1D.iter().copied().chain(["hermite:k=3"]) {
        guarded(&mut out, &format!("routes {id} n=1"), || {
            let f = FunctionSpec::parse(id, 1)?;
            let d = proj_norms_direct(&f, ROUTE_K)?;
            let w = proj_norms_wigner(&f, ROUTE_K)?;
            Ok(compare(&format!("{id} n=1 direct vs wigner, k<={ROUTE_K}"), &d, &w, 1e-6, NULL_LEVEL))
        });
    }
    Ok(out)
}

/// Radial and single-harmonic functions on ℝ².
const BARGMANN_BATTERY: [&str; 5] = [
    "gaussian:b=0.3",
    "gaussian:b=0.5",
    "hermite:k1=0,k2=0",
    "harmonic:m=2,b=0.6",
    "chiral:m=3,b=0.6",
];

pub(super) fn vector_bargmann() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for id in BARGMANN_BATTERY {
        guarded(&mut out, &format!("taylor norms {id}"), || {
            let f = FunctionSpec::parse(id, 2)?;
            let a = d_k_norms(&f, 10, DkRoute::Formula)?;
            let b = d_k_norms(&f, 10, DkRoute::Cauchy)?;
            let top = a.values().iter().cloned().fold(0.0, f64::max);
            Ok(compare(&format!("{id}: Taylor norms cauchy vs formula, k<=10"), &b, &a, 1e-6, 1e-20 * top))
        });
    }
    for id in BARGMANN_BATTERY.iter().copied().chain(["example44", "aniso"]) {
        guarded(&mut out, &format!("spherical norms {id}"), || {
            let f = FunctionSpec::parse(id, 2)?;
            let s = proj_norms_spherical(&f, ROUTE_K)?;
            let d = proj_norms_direct(&f, ROUTE_K)?;
            Ok(compare(&format!("{id}: spherical vs direct norms, k<=12"), &s, &d, 1e-6, NULL_LEVEL))
        });
    }
    for k in 0..=8usize {
        guarded(&mut out, &format!("bargmann monomial k={k}"), || {
            let f = FunctionSpec::parse(&format!("hermite:k={k}"), 1)?;
            let p = BargmannProjector::new(&f, [1.0, 0.0], 1.0, false)?;
            let m = 128;
            let samples: Vec<C64> = (0..m)
                .map(|j| p.eval(C64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64)))
                .collect();
            let c = coeffs_from_samples(&samples, 1.0, 16);
            let lead = (k as f64 * std::f64::consts::LN_2 + crate::special::lgamma_pos(k as f64 + 1.0)
                - 0.5 * PI.ln())
            .exp()
            .powf(-0.5);
            let off = c
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| v.norm())
                .fold(0.0, f64::max);
            Ok(vec![
                Check::below(format!("B Phi_{k}: Taylor coefficients off index {k}"), off, 1e-10),
                Check::below(
                    format!("B Phi_{k}: coefficient {k} vs (2^k k!/sqrt(pi))^(-1/2)"),
                    (c[k] - lead).norm(),
                    1e-10,
                ),
            ])
        });
    }
    guarded(&mut out, "radial direction independence", || {
        let f = FunctionSpec::parse("gaussian:b=0.5", 2)?;
        let mut worst = 0.0f64;
        for z in [C64::new(1.0, 0.5), C64::new(-2.0, 3.0)] {
            let vals: Vec<C64> = (0..64)
                .map(|j| {
                    let t = 2.0 * PI * j as f64 / 64.0;
                    BargmannProjector::new(&f, [t.cos(), t.sin()], 4.0, false).map(|p| p.eval(z))
                })
                .collect::<Result<_>>()?;
            for v in &vals {
                worst = worst.max((v - vals[0]).norm());
            }
        }
        Ok(vec![Check::below("gaussian:b=0.5: Bf(z, omega) variation over 64 directions", worst, 1e-10)])
    });
    Ok(out)
}

/// Running maximum over `k ∈ [20, kmax]` of `max_m c(k,m)/k^{(n-1)/2}`.
fn lemma55_running(n: usize, kmax: usize) -> Result<Vec<f64>> {
    let mut run = 0.0f64;
    let mut out = Vec::new();
    for k in 20..=kmax {
        let s = (k as f64).powf((n as f64 - 1.0) / 2.0);
        for m in 0..=k {
            run = run.max(c_constant(k, m, n)? / s);
        }
        out.push(run);
    }
    Ok(out)
}

pub(super) fn lemma55() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut worst = 0.0f64;
    for k in 0..=400 {
        worst = worst.max((c_constant(k, k, 2)? - 1.0).abs());
    }
    out.push(Check::below("c(k,k) = 1 for n=2, k<=400", worst, 1e-12));
    for n in [2usize, 3, 4] {
        guarded(&mut out, &format!("lemma55 n={n}"), || {
            let run = lemma55_running(n, 400)?;
            let (at100, at400) = (run[100 - 20], run[400 - 20]);
            Ok(vec![Check::below(
                format!("n={n}: growth of running max of c(k,m)/k^((n-1)/2) from k=100 to 400"),
                at400 / at100 - 1.0,
                0.01,
            )])
        });
    }
    for id in ["gaussian:b=0.3", "gaussian:b=0.5", "gaussian:b=0.7", "harmonic:m=2,b=0.6", "chiral:m=2,b=0.6"] {
        guarded(&mut out, &format!("T feed-through {id}"), || {
            let f = FunctionSpec::parse(id, 2)?;
            let g = hardy_envelope(&f, THEOREM_ANNULUS)?
                .gamma_star
                .min(hardy_envelope_hat(&f, THEOREM_ANNULUS)?.gamma_star);
            let a = (2.0 * g).min(1.0 - 1e-12);
            let tf = t_operator(&f)?;
            let table = proj_norms_direct(&tf, 40)?;
            let b = bound_check(&table, 2, 0.0, a.atanh() / 2.0);
            Ok(vec![
                Check::below(format!("{id}: |P_k Tf| bound, C_min finite"), if b.c_min.is_finite() && b.c_min > 0.0 { 0.0 } else { f64::NAN }, 0.0),
                Check::below(format!("{id}: |P_k Tf| bound, tail growth"), b.tail_growth - 1.0, GROWTH_TOL),
            ])
        });
    }
    Ok(out)
}

fn theorem_checks(f: &FunctionSpec, out: &mut Vec<Check>) {
    let mut which = vec![Theorem::T1_2, Theorem::T1_4, Theorem::T4_1];
    if f.n == 1 {
        which.insert(0, Theorem::T1_1);
    } else {
        which.push(Theorem::T5_2);
    }
    for t in which {
        if t == Theorem::T4_1 && !f.meta.radial {
            continue;
        }
        let label = format!("{} {} n={}", t.name(), f.id, f.n);
        guarded(out, &label, || {
            let r = theorem_check(f, t)?;
            if r.status == Status::Inapplicable {
                return Ok(vec![]);
            }
            let growth = r.bound.as_ref().map_or(f64::NAN, |b| b.tail_growth - 1.0);
            let mut c = Check::below(format!("{label}: bound tail growth (status {:?})", r.status), growth, GROWTH_TOL);
            c.pass &= r.pass;
            Ok(vec![c])
        });
    }
}

pub(super) fn theorems() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut gauss_rates: Vec<(usize, f64, f64)> = Vec::new();
    let battery = HARDY_1D.iter().map(|s| (*s, 1usize)).chain(HARDY_2D.iter().map(|s| (*s, 2usize)));
    for (id, n) in battery {
        guarded(&mut out, &format!("T1_3 {id} n={n}"), || {
            let f = FunctionSpec::parse(id, n)?;
            let r = theorem_check(&f, Theorem::T1_3)?;
            let mut c = Vec::new();
            let ia = r.fit.as_ref().map_or(f64::NAN, |fit| fit.implied_a);
            let a = r.hypothesis.a;
            c.push(Check::below(
                format!("{id} n={n}: floor a/2 - 0.01 - tanh(2t) (a = {a:.6})"),
                a / 2.0 - 0.01 - ia,
                0.0,
            ));
            let growth = r.bound.as_ref().map_or(f64::NAN, |b| b.tail_growth - 1.0);
            c.push(Check::below(format!("T1_3 {id} n={n}: bound tail growth"), growth, GROWTH_TOL));
            if let Some(b) = f.params.get("b").filter(|_| id.starts_with("gaussian")) {
                gauss_rates.push((n, *b, ia));
                c.push(Check::below(format!("{id} n={n}: |tanh(2t) - b| (tanh(2t) = {ia:.6})"), (ia - b).abs(), 0.01));
            }
            if id == "example44" {
                c.push(Check::below(
                    format!("example44: |tanh(2t) - 2^(-1/2)| (tanh(2t) = {ia:.6})"),
                    (ia - 0.5f64.sqrt()).abs(),
                    0.005,
                ));
            }
            theorem_checks(&f, &mut c);
            Ok(c)
        });
    }
    for n in [1usize, 2] {
        let ia: Vec<f64> = GAUSSIAN_B
            .iter()
            .map(|b| {
                gauss_rates
                    .iter()
                    .find(|g| g.0 == n && g.1 == *b)
                    .map_or(f64::NAN, |g| g.2)
            })
            .collect();
        let worst = ia.windows(2).map(|w| w[0] - w[1]).fold(f64::NEG_INFINITY, f64::max);
        out.push(Check::below(format!("gaussians n={n}: tanh(2t) increasing in b (largest decrease)"), worst, 0.0));
    }
    Ok(out)
}
