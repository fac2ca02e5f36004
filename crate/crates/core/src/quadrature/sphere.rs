use super::gauss::mapped_legendre;
use super::rule::{QuadratureRule, RuleKind, RuleMeta};
use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Rule on the unit sphere `S^{2n-1} ⊂ ℂⁿ` for `n ∈ {1, 2}`.
///
/// Points of ℂⁿ are stored as real vectors `(x₁..xₙ, y₁..yₙ)` with
/// `z = x + iy`. For `n = 1` this is an M-point trapezoid rule on the circle;
/// for `n = 2` a Hopf-coordinate product rule with `resolution` points in
/// each angle and `resolution/2` Gauss–Legendre points in η.
pub fn sphere_rule(n: usize, resolution: usize) -> Result<QuadratureRule> {
    match n {
        1 => circle(resolution),
        2 => sphere_rule_s3(resolution, resolution, (resolution / 2).max(1)),
        _ => Err(Error::InvalidArgument(format!(
            "sphere rules exist for n in {{1, 2}}, got {n}"
        ))),
    }
}

fn circle(m: usize) -> Result<QuadratureRule> {
    if m == 0 {
        return Err(Error::InvalidArgument("empty circle rule".into()));
    }
    let h = 2.0 * PI / m as f64;
    let mut nodes = Vec::with_capacity(2 * m);
    for j in 0..m {
        let t = h * j as f64;
        nodes.push(t.cos());
        nodes.push(t.sin());
    }
    Ok(QuadratureRule {
        kind: RuleKind::SphereS1,
        dim: 2,
        nodes,
        weights: vec![h; m],
        meta: RuleMeta {
            order: m,
            resolution: Some(vec![m]),
            ..Default::default()
        },
    })
}

/// Hopf-coordinate rule on `S³`: `ω = (cos η e^{iθ₁}, sin η e^{iθ₂})` read as
/// the real point `(cos η cos θ₁, cos η sin θ₁, sin η cos θ₂, sin η sin θ₂)`.
///
/// Nodes are ordered with θ₁ fastest, so consecutive blocks of `m1` nodes
/// share their last two coordinates.
pub fn sphere_rule_s3(m1: usize, m2: usize, n_eta: usize) -> Result<QuadratureRule> {
    if m1 == 0 || m2 == 0 || n_eta == 0 {
        return Err(Error::InvalidArgument("empty sphere rule".into()));
    }
    let eta = mapped_legendre(n_eta, 0.0, PI / 2.0)?;
    let h1 = 2.0 * PI / m1 as f64;
    let h2 = 2.0 * PI / m2 as f64;
    let total = m1 * m2 * n_eta;
    let mut nodes = Vec::with_capacity(4 * total);
    let mut weights = Vec::with_capacity(total);
    for (e, we) in eta.nodes.iter().zip(&eta.weights) {
        let (se, ce) = e.sin_cos();
        let w = we * ce * se * h1 * h2;
        for j2 in 0..m2 {
            let (s2, c2) = (h2 * j2 as f64).sin_cos();
            for j1 in 0..m1 {
                let (s1, c1) = (h1 * j1 as f64).sin_cos();
                nodes.extend_from_slice(&[ce * c1, ce * s1, se * c2, se * s2]);
                weights.push(w);
            }
        }
    }
    Ok(QuadratureRule {
        kind: RuleKind::SphereS3,
        dim: 4,
        nodes,
        weights,
        meta: RuleMeta {
            order: total,
            resolution: Some(vec![m1, m2, n_eta]),
            ..Default::default()
        },
    })
}
