use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use super::rule::{QuadratureRule, RuleKind, RuleMeta};
use crate::error::{out_of_range, Error, Result};
use crate::special::hermite_phi_all;
use crate::special::log_gamma;

const NEWTON_MAX: usize = 100;

/// `p_N(x) / p_N'(x)` for the orthonormal Hermite polynomials, with
/// rescaling so the recurrence cannot overflow.
fn hermite_newton_step(n: usize, x: f64) -> f64 {
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for j in 0..n {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > 1e150 {
            cur *= 1e-150;
            prev *= 1e-150;
        }
    }
    cur / ((2.0 * n as f64).sqrt() * prev)
}

/// Positive roots of `H_N`, largest first, with scaled weights `wᵢ e^{xᵢ²}`.
fn hermite_positive_roots(n: usize) -> Result<Vec<(f64, f64)>> {
    let nf = n as f64;
    let nu = 2.0 * nf + 1.0;
    let mut out = Vec::with_capacity(n / 2 + 1);
    for k in 1..=n / 2 {
        // WKB/Tricomi guess: σ - sin σ = π(4k-1)/(2N+1), x = √(2N+1) cos(σ/2).
        let c = std::f64::consts::PI * (4.0 * k as f64 - 1.0) / nu;
        let mut s = (6.0 * c).cbrt();
        for _ in 0..60 {
            let ds = (s - s.sin() - c) / (1.0 - s.cos()).max(1e-300);
            s -= ds;
            if ds.abs() < 1e-15 {
                break;
            }
        }
        let mut x = nu.sqrt() * (s / 2.0).cos();
        let mut converged = false;
        for _ in 0..NEWTON_MAX {
            let dx = hermite_newton_step(n, x);
            x -= dx;
            if dx.abs() <= 1e-14 * x.abs().max(1.0) {
                x -= hermite_newton_step(n, x);
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence(format!(
                "Gauss-Hermite Newton iteration, N={n}, root {k}"
            )));
        }
        out.push((x, scaled_weight(n, x)?));
    }
    Ok(out)
}

fn scaled_weight(n: usize, x: f64) -> Result<f64> {
    let phi = hermite_phi_all(n - 1, x)?;
    let p = phi[n - 1];
    Ok(1.0 / (n as f64 * p * p))
}

fn hermite_nodes_scaled(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || n > 500 {
        return Err(out_of_range("N", n as f64, "[1, 500]"));
    }
    let pos = hermite_positive_roots(n)?;
    let mut x = Vec::with_capacity(n);
    let mut w = Vec::with_capacity(n);
    for &(xi, wi) in &pos {
        x.push(-xi);
        w.push(wi);
    }
    if n % 2 == 1 {
        x.push(0.0);
        w.push(scaled_weight(n, 0.0)?);
    }
    for &(xi, wi) in pos.iter().rev() {
        x.push(xi);
        w.push(wi);
    }
    Ok((x, w))
}

/// Gauss–Hermite rule for `∫ p(x) e^{-x²} dx`.
///
/// Outer weights of very large rules (N ≳ 360) are below the smallest
/// representable double and are stored as 0.
pub fn gauss_hermite(n: usize) -> Result<QuadratureRule> {
    let (x, ws) = hermite_nodes_scaled(n)?;
    let weights = x
        .iter()
        .zip(&ws)
        .map(|(xi, wi)| (wi.ln() - xi * xi).exp())
        .collect();
    Ok(QuadratureRule {
        kind: RuleKind::GaussHermite,
        dim: 1,
        nodes: x,
        weights,
        meta: RuleMeta {
            order: n,
            ..Default::default()
        },
    })
}

/// Gauss–Hermite rule adapted to the weight `e^{-α x²}` and returned in
/// unweighted form: `Σ wᵢ g(xᵢ) ≈ ∫ g(x) dx` for `g ~ e^{-α x²}`.
pub fn gauss_hermite_scaled(n: usize, alpha: f64) -> Result<QuadratureRule> {
    if !(alpha > 0.0) {
        return Err(out_of_range("alpha", alpha, "(0, inf)"));
    }
    let (x, ws) = hermite_nodes_scaled(n)?;
    let s = alpha.sqrt();
    Ok(QuadratureRule {
        kind: RuleKind::GaussHermite,
        dim: 1,
        nodes: x.iter().map(|v| v / s).collect(),
        weights: ws.iter().map(|v| v / s).collect(),
        meta: RuleMeta {
            order: n,
            scale: Some(alpha),
            ..Default::default()
        },
    })
}

fn legendre_nodes(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..(n + 1) / 2 {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        let mut ok = false;
        for _ in 0..NEWTON_MAX {
            let mut p0 = 1.0;
            let mut p1 = 0.0;
            for j in 0..n {
                let jf = j as f64;
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * jf + 1.0) * z * p1 - jf * p2) / (jf + 1.0);
            }
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::NoConvergence(format!("Gauss-Legendre Newton, N={n}")));
        }
        // recompute derivative at the converged node
        let mut p0 = 1.0;
        let mut p1 = 0.0;
        for j in 0..n {
            let jf = j as f64;
            let p2 = p1;
            p1 = p0;
            p0 = ((2.0 * jf + 1.0) * z * p1 - jf * p2) / (jf + 1.0);
        }
        if (z * z - 1.0).abs() > 0.0 {
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    Ok((x, w))
}

type NodePair = Arc<(Vec<f64>, Vec<f64>)>;

/// Reference nodes on `[-1, 1]`, memoized per order for the lifetime of
/// the process.
fn legendre_cached(n: usize) -> Result<NodePair> {
    static MEMO: OnceLock<Mutex<HashMap<usize, NodePair>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = memo.lock().map_err(|_| poisoned())?.get(&n) {
        return Ok(v.clone());
    }
    let v = Arc::new(legendre_nodes(n)?);
    memo.lock().map_err(|_| poisoned())?.insert(n, v.clone());
    Ok(v)
}

fn poisoned() -> Error {
    Error::Contract("quadrature memo lock poisoned".into())
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn mapped_legendre(n: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if n == 0 || n > 2000 {
        return Err(out_of_range("N", n as f64, "[1, 2000]"));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("interval [{a}, {b}] is empty")));
    }
    let base = legendre_cached(n)?;
    let (x, w) = (&base.0, &base.1);
    let h = 0.5 * (b - a);
    let c = 0.5 * (a + b);
    Ok(QuadratureRule {
        kind: RuleKind::MappedLegendre,
        dim: 1,
        nodes: x.iter().map(|t| c + h * t).collect(),
        weights: w.iter().map(|t| h * t).collect(),
        meta: RuleMeta {
            order: n,
            interval: Some((a, b)),
            ..Default::default()
        },
    })
}

/// Rule for `∫₀^∞ g(s) s^{2δ+1} ds`: Gauss–Legendre on `[0, R]` with the
/// measure folded into the weights.
pub fn radial_rule(delta: f64, r: f64, n: usize) -> Result<QuadratureRule> {
    if !(delta > -0.5) {
        return Err(out_of_range("delta", delta, "(-1/2, inf)"));
    }
    if !(r > 0.0) {
        return Err(out_of_range("R", r, "(0, inf)"));
    }
    let base = mapped_legendre(n, 0.0, r)?;
    let weights = base
        .nodes
        .iter()
        .zip(&base.weights)
        .map(|(s, w)| w * s.powf(2.0 * delta + 1.0))
        .collect();
    Ok(QuadratureRule {
        kind: RuleKind::Radial,
        dim: 1,
        nodes: base.nodes,
        weights,
        meta: RuleMeta {
            order: n,
            radius: Some(r),
            delta: Some(delta),
            ..Default::default()
        },
    })
}

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with
/// diagonal `d` and off-diagonal `e` (`e.len() == d.len() - 1`), by
/// implicit QL with Wilkinson shifts.
pub fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(std::iter::once(0.0)).collect();
    if e.len() != n {
        return Err(Error::InvalidArgument("off-diagonal length".into()));
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence("tridiagonal QL".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Gauss–Gegenbauer rule for `∫_{-1}^{1} g(t)(1-t²)^{δ-½} dt` folded onto
/// `t ≥ 0` for even integrands: returns `(tᵢ, wᵢ)` with `Σ wᵢ g(tᵢ)` equal
/// to the full symmetric rule applied to even `g`.
pub fn gauss_gegenbauer_half(n: usize, delta: f64) -> (Vec<f64>, Vec<f64>) {
    let lam = delta;
    let beta = |k: usize| -> f64 {
        let kf = k as f64;
        if k == 1 {
            1.0 / (2.0 * (1.0 + lam))
        } else {
            kf * (kf + 2.0 * lam - 1.0) / (4.0 * (kf + lam) * (kf + lam - 1.0))
        }
    };
    let off: Vec<f64> = (1..n).map(|k| beta(k).sqrt()).collect();
    let diag = vec![0.0; n];
    let t = tridiagonal_eigenvalues(&diag, &off).expect("Gegenbauer Jacobi matrix");
    let ln_mu0 = 0.5 * std::f64::consts::PI.ln() + log_gamma(lam + 0.5).unwrap()
        - log_gamma(lam + 1.0).unwrap();
    let p0 = (-0.5 * ln_mu0).exp();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (idx, &ti) in t.iter().enumerate() {
        // symmetrize: use |t| of the upper half only
        if idx < n / 2 {
            continue;
        }
        let ti = if n % 2 == 1 && idx == n / 2 { 0.0 } else { ti.abs() };
        let mut prev = 0.0;
        let mut cur = p0;
        let mut sum = cur * cur;
        for k in 1..n {
            let next = if k == 1 {
                ti * cur / off[0]
            } else {
                (ti * cur - off[k - 2] * prev) / off[k - 1]
            };
            prev = cur;
            cur = next;
            sum += cur * cur;
        }
        let w = 1.0 / sum;
        nodes.push(ti);
        weights.push(if ti == 0.0 { w } else { 2.0 * w });
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn double_factorial(n: i64) -> f64 {
        let mut p = 1.0;
        let mut k = n;
        while k > 1 {
            p *= k as f64;
            k -= 2;
        }
        p
    }

    #[test]
    fn hermite_small_rules() {
        let r = gauss_hermite(1).unwrap();
        assert_eq!(r.nodes, vec![0.0]);
        assert!((r.weights[0] - PI.sqrt()).abs() < 1e-15);
        let r = gauss_hermite(2).unwrap();
        assert!((r.nodes[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.nodes[0] + 0.5f64.sqrt()).abs() < 1e-15);
        assert!((r.weights[0] - PI.sqrt() / 2.0).abs() < 1e-15);
        let r = gauss_hermite(20).unwrap();
        let m10 = r.integrate(|x| x[0].powi(10));
        let want = 945.0 / 32.0 * PI.sqrt();
        assert!((m10 - want).abs() < 1e-12 * want);
    }

    #[test]
    fn hermite_monomial_exactness() {
        for &n in &[3usize, 8, 17, 40, 64] {
            let r = gauss_hermite(n).unwrap();
            for p in 0..(2 * n).min(60) {
                let got = r.integrate(|x| x[0].powi(p as i32));
                let want = if p % 2 == 1 {
                    0.0
                } else {
                    double_factorial(p as i64 - 1) / 2f64.powi(p as i32 / 2) * PI.sqrt()
                };
                let scale = (log_gamma((p as f64 + 1.0) / 2.0).unwrap()).exp();
                assert!((got - want).abs() < 1e-12 * scale, "N={n} p={p} got={got} want={want}");
            }
        }
    }

    #[test]
    fn hermite_large_rules_converge() {
        for &n in &[100usize, 250, 360, 500] {
            let r = gauss_hermite(n).unwrap();
            assert_eq!(r.len(), n);
            for w in r.nodes.windows(2) {
                assert!(w[0] < w[1]);
            }
            assert!(r.weights.iter().all(|&w| w >= 0.0));
            if n <= 360 {
                assert!(r.weights.iter().all(|&w| w > 0.0));
            }
            assert!((r.total_weight() - PI.sqrt()).abs() < 1e-13);
            let m2 = r.integrate(|x| x[0] * x[0]);
            assert!((m2 - PI.sqrt() / 2.0).abs() < 1e-13);
        }
        assert!(gauss_hermite(0).is_err());
        assert!(gauss_hermite(501).is_err());
    }

    #[test]
    fn scaled_hermite_integrates_gaussians() {
        let r = gauss_hermite_scaled(40, 0.3).unwrap();
        let v = r.integrate(|x| (-0.5 * x[0] * x[0]).exp());
        assert!((v - (2.0 * PI).sqrt()).abs() < 1e-13);
    }

    #[test]
    fn legendre_rules() {
        let r = mapped_legendre(1, 0.0, 1.0).unwrap();
        assert_eq!(r.nodes, vec![0.5]);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
        let r = mapped_legendre(2, -1.0, 1.0).unwrap();
        assert!((r.integrate(|x| x[0] * x[0]) - 2.0 / 3.0).abs() < 1e-15);
        let r = mapped_legendre(64, 0.0, 8.0).unwrap();
        let v = r.integrate(|x| (-x[0] * x[0]).exp() * x[0]);
        assert!((v - 0.5 * (1.0 - (-64.0f64).exp())).abs() < 1e-14);
        for &n in &[5usize, 33, 200, 2000] {
            let r = mapped_legendre(n, -2.0, 3.0).unwrap();
            for w in r.nodes.windows(2) {
                assert!(w[0] < w[1]);
            }
            for p in 0..(2 * n).min(30) {
                let got = r.integrate(|x| x[0].powi(p as i32));
                let want = (3f64.powi(p as i32 + 1) - (-2f64).powi(p as i32 + 1)) / (p as f64 + 1.0);
                assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "n={n} p={p}");
            }
        }
        assert!(mapped_legendre(4, 1.0, 1.0).is_err());
    }

    #[test]
    fn radial_rule_moments() {
        let r = radial_rule(0.0, 9.0, 200).unwrap();
        assert!((r.integrate(|s| (-s[0] * s[0]).exp()) - 0.5).abs() < 1e-14);
        let r = radial_rule(1.0, 9.0, 200).unwrap();
        assert!((r.integrate(|s| (-s[0] * s[0]).exp()) - 0.5).abs() < 1e-14);
        let r = radial_rule(1.5, 9.0, 200).unwrap();
        let want = 3.0 * PI.sqrt() / 8.0;
        assert!((r.integrate(|s| (-s[0] * s[0]).exp()) - want).abs() < 1e-14);
        assert!(radial_rule(-0.5, 1.0, 10).is_err());
    }

    #[test]
    fn gegenbauer_moments() {
        // ∫_{-1}^{1} t^{2j} (1-t²)^{δ-½} dt = B(j+½, δ+½)
        for &d in &[0.0, 0.5, 1.0, 2.0, 3.5] {
            let (t, w) = gauss_gegenbauer_half(24, d);
            for j in 0..20 {
                let got: f64 = t.iter().zip(&w).map(|(t, w)| w * t.powi(2 * j)).sum();
                let jf = j as f64;
                let want = (log_gamma(jf + 0.5).unwrap() + log_gamma(d + 0.5).unwrap()
                    - log_gamma(jf + d + 1.0).unwrap())
                .exp();
                assert!((got - want).abs() < 1e-13 * want, "d={d} j={j}");
            }
        }
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // Jacobi matrix of the Chebyshev U weight: eigenvalues cos(kπ/(n+1)).
        let n = 12;
        let ev = tridiagonal_eigenvalues(&vec![0.0; n], &vec![0.5; n - 1]).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let want = -(((k + 1) as f64) * PI / (n as f64 + 1.0)).cos();
            assert!((v - want).abs() < 1e-14);
        }
    }
}
