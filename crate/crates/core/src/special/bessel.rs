use super::gamma::lgamma_pos;
use super::laguerre::check_delta;
use crate::error::{out_of_range, Error, Result};
use crate::quadrature::gauss_gegenbauer_half;
use crate::C64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const SERIES_CAP: usize = 400;
const RULE_SIZES: [usize; 12] = [24, 32, 48, 64, 96, 128, 192, 256, 384, 512, 768, 1024];

/// `J_δ(w)/w^δ` by its power series.
pub fn bessel_ratio_series(delta: f64, w: C64) -> Result<C64> {
    check_delta(delta)?;
    let q = -w * w / 4.0;
    let mut term = C64::new((-lgamma_pos(delta + 1.0)).exp(), 0.0);
    let mut sum = term;
    for j in 0..SERIES_CAP {
        let jf = j as f64;
        term = term * q / ((jf + 1.0) * (delta + jf + 1.0));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() || term.norm() == 0.0 {
            return Ok(sum * 2f64.powf(-delta));
        }
    }
    Err(Error::NoConvergence(format!(
        "Bessel series for delta={delta}, |w|={} after {SERIES_CAP} terms",
        w.norm()
    )))
}

/// `J_δ(w)/w^δ` from Poisson's integral with a Gauss–Gegenbauer rule.
pub fn bessel_ratio_integral(delta: f64, w: C64) -> Result<C64> {
    Ok(kernel_for(delta)?.eval_integral(w))
}

/// `J_δ(w)/w^δ`, the entire Bessel ratio used as the Hankel kernel.
///
/// The power series is used where it is free of cancellation; for
/// arguments near the real axis with large modulus the Poisson integral
/// takes over.
pub fn bessel_ratio(delta: f64, w: C64) -> Result<C64> {
    check_delta(delta)?;
    if !(w.norm() <= 100.0) {
        return Err(out_of_range("|w|", w.norm(), "[0, 100]"));
    }
    kernel_for(delta)?.eval(w)
}

pub(crate) fn kernel_for(delta: f64) -> Result<Arc<BesselKernel>> {
    check_delta(delta)?;
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<BesselKernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(map
        .entry(delta.to_bits())
        .or_insert_with(|| Arc::new(BesselKernel::new(delta).expect("delta checked")))
        .clone())
}

/// Reusable evaluator of `J_δ(w)/w^δ` for a fixed δ.
pub struct BesselKernel {
    delta: f64,
    pref: f64,
    rules: Vec<OnceLock<(Vec<f64>, Vec<f64>)>>,
}

impl std::fmt::Debug for BesselKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BesselKernel").field("delta", &self.delta).finish()
    }
}

impl BesselKernel {
    pub fn new(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        let pref = (-delta * std::f64::consts::LN_2
            - 0.5 * std::f64::consts::PI.ln()
            - lgamma_pos(delta + 0.5))
        .exp();
        Ok(BesselKernel {
            delta,
            pref,
            rules: RULE_SIZES.iter().map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    fn rule(&self, w_abs: f64) -> &(Vec<f64>, Vec<f64>) {
        let need = (0.6 * w_abs + 30.0).ceil() as usize;
        let idx = RULE_SIZES
            .iter()
            .position(|&n| n >= need)
            .unwrap_or(RULE_SIZES.len() - 1);
        self.rules[idx].get_or_init(|| gauss_gegenbauer_half(RULE_SIZES[idx], self.delta))
    }

    fn series_is_stable(w: C64) -> bool {
        w.norm() <= 8.0 || w.norm() - w.im.abs() <= 4.0
    }

    pub fn eval(&self, w: C64) -> Result<C64> {
        if Self::series_is_stable(w) {
            bessel_ratio_series(self.delta, w)
        } else {
            Ok(self.eval_integral(w))
        }
    }

    pub fn eval_integral(&self, w: C64) -> C64 {
        let (t, wt) = self.rule(w.norm());
        let mut s = C64::new(0.0, 0.0);
        for (ti, wi) in t.iter().zip(wt) {
            s += (w * ti).cos() * wi;
        }
        s * self.pref
    }

    /// Real argument fast path.
    pub fn eval_real(&self, x: f64) -> f64 {
        if x.abs() <= 8.0 {
            return bessel_ratio_series(self.delta, C64::new(x, 0.0))
                .map(|v| v.re)
                .unwrap_or(f64::NAN);
        }
        let (t, wt) = self.rule(x.abs());
        let mut s = 0.0;
        for (ti, wi) in t.iter().zip(wt) {
            s += (x * ti).cos() * wi;
        }
        s * self.pref
    }
}

/// Modified Bessel function `K_δ(x)` from
/// `K_δ(x) = (π/2x)^{1/2} e^{-x}/Γ(δ+½) ∫₀^∞ e^{-t} t^{δ-½} (1+t/2x)^{δ-½} dt`.
pub fn bessel_k(delta: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(out_of_range("x", x, "(0, inf)"));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(out_of_range("delta", delta, "[0, inf)"));
    }
    // t = v² removes the endpoint singularity of t^{δ-½}.
    let f = |v: f64| {
        let t = v * v;
        2.0 * v.powf(2.0 * delta) * (-t).exp() * (1.0 + t / (2.0 * x)).powf(delta - 0.5)
    };
    let vmax = delta.sqrt() + 9.0;
    let integral = adaptive_gk15(&f, 0.0, vmax, 1e-15, 60)?;
    let ln_pref = 0.5 * (std::f64::consts::PI / (2.0 * x)).ln() - x - lgamma_pos(delta + 0.5);
    Ok(ln_pref.exp() * integral)
}

const GK_X: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const GK_WK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const GK_WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * GK_WK[7];
    let mut g = fc * GK_WG[3];
    for i in 0..7 {
        let x = h * GK_X[i];
        let s = f(c - x) + f(c + x);
        k += GK_WK[i] * s;
        if i % 2 == 1 {
            g += GK_WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod (7/15) quadrature with a fixed bisection order.
pub(crate) fn adaptive_gk15(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_depth: usize,
) -> Result<f64> {
    let (whole, _) = gk15(f, a, b);
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        est: f64,
        err: f64,
        scale: f64,
        rel_tol: f64,
        depth: usize,
    ) -> Result<f64> {
        if err <= rel_tol * scale || (b - a) < 1e-14 * scale.max(1.0) {
            return Ok(est);
        }
        if depth == 0 {
            return Err(Error::NoConvergence("adaptive Gauss-Kronrod depth exhausted".into()));
        }
        let m = 0.5 * (a + b);
        let (l, le) = gk15(f, a, m);
        let (r, re) = gk15(f, m, b);
        Ok(rec(f, a, m, l, le, scale, rel_tol, depth - 1)?
            + rec(f, m, b, r, re, scale, rel_tol, depth - 1)?)
    }
    let (est, err) = gk15(f, a, b);
    rec(f, a, b, est, err, whole.abs().max(1e-300), rel_tol, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn half_closed(w: C64) -> C64 {
        if w.norm() == 0.0 {
            return C64::new((2.0 / PI).sqrt(), 0.0);
        }
        w.sin() / w * (2.0 / PI).sqrt()
    }

    #[test]
    fn reference_values() {
        let v = bessel_ratio(0.5, C64::new(0.0, 0.0)).unwrap();
        assert!((v.re - (2.0 / PI).sqrt()).abs() < 1e-15);
        let v = bessel_ratio(0.5, C64::new(1.0, 0.0)).unwrap();
        assert!((v.re - 0.6713967071418031).abs() < 1e-14);
        for &t in &[0.5, 3.0, 20.0, 90.0] {
            let v = bessel_ratio(1.0, C64::new(0.0, t)).unwrap();
            assert!(v.re > 0.0 && v.im.abs() <= 1e-14 * v.re);
        }
        assert!(bessel_ratio(0.5, C64::new(101.0, 0.0)).is_err());
        assert!(bessel_ratio(-0.5, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn half_order_closed_form_complex_plane() {
        for i in 0..=20 {
            for j in 0..=20 {
                let w = C64::new(-20.0 + 2.0 * i as f64, -20.0 + 2.0 * j as f64);
                if w.norm() > 20.0 {
                    continue;
                }
                let got = bessel_ratio(0.5, w).unwrap();
                let want = half_closed(w);
                assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "w={w}");
            }
        }
    }

    #[test]
    fn series_and_integral_agree() {
        for &d in &[0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.5] {
            for &w in &[
                C64::new(0.3, 0.0),
                C64::new(3.0, 1.0),
                C64::new(7.5, -2.0),
                C64::new(1.0, 6.0),
            ] {
                let a = bessel_ratio_series(d, w).unwrap();
                let b = bessel_ratio_integral(d, w).unwrap();
                assert!((a - b).norm() < 1e-13 * a.norm().max(1e-3), "d={d} w={w}");
            }
        }
    }

    #[test]
    fn integer_orders_against_known_zeros() {
        // J_0(2.404825557695773) = 0, J_1(3.831705970207512) = 0
        let k0 = BesselKernel::new(0.0).unwrap();
        assert!(k0.eval_real(2.404825557695773).abs() < 1e-15);
        let k1 = BesselKernel::new(1.0).unwrap();
        assert!(k1.eval_real(3.831705970207512).abs() < 1e-15);
        assert!((k0.eval_real(30.0) - (-0.08636798358104031)).abs() < 1e-14);
        let v = k1.eval_real(150.0);
        assert!((v - (-0.0004343010910515158)).abs() < 4e-15, "{v}");
    }

    #[test]
    fn modified_bessel_k() {
        let v = bessel_k(0.5, 1.0).unwrap();
        assert!((v - (PI / 2.0).sqrt() * (-1.0f64).exp()).abs() < 1e-14);
        let v = bessel_k(0.5, 2.0).unwrap();
        assert!((v - (PI / 4.0).sqrt() * (-2.0f64).exp()).abs() < 1e-14);
        // K_{3/2}(x) = √(π/2x) e^{-x}(1 + 1/x)
        for &x in &[0.1, 0.7, 3.0, 25.0] {
            let want = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
            let got = bessel_k(1.5, x).unwrap();
            assert!(((got - want) / want).abs() < 1e-13, "x={x}");
        }
        // K_0(1) and K_1(1) reference values
        assert!((bessel_k(0.0, 1.0).unwrap() - 0.42102443824070834).abs() < 1e-14);
        assert!((bessel_k(1.0, 1.0).unwrap() - 0.6019072301972346).abs() < 1e-14);
        let mut last = f64::INFINITY;
        for i in 1..50 {
            let v = bessel_k(0.5, 0.2 * i as f64).unwrap();
            assert!(v < last);
            last = v;
        }
        assert!(bessel_k(0.5, 0.0).is_err());
    }
}
