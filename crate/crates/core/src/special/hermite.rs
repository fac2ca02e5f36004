use super::SpecialValue;
use crate::error::{out_of_range, Error, Result};
use serde::{Deserialize, Serialize};

/// Largest supported Hermite degree.
pub const HERMITE_K_MAX: usize = 10_000;

const RESCALE: f64 = 1e100;
const LN_RESCALE: f64 = 230.25850929940458;

/// Multi-index `α ∈ ℕⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HermiteIndex {
    pub entries: Vec<usize>,
}

impl HermiteIndex {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("empty multi-index".into()));
        }
        Ok(HermiteIndex { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().sum()
    }

    /// All multi-indices of dimension `n` with `|α| = k`, in lexicographic order.
    pub fn of_degree(n: usize, k: usize) -> Vec<HermiteIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<HermiteIndex>) {
            let n = cur.len();
            if pos + 1 == n {
                cur[pos] = left;
                out.push(HermiteIndex { entries: cur.clone() });
                return;
            }
            for a in (0..=left).rev() {
                cur[pos] = a;
                rec(pos + 1, left - a, cur, out);
            }
        }
        if n > 0 {
            rec(0, k, &mut cur, &mut out);
        }
        out
    }
}

/// Beyond this |x| the function is below double underflow.
fn cutoff(k: usize) -> f64 {
    40.0f64.max(((2 * k + 1) as f64).sqrt() + 40.0)
}

fn check(k: usize, x: f64) -> Result<()> {
    if k > HERMITE_K_MAX {
        return Err(out_of_range("k", k as f64, "[0, 10000]"));
    }
    if !x.is_finite() {
        return Err(out_of_range("x", x, "finite"));
    }
    Ok(())
}

/// Normalized Hermite function `Φ_k(x)`.
pub fn hermite_phi(k: usize, x: f64) -> Result<f64> {
    Ok(hermite_phi_value(k, x)?.value.re)
}

/// `Φ_k(x)` with an absolute error estimate.
pub fn hermite_phi_value(k: usize, x: f64) -> Result<SpecialValue> {
    check(k, x)?;
    if x.abs() > cutoff(k) {
        return Ok(SpecialValue::real(0.0, (-x * x / 2.0).exp()));
    }
    let mut prev = 0.0f64;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    let mut ln_scale = -x * x / 2.0;
    for j in 0..k {
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += LN_RESCALE;
        }
    }
    let v = cur * ln_scale.exp();
    Ok(SpecialValue::real(v, (k as f64 + 1.0) * f64::EPSILON))
}

/// `Φ_0(x), …, Φ_kmax(x)`.
pub fn hermite_phi_all(kmax: usize, x: f64) -> Result<Vec<f64>> {
    check(kmax, x)?;
    let mut out = vec![0.0; kmax + 1];
    let mut prev = 0.0f64;
    let mut cur = std::f64::consts::PI.powf(-0.25);
    let mut ln_scale = -x * x / 2.0;
    for j in 0..=kmax {
        if x.abs() <= cutoff(j) {
            out[j] = cur * ln_scale.exp();
        }
        if j == kmax {
            break;
        }
        let jf = j as f64;
        let next = x * (2.0 / (jf + 1.0)).sqrt() * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            ln_scale += LN_RESCALE;
        }
    }
    Ok(out)
}

/// Tensor-product Hermite function `Φ_α(x) = ∏ Φ_{αᵢ}(xᵢ)`.
pub fn hermite_phi_multi(alpha: &HermiteIndex, x: &[f64]) -> Result<f64> {
    if alpha.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            expected: alpha.dim(),
            got: x.len(),
        });
    }
    let mut p = 1.0;
    for (&a, &xi) in alpha.entries.iter().zip(x) {
        p *= hermite_phi(a, xi)?;
    }
    Ok(p)
}
