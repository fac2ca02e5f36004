use crate::analysis::CoefficientTable;
use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

/// Minimum number of usable tail points for a fit.
pub const MIN_FIT_POINTS: usize = 6;
/// Entries below this fraction of the table maximum are treated as zero.
pub const ZERO_FLOOR: f64 = 1e-13;
/// Entries whose error estimate exceeds this fraction of the value are dropped.
pub const ERR_FRACTION: f64 = 0.1;

/// Abscissa `x = scale·k + offset` of the decay model
/// `value ≈ C x^p e^{-x t/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Abscissa {
    pub scale: f64,
    pub offset: f64,
}

impl Abscissa {
    /// `x = 2k + n` for Hermite levels.
    pub fn hermite(n: usize) -> Self {
        Abscissa {
            scale: 2.0,
            offset: n as f64,
        }
    }

    /// `x = 4k + 2δ + 1` for Laguerre coefficients.
    pub fn laguerre(delta: f64) -> Self {
        Abscissa {
            scale: 4.0,
            offset: 2.0 * delta + 1.0,
        }
    }

    pub fn at(&self, k: usize) -> f64 {
        self.scale * k as f64 + self.offset
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", content = "value", rename_all = "snake_case")]
pub enum PMode {
    Free,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayFit {
    pub t: f64,
    pub p: f64,
    pub p_fixed: bool,
    pub c: f64,
    pub residual_rms: f64,
    pub implied_a: f64,
    pub k_window: [usize; 2],
    pub points: usize,
    /// The usable tail is not strictly decreasing.
    pub non_monotone: bool,
    pub abscissa: Abscissa,
}

/// Entries that carry information: nonzero, above the noise floor of the
/// table and with a small error estimate.
pub(crate) fn usable(table: &CoefficientTable) -> Vec<(usize, f64)> {
    let top = table.entries.iter().map(|e| e.value).fold(0.0, f64::max);
    table
        .entries
        .iter()
        .filter(|e| {
            e.value.is_finite()
                && e.value > 0.0
                && e.value > ZERO_FLOOR * top
                && e.est_err <= ERR_FRACTION * e.value
        })
        .map(|e| (e.k, e.value))
        .collect()
}

/// Tail window `[max(4, K/3), K]`, `K` the largest resolved level of the
/// table (trailing entries at the noise floor carry no rate information).
pub fn tail_window(table: &CoefficientTable) -> [usize; 2] {
    let kmax = usable(table)
        .last()
        .map(|&(k, _)| k)
        .or_else(|| table.entries.iter().map(|e| e.k).max())
        .unwrap_or(0);
    [(kmax / 3).max(4), kmax]
}

/// Least-squares fit of `log value = log C + p log x - x t/2` over the
/// tail window, with `x = 2k + n`.
pub fn decay_fit(table: &CoefficientTable, n: usize, p_mode: PMode) -> Result<DecayFit> {
    decay_fit_with(table, Abscissa::hermite(n), p_mode)
}

pub fn decay_fit_with(table: &CoefficientTable, ab: Abscissa, p_mode: PMode) -> Result<DecayFit> {
    let win = tail_window(table);
    let pts: Vec<(usize, f64)> = usable(table)
        .into_iter()
        .filter(|&(k, _)| k >= win[0] && k <= win[1])
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints {
            got: pts.len(),
            need: MIN_FIT_POINTS,
        });
    }
    let cols = if matches!(p_mode, PMode::Free) { 3 } else { 2 };
    let mut a = DMatrix::<f64>::zeros(pts.len(), cols);
    let mut y = DVector::<f64>::zeros(pts.len());
    for (i, &(k, v)) in pts.iter().enumerate() {
        let x = ab.at(k);
        a[(i, 0)] = 1.0;
        a[(i, cols - 1)] = -x / 2.0;
        match p_mode {
            PMode::Free => {
                a[(i, 1)] = x.ln();
                y[i] = v.ln();
            }
            PMode::Fixed(p) => y[i] = v.ln() - p * x.ln(),
        }
    }
    let sol = a
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::NoConvergence(format!("least squares: {e}")))?;
    let resid = &a * &sol - &y;
    let rms = (resid.norm_squared() / pts.len() as f64).sqrt();
    let (p, t) = match p_mode {
        PMode::Free => (sol[1], sol[2]),
        PMode::Fixed(p) => (p, sol[1]),
    };
    if !t.is_finite() {
        return Err(Error::NoConvergence("fitted rate is not finite".into()));
    }
    let non_monotone = pts.windows(2).any(|w| w[1].1 >= w[0].1);
    Ok(DecayFit {
        t,
        p,
        p_fixed: cols == 2,
        c: sol[0].exp(),
        residual_rms: rms,
        implied_a: (2.0 * t).tanh(),
        k_window: win,
        points: pts.len(),
        non_monotone,
        abscissa: ab,
    })
}

/// Result of testing `value_k ≤ C x_k^p e^{-x_k t/2}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub model: String,
    pub p: f64,
    pub t: f64,
    pub c_min: f64,
    pub k_at_max: usize,
    /// Largest step-to-step growth factor of the tail contributions.
    pub tail_growth: f64,
    pub holds: bool,
    /// `(k, value_k / envelope_k)` over the usable entries.
    pub contributions: Vec<(usize, f64)>,
}

/// Relative growth of tail contributions tolerated as noise.
pub const GROWTH_TOL: f64 = 1e-3;

/// Minimal constant for `value_k ≤ C (2k+n)^p e^{-(2k+n)t/2}`; the bound
/// holds when that constant is finite and the contributions do not grow
/// across the tail window.
pub fn bound_check(table: &CoefficientTable, n: usize, p: f64, t: f64) -> BoundReport {
    let ab = Abscissa::hermite(n);
    bound_check_with(
        table,
        format!("(2k+{n})^{p} exp(-(2k+{n}) {t}/2)"),
        p,
        t,
        |k| p * ab.at(k).ln() - ab.at(k) * t / 2.0,
    )
}

/// As `bound_check` with an arbitrary envelope given by its logarithm.
pub fn bound_check_with(
    table: &CoefficientTable,
    model: String,
    p: f64,
    t: f64,
    log_env: impl Fn(usize) -> f64,
) -> BoundReport {
    let contributions: Vec<(usize, f64)> = usable(table)
        .into_iter()
        .filter_map(|(k, v)| {
            let le = log_env(k);
            le.is_finite().then(|| (k, (v.ln() - le).exp()))
        })
        .collect();
    let (k_at_max, c_min) = contributions
        .iter()
        .copied()
        .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    let win = tail_window(table);
    let tail: Vec<f64> = contributions
        .iter()
        .filter(|c| c.0 >= win[0])
        .map(|c| c.1)
        .collect();
    let tail_growth = tail
        .windows(2)
        .map(|w| w[1] / w[0])
        .fold(0.0, f64::max);
    let holds = c_min.is_finite() && c_min > 0.0 && tail_growth <= 1.0 + GROWTH_TOL;
    BoundReport {
        model,
        p,
        t,
        c_min,
        k_at_max,
        tail_growth,
        holds,
        contributions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{Quantity, Route};
    use proptest::prelude::*;

    fn table(vals: &[f64]) -> CoefficientTable {
        let mut t = CoefficientTable::new("synthetic", 1, Route::Formula, Quantity::ProjNorm);
        for (k, &v) in vals.iter().enumerate() {
            t.push(k, v, 0.0);
        }
        t
    }

    #[test]
    fn exact_model() {
        let v: Vec<f64> = (0..=30).map(|k| 3.0 * (-(2.0 * k as f64 + 1.0) * 0.25).exp()).collect();
        let f = decay_fit(&table(&v), 1, PMode::Fixed(0.0)).unwrap();
        assert!((f.t - 0.5).abs() < 1e-12 && (f.c - 3.0).abs() < 1e-11);
        assert!(!f.non_monotone);
    }

    #[test]
    fn spike_is_degenerate() {
        let mut v = vec![0.0; 21];
        v[5] = 1.0;
        assert!(matches!(
            decay_fit(&table(&v), 1, PMode::Free),
            Err(Error::TooFewPoints { need: 6, .. })
        ));
    }

    #[test]
    fn slower_decay_fails_bound() {
        let v: Vec<f64> = (0..=30).map(|k| (-(2.0 * k as f64 + 1.0) * 0.2).exp()).collect();
        assert!(bound_check(&table(&v), 1, 0.0, 0.4).holds);
        assert!(!bound_check(&table(&v), 1, 0.0, 0.5).holds);
    }

    proptest! {
        #[test]
        fn recovers_geometric(c in 0.1f64..10.0, p in -1.0f64..1.0, t in 0.1f64..1.5, n in 1usize..4) {
            let v: Vec<f64> = (0..=40)
                .map(|k| {
                    let x = 2.0 * k as f64 + n as f64;
                    c * x.powf(p) * (-x * t / 2.0).exp()
                })
                .collect();
            let f = decay_fit(&table(&v), n, PMode::Free).unwrap();
            prop_assert!((f.t - t).abs() < 1e-10 * (1.0 + t));
            prop_assert!((f.p - p).abs() < 1e-8);
            prop_assert!((f.c / c - 1.0).abs() < 1e-8);
        }
    }
}
