use crate::error::{out_of_range, Result};
use std::f64::consts::PI;

/// Number of real circular harmonics of degree `m` (1 for m = 0, else 2).
pub fn harmonic_count(m: usize) -> usize {
    if m == 0 {
        1
    } else {
        2
    }
}

/// Orthonormal real circular harmonic `Y_{m,j}(θ)`: `j = 1` is the cosine,
/// `j = 2` the sine.
pub fn circular_harmonic(m: usize, j: usize, theta: f64) -> Result<f64> {
    if j == 0 || j > harmonic_count(m) {
        return Err(out_of_range("j", j as f64, "{1..d_m}"));
    }
    Ok(if m == 0 {
        (2.0 * PI).powf(-0.5)
    } else if j == 1 {
        (m as f64 * theta).cos() / PI.sqrt()
    } else {
        (m as f64 * theta).sin() / PI.sqrt()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert!((circular_harmonic(0, 1, 1.3).unwrap() - 0.3989422804014327).abs() < 1e-15);
        assert!((circular_harmonic(2, 1, 0.0).unwrap() - 0.5641895835477563).abs() < 1e-15);
        assert!(circular_harmonic(0, 2, 0.0).is_err());
        assert!(circular_harmonic(3, 3, 0.0).is_err());
    }

    #[test]
    fn orthonormal() {
        let m_pts = 64;
        let h = 2.0 * PI / m_pts as f64;
        let mut idx = vec![];
        for m in 0..6 {
            for j in 1..=harmonic_count(m) {
                idx.push((m, j));
            }
        }
        for &(m, j) in &idx {
            for &(m2, j2) in &idx {
                let s: f64 = (0..m_pts)
                    .map(|i| {
                        let t = h * i as f64;
                        circular_harmonic(m, j, t).unwrap() * circular_harmonic(m2, j2, t).unwrap()
                    })
                    .sum::<f64>()
                    * h;
                let want = if (m, j) == (m2, j2) { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-14);
            }
        }
    }
}
