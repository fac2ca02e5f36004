use crate::C64;

/// Pairwise (tree) summation in index order.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        let mut s = 0.0;
        for x in v {
            s += x;
        }
        return s;
    }
    let m = v.len() / 2;
    pairwise_sum(&v[..m]) + pairwise_sum(&v[m..])
}

/// Complex pairwise summation in index order.
pub fn pairwise_sum_c(v: &[C64]) -> C64 {
    if v.len() <= 16 {
        let mut s = C64::new(0.0, 0.0);
        for x in v {
            s += x;
        }
        return s;
    }
    let m = v.len() / 2;
    pairwise_sum_c(&v[..m]) + pairwise_sum_c(&v[m..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        let v: Vec<f64> = (1..=1000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 500500.0);
        let c: Vec<C64> = v.iter().map(|&x| C64::new(x, -x)).collect();
        assert_eq!(pairwise_sum_c(&c), C64::new(500500.0, -500500.0));
        assert_eq!(pairwise_sum(&[]), 0.0);
    }
}
