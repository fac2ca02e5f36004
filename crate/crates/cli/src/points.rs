//! Point lists on the command line: `a,b,c`, `start:stop:step`, and
//! complex points `re:im,re:im`.

use hardyx::C64;

#[derive(Debug)]
pub struct PointError(String, &'static str);

impl std::fmt::Display for PointError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bad point list '{}': {}", self.0, self.1)
    }
}

impl std::error::Error for PointError {}

fn num(s: &str, whole: &str) -> Result<f64, PointError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| PointError(whole.into(), "expected finite numbers"))
}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>, PointError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let (a, b, h) = (num(parts[0], s)?, num(parts[1], s)?, num(parts[2], s)?);
        if !(h > 0.0) || b < a {
            return Err(PointError(s.into(), "range needs start <= stop and step > 0"));
        }
        let count = ((b - a) / h + 1e-9).floor() as usize;
        if count > 100_000 {
            return Err(PointError(s.into(), "more than 100000 points"));
        }
        return Ok((0..=count).map(|i| a + h * i as f64).collect());
    }
    if parts.len() != 1 {
        return Err(PointError(s.into(), "use a,b,... or start:stop:step"));
    }
    s.split(',').map(|t| num(t, s)).collect()
}

pub fn parse_complex_list(s: &str) -> Result<Vec<C64>, PointError> {
    s.split(',')
        .map(|t| {
            let (re, im) = t
                .split_once(':')
                .ok_or_else(|| PointError(s.into(), "complex points are re:im"))?;
            Ok(C64::new(num(re, s)?, num(im, s)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_real_list("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_real_list("1, 2.5").unwrap(), vec![1.0, 2.5]);
        assert!(parse_real_list("1:0:1").is_err());
        assert!(parse_real_list("x").is_err());
        assert_eq!(parse_complex_list("1:-2,0:0.5").unwrap()[0], C64::new(1.0, -2.0));
        assert!(parse_complex_list("1").is_err());
    }
}
