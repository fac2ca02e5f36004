use crate::error::{Error, Result};
use crate::quadrature::truncation_radius;
use crate::special::hermite_phi_all;
use crate::C64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

/// Parity of a function under `x ↦ -x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

/// Analytic metadata attached to a registered function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunctionMeta {
    /// Envelope exponent γ with `|f(x)| ≤ C e^{-γ|x|²}`.
    pub gamma: f64,
    /// Envelope constant `C`.
    pub c: f64,
    /// Envelope exponent of the Fourier transform, when known.
    pub gamma_hat: Option<f64>,
    /// Constant of the Fourier envelope.
    pub c_hat: Option<f64>,
    pub parity: Option<Parity>,
    /// Highest circular-harmonic degree present, for O(n)-finite functions.
    pub harmonic_degree: Option<usize>,
    pub radial: bool,
    /// Phase growth: local frequency is at most `osc·|x|`.
    pub osc: f64,
    /// Degree of the polynomial factor (sets the oscillation scale).
    pub degree: usize,
}

impl FunctionMeta {
    fn plain(gamma: f64, c: f64) -> Self {
        FunctionMeta {
            gamma,
            c,
            gamma_hat: None,
            c_hat: None,
            parity: None,
            harmonic_degree: None,
            radial: false,
            osc: 0.0,
            degree: 0,
        }
    }

    /// Per-axis radius beyond which the envelope is below `10^{-digits}`.
    pub fn radius(&self, digits: f64) -> f64 {
        let extra = self.c.max(1.0).ln() / std::f64::consts::LN_10;
        truncation_radius(self.gamma, digits + extra)
    }

    /// Upper bound on the local angular frequency of `f` inside radius `r`.
    pub fn frequency(&self, r: f64) -> f64 {
        self.osc * r + (2.0 * self.degree as f64 + 1.0).sqrt()
    }
}

type Evaluator = Arc<dyn Fn(&[f64]) -> C64 + Send + Sync>;

#[derive(Clone)]
pub(crate) enum Kind {
    Gaussian { b: f64 },
    Hermite { alpha: Vec<usize> },
    Example44 { a: f64 },
    Harmonic { m: usize, b: f64 },
    Chiral { m: usize, b: f64 },
    Aniso { b1: f64, b2: f64 },
    Custom(Evaluator),
}

/// A registered closed-form test function on ℝⁿ.
#[derive(Clone)]
pub struct FunctionSpec {
    pub id: String,
    pub n: usize,
    pub params: BTreeMap<String, f64>,
    pub meta: FunctionMeta,
    pub(crate) kind: Kind,
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("id", &self.id)
            .field("n", &self.n)
            .field("meta", &self.meta)
            .finish()
    }
}

/// One registry entry, for listings.
#[derive(Debug, Clone, Serialize)]
pub struct RegistryEntry {
    pub name: &'static str,
    pub dims: &'static str,
    pub params: &'static str,
    pub formula: &'static str,
}

pub const REGISTRY: &[RegistryEntry] = &[
    RegistryEntry {
        name: "gaussian",
        dims: "any",
        params: "b (default 1)",
        formula: "exp(-b|x|^2/2)",
    },
    RegistryEntry {
        name: "hermite",
        dims: "1, 2",
        params: "k (n=1) or k1,k2 (n=2)",
        formula: "normalized Hermite function Phi_alpha",
    },
    RegistryEntry {
        name: "example44",
        dims: "2",
        params: "a (default 1/sqrt 2)",
        formula: "exp(-(a/2)(x1^2+x2^2+2i x1 x2))",
    },
    RegistryEntry {
        name: "harmonic",
        dims: "2",
        params: "m (default 2), b (default 0.6)",
        formula: "r^m cos(m theta) exp(-b r^2/2)",
    },
    RegistryEntry {
        name: "chiral",
        dims: "2",
        params: "m (default 2), b (default 0.6)",
        formula: "(x1+i x2)^m exp(-b r^2/2)",
    },
    RegistryEntry {
        name: "aniso",
        dims: "2",
        params: "b1 (default 0.5), b2 (default 0.8)",
        formula: "exp(-(b1 x1^2 + b2 x2^2)/2)",
    },
];

fn fmt_num(v: f64) -> String {
    format!("{v}")
}

struct Params {
    given: BTreeMap<String, f64>,
    used: Vec<String>,
}

impl Params {
    fn get(&mut self, key: &str, default: Option<f64>) -> Result<f64> {
        self.used.push(key.to_string());
        match (self.given.get(key), default) {
            (Some(&v), _) => Ok(v),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::BadParameter(format!("missing parameter '{key}'"))),
        }
    }

    fn get_index(&mut self, key: &str, default: Option<usize>) -> Result<usize> {
        let v = self.get(key, default.map(|d| d as f64))?;
        if v < 0.0 || v.fract() != 0.0 || v > 10_000.0 {
            return Err(Error::BadParameter(format!(
                "'{key}' must be a non-negative integer, got {v}"
            )));
        }
        Ok(v as usize)
    }

    fn finish(self) -> Result<BTreeMap<String, f64>> {
        for k in self.given.keys() {
            if !self.used.contains(k) {
                return Err(Error::BadParameter(format!("unknown parameter '{k}'")));
            }
        }
        Ok(self
            .used
            .iter()
            .filter_map(|k| self.given.get(k).map(|v| (k.clone(), *v)))
            .collect())
    }
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::BadParameter(format!("'{name}' must be positive, got {v}")));
    }
    Ok(v)
}

fn need_dim(name: &str, n: usize, allowed: &[usize]) -> Result<()> {
    if !allowed.contains(&n) {
        return Err(Error::BadParameter(format!(
            "'{name}' is defined for n in {allowed:?}, got n={n}"
        )));
    }
    Ok(())
}

impl FunctionSpec {
    /// Parses `name:key=val,...` for dimension `n`.
    pub fn parse(spec: &str, n: usize) -> Result<FunctionSpec> {
        let (name, rest) = match spec.split_once(':') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (spec.trim(), ""),
        };
        let mut given = BTreeMap::new();
        for part in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("expected key=value, got '{part}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::BadParameter(format!("'{v}' is not a number")))?;
            if given.insert(k.trim().to_string(), v).is_some() {
                return Err(Error::BadParameter(format!("duplicate parameter '{k}'")));
            }
        }
        if n == 0 {
            return Err(Error::BadParameter("dimension must be at least 1".into()));
        }
        let mut p = Params { given, used: vec![] };
        let kind = match name {
            "gaussian" => Kind::Gaussian {
                b: positive("b", p.get("b", Some(1.0))?)?,
            },
            "hermite" => {
                need_dim(name, n, &[1, 2])?;
                let alpha = if n == 1 {
                    vec![p.get_index("k", None)?]
                } else {
                    vec![p.get_index("k1", Some(0))?, p.get_index("k2", Some(0))?]
                };
                Kind::Hermite { alpha }
            }
            "example44" => {
                need_dim(name, n, &[2])?;
                let a = p.get("a", Some(0.5f64.sqrt()))?;
                Kind::Example44 { a: positive("a", a)? }
            }
            "harmonic" | "chiral" => {
                need_dim(name, n, &[2])?;
                let m = p.get_index("m", Some(2))?;
                let b = positive("b", p.get("b", Some(0.6))?)?;
                if name == "harmonic" {
                    Kind::Harmonic { m, b }
                } else {
                    Kind::Chiral { m, b }
                }
            }
            "aniso" => {
                need_dim(name, n, &[2])?;
                Kind::Aniso {
                    b1: positive("b1", p.get("b1", Some(0.5))?)?,
                    b2: positive("b2", p.get("b2", Some(0.8))?)?,
                }
            }
            _ => return Err(Error::UnknownFunction(name.to_string())),
        };
        let params = p.finish()?;
        Self::from_kind(name, n, params, kind)
    }

    fn from_kind(
        name: &str,
        n: usize,
        params: BTreeMap<String, f64>,
        kind: Kind,
    ) -> Result<FunctionSpec> {
        let nf = n as f64;
        let meta = match &kind {
            Kind::Gaussian { b } => FunctionMeta {
                gamma_hat: Some(1.0 / (2.0 * b)),
                c_hat: Some(b.powf(-nf / 2.0)),
                parity: Some(Parity::Even),
                harmonic_degree: Some(0),
                radial: true,
                ..FunctionMeta::plain(b / 2.0, 1.0)
            },
            Kind::Hermite { alpha } => {
                let deg: usize = alpha.iter().sum();
                FunctionMeta {
                    gamma_hat: Some(0.25),
                    parity: Some(if deg % 2 == 0 { Parity::Even } else { Parity::Odd }),
                    harmonic_degree: if n == 2 { Some(deg) } else { None },
                    degree: deg,
                    ..FunctionMeta::plain(0.25, 1.0)
                }
            }
            Kind::Example44 { a } => FunctionMeta {
                gamma_hat: Some(a / 2.0),
                c_hat: Some(1.0),
                parity: Some(Parity::Even),
                osc: *a,
                ..FunctionMeta::plain(a / 2.0, 1.0)
            },
            Kind::Harmonic { m, b } | Kind::Chiral { m, b } => FunctionMeta {
                gamma_hat: Some(0.45 / b),
                parity: Some(if m % 2 == 0 { Parity::Even } else { Parity::Odd }),
                harmonic_degree: Some(*m),
                degree: *m,
                ..FunctionMeta::plain(0.45 * b, 1.0)
            },
            Kind::Aniso { b1, b2 } => FunctionMeta {
                gamma_hat: Some(1.0 / (2.0 * b1.max(*b2))),
                c_hat: Some((b1 * b2).powf(-0.5)),
                parity: Some(Parity::Even),
                ..FunctionMeta::plain(b1.min(*b2) / 2.0, 1.0)
            },
            Kind::Custom(_) => unreachable!("custom functions use FunctionSpec::custom"),
        };
        let id = if params.is_empty() {
            name.to_string()
        } else {
            let body: Vec<String> = params
                .iter()
                .map(|(k, v)| format!("{k}={}", fmt_num(*v)))
                .collect();
            format!("{name}:{}", body.join(","))
        };
        let mut f = FunctionSpec {
            id,
            n,
            params,
            meta,
            kind,
        };
        f.register_envelope()?;
        Ok(f)
    }

    /// Wraps an arbitrary evaluator with a declared envelope exponent.
    pub fn custom(
        id: impl Into<String>,
        n: usize,
        gamma: f64,
        eval: impl Fn(&[f64]) -> C64 + Send + Sync + 'static,
    ) -> Result<FunctionSpec> {
        let mut f = FunctionSpec {
            id: id.into(),
            n,
            params: BTreeMap::new(),
            meta: FunctionMeta::plain(positive("gamma", gamma)?, 1.0),
            kind: Kind::Custom(Arc::new(eval)),
        };
        f.register_envelope()?;
        Ok(f)
    }

    /// Wraps an evaluator whose metadata is already known (transforms of
    /// registered functions); no envelope scan is made.
    pub fn derived(
        id: impl Into<String>,
        n: usize,
        meta: FunctionMeta,
        eval: impl Fn(&[f64]) -> C64 + Send + Sync + 'static,
    ) -> FunctionSpec {
        FunctionSpec {
            id: id.into(),
            n,
            params: BTreeMap::new(),
            meta,
            kind: Kind::Custom(Arc::new(eval)),
        }
    }

    pub fn with_meta(mut self, meta: FunctionMeta) -> Self {
        self.meta = meta;
        self
    }

    /// Checks the declared envelope on a sample grid over `|x| ≤ 10` and
    /// raises `C` to the grid supremum of `|f| e^{γ|x|²}`.
    fn register_envelope(&mut self) -> Result<()> {
        let g = self.meta.gamma;
        let mut sup = 0.0f64;
        let mut probe = |x: &[f64]| {
            let r2: f64 = x.iter().map(|v| v * v).sum();
            let v = self.eval(x).norm() * (g * r2).exp();
            sup = sup.max(v);
            v
        };
        match self.n {
            1 => {
                for i in 0..=800 {
                    probe(&[-10.0 + 0.025 * i as f64]);
                }
            }
            _ => {
                let mut x = vec![0.0; self.n];
                for i in 0..=200 {
                    let r = 0.05 * i as f64;
                    for j in 0..96 {
                        let t = 2.0 * PI * j as f64 / 96.0;
                        x[0] = r * t.cos();
                        x[1] = r * t.sin();
                        probe(&x);
                    }
                }
            }
        }
        if !sup.is_finite() {
            return Err(Error::Contract(format!(
                "declared envelope exponent {g} of '{}' is not satisfied",
                self.id
            )));
        }
        self.meta.c = self.meta.c.max(sup);
        Ok(())
    }

    pub fn name(&self) -> &str {
        self.id.split(':').next().unwrap_or(&self.id)
    }

    /// Evaluates `f(x)`.
    pub fn eval(&self, x: &[f64]) -> C64 {
        match &self.kind {
            Kind::Gaussian { b } => {
                let r2: f64 = x.iter().map(|v| v * v).sum();
                C64::new((-b * r2 / 2.0).exp(), 0.0)
            }
            Kind::Hermite { alpha } => {
                let mut p = 1.0;
                for (&a, &xi) in alpha.iter().zip(x) {
                    p *= hermite_phi_all(a, xi).map(|v| v[a]).unwrap_or(0.0);
                }
                C64::new(p, 0.0)
            }
            Kind::Example44 { a } => {
                let (x1, x2) = (x[0], x[1]);
                C64::new(-(a / 2.0) * (x1 * x1 + x2 * x2), -a * x1 * x2).exp()
            }
            Kind::Harmonic { m, b } => {
                let r2 = x[0] * x[0] + x[1] * x[1];
                let p = C64::new(x[0], x[1]).powu(*m as u32);
                C64::new(p.re * (-b * r2 / 2.0).exp(), 0.0)
            }
            Kind::Chiral { m, b } => {
                let r2 = x[0] * x[0] + x[1] * x[1];
                C64::new(x[0], x[1]).powu(*m as u32) * (-b * r2 / 2.0).exp()
            }
            Kind::Aniso { b1, b2 } => {
                C64::new((-(b1 * x[0] * x[0] + b2 * x[1] * x[1]) / 2.0).exp(), 0.0)
            }
            Kind::Custom(f) => f(x),
        }
    }

    /// Closed-form `‖f‖₂²` where available.
    pub fn norm_sq_exact(&self) -> Option<f64> {
        let nf = self.n as f64;
        match &self.kind {
            Kind::Gaussian { b } => Some((PI / b).powf(nf / 2.0)),
            Kind::Hermite { .. } => Some(1.0),
            Kind::Example44 { a } => Some(PI / a),
            Kind::Aniso { b1, b2 } => Some(PI / (b1 * b2).sqrt()),
            Kind::Harmonic { m, b } => {
                // ∫ r^{2m} cos²(mθ) e^{-b r²} r dr dθ
                let ang = if *m == 0 { 2.0 * PI } else { PI };
                Some(ang * libm::tgamma(*m as f64 + 1.0) / (2.0 * b.powi(*m as i32 + 1)))
            }
            Kind::Chiral { m, b } => {
                Some(2.0 * PI * libm::tgamma(*m as f64 + 1.0) / (2.0 * b.powi(*m as i32 + 1)))
            }
            Kind::Custom(_) => None,
        }
    }

    /// Envelope-based Hardy exponent `a = min(2γ, 2γ̂)` from metadata.
    pub fn declared_hardy_a(&self) -> Option<f64> {
        let a = 2.0 * self.meta.gamma.min(self.meta.gamma_hat?);
        (a > 0.0 && a < 1.0).then_some(a)
    }
}
