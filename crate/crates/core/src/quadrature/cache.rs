use super::gauss::{gauss_hermite, mapped_legendre, radial_rule};
use super::rule::{QuadratureRule, RuleKind, RuleMeta};
use super::sphere::sphere_rule;
use super::tensor::tensor_rule;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Parameters identifying a rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleSpec {
    GaussHermite { n: usize },
    MappedLegendre { n: usize, a: f64, b: f64 },
    Radial { delta: f64, r: f64, n: usize },
    Sphere { n: usize, resolution: usize },
    Tensor { n: usize, per_axis: usize, r: f64 },
}

impl RuleSpec {
    pub fn build(&self) -> Result<QuadratureRule> {
        match *self {
            RuleSpec::GaussHermite { n } => gauss_hermite(n),
            RuleSpec::MappedLegendre { n, a, b } => mapped_legendre(n, a, b),
            RuleSpec::Radial { delta, r, n } => radial_rule(delta, r, n),
            RuleSpec::Sphere { n, resolution } => sphere_rule(n, resolution),
            RuleSpec::Tensor { n, per_axis, r } => Ok(tensor_rule(n, per_axis, r)?.to_rule()),
        }
    }

    /// File-name key; floats are encoded by their bit patterns.
    pub fn key(&self) -> String {
        let b = |x: f64| format!("{:016x}", x.to_bits());
        match *self {
            RuleSpec::GaussHermite { n } => format!("gauss_hermite-{n}"),
            RuleSpec::MappedLegendre { n, a, b: hi } => {
                format!("mapped_legendre-{n}-{}-{}", b(a), b(hi))
            }
            RuleSpec::Radial { delta, r, n } => format!("radial-{}-{}-{n}", b(delta), b(r)),
            RuleSpec::Sphere { n, resolution } => format!("sphere-{n}-{resolution}"),
            RuleSpec::Tensor { n, per_axis, r } => format!("tensor-{n}-{per_axis}-{}", b(r)),
        }
    }
}

/// On-disk JSON record of a rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub kind: RuleKind,
    pub params: RuleSpec,
    pub dim: usize,
    pub meta: RuleMeta,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl RuleRecord {
    pub fn new(params: RuleSpec, rule: QuadratureRule) -> Self {
        RuleRecord {
            kind: rule.kind,
            params,
            dim: rule.dim,
            meta: rule.meta,
            nodes: rule.nodes,
            weights: rule.weights,
        }
    }

    pub fn into_rule(self) -> QuadratureRule {
        QuadratureRule {
            kind: self.kind,
            dim: self.dim,
            nodes: self.nodes,
            weights: self.weights,
            meta: self.meta,
        }
    }
}

/// Optional disk cache of rules. A disabled cache builds every rule.
#[derive(Debug, Clone, Default)]
pub struct RuleCache {
    dir: Option<PathBuf>,
}

impl RuleCache {
    pub fn disabled() -> Self {
        RuleCache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        RuleCache {
            dir: Some(dir.into()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn get(&self, spec: &RuleSpec) -> Result<QuadratureRule> {
        let Some(dir) = &self.dir else {
            return spec.build();
        };
        let path = dir.join(format!("{}.json", spec.key()));
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(rec) = serde_json::from_str::<RuleRecord>(&text) {
                if &rec.params == spec {
                    return Ok(rec.into_rule());
                }
            }
        }
        let rule = spec.build()?;
        std::fs::create_dir_all(dir)?;
        let rec = RuleRecord::new(spec.clone(), rule.clone());
        let tmp = dir.join(format!(".{}.{}.tmp", spec.key(), std::process::id()));
        std::fs::write(&tmp, serde_json::to_vec(&rec)?)?;
        std::fs::rename(&tmp, &path)?;
        Ok(rule)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_rules_are_identical() {
        let dir = tempfile::tempdir().unwrap();
        let cache = RuleCache::at(dir.path());
        let specs = [
            RuleSpec::GaussHermite { n: 37 },
            RuleSpec::MappedLegendre { n: 50, a: -1.3, b: 2.0 / 3.0 },
            RuleSpec::Radial { delta: 1.5, r: 9.1, n: 64 },
            RuleSpec::Sphere { n: 2, resolution: 8 },
        ];
        for s in &specs {
            let fresh = s.build().unwrap();
            let first = cache.get(s).unwrap();
            let second = cache.get(s).unwrap();
            assert_eq!(fresh, first);
            assert_eq!(fresh, second);
        }
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), specs.len());
        assert_eq!(RuleCache::disabled().get(&specs[0]).unwrap(), specs[0].build().unwrap());
    }
}
