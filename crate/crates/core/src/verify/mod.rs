//! Verification suites: each bundles a family of identities and reports
//! every check with its measured error and tolerance.

mod analysis;
mod eigen;
mod fields;

use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Gaussians `e^{-b|x|²/2}` used by the rate-recovery checks.
pub const GAUSSIAN_B: [f64; 3] = [0.3, 0.5, 0.7];

/// Hardy-class registry functions on ℝ² (`0 < a < 1` for `f` and `f̂`).
pub const HARDY_2D: [&str; 7] = [
    "gaussian:b=0.3",
    "gaussian:b=0.5",
    "gaussian:b=0.7",
    "example44",
    "harmonic:m=2,b=0.6",
    "chiral:m=2,b=0.6",
    "aniso",
];

/// Hardy-class registry functions on ℝ.
pub const HARDY_1D: [&str; 3] = ["gaussian:b=0.3", "gaussian:b=0.5", "gaussian:b=0.7"];

/// Projection norms at or below this level count as zero levels.
pub const NULL_LEVEL: f64 = 1e-7;

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured ≤ tolerance`; NaN fails.
    pub fn below(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            tolerance,
            pass: measured <= tolerance,
        }
    }

    /// A computation that could not be carried out.
    pub fn failed(name: impl Into<String>, err: &Error) -> Self {
        Check {
            name: format!("{}: {err}", name.into()),
            measured: f64::NAN,
            tolerance: 0.0,
            pass: false,
        }
    }

    /// Agreement of two values: relative above `null`, absolute (both
    /// small) below it.
    pub fn agree(name: impl Into<String>, a: f64, b: f64, rel: f64, null: f64) -> Self {
        let name = name.into();
        let top = a.abs().max(b.abs());
        if top <= null {
            Check::below(format!("{name} (zero level)"), top, null)
        } else {
            Check::below(name, (a - b).abs() / top, rel)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.name().to_string(),
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Orthonormality,
    FourierEigen,
    WignerIdentity,
    HankelEigen,
    Udelta,
    Cholewinski,
    Example44,
    Routes,
    Radialization,
    VectorBargmann,
    Lemma55,
    Theorems,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Orthonormality,
        Suite::FourierEigen,
        Suite::WignerIdentity,
        Suite::HankelEigen,
        Suite::Udelta,
        Suite::Cholewinski,
        Suite::Example44,
        Suite::Routes,
        Suite::Radialization,
        Suite::VectorBargmann,
        Suite::Lemma55,
        Suite::Theorems,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthonormality => "orthonormality",
            Suite::FourierEigen => "fourier-eigen",
            Suite::WignerIdentity => "wigner-identity",
            Suite::HankelEigen => "hankel-eigen",
            Suite::Udelta => "udelta",
            Suite::Cholewinski => "cholewinski",
            Suite::Example44 => "example44",
            Suite::Routes => "routes",
            Suite::Radialization => "radialization",
            Suite::VectorBargmann => "vector-bargmann",
            Suite::Lemma55 => "lemma55",
            Suite::Theorems => "theorems",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs one suite. Numerical failures become failing checks; only
/// programming errors in the suite itself surface as `Err`.
pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Orthonormality => eigen::orthonormality(),
        Suite::FourierEigen => eigen::fourier_eigen(),
        Suite::HankelEigen => eigen::hankel_eigen(),
        Suite::Udelta => eigen::udelta(),
        Suite::Cholewinski => eigen::cholewinski(),
        Suite::WignerIdentity => fields::wigner_identity(),
        Suite::Example44 => fields::example44(),
        Suite::Radialization => fields::radialization(),
        Suite::Routes => analysis::routes(),
        Suite::VectorBargmann => analysis::vector_bargmann(),
        Suite::Lemma55 => analysis::lemma55(),
        Suite::Theorems => analysis::theorems(),
    }?;
    Ok(SuiteReport::new(suite, checks))
}

/// Pushes `f()`'s checks, or one failing check named `what` on error.
pub(crate) fn guarded(out: &mut Vec<Check>, what: &str, f: impl FnOnce() -> Result<Vec<Check>>) {
    match f() {
        Ok(c) => out.extend(c),
        Err(e) => out.push(Check::failed(what, &e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nosuch").is_err());
    }

    #[test]
    fn check_semantics() {
        assert!(Check::below("x", 1e-9, 1e-8).pass);
        assert!(!Check::below("x", f64::NAN, 1e-8).pass);
        let c = Check::agree("z", 1e-9, 3e-9, 1e-6, 1e-7);
        assert!(c.pass && c.name.ends_with("(zero level)"));
        assert!(!Check::agree("r", 1.0, 1.1, 1e-6, 1e-7).pass);
        let r = SuiteReport::new(Suite::Lemma55, vec![Check::below("a", f64::NAN, 0.0)]);
        let js = r.to_json().unwrap();
        assert!(js.contains("\"measured\": null") && !r.pass);
    }

    #[test]
    fn fast_suites_pass() {
        for s in [Suite::Orthonormality, Suite::Cholewinski, Suite::Lemma55] {
            let r = run_suite(s).unwrap();
            assert!(r.pass, "{s}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
