use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// How a table was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Direct,
    Wigner,
    Spherical,
    Cauchy,
    Formula,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Wigner => "wigner",
            Route::Spherical => "spherical",
            Route::Cauchy => "cauchy",
            Route::Formula => "formula",
        }
    }

    pub fn parse(s: &str) -> Result<Route> {
        match s {
            "direct" => Ok(Route::Direct),
            "wigner" => Ok(Route::Wigner),
            "spherical" => Ok(Route::Spherical),
            "cauchy" => Ok(Route::Cauchy),
            "formula" => Ok(Route::Formula),
            _ => Err(Error::BadParameter(format!("unknown route '{s}'"))),
        }
    }
}

/// What the table values are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `‖P_k f‖₂`.
    ProjNorm,
    /// `|(f, Φ_α)|` per multi-index.
    HermiteCoeff,
    /// `|(g, ψ_k^δ)|`.
    LaguerreCoeff,
    /// `∫_{S¹} |d_k(ω)|² dω`.
    TaylorNormSq,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub k: usize,
    pub value: f64,
    pub est_err: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TableMeta {
    pub quadrature: String,
    /// Levels whose squared norm came out slightly negative and was clamped to 0.
    #[serde(default)]
    pub clamped: Vec<usize>,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Per-level coefficients or norms with provenance and error estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub function_id: String,
    pub n: usize,
    pub route: Route,
    pub quantity: Quantity,
    pub entries: Vec<TableEntry>,
    pub meta: TableMeta,
}

/// Formats a double with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

impl CoefficientTable {
    pub fn new(function_id: &str, n: usize, route: Route, quantity: Quantity) -> Self {
        CoefficientTable {
            function_id: function_id.to_string(),
            n,
            route,
            quantity,
            entries: Vec::new(),
            meta: TableMeta::default(),
        }
    }

    pub fn push(&mut self, k: usize, value: f64, est_err: f64) {
        self.entries.push(TableEntry {
            k,
            value,
            est_err,
            index: None,
            complex: None,
        });
    }

    pub fn value(&self, k: usize) -> Option<f64> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.value)
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Σ value² over the table (for norm tables, the captured energy).
    pub fn energy(&self) -> f64 {
        self.entries.iter().map(|e| e.value * e.value).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,value,est_err,route\n");
        for e in &self.entries {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                e.k,
                fmt17(e.value),
                fmt17(e.est_err),
                self.route.name()
            );
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Reads the CSV layout written by [`CoefficientTable::to_csv`].
    pub fn from_csv(s: &str, function_id: &str, n: usize, quantity: Quantity) -> Result<Self> {
        let mut lines = s.lines();
        if lines.next().map(str::trim) != Some("k,value,est_err,route") {
            return Err(Error::Io("missing CSV header k,value,est_err,route".into()));
        }
        let mut route = None;
        let mut t = CoefficientTable::new(function_id, n, Route::Direct, quantity);
        for (i, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 4 {
                return Err(Error::Io(format!("CSV row {} has {} columns", i + 2, cols.len())));
            }
            let bad = |c: &str| Error::Io(format!("CSV row {}: bad number '{c}'", i + 2));
            let k = cols[0].parse().map_err(|_| bad(cols[0]))?;
            let v = cols[1].parse().map_err(|_| bad(cols[1]))?;
            let e = cols[2].parse().map_err(|_| bad(cols[2]))?;
            route.get_or_insert(Route::parse(cols[3])?);
            t.push(k, v, e);
        }
        t.route = route.unwrap_or(Route::Direct);
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn csv_roundtrip(vals in proptest::collection::vec((0.0f64..1e3, 0.0f64..1.0), 1..20)) {
            let mut t = CoefficientTable::new("x", 1, Route::Wigner, Quantity::ProjNorm);
            for (k, (v, e)) in vals.iter().enumerate() {
                t.push(k, *v, *e);
            }
            let back = CoefficientTable::from_csv(&t.to_csv(), "x", 1, Quantity::ProjNorm).unwrap();
            prop_assert_eq!(back.entries, t.entries);
            prop_assert_eq!(back.route, Route::Wigner);
        }
    }

    #[test]
    fn json_roundtrip() {
        let mut t = CoefficientTable::new("gaussian:b=0.5", 2, Route::Direct, Quantity::ProjNorm);
        t.push(0, 1.0 / 3.0, 1e-17);
        t.meta.clamped.push(3);
        let back = CoefficientTable::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
        assert!(t.to_csv().starts_with("k,value,est_err,route\n0,3.3333333333333331e-1,"));
    }
}
