//! JSON scenario configuration.
//!
//! ```json
//! {
//!   "name": "example",
//!   "dim": 2,
//!   "c1": { "sigma": 1.0, "rho": 0.0 },
//!   "c2": { "rows": [[2.25, 2.0], [2.0, 2.25]] },
//!   "lambda1": 0.5,
//!   "grid": [{ "min": -2, "max": 2, "count": 101 }, { "min": -2, "max": 2, "count": 101 }],
//!   "quadrature_order": 40,
//!   "phi_variant": "paper",
//!   "f2_constant": "2pi",
//!   "seed": 7
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ekfi::{Classification, F2Constant};
use crate::entropy::PhiVariant;
use crate::error::{Error, Result};
use crate::landscape::{Axis, GridSpec, Verdict};
use crate::linalg::SpdMatrix;
use crate::quadrature::DEFAULT_ORDER;
use crate::Scenario;

/// Highest order accepted in a config; the certificate needs order + 8 ≤ 64.
pub const MAX_CONFIG_ORDER: usize = 56;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// One covariance matrix: either the 2×2 `σ/ρ` shorthand or explicit rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<f64>>>,
}

impl MatrixSpec {
    pub fn sigma_rho(sigma: f64, rho: f64) -> Self {
        Self {
            sigma: Some(sigma),
            rho: Some(rho),
            rows: None,
        }
    }

    pub fn rows(rows: Vec<Vec<f64>>) -> Self {
        Self {
            rows: Some(rows),
            ..Self::default()
        }
    }

    fn resolve(&self, field: &str, dim: usize) -> Result<SpdMatrix> {
        let shorthand = self.sigma.is_some() || self.rho.is_some();
        let wrap = |e: Error| Error::config(field, e.to_string());
        match (&self.rows, shorthand) {
            (Some(_), true) => Err(Error::config(field, "give either sigma/rho or rows, not both")),
            (None, false) => Err(Error::config(field, "missing sigma/rho or rows")),
            (Some(rows), false) => {
                if rows.len() != dim {
                    return Err(Error::config(
                        format!("{field}.rows"),
                        format!("expected {dim} rows, found {}", rows.len()),
                    ));
                }
                SpdMatrix::from_rows(rows).map_err(|e| Error::config(format!("{field}.rows"), e.to_string()))
            }
            (None, true) => {
                if dim != 2 {
                    return Err(Error::config(field, format!("sigma/rho form needs dim 2, config has dim {dim}")));
                }
                let sigma = self.sigma.ok_or_else(|| Error::config(format!("{field}.sigma"), "missing"))?;
                let rho = self.rho.ok_or_else(|| Error::config(format!("{field}.rho"), "missing"))?;
                SpdMatrix::from_sigma_rho(sigma, rho).map_err(wrap)
            }
        }
    }
}

/// Qualitative outcomes a bundled scenario is expected to show.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<Classification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounded_in_window: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_empty_in_window: Option<bool>,
    /// Some 𝕊-member has Λ < −1e-10.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_lambda_on_s: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    pub c1: MatrixSpec,
    pub c2: MatrixSpec,
    pub lambda1: f64,
    pub grid: Vec<Axis>,
    #[serde(default = "default_order")]
    pub quadrature_order: usize,
    #[serde(default)]
    pub phi_variant: PhiVariant,
    #[serde(default)]
    pub f2_constant: F2Constant,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
}

fn default_order() -> usize {
    DEFAULT_ORDER
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

/// A config checked against the numerical domain.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub config: ScenarioConfig,
    pub scenario: Scenario,
    pub grid: GridSpec,
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::config(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    /// Builds the scenario and grid, reporting the first bad field by path.
    pub fn resolve(&self) -> Result<Resolved> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::config("dim", format!("must be 1, 2 or 3, got {}", self.dim)));
        }
        if !(0.0..=1.0).contains(&self.lambda1) {
            return Err(Error::config("lambda1", format!("must lie in [0, 1], got {}", self.lambda1)));
        }
        if !(2..=MAX_CONFIG_ORDER).contains(&self.quadrature_order) {
            return Err(Error::config(
                "quadrature_order",
                format!("must lie in 2..={MAX_CONFIG_ORDER}, got {}", self.quadrature_order),
            ));
        }
        let c1 = self.c1.resolve("c1", self.dim)?;
        let c2 = self.c2.resolve("c2", self.dim)?;
        let scenario = Scenario::new(c1, c2, self.lambda1).map_err(|e| Error::config("lambda1", e.to_string()))?;
        if self.grid.len() != self.dim {
            return Err(Error::config(
                "grid",
                format!("expected {} axes, found {}", self.dim, self.grid.len()),
            ));
        }
        for (k, a) in self.grid.iter().enumerate() {
            if !(a.min.is_finite() && a.max.is_finite() && a.min < a.max) {
                return Err(Error::config(format!("grid[{k}]"), "need finite min < max"));
            }
            if a.count < 3 {
                return Err(Error::config(format!("grid[{k}].count"), "must be ≥ 3"));
            }
        }
        let grid = GridSpec::new(self.grid.clone())?;
        Ok(Resolved {
            config: self.clone(),
            scenario,
            grid,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "name": "t", "dim": 2,
        "c1": {"sigma": 1.0, "rho": 0.0},
        "c2": {"rows": [[1.0, 0.5], [0.5, 2.0]]},
        "lambda1": 0.5,
        "grid": [{"min": -1, "max": 1, "count": 5}, {"min": -1, "max": 1, "count": 5}]
    }"#;

    fn field_of(e: Error) -> String {
        match e {
            Error::Config { field, .. } => field,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn defaults_applied() {
        let c = ScenarioConfig::from_json(BASE).unwrap();
        assert_eq!(c.quadrature_order, 40);
        assert_eq!(c.phi_variant, PhiVariant::Paper);
        assert_eq!(c.f2_constant, F2Constant::TwoPi);
        assert_eq!(c.seed, DEFAULT_SEED);
        let r = c.resolve().unwrap();
        assert_eq!(r.scenario.dim(), 2);
        assert_eq!(r.grid.len(), 25);
    }

    #[test]
    fn both_forms_rejected() {
        let text = BASE.replace(r#"{"sigma": 1.0, "rho": 0.0}"#, r#"{"sigma": 1.0, "rho": 0.0, "rows": [[1,0],[0,1]]}"#);
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "c1");
    }

    #[test]
    fn bad_rho_addressed() {
        let text = BASE.replace(r#""rho": 0.0"#, r#""rho": 1.5"#);
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "c1");
    }

    #[test]
    fn not_positive_definite_rows() {
        let text = BASE.replace("[[1.0, 0.5], [0.5, 2.0]]", "[[1.0, 2.0], [2.0, 1.0]]");
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "c2.rows");
    }

    #[test]
    fn unknown_field_has_location() {
        let text = BASE.replace(r#""name": "t","#, r#""name": "t", "colour": 3,"#);
        let e = ScenarioConfig::from_json(&text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("line 2") && msg.contains("colour"), "{msg}");
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn grid_problems() {
        let text = BASE.replace(r#"{"min": -1, "max": 1, "count": 5}]"#, r#"{"min": 1, "max": -1, "count": 5}]"#);
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "grid[1]");
        let text = BASE.replace(r#""count": 5}, {"#, r#""count": 100000}, {"#).replace(r#""count": 5}]"#, r#""count": 100001}]"#);
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn lambda_and_order_ranges() {
        let e = ScenarioConfig::from_json(&BASE.replace("0.5,\n", "1.5,\n")).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "lambda1");
        let text = BASE.replace(r#""lambda1": 0.5,"#, r#""lambda1": 0.5, "quadrature_order": 70,"#);
        let e = ScenarioConfig::from_json(&text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "quadrature_order");
    }

    #[test]
    fn sigma_rho_needs_dim_two() {
        let text = r#"{"dim": 1, "c1": {"sigma": 1.0, "rho": 0.0}, "c2": {"rows": [[2.0]]},
            "lambda1": 0.5, "grid": [{"min": -1, "max": 1, "count": 5}]}"#;
        let e = ScenarioConfig::from_json(text).unwrap().resolve().unwrap_err();
        assert_eq!(field_of(e), "c1");
    }
}
