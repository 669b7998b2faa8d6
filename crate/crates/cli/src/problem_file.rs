//! Problem documents: a JSON object with keys `kind`, `alpha`, `lambda`,
//! `horizon` (or `T`), `f`, `g`, `grid` and an optional `oracle` section.

use std::path::Path;

use fracdiff::field::linspace;
use fracdiff::{EvalGrid, FarBoundary, FunctionSpec, OracleConfig, ProblemError, ProblemKind, ProblemSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed problem file at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid problem: {0}")]
    Invariant(#[from] ProblemError),
}

impl LoadError {
    /// Offending field path, when there is one.
    pub fn field(&self) -> Option<&str> {
        match self {
            LoadError::Io { .. } => None,
            LoadError::Schema { path, .. } => Some(path),
            LoadError::Invariant(e) => Some(&e.field),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Values(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl Axis {
    fn values(&self) -> Vec<f64> {
        match self {
            Axis::Values(v) => v.clone(),
            Axis::Range { start, stop, count } => linspace(*start, *stop, *count),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDocument {
    pub x: Axis,
    pub t: Axis,
}

/// Finite-difference settings; missing entries fall back to defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_length: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nx: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nt: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub far_boundary: Option<FarBoundary>,
}

pub const DEFAULT_ORACLE_NX: usize = 400;
pub const DEFAULT_ORACLE_NT: usize = 2000;

impl OracleDocument {
    pub fn resolve(&self, p: &ProblemSpec) -> Result<OracleConfig, ProblemError> {
        let nx = self.nx.unwrap_or(DEFAULT_ORACLE_NX);
        let nt = self.nt.unwrap_or(DEFAULT_ORACLE_NT);
        let base = OracleConfig::default_for(p, nx.max(8), nt.max(8)).map_err(|e| ProblemError::new("oracle", e.to_string()))?;
        OracleConfig::new(
            self.domain_length.unwrap_or(base.domain_length),
            nx,
            nt,
            self.far_boundary.unwrap_or(base.far_boundary),
        )
        .map_err(|e| ProblemError::new("oracle", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub kind: ProblemKind,
    pub alpha: f64,
    pub lambda: f64,
    #[serde(alias = "T")]
    pub horizon: f64,
    pub f: FunctionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<FunctionSpec>,
    pub grid: GridDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleDocument>,
}

/// A validated problem together with its evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProblem {
    pub spec: ProblemSpec,
    pub grid: EvalGrid,
    pub oracle: OracleDocument,
}

impl LoadedProblem {
    pub fn oracle_config(&self) -> Result<OracleConfig, ProblemError> {
        self.oracle.resolve(&self.spec)
    }

    /// Normalized document: explicit axis values, canonical key names.
    pub fn to_document(&self) -> ProblemDocument {
        ProblemDocument {
            kind: self.spec.kind,
            alpha: self.spec.alpha(),
            lambda: self.spec.lambda.value(),
            horizon: self.spec.horizon,
            f: self.spec.f.clone(),
            g: self.spec.g.clone(),
            grid: GridDocument {
                x: Axis::Values(self.grid.xs().to_vec()),
                t: Axis::Values(self.grid.ts().to_vec()),
            },
            oracle: (self.oracle != OracleDocument::default()).then_some(self.oracle),
        }
    }
}

impl ProblemDocument {
    pub fn validate(self) -> Result<LoadedProblem, ProblemError> {
        let spec = ProblemSpec::new(self.kind, self.alpha, self.lambda, self.horizon, self.f, self.g)?;
        let grid = EvalGrid::new(self.grid.x.values(), self.grid.t.values()).map_err(|e| ProblemError::new("grid", e.to_string()))?;
        if let Some(&t) = grid.ts().last() {
            if t > spec.horizon * (1.0 + 1e-12) {
                return Err(ProblemError::new("grid.t", format!("time {t} exceeds the horizon {}", spec.horizon)));
            }
        }
        Ok(LoadedProblem {
            spec,
            grid,
            oracle: self.oracle.unwrap_or_default(),
        })
    }
}

pub fn parse_problem(text: &str) -> Result<LoadedProblem, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: ProblemDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        LoadError::Schema {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    Ok(doc.validate()?)
}

pub fn load_problem(path: &Path) -> Result<LoadedProblem, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_problem(&text)
}

pub fn emit_problem(p: &LoadedProblem) -> String {
    serde_json::to_string_pretty(&p.to_document()).expect("problem documents serialize")
}
