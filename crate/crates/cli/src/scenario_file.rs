//! Scenario files: one JSON document describing an ambient space, attribute
//! classes, objects, named formulas and named state vectors.
//!
//! ```json
//! {
//!   "dimension": 4,
//!   "field": "real",
//!   "seed": 7,
//!   "policy": { "eq_tol": 1e-8 },
//!   "attributes": [
//!     { "name": "professor", "basis": [[1, 0, 0, 0], [0, 1, 0, 0]] },
//!     { "name": "a_year_ago", "kind": "temporal", "random_dim": 2 }
//!   ],
//!   "objects": [ { "name": "p", "attributes": ["professor", "a_year_ago"] } ],
//!   "formulas": { "f": "professor & !a_year_ago" },
//!   "state_vectors": { "v": [1, 1, 0, 0] }
//! }
//! ```
//!
//! Basis rows are generators and need not be orthonormal. Complex entries
//! are `[re, im]` pairs and only allowed when `field` is `"complex"`.
//! Random attributes are drawn from the stream keyed by `(seed, name)`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use orthomod::bilogic::{AttributeClass, AttributeKind, BilogicObject, Scenario, ScenarioOptions};
use orthomod::formula::parse;
use orthomod::sampling::{random_subspace, seed_for_name, Field};
use orthomod::{NumericPolicy, Subspace, Vector, C64};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
enum FieldName {
    Real,
    #[default]
    Complex,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PolicyOverrides {
    rank_cutoff_rel: Option<f64>,
    eq_tol: Option<f64>,
    membership_tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AttributeEntry {
    name: String,
    #[serde(default)]
    kind: Option<String>,
    #[serde(default)]
    basis: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    random_dim: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectEntry {
    name: String,
    attributes: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    dimension: usize,
    #[serde(default)]
    field: FieldName,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    policy: PolicyOverrides,
    #[serde(default)]
    allow_unequal_dims: bool,
    #[serde(default)]
    attributes: Vec<AttributeEntry>,
    #[serde(default)]
    objects: Vec<ObjectEntry>,
    #[serde(default)]
    formulas: BTreeMap<String, String>,
    #[serde(default)]
    state_vectors: BTreeMap<String, Vec<Entry>>,
}

/// Command-line overrides applied while loading.
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    pub seed: Option<u64>,
    pub eq_tol: Option<f64>,
    pub allow_unequal_dims: bool,
}

/// A validated scenario plus the named formulas and state vectors it carries.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub scenario: Scenario,
    pub formulas: BTreeMap<String, String>,
    pub state_vectors: BTreeMap<String, Vector>,
}

pub fn load_scenario(path: &Path, options: LoadOptions) -> Result<LoadedScenario, ScenarioError> {
    let text = fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text, options)
}

pub fn parse_scenario(text: &str, options: LoadOptions) -> Result<LoadedScenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let n = file.dimension;
    if n == 0 {
        return Err(invalid("dimension", "must be at least 1"));
    }
    let field = match file.field {
        FieldName::Real => Field::Real,
        FieldName::Complex => Field::Complex,
    };
    let seed = options.seed.unwrap_or(file.seed);
    let policy = build_policy(&file.policy, options.eq_tol)?;

    let mut attributes = Vec::with_capacity(file.attributes.len());
    for (i, entry) in file.attributes.iter().enumerate() {
        let at = format!("attributes[{i}]");
        let kind = match &entry.kind {
            None => AttributeKind::Regular,
            Some(k) => k.parse().map_err(|e: String| invalid(format!("{at}.kind"), e))?,
        };
        let subspace = match (&entry.basis, entry.random_dim) {
            (Some(rows), None) => {
                let mut generators = Vec::with_capacity(rows.len());
                for (j, row) in rows.iter().enumerate() {
                    let row_path = format!("{at}.basis[{j}] (attribute `{}`)", entry.name);
                    generators.push(to_vector(row, n, field, &row_path)?);
                }
                Subspace::span(n, &generators, &policy).map_err(|e| invalid(&at, e.to_string()))?
            }
            (None, Some(k)) => random_subspace(n, k, field, seed_for_name(seed, &entry.name), &policy)
                .map_err(|e| invalid(format!("{at}.random_dim (attribute `{}`)", entry.name), e.to_string()))?,
            _ => {
                return Err(invalid(
                    &at,
                    format!("attribute `{}` needs exactly one of `basis` or `random_dim`", entry.name),
                ))
            }
        };
        attributes.push(AttributeClass::new(entry.name.clone(), kind, subspace));
    }

    let objects = file
        .objects
        .iter()
        .map(|o| BilogicObject::new(o.name.clone(), o.attributes.iter().cloned()))
        .collect();
    let scenario = Scenario::new(
        n,
        attributes,
        objects,
        ScenarioOptions {
            field,
            policy,
            seed,
            allow_unequal_dims: file.allow_unequal_dims || options.allow_unequal_dims,
        },
    )
    .map_err(|e| {
        use orthomod::bilogic::BilogicError as B;
        let path = match e {
            B::DuplicateAttribute(_) | B::UnequalAttributeDims { .. } | B::AttributeAmbient { .. } => "attributes",
            _ => "objects",
        };
        invalid(path, e.to_string())
    })?;

    for (name, text) in &file.formulas {
        parse(text).map_err(|e| invalid(format!("formulas.{name}"), e.to_string()))?;
    }

    let mut state_vectors = BTreeMap::new();
    for (name, entries) in &file.state_vectors {
        let v = to_vector(entries, n, field, &format!("state_vectors.{name}"))?;
        state_vectors.insert(name.clone(), v);
    }

    Ok(LoadedScenario {
        scenario,
        formulas: file.formulas,
        state_vectors,
    })
}

fn build_policy(overrides: &PolicyOverrides, eq_tol: Option<f64>) -> Result<NumericPolicy, ScenarioError> {
    let d = NumericPolicy::default();
    NumericPolicy::new(
        overrides.rank_cutoff_rel.unwrap_or(d.rank_cutoff_rel()),
        eq_tol.or(overrides.eq_tol).unwrap_or(d.eq_tol()),
        overrides.membership_tol.unwrap_or(d.membership_tol()),
    )
    .map_err(|e| invalid("policy", e.to_string()))
}

fn to_vector(entries: &[Entry], n: usize, field: Field, path: &str) -> Result<Vector, ScenarioError> {
    if entries.len() != n {
        return Err(invalid(
            path,
            format!("expected {n} entries, found {}", entries.len()),
        ));
    }
    let mut components = Vec::with_capacity(n);
    for (k, e) in entries.iter().enumerate() {
        let z = match *e {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => {
                if field == Field::Real && im != 0.0 {
                    return Err(invalid(
                        format!("{path}[{k}]"),
                        "complex entry in a real scenario",
                    ));
                }
                C64::new(re, im)
            }
        };
        components.push(z);
    }
    Vector::new(components).map_err(|e| invalid(path, e.to_string()))
}
