//! The `lmkit-algebra/1` JSON format.

use std::collections::HashMap;

use lmkit_core::{make_chain, make_product, make_subchain, DistLattice, LmAlgebra, LmError, Poset};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT_TAG: &str = "lmkit-algebra/1";

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl From<LmError> for SpecError {
    fn from(e: LmError) -> Self {
        SpecError::Validation(e.to_string())
    }
}

/// An algebra description. Nested product factors omit the format tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    Chain {
        n: usize,
    },
    /// Levels of the `n`-element chain, containing `0` and `n - 1`.
    Subchain {
        n: usize,
        levels: Vec<usize>,
    },
    Product {
        factors: Vec<AlgebraSpec>,
    },
    Explicit {
        n: usize,
        elements: Vec<String>,
        /// Generating pairs `[a, b]` meaning `a <= b`.
        #[serde(default)]
        leq: Vec<(String, String)>,
        /// `phi[i - 1][k]` is the name of `phi_i` applied to `elements[k]`.
        phi: Vec<Vec<String>>,
    },
}

/// Reads a top-level document: checks the format tag, then rejects unknown
/// fields.
pub fn parse_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| SpecError::Parse("top level must be an object".into()))?;
    match obj.remove("format") {
        Some(serde_json::Value::String(tag)) if tag == FORMAT_TAG => {}
        Some(other) => return Err(SpecError::Parse(format!("unsupported format {other}"))),
        None => return Err(SpecError::Parse(format!("missing \"format\": \"{FORMAT_TAG}\""))),
    }
    serde_json::from_value(value).map_err(|e| SpecError::Parse(e.to_string()))
}

/// Serialises a spec with the format tag first.
pub fn to_json(spec: &AlgebraSpec) -> String {
    let mut map = serde_json::Map::new();
    map.insert("format".into(), FORMAT_TAG.into());
    if let serde_json::Value::Object(body) = serde_json::to_value(spec).expect("spec serialises") {
        map.extend(body);
    }
    serde_json::to_string_pretty(&serde_json::Value::Object(map)).expect("json value serialises")
}

pub fn load(text: &str) -> Result<LmAlgebra, SpecError> {
    build(&parse_spec(text)?)
}

pub fn build(spec: &AlgebraSpec) -> Result<LmAlgebra, SpecError> {
    match spec {
        AlgebraSpec::Chain { n } => Ok(make_chain(*n)?),
        AlgebraSpec::Subchain { n, levels } => Ok(make_subchain(*n, levels)?),
        AlgebraSpec::Product { factors } => {
            let mut parts = factors.iter().map(build);
            let first = parts
                .next()
                .ok_or_else(|| SpecError::Validation("product needs at least one factor".into()))??;
            parts.try_fold(first, |acc, f| Ok(make_product(&acc, &f?)?))
        }
        AlgebraSpec::Explicit {
            n,
            elements,
            leq,
            phi,
        } => build_explicit(*n, elements, leq, phi),
    }
}

fn build_explicit(
    n: usize,
    elements: &[String],
    leq: &[(String, String)],
    phi: &[Vec<String>],
) -> Result<LmAlgebra, SpecError> {
    let invalid = |e: String| SpecError::Validation(e);
    let poset = Poset::build(elements, leq).map_err(|e| invalid(e.to_string()))?;
    let lattice = DistLattice::from_poset(poset).map_err(|e| invalid(e.to_string()))?;
    let index: HashMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(k, s)| (s.as_str(), k))
        .collect();
    let tables = phi
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != elements.len() {
                return Err(invalid(format!(
                    "phi_{} has {} entries for {} elements",
                    i + 1,
                    row.len(),
                    elements.len()
                )));
            }
            row.iter()
                .map(|name| {
                    index
                        .get(name.as_str())
                        .copied()
                        .ok_or_else(|| invalid(format!("phi_{} names unknown element `{name}`", i + 1)))
                })
                .collect()
        })
        .collect::<Result<Vec<Vec<usize>>, _>>()?;
    Ok(LmAlgebra::try_new(lattice, n, tables)?)
}

/// Writes any algebra in explicit form.
pub fn explicit_spec(a: &LmAlgebra) -> AlgebraSpec {
    let names: Vec<String> = a.poset().names().to_vec();
    let leq = a
        .poset()
        .covers()
        .into_iter()
        .map(|(x, y)| (names[x].clone(), names[y].clone()))
        .collect();
    let phi = a
        .indices()
        .map(|i| a.phi_table(i).iter().map(|&y| names[y].clone()).collect())
        .collect();
    AlgebraSpec::Explicit {
        n: a.n(),
        elements: names,
        leq,
        phi,
    }
}
