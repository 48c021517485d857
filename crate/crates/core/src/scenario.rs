//! Scenario files: a TOML document with named fields describing one
//! configuration. Rationals may be written as strings (`"-3/7"`) or bare
//! integers; serialization always writes canonical strings.
//!
//! ```toml
//! format_version = 1
//! name = "a2"
//! dim = 2
//! gram = [["0", "1"], ["-1", "0"]]
//! cycles = [["1", "0"], ["0", "1"]]
//! incidence = [["1"], ["1"]]      # optional, r rows
//! incidence_labels = ["C1"]       # optional, one per incidence column
//! partition = [[1, 2]]            # optional, 1-based node indices
//! corrected_class = ["3", "3"]    # optional, length r
//! notes = "free text"             # optional
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blocks::BlockDecomposition;
use crate::error::Error;
use crate::gluing::{CorrectedClass, IncidenceDatum};
use crate::linalg::{Matrix, Rational, Vector};
use crate::package::{assemble, LightSectorPackage};
use crate::pairing::{CycleConfiguration, PairingSpace};

pub const FORMAT_VERSION: u32 = 1;

const KNOWN_FIELDS: &[&str] = &[
    "format_version",
    "name",
    "notes",
    "dim",
    "gram",
    "cycles",
    "incidence",
    "incidence_labels",
    "partition",
    "corrected_class",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario syntax: {0}")]
    Syntax(String),
    #[error("scenario field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub format_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    pub dim: usize,
    pub gram: Vec<Vector>,
    pub cycles: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrected_class: Option<Vector>,
}

/// Validated inputs ready for [`assemble`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioInputs {
    pub cycles: CycleConfiguration,
    pub incidence: Option<IncidenceDatum>,
    pub partition: Option<BlockDecomposition>,
    pub corrected_class: Option<CorrectedClass>,
}

/// Strict parse: unknown fields are rejected.
pub fn parse_scenario(text: &str) -> Result<ScenarioFile, ScenarioError> {
    let scenario: ScenarioFile = toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    scenario.validate()?;
    Ok(scenario)
}

/// Lenient parse: unknown top-level fields are dropped and returned.
pub fn parse_scenario_lax(text: &str) -> Result<(ScenarioFile, Vec<String>), ScenarioError> {
    let mut table: toml::Table = toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.to_string()))?;
    let ignored: Vec<String> = table
        .keys()
        .filter(|k| !KNOWN_FIELDS.contains(&k.as_str()))
        .cloned()
        .collect();
    for k in &ignored {
        table.remove(k);
    }
    let scenario: ScenarioFile = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| ScenarioError::Syntax(e.to_string()))?;
    scenario.validate()?;
    Ok((scenario, ignored))
}

fn grid_to_matrix(field: &str, grid: &[Vector], cols: usize) -> Result<Matrix, ScenarioError> {
    for (i, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(field_err(
                format!("{field}[{}]", i + 1),
                format!("row has {} entries, expected {cols}", row.len()),
            ));
        }
    }
    Matrix::from_rows(grid, cols).map_err(|e| field_err(field, e.to_string()))
}

impl ScenarioFile {
    pub fn node_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        self.inputs().map(|_| ())
    }

    /// Converts the raw fields into validated library inputs. Error messages
    /// name fields and 1-based positions.
    pub fn inputs(&self) -> Result<ScenarioInputs, ScenarioError> {
        if self.format_version != FORMAT_VERSION {
            return Err(field_err(
                "format_version",
                format!("unsupported version {}, expected {FORMAT_VERSION}", self.format_version),
            ));
        }
        if self.gram.len() != self.dim {
            return Err(field_err(
                "gram",
                format!("{} rows, expected dim = {}", self.gram.len(), self.dim),
            ));
        }
        let gram = grid_to_matrix("gram", &self.gram, self.dim)?;
        let space = PairingSpace::new(gram).map_err(|e| match e {
            Error::NotSkewSymmetric { i, j } => field_err(
                format!("gram[{}][{}]", i + 1, j + 1),
                format!(
                    "not skew-symmetric: entry {} but mirror entry {}",
                    self.gram[i][j],
                    self.gram[j][i]
                ),
            ),
            other => field_err("gram", other.to_string()),
        })?;
        for (k, c) in self.cycles.iter().enumerate() {
            if c.len() != self.dim {
                return Err(field_err(
                    format!("cycles[{}]", k + 1),
                    format!("length {}, expected dim = {}", c.len(), self.dim),
                ));
            }
        }
        let r = self.node_count();
        let cycles = CycleConfiguration::new(space, self.cycles.clone()).map_err(|e| field_err("cycles", e.to_string()))?;

        let incidence = match &self.incidence {
            Some(rows) => {
                if rows.len() != r {
                    return Err(field_err(
                        "incidence",
                        format!("{} rows, expected one per node ({r})", rows.len()),
                    ));
                }
                let width = rows.first().map_or(0, Vec::len);
                let m = grid_to_matrix("incidence", rows, width)?;
                Some(match &self.incidence_labels {
                    Some(labels) => IncidenceDatum::new(labels.clone(), m)
                        .map_err(|e| field_err("incidence_labels", e.to_string()))?,
                    None => IncidenceDatum::unlabeled(m),
                })
            }
            None => {
                if self.incidence_labels.is_some() {
                    return Err(field_err("incidence_labels", "given without incidence"));
                }
                None
            }
        };

        let partition = self
            .partition
            .as_ref()
            .map(|p| BlockDecomposition::from_one_based(r, p))
            .transpose()
            .map_err(|e| field_err("partition", e.to_string()))?;

        let corrected_class = match &self.corrected_class {
            Some(c) if c.len() != r => {
                return Err(field_err(
                    "corrected_class",
                    format!("length {}, expected node count {r}", c.len()),
                ))
            }
            Some(c) => Some(CorrectedClass { coeffs: c.clone() }),
            None => None,
        };

        Ok(ScenarioInputs {
            cycles,
            incidence,
            partition,
            corrected_class,
        })
    }

    pub fn assemble(&self) -> Result<LightSectorPackage, ScenarioError> {
        let inputs = self.inputs()?;
        assemble(inputs.cycles, inputs.incidence, inputs.partition, inputs.corrected_class)
            .map_err(|e| field_err("scenario", e.to_string()))
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("scenario fields serialize to TOML")
    }
}

pub(crate) fn rational_grid(m: &Matrix) -> Vec<Vector> {
    m.row_vectors()
}

pub(crate) fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Rational::from_int(x)).collect()
}
