//! Input documents: a JSON object `{"format": ..., "matrix": ...}` or a
//! plain-text 6×6 matrix (21 numbers for `components21`).

use std::fmt;
use std::str::FromStr;

use elasym::elasticity::ElasticityTensor;
use nalgebra::Matrix6;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Relative asymmetry accepted in 6×6 inputs.
pub const ASYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// 6×6 Voigt matrix, index pairs ordered 11, 22, 33, 23, 13, 12
    Voigt,
    /// 6×6 Kelvin matrix, Voigt scaled by diag(1, 1, 1, √2, √2, √2) on both sides
    Kelvin,
    /// Upper triangle of the Voigt matrix, row by row
    Components21,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Voigt => "voigt",
            Format::Kelvin => "kelvin",
            Format::Components21 => "components21",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "voigt" => Ok(Format::Voigt),
            "kelvin" => Ok(Format::Kelvin),
            "components21" => Ok(Format::Components21),
            _ => Err(CliError::Parse(format!("unknown format tag {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Square(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub format: String,
    pub matrix: MatrixData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub units: Option<String>,
}

impl InputDocument {
    pub fn from_tensor(e: &ElasticityTensor, format: Format, name: Option<String>) -> Self {
        let square = |m: Matrix6<f64>| MatrixData::Square((0..6).map(|i| (0..6).map(|j| m[(i, j)]).collect()).collect());
        let matrix = match format {
            Format::Voigt => square(e.to_voigt()),
            Format::Kelvin => square(e.to_kelvin()),
            Format::Components21 => MatrixData::Flat(e.to_components21()),
        };
        InputDocument { format: format.as_str().into(), matrix, name, units: None }
    }

    pub fn tensor(&self) -> Result<ElasticityTensor, CliError> {
        let format: Format = self.format.parse()?;
        to_tensor(format, &self.matrix)
    }
}

fn square(rows: &[Vec<f64>]) -> Result<Matrix6<f64>, CliError> {
    if rows.len() != 6 || rows.iter().any(|r| r.len() != 6) {
        return Err(CliError::Parse("matrix must be 6×6".into()));
    }
    Ok(Matrix6::from_fn(|i, j| rows[i][j]))
}

fn to_tensor(format: Format, data: &MatrixData) -> Result<ElasticityTensor, CliError> {
    let values: Vec<f64> = match data {
        MatrixData::Square(rows) => rows.iter().flatten().copied().collect(),
        MatrixData::Flat(v) => v.clone(),
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Validation("matrix has non-finite entries".into()));
    }
    let validation = |e: elasym::Error| CliError::Validation(e.to_string());
    match (format, data) {
        (Format::Voigt, MatrixData::Square(rows)) => {
            ElasticityTensor::from_voigt_tol(&square(rows)?, ASYMMETRY_TOL).map_err(validation)
        }
        (Format::Kelvin, MatrixData::Square(rows)) => {
            ElasticityTensor::from_kelvin_tol(&square(rows)?, ASYMMETRY_TOL).map_err(validation)
        }
        (Format::Components21, MatrixData::Flat(v)) if v.len() == 21 => {
            ElasticityTensor::from_components21(v).map_err(validation)
        }
        (Format::Components21, _) => Err(CliError::Parse("components21 needs a flat list of 21 numbers".into())),
        _ => Err(CliError::Parse(format!("{format} needs a 6×6 matrix"))),
    }
}

/// Parses a JSON document or whitespace-separated numbers. `format`
/// overrides nothing: it names the layout of plain-text input and must agree
/// with the tag of a JSON document.
pub fn parse_input(text: &str, format: Option<Format>) -> Result<ElasticityTensor, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: InputDocument =
            serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON input: {e}")))?;
        if let Some(f) = format {
            let tag: Format = doc.format.parse()?;
            if tag != f {
                return Err(CliError::Parse(format!("--format {f} disagrees with the document format {tag}")));
            }
        }
        return doc.tensor();
    }
    let values = trimmed
        .split_whitespace()
        .map(|t| t.parse::<f64>().map_err(|_| CliError::Parse(format!("not a number: {t:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let format = format.unwrap_or(if values.len() == 21 { Format::Components21 } else { Format::Voigt });
    let data = match format {
        Format::Components21 => MatrixData::Flat(values),
        _ => {
            if values.len() != 36 {
                return Err(CliError::Parse(format!("expected 36 numbers, found {}", values.len())));
            }
            MatrixData::Square(values.chunks(6).map(<[f64]>::to_vec).collect())
        }
    };
    to_tensor(format, &data)
}

pub fn read_input(path: &std::path::Path, format: Option<Format>) -> Result<ElasticityTensor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text, format)
}
