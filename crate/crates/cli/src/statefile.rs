//! JSON state files.
//!
//! ```json
//! {"dims": [2, 2], "kind": "pure", "data": [[0.7071, 0], [0, 0], [0, 0], [0.7071, 0]]}
//! ```
//!
//! Pure data is a flat list of `[re, im]` pairs in row-major order over the
//! subsystem digits. Density data is a list of rows of such pairs.

use ccrkit::{CMatrix64, Complex64, DensityOperator64, DimensionSignature, PureState64};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StateFileError {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("validation failed ({invariant}): {detail}")]
    Validation { invariant: String, detail: String },
}

impl StateFileError {
    /// Name of the failed invariant, for validation failures.
    pub fn invariant(&self) -> Option<&str> {
        match self {
            StateFileError::Validation { invariant, .. } => Some(invariant),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Pure,
    Density,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    dims: Vec<usize>,
    kind: Kind,
    data: Value,
}

/// A state read from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Pure(PureState64),
    Density(DensityOperator64),
}

impl LoadedState {
    pub fn density(&self) -> DensityOperator64 {
        match self {
            LoadedState::Pure(psi) => psi.clone().into_density(),
            LoadedState::Density(rho) => rho.clone(),
        }
    }

    pub fn signature(&self) -> &DimensionSignature {
        match self {
            LoadedState::Pure(psi) => psi.signature(),
            LoadedState::Density(rho) => rho.signature(),
        }
    }
}

fn pairs(v: &[[f64; 2]]) -> Vec<Complex64> {
    v.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn validation(e: ccrkit::Error) -> StateFileError {
    let invariant = e.invariant().unwrap_or("capacity").to_string();
    StateFileError::Validation { invariant, detail: e.to_string() }
}

pub fn parse_state_file(bytes: &[u8]) -> Result<LoadedState, StateFileError> {
    let doc: Document = serde_json::from_slice(bytes).map_err(|e| StateFileError::Schema(e.to_string()))?;
    let signature = DimensionSignature::new(doc.dims.clone()).map_err(|e| StateFileError::Shape(e.to_string()))?;
    let d = signature.total();
    match doc.kind {
        Kind::Pure => {
            let data: Vec<[f64; 2]> = serde_json::from_value(doc.data)
                .map_err(|e| StateFileError::Schema(format!("pure data must be a list of [re, im] pairs: {e}")))?;
            if data.len() != d {
                return Err(StateFileError::Shape(format!(
                    "dims {signature} need {d} amplitudes, found {}",
                    data.len()
                )));
            }
            PureState64::new(signature, pairs(&data)).map(LoadedState::Pure).map_err(validation)
        }
        Kind::Density => {
            let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(doc.data)
                .map_err(|e| StateFileError::Schema(format!("density data must be rows of [re, im] pairs: {e}")))?;
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(StateFileError::Shape(format!("dims {signature} need a {d}x{d} matrix")));
            }
            let flat: Vec<Complex64> = rows.iter().flat_map(|r| pairs(r)).collect();
            let matrix = CMatrix64::from_row_major(flat).ok_or_else(|| StateFileError::Shape("matrix is not square".into()))?;
            DensityOperator64::new(signature, matrix).map(LoadedState::Density).map_err(validation)
        }
    }
}

pub fn serialize_state(state: &LoadedState) -> String {
    let to_pair = |z: &Complex64| Value::from(vec![z.re, z.im]);
    let (dims, kind, data) = match state {
        LoadedState::Pure(psi) => {
            (psi.signature().dims().to_vec(), Kind::Pure, Value::Array(psi.amplitudes().iter().map(to_pair).collect()))
        }
        LoadedState::Density(rho) => {
            let m = rho.matrix();
            let rows = (0..m.dim()).map(|i| Value::Array(m.row(i).iter().map(to_pair).collect())).collect();
            (rho.signature().dims().to_vec(), Kind::Density, Value::Array(rows))
        }
    };
    serde_json::to_string(&Document { dims, kind, data }).expect("state documents always serialize")
}
