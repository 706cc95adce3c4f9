//! JSON formats for instances and matrices. Indices in files are 1-based.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::MarginSpec;
use crate::matrix::BinaryMatrix;

/// `{"rows": [..], "cols": [..], "forbidden": [[i, j], ..], "diagonal_forbidden": true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(default)]
    pub forbidden: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub diagonal_forbidden: bool,
}

impl InstanceFile {
    pub fn into_spec(self) -> Result<MarginSpec> {
        let mut forbidden = Vec::with_capacity(self.forbidden.len());
        for &(i, j) in &self.forbidden {
            if i == 0 || j == 0 {
                return Err(Error::Parse(format!("forbidden entry [{i}, {j}] is not 1-based")));
            }
            forbidden.push((i - 1, j - 1));
        }
        if self.diagonal_forbidden {
            if self.rows.len() != self.cols.len() {
                return Err(Error::Parse("diagonal_forbidden needs a square instance".into()));
            }
            let listed: BTreeSet<(usize, usize)> = forbidden.iter().copied().collect();
            forbidden.extend((0..self.rows.len()).map(|i| (i, i)).filter(|e| !listed.contains(e)));
        }
        MarginSpec::new(self.rows, self.cols, forbidden)
    }

    pub fn from_spec(spec: &MarginSpec) -> Self {
        if spec.has_diagonal_forbidden() {
            return Self {
                rows: spec.row_sums().to_vec(),
                cols: spec.col_sums().to_vec(),
                forbidden: Vec::new(),
                diagonal_forbidden: true,
            };
        }
        Self {
            rows: spec.row_sums().to_vec(),
            cols: spec.col_sums().to_vec(),
            forbidden: spec.forbidden().iter().map(|&(i, j)| (i + 1, j + 1)).collect(),
            diagonal_forbidden: false,
        }
    }
}

pub fn parse_instance(text: &str) -> Result<MarginSpec> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_spec()
}

pub fn instance_to_json(spec: &MarginSpec) -> String {
    serde_json::to_string(&InstanceFile::from_spec(spec)).expect("plain data serializes")
}

/// A matrix as nested 0/1 arrays.
pub fn matrix_to_json(a: &BinaryMatrix) -> String {
    serde_json::to_string(&a.to_rows()).expect("plain data serializes")
}

pub fn parse_matrix(spec: Arc<MarginSpec>, text: &str) -> Result<BinaryMatrix> {
    let rows: Vec<Vec<u8>> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    BinaryMatrix::from_rows(spec, &rows)
}
