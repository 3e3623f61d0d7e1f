//! Canonical matrix file: a JSON document
//!
//! ```text
//! {
//!   "dims": [M, N],
//!   "matrix": [
//!     [[re, im], [re, im], ...],
//!     ...
//!   ]
//! }
//! ```
//!
//! Rows are row-major over the composite index `k = a * N + b`. Writing is deterministic and
//! floats use shortest round-trip formatting, so write -> read reproduces every entry exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{validate_density, BipartiteDims, CMatrix, DensityMatrix, Operator, Tolerances, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_operator<O: Operator>(op: &O) -> Self {
        let dims = op.dims();
        let m = op.entries();
        Self {
            dims: [dims.dim_a, dims.dim_b],
            matrix: m
                .row_iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// Checks the shape and converts to a matrix.
    pub fn to_matrix(&self) -> Result<(CMatrix, BipartiteDims)> {
        let dims = BipartiteDims::new(self.dims[0], self.dims[1])
            .map_err(|_| Error::Format(format!("field `dims`: entries must be positive, got {:?}", self.dims)))?;
        let side = dims.total();
        if self.matrix.len() != side {
            return Err(Error::Format(format!(
                "field `matrix`: expected {side} rows for dims {dims}, found {}",
                self.matrix.len()
            )));
        }
        for (r, row) in self.matrix.iter().enumerate() {
            if row.len() != side {
                return Err(Error::Format(format!(
                    "field `matrix`: row {r} has {} entries, expected {side}",
                    row.len()
                )));
            }
        }
        let m = CMatrix::from_fn(side, side, |r, c| {
            let [re, im] = self.matrix[r][c];
            C64::new(re, im)
        });
        Ok((m, dims))
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"dims\": [{}, {}],\n", self.dims[0], self.dims[1]));
        out.push_str("  \"matrix\": [\n");
        for (i, row) in self.matrix.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .map(|[re, im]| format!("[{}, {}]", fmt_float(*re), fmt_float(*im)))
                .collect();
            out.push_str("    [");
            out.push_str(&cells.join(", "));
            out.push(']');
            if i + 1 < self.matrix.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

fn fmt_float(x: f64) -> String {
    // serde_json never fails on finite floats; validated matrices are finite.
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

pub fn write_density(rho: &DensityMatrix) -> String {
    MatrixFile::from_operator(rho).to_json()
}

/// Parses and validates a matrix file.
pub fn read_density(text: &str, tol: &Tolerances) -> Result<DensityMatrix> {
    let (m, dims) = MatrixFile::parse(text)?.to_matrix()?;
    validate_density(m, dims, tol)
}
