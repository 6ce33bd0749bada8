use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major matrix of finite feature vectors with one id per row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    row_ids: Vec<String>,
    cols: usize,
    values: Vec<f64>,
}

impl FeatureMatrix {
    pub fn new(row_ids: Vec<String>, cols: usize, values: Vec<f64>) -> Result<Self> {
        if row_ids.is_empty() || cols == 0 {
            return Err(Error::InvalidArgument("feature matrix needs at least one row and one column".into()));
        }
        if values.len() != row_ids.len() * cols {
            return Err(Error::LengthMismatch {
                what: "feature values",
                expected: row_ids.len() * cols,
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "row {:?} column {} is not finite",
                row_ids[pos / cols],
                pos % cols
            )));
        }
        Ok(Self { row_ids, cols, values })
    }

    pub fn from_rows(row_ids: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        Self::new(row_ids, cols, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.cols)
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}
