// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON matrix literals: nested arrays of `[re, im]` pairs, row-major.
//!
//! ```json
//! [[[0.5, 0.0], [0.0, -0.5]],
//!  [[0.0, 0.5], [0.5,  0.0]]]
//! ```
//!
//! Vectors are flat arrays of `[re, im]` pairs.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::hilbert::{ComplexMatrix, ComplexVector};
use crate::{Error, Real, Result};

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixLiteral(pub Vec<Vec<Entry>>);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VectorLiteral(pub Vec<Entry>);

impl MatrixLiteral {
    pub fn from_matrix<T: Real>(m: &ComplexMatrix<T>) -> Self {
        Self(
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re.as_f64(), m[(r, c)].im.as_f64()]).collect())
                .collect(),
        )
    }

    /// Converts to a square matrix. Errors name the offending row.
    pub fn to_matrix<T: Real>(&self) -> Result<ComplexMatrix<T>> {
        let n = self.0.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for (r, row) in self.0.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {r} has {} entries, expected {n} (matrix must be square)",
                    row.len()
                )));
            }
            if row.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        Ok(ComplexMatrix::from_fn(n, n, |r, c| {
            Complex::new(T::lit(self.0[r][c][0]), T::lit(self.0[r][c][1]))
        }))
    }
}

impl VectorLiteral {
    pub fn from_vector<T: Real>(v: &ComplexVector<T>) -> Self {
        Self(v.iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect())
    }

    pub fn to_vector<T: Real>(&self) -> Result<ComplexVector<T>> {
        if self.0.is_empty() {
            return Err(Error::Empty);
        }
        if self.0.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexVector::from_iterator(
            self.0.len(),
            self.0.iter().map(|e| Complex::new(T::lit(e[0]), T::lit(e[1]))),
        ))
    }
}
