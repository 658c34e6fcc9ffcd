//! Dense matrices over an extension field.

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(spec: &FieldSpec, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParameter(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            spec.check(e)?;
        }
        Ok(Self {
            spec: spec.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from row-major integer codes.
    pub fn from_codes(spec: &FieldSpec, codes: &[Vec<u64>]) -> Result<Self> {
        let rows = codes.len();
        let cols = codes.first().map_or(0, Vec::len);
        if codes.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        let entries = codes
            .iter()
            .flatten()
            .map(|&c| spec.decode(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, rows, cols, entries)
    }

    pub fn zeros(spec: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            spec: spec.clone(),
            rows,
            cols,
            entries: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: &FieldSpec, size: usize) -> Self {
        let mut m = Self::zeros(spec, size, size);
        for i in 0..size {
            m.entries[i * size + i] = spec.one();
        }
        m
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &FieldElement {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: FieldElement) -> Result<()> {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.spec.check(&value)?;
        self.entries[row * self.cols + col] = value;
        Ok(())
    }

    pub(crate) fn set_unchecked(&mut self, row: usize, col: usize, value: FieldElement) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.spec;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let rhs = other.get(k, j);
                    if rhs.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = f.add_unchecked(&out.entries[idx], &f.mul_unchecked(lhs, rhs));
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidParameter("shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.spec.sub_unchecked(a, b))
            .collect();
        Ok(Self {
            entries,
            ..self.clone()
        })
    }

    /// Raises every entry to the power q^j.
    pub fn frobenius(&self, j: u64) -> FieldMatrix {
        let entries = self
            .entries
            .iter()
            .map(|e| self.spec.frobenius_unchecked(e, j))
            .collect();
        Self {
            entries,
            ..self.clone()
        }
    }

    /// Rank by Gaussian elimination, pivoting on the first nonzero entry of
    /// each column.
    pub fn rank(&self) -> usize {
        let f = &self.spec;
        let mut rows: Vec<Vec<FieldElement>> = self.entries.chunks(self.cols.max(1)).map(<[_]>::to_vec).collect();
        rows.truncate(self.rows);
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pr) = (rank..self.rows).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = f.inv_unchecked(&rows[rank][c]);
            let pivot: Vec<FieldElement> = rows[rank].iter().map(|e| f.mul_unchecked(e, &inv)).collect();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot).skip(c) {
                    *v = f.sub_unchecked(v, &f.mul_unchecked(&factor, pv));
                }
            }
            rows[rank] = pivot;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == self.spec.one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Row-major integer codes of the entries.
    pub fn to_codes(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.spec.encode(self.get(i, j))).collect())
            .collect()
    }
}
