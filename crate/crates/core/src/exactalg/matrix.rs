//! Dense matrices over an exact field.

use super::{AlgError, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of [`FieldMatrix::kernel_basis`].
#[derive(Clone, Debug)]
pub struct Kernel {
    pub rank: usize,
    pub basis: Vec<Vec<Scalar>>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Result<Self, AlgError> {
        if rows == 0 || cols == 0 {
            return Err(AlgError::EmptyMatrix);
        }
        Ok(FieldMatrix {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<Self, AlgError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut out = FieldMatrix::zeros(n, m, field)?;
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(AlgError::Shape);
            }
            for (j, v) in row.into_iter().enumerate() {
                out.set(i, j, v)?;
            }
        }
        Ok(out)
    }

    pub fn from_i64(rows: &[Vec<i64>], field: Field) -> Result<Self, AlgError> {
        FieldMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
            field,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) -> Result<(), AlgError> {
        if v.field() != self.field {
            return Err(AlgError::FieldMismatch(self.field, v.field()));
        }
        self.data[i * self.cols + j] = v;
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, AlgError> {
        if v.len() != self.cols {
            return Err(AlgError::Shape);
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(self.field.zero(), |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("pivot nonzero");
            for j in c..self.cols {
                let v = self.get(r, j).checked_mul(&inv).expect("same field");
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let sub = factor.checked_mul(self.get(r, j)).expect("same field");
                    let v = self.get(i, j).checked_sub(&sub).expect("same field");
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Exact rank and a basis of the right kernel.
    pub fn kernel_basis(&self) -> Kernel {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = m.get(r, f).neg();
                }
                v
            })
            .collect();
        Kernel {
            rank: pivots.len(),
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Scalar, AlgError> {
        if self.rows != self.cols {
            return Err(AlgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut prev = self.field.one();
        let mut sign_flip = false;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(self.field.zero());
                };
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    let t = pivot
                        .checked_mul(&a[i * n + j])?
                        .checked_sub(&aik.checked_mul(&a[k * n + j])?)?;
                    a[i * n + j] = t.checked_div(&prev)?;
                }
            }
            prev = pivot;
        }
        let det = a[n * n - 1].clone();
        Ok(if sign_flip { det.neg() } else { det })
    }
}
