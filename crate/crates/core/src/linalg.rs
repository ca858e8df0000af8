//! Dense Gaussian elimination over `F_q`.

use crate::gf::{Field, FieldElem};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut top = 0;
        for c in 0..self.cols {
            if top == self.rows {
                break;
            }
            let Some(p) = (top..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if p != top {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, top * self.cols + k);
                }
            }
            let inv = field.inv(self.get(top, c)).expect("pivot is nonzero");
            for k in c..self.cols {
                let v = field.mul(self.get(top, k), inv);
                self.set(top, k, v);
            }
            let pivot_row: Vec<FieldElem> = self.row(top)[c..].to_vec();
            for r in 0..self.rows {
                if r == top {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                let base = r * self.cols;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    if pv.is_zero() {
                        continue;
                    }
                    let idx = base + c + k;
                    self.data[idx] = field.sub(self.data[idx], field.mul(factor, pv));
                }
            }
            pivots.push(c);
            top += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    /// The kernel vector attached to the first free column, or `None` for a trivial kernel.
    pub fn kernel_vector(&self, field: &Field) -> Option<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let free = (0..self.cols).find(|c| pivots.binary_search(c).is_err())?;
        let mut x = vec![FieldElem::ZERO; self.cols];
        x[free] = FieldElem::ONE;
        for (row, &pc) in pivots.iter().enumerate() {
            if pc < free {
                x[pc] = field.neg(m.get(row, free));
            }
        }
        Some(x)
    }

    pub fn mul_vec(&self, field: &Field, x: &[FieldElem]) -> Vec<FieldElem> {
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(x).fold(FieldElem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }
}
