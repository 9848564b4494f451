//! Exact matrices over a coefficient field and their ranks.

use std::collections::BTreeMap;

use crate::coeff::{CoeffError, Field, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = &Scalar> {
        (0..self.rows).map(move |r| self.get(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Scalar> {
        self.data.iter()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn specialize(&self, value: &Rational) -> Result<Matrix, CoeffError> {
        let data =
            self.data.iter().map(|s| s.specialize(value).map(Scalar::Rational)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { field: Field::Rationals, rows: self.rows, cols: self.cols, data })
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(row_perm[r], col_perm[c], self.get(r, c).clone());
            }
        }
        out
    }

    /// Rank by Gaussian elimination. Each pivot is the entry of least
    /// complexity (parameter degree, then coefficient size) in the remaining
    /// submatrix.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut active_rows: Vec<usize> = (0..self.rows).collect();
        let mut active_cols: Vec<usize> = (0..self.cols).collect();
        let mut rank = 0;
        loop {
            let mut best: Option<(usize, usize, (usize, u64))> = None;
            for (ri, &r) in active_rows.iter().enumerate() {
                for (ci, &c) in active_cols.iter().enumerate() {
                    let v = &m[r][c];
                    if v.is_zero() {
                        continue;
                    }
                    let cx = v.complexity();
                    if best.as_ref().is_none_or(|b| cx < b.2) {
                        best = Some((ri, ci, cx));
                    }
                }
            }
            let Some((ri, ci, _)) = best else { return rank };
            let pr = active_rows.swap_remove(ri);
            let pc = active_cols.swap_remove(ci);
            rank += 1;
            let inv = m[pr][pc].recip().expect("nonzero pivot");
            for &r in &active_rows {
                if m[r][pc].is_zero() {
                    continue;
                }
                let factor = &m[r][pc] * &inv;
                for &c in &active_cols {
                    if !m[pr][c].is_zero() {
                        m[r][c] = &m[r][c] - &(&factor * &m[pr][c]);
                    }
                }
                m[r][pc] = self.field.zero();
            }
        }
    }
}

/// Rank of a sparse matrix given by rows of (column, value) entries, by
/// incremental echelon reduction with normalised pivot rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = Vec<(usize, Scalar)>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for row in rows {
        let mut row: BTreeMap<usize, Scalar> = row_entries(row).collect();
        while let Some((&lead, lv)) = row.first_key_value() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lv.clone();
                    for (c, pv) in p {
                        let nv = match row.get(c) {
                            Some(x) => x - &(&factor * pv),
                            None => -(&factor * pv),
                        };
                        if nv.is_zero() {
                            row.remove(c);
                        } else {
                            row.insert(*c, nv);
                        }
                    }
                }
                None => {
                    let inv = lv.recip().expect("nonzero lead");
                    let normalised = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    pivots.insert(lead, normalised);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn row_entries(row: Vec<(usize, Scalar)>) -> impl Iterator<Item = (usize, Scalar)> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in row {
        let nv = match acc.remove(&c) {
            Some(x) => &x + &v,
            None => v,
        };
        if !nv.is_zero() {
            acc.insert(c, nv);
        }
    }
    acc.into_iter()
}
