//! Dense exact matrices over a [`Field`], with reduced row-echelon form as
//! the workhorse: rank, kernels, inverses and linear solves all reduce to it.

use crate::error::{Error, Result};
use crate::field::Field;

/// A dense rows×cols matrix with exact entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixExact<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> MatrixExact<F> {
    /// Build from a row-major entry list; `entries.len()` must equal
    /// `rows * cols`.
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix entries have length {}, expected {}×{} = {}",
                entries.len(),
                rows,
                cols,
                rows * cols
            )));
        }
        Ok(MatrixExact { field, rows, cols, entries })
    }

    /// Build from rows of equal length (empty row list ⇒ 0×cols).
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::input(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            entries.extend(r);
        }
        MatrixExact::new(field, n_rows, cols, entries)
    }

    /// Convenience: build over any field from small integers.
    pub fn from_i64(field: F, rows_data: &[&[i64]]) -> Self {
        let rows = rows_data.len();
        let cols = rows_data.first().map_or(0, |r| r.len());
        let entries = rows_data
            .iter()
            .flat_map(|r| r.iter().map(|&n| field.from_i64(n)))
            .collect();
        MatrixExact::new(field.clone(), rows, cols, entries).expect("consistent row lengths")
    }

    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        MatrixExact { field, rows, cols, entries }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field.clone(), n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F::Elem {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<F::Elem> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let entries = self.entries.iter().map(|e| self.field.mul(e, s)).collect();
        MatrixExact { field: self.field.clone(), rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::input("matrix addition dimension mismatch"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(MatrixExact { field: self.field.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "matrix product dimension mismatch: {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::input("matrix–vector dimension mismatch"));
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = f.zero();
            for j in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.at(i, j), &v[j]));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// The unique reduced row-echelon form: pivots are 1, pivot columns are
    /// otherwise zero, pivot columns strictly increase, zero rows at the
    /// bottom. Returns the form together with the pivot column indices
    /// (their count is the rank).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            // Find a nonzero entry in this column at or below pivot_row.
            let Some(src) = (pivot_row..m.rows).find(|&r| !f.is_zero(m.at(r, col))) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.at(src, c).clone();
                    let b = m.at(pivot_row, c).clone();
                    m.set(src, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            // Normalize the pivot row.
            let inv = f
                .inv(m.at(pivot_row, col))
                .expect("pivot entry is nonzero by construction");
            for c in 0..m.cols {
                let v = f.mul(m.at(pivot_row, c), &inv);
                m.set(pivot_row, c, v);
            }
            // Eliminate the column everywhere else.
            for r in 0..m.rows {
                if r == pivot_row || f.is_zero(m.at(r, col)) {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in 0..m.cols {
                    let sub = f.mul(&factor, m.at(pivot_row, c));
                    let v = f.sub(m.at(r, c), &sub);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        // Row-reduce [A | I] and read the inverse off the right block.
        let mut aug = Self::zero(f.clone(), n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Self::zero(f.clone(), n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.at(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// A basis (as rows) of the right null space {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (red, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (pr, &pc) in pivots.iter().enumerate() {
                // x_pc = −(row pr)·(free part)
                v[pc] = f.neg(red.at(pr, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve Mx = b; `None` when inconsistent. When the solution is not
    /// unique the free variables are set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if b.len() != self.rows {
            return None;
        }
        let f = &self.field;
        let mut aug = Self::zero(f.clone(), self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a pivot in the constants column ⇒ inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (pr, &pc) in pivots.iter().enumerate() {
            x[pc] = red.at(pr, self.cols).clone();
        }
        Some(x)
    }

    /// Coefficients c_0..c_n of the characteristic polynomial
    /// det(xI − M) = c_n x^n + … + c_1 x + c_0 (c_n = 1), computed by exact
    /// cofactor expansion with polynomial entries. Intended for the small
    /// matrices this crate works with.
    pub fn char_poly(&self) -> Result<Vec<F::Elem>> {
        if !self.is_square() {
            return Err(Error::input("characteristic polynomial of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        // Entries of xI − M as coefficient vectors (constant, linear).
        let poly = |r: usize, c: usize| -> Vec<F::Elem> {
            let lin = if r == c { f.one() } else { f.zero() };
            vec![f.neg(self.at(r, c)), lin]
        };
        // Recursive determinant over the polynomial ring, expanding along the
        // first remaining row. cols tracks the active column set.
        fn det<F: Field>(
            f: &F,
            poly: &dyn Fn(usize, usize) -> Vec<F::Elem>,
            row: usize,
            cols: &mut Vec<usize>,
        ) -> Vec<F::Elem> {
            if cols.is_empty() {
                return vec![f.one()];
            }
            let mut acc: Vec<F::Elem> = vec![f.zero()];
            for idx in 0..cols.len() {
                let c = cols.remove(idx);
                let minor = det(f, poly, row + 1, cols);
                cols.insert(idx, c);
                let term = poly_mul(f, &poly(row, c), &minor);
                if idx % 2 == 0 {
                    acc = poly_add(f, &acc, &term);
                } else {
                    acc = poly_sub(f, &acc, &term);
                }
            }
            acc
        }
        let mut cols: Vec<usize> = (0..n).collect();
        let mut coeffs = det(f, &poly, 0, &mut cols);
        coeffs.resize(n + 1, f.zero());
        Ok(coeffs)
    }
}

fn poly_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
            f.add(&x, &y)
        })
        .collect()
}

fn poly_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
            let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
            f.sub(&x, &y)
        })
        .collect()
}

fn poly_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![f.zero()];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let cur = out[i + j].clone();
            out[i + j] = f.add(&cur, &f.mul(x, y));
        }
    }
    out
}
