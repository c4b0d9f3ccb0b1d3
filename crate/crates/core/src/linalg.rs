//! Exact dense matrices and sparse reduced row echelon form.

use std::collections::BTreeMap;

use crate::scalar::Field;

/// Row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        ExactMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(F::zero(), |acc, c| {
                    let a = self.get(r, c);
                    if a.is_zero() || v[c].is_zero() {
                        acc
                    } else {
                        acc + a.clone() * v[c].clone()
                    }
                })
            })
            .collect()
    }

    fn sparse_rows(&self) -> Vec<SparseRow<F>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| !self.get(r, c).is_zero())
                    .map(|c| (c, self.get(r, c).clone()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self.sparse_rows(), self.cols).pivots.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing
    /// column order, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        Echelon::reduce(self.sparse_rows(), self.cols).nullspace()
    }

    /// Some solution of `M v = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut rows = self.sparse_rows();
        for (row, rhs) in rows.iter_mut().zip(b) {
            if !rhs.is_zero() {
                row.insert(self.cols, -rhs.clone());
            }
        }
        Echelon::reduce(rows, self.cols + 1).particular(self.cols)
    }
}

pub type SparseRow<F> = BTreeMap<usize, F>;

/// Reduced row echelon form of a sparse system.
///
/// Pivoting is deterministic: columns are scanned left to right and the first
/// not-yet-used row (in input order) with a nonzero entry becomes the pivot row.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    cols: usize,
    /// `(pivot column, normalized row)` in column order.
    pub pivots: Vec<(usize, SparseRow<F>)>,
}

fn axpy<F: Field>(target: &mut SparseRow<F>, factor: &F, source: &SparseRow<F>) {
    for (c, v) in source {
        let delta = factor.clone() * v.clone();
        match target.get_mut(c) {
            Some(t) => {
                let sum = t.clone() - delta;
                if sum.is_zero() {
                    target.remove(c);
                } else {
                    *t = sum;
                }
            }
            None => {
                target.insert(*c, -delta);
            }
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn reduce(rows: Vec<SparseRow<F>>, cols: usize) -> Self {
        let mut pending: Vec<SparseRow<F>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut pivots: Vec<(usize, SparseRow<F>)> = Vec::new();
        for col in 0..cols {
            let Some(idx) = pending.iter().position(|r| r.contains_key(&col)) else {
                continue;
            };
            let mut pivot = pending.remove(idx);
            let inv = pivot[&col].inv().expect("pivot is nonzero");
            for v in pivot.values_mut() {
                *v = v.clone() * inv.clone();
            }
            for row in pending.iter_mut().chain(pivots.iter_mut().map(|(_, r)| r)) {
                if let Some(e) = row.get(&col).cloned() {
                    axpy(row, &e, &pivot);
                }
            }
            pending.retain(|r| !r.is_empty());
            pivots.push((col, pivot));
        }
        Echelon { cols, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (pc, row) in &self.pivots {
                    if let Some(e) = row.get(&free) {
                        v[*pc] = -e.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Treats column `aug` as the constant column of `M v + c = 0` and returns
    /// the solution with all free unknowns zero, or `None` if inconsistent.
    pub fn particular(&self, aug: usize) -> Option<Vec<F>> {
        if self.pivots.iter().any(|(c, _)| *c == aug) {
            return None;
        }
        let mut v = vec![F::zero(); aug];
        for (pc, row) in &self.pivots {
            if let Some(e) = row.get(&aug) {
                v[*pc] = -e.clone();
            }
        }
        Some(v)
    }
}
