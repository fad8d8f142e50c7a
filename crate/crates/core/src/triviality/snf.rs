//! Smith normal form with unimodular transforms.

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// `left · M · right = diag(diagonal)` with `d_1 | d_2 | ...`, all `d_i ≥ 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub diagonal: Vec<T>,
    pub left_transform: Matrix<T>,
    pub right_transform: Matrix<T>,
}

impl<T: Scalar> std::fmt::Debug for SnfResult<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SnfResult")
            .field("diagonal", &self.diagonal)
            .field("left_transform", &self.left_transform)
            .field("right_transform", &self.right_transform)
            .finish()
    }
}

impl<T: Scalar> SnfResult<T> {
    /// Rank of the original matrix.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// The diagonal as a full `rows × cols` matrix.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> Matrix<T> {
        let mut d = Matrix::zeros(rows, cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

fn smallest_nonzero<T: Scalar>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a[(i, j)].abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

struct Work<T> {
    a: Matrix<T>,
    left: Matrix<T>,
    right: Matrix<T>,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, i: usize, k: usize) {
        self.a.swap_rows(i, k);
        self.left.swap_rows(i, k);
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.a.swap_cols(j, k);
        self.right.swap_cols(j, k);
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_row_multiple(dst, src, f);
        self.left.add_row_multiple(dst, src, f);
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) {
        self.a.add_col_multiple(dst, src, f);
        self.right.add_col_multiple(dst, src, f);
    }
}

pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a: m.clone(), left: Matrix::identity(rows), right: Matrix::identity(cols) };
    let steps = rows.min(cols);
    for t in 0..steps {
        let Some((pi, pj)) = smallest_nonzero(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let pivot = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].div_floor(&pivot);
                w.add_row(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].div_floor(&pivot);
                w.add_col(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder smaller than the pivot survived: make it the pivot
                let mut best = (t, t, w.a[(t, t)].abs());
                for i in t + 1..rows {
                    let v = w.a[(i, t)].abs();
                    if !v.is_zero() && v < best.2 {
                        best = (i, t, v);
                    }
                }
                for j in t + 1..cols {
                    let v = w.a[(t, j)].abs();
                    if !v.is_zero() && v < best.2 {
                        best = (t, j, v);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.a[(i, j)].is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => w.add_row(t, i, &T::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.a.negate_row(t);
            w.left.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| w.a[(i, i)].clone()).collect();
    SnfResult { diagonal, left_transform: w.left, right_transform: w.right }
}
