//! Exact Gaussian elimination over the rationals.

use crate::scalar::{Rational, Scalar};

/// Reduces `rows` to reduced row echelon form in place and returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_exact_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        for v in rows[r].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_exact_zero() {
                let factor = rows[i][col].clone();
                #[allow(clippy::needless_range_loop)]
                for j in 0..ncols {
                    let delta = factor.mul_ref(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub_ref(&delta);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis of `{x : A x = 0}`, one vector per free column (in column order).
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = matrix.to_vec();
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = row[free].neg_ref();
        }
        basis.push(v);
    }
    basis
}

/// Incrementally maintained row space, for rank queries over streamed vectors.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    // echelon rows, each normalized so its pivot entry is 1
    rows: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if !v[*pc].is_exact_zero() {
                let f = v[*pc].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = x.sub_ref(&f.mul_ref(r));
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_exact_zero()) else {
            return false;
        };
        let inv = v[pc].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = x.mul_ref(&inv);
        }
        self.rows.push((pc, v));
        true
    }
}
