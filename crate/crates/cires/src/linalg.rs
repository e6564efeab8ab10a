//! Exact Gaussian elimination over an arbitrary [`ScalarField`].
//!
//! There is no pivot-size heuristic: any nonzero entry is a valid pivot, and
//! the first one in row order is always taken, which keeps the reduced form
//! deterministic.

use crate::scalar::ScalarField;

/// A dense row-major matrix over a scalar field.
#[derive(Debug, Clone)]
pub struct Matrix<F: ScalarField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: ScalarField> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Rank by elimination on a working copy.
    pub fn rank(&self) -> usize {
        self.clone().into_rref().rank()
    }

    pub fn has_full_column_rank(&self) -> bool {
        self.rank() == self.cols
    }

    /// Reduced row echelon form; zero rows are dropped.
    pub fn into_rref(self) -> Rref<F> {
        let field = self.field.clone();
        let cols = self.cols;
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows)
            .map(|i| self.row(i).to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            let Some(found) = (pivot_row..rows.len()).find(|&r| !field.is_zero(&rows[r][col]))
            else {
                continue;
            };
            rows.swap(pivot_row, found);
            let inv = field
                .inv(&rows[pivot_row][col])
                .expect("pivot is nonzero");
            for v in rows[pivot_row].iter_mut() {
                *v = field.mul(v, &inv);
            }
            for r in 0..rows.len() {
                if r == pivot_row || field.is_zero(&rows[r][col]) {
                    continue;
                }
                let factor = rows[r][col].clone();
                let pivot = rows[pivot_row].clone();
                for (entry, pivot_entry) in rows[r].iter_mut().zip(&pivot) {
                    let delta = field.mul(&factor, pivot_entry);
                    *entry = field.sub(entry, &delta);
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        rows.truncate(pivot_row);
        Rref {
            field,
            cols,
            rows,
            pivots,
        }
    }
}

/// A matrix in reduced row echelon form, with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref<F: ScalarField> {
    field: F,
    cols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: ScalarField> Rref<F> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut pi = 0;
        for c in 0..self.cols {
            if pi < self.pivots.len() && self.pivots[pi] == c {
                pi += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Reduce a vector modulo the row space: subtract, for each pivot column,
    /// that coordinate times the corresponding row. The result is supported on
    /// non-pivot columns and represents the class of `v` modulo the row space.
    pub fn reduce_vector(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if self.field.is_zero(&v[pc]) {
                continue;
            }
            let factor = v[pc].clone();
            for c in 0..self.cols {
                let delta = self.field.mul(&factor, &row[c]);
                v[c] = self.field.sub(&v[c], &delta);
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<F::Elem>) -> bool {
        self.reduce_vector(v)
            .iter()
            .all(|c| self.field.is_zero(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn fe(field: &Field, vals: &[i64]) -> Vec<crate::field::FieldElement> {
        vals.iter().map(|&v| field.element(v)).collect()
    }

    #[test]
    fn rank_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let m = Matrix::from_rows(
            f2.clone(),
            3,
            vec![fe(&f2, &[1, 1, 0]), fe(&f2, &[0, 1, 1]), fe(&f2, &[1, 0, 1])],
        );
        // Third row is the sum of the first two over F_2.
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_pivots_and_reduction() {
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_rows(
            f3.clone(),
            3,
            vec![fe(&f3, &[1, 0, 1]), fe(&f3, &[0, 1, 0])],
        );
        let r = m.into_rref();
        assert_eq!(r.pivots(), &[0, 1]);
        assert_eq!(r.non_pivots(), vec![2]);
        // (1, 2, 0) reduces to (0, 0, -1) = (0, 0, 2).
        let red = r.reduce_vector(fe(&f3, &[1, 2, 0]));
        assert_eq!(red, fe(&f3, &[0, 0, 2]));
        assert!(r.contains(fe(&f3, &[2, 1, 2])));
        assert!(!r.contains(fe(&f3, &[0, 0, 1])));
    }

    #[test]
    fn full_column_rank_detection() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_rows(
            f5.clone(),
            2,
            vec![fe(&f5, &[1, 2]), fe(&f5, &[2, 4]), fe(&f5, &[0, 1])],
        );
        assert!(m.has_full_column_rank());
        let singular = Matrix::from_rows(f5.clone(), 2, vec![fe(&f5, &[1, 2]), fe(&f5, &[2, 4])]);
        assert!(!singular.has_full_column_rank());
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let f2 = Field::prime(2).unwrap();
        let m: Matrix<Field> = Matrix::from_rows(f2, 4, vec![]);
        assert_eq!(m.rank(), 0);
        assert!(!m.has_full_column_rank());
    }
}
