//! Dense exact matrices: determinant, rank, reduced row echelon form and
//! linear solving with a nullspace basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{dot, Scalar};
use crate::Rational;

/// A dense row-major matrix over an exact scalar type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<T = Rational> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Result of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution<T = Rational> {
    /// One exact solution, or `None` when the system is inconsistent.
    pub particular: Option<Vec<T>>,
    /// A basis of `{x : m x = 0}`.
    pub nullspace: Vec<Vec<T>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T = Rational> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension {
                context: "matrix entries",
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from a list of equally long rows.  An empty list
    /// yields a `0 x cols` matrix, where `cols` must then be supplied by
    /// [`Matrix::from_rows_with_cols`].
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// empty row lists keep their width.
    pub fn from_rows_with_cols(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension {
                    context: "matrix row length",
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// The all-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// The `i`-th row as a slice.
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// All rows as owned vectors.
    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The `j`-th column as an owned vector.
    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix-vector product `m x`.
    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.cols {
            return Err(Error::Dimension {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), x)).collect())
    }

    /// Vector-matrix product `yᵀ m`, i.e. `mᵀ y`.
    pub fn transpose_mul_vec(&self, y: &[T]) -> Result<Vec<T>> {
        if y.len() != self.rows {
            return Err(Error::Dimension {
                context: "transposed matrix-vector product",
                expected: self.rows,
                found: y.len(),
            });
        }
        let mut out = vec![T::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o = o.clone() + yi.clone() * a.clone();
            }
        }
        Ok(out)
    }

    /// Keeps the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Keeps the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            data,
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n.saturating_sub(1) {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(T::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone())
                        / prev.clone();
                    a[(i, j)] = v;
                }
                a[(i, k)] = T::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    /// Reduced row echelon form by exact Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = T::one() / a[(r, c)].clone();
            for j in c..self.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..self.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..self.cols {
                        let v = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                        a[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: a, pivots }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the right nullspace `{x : m x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let ech = self.rref();
        nullspace_from_rref(&ech, self.cols)
    }

    /// Solves `m x = b` exactly.
    pub fn solve(&self, b: &[T]) -> Result<LinearSolution<T>> {
        if b.len() != self.rows {
            return Err(Error::Dimension {
                context: "right-hand side",
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let ech = aug.rref();
        let inconsistent = ech.pivots.last() == Some(&self.cols);
        let coeff_pivots: Vec<usize> = ech
            .pivots
            .iter()
            .copied()
            .filter(|&c| c < self.cols)
            .collect();
        let reduced = Echelon {
            matrix: ech.matrix.select_cols(&(0..self.cols).collect::<Vec<_>>()),
            pivots: coeff_pivots.clone(),
        };
        let nullspace = nullspace_from_rref(&reduced, self.cols);
        let particular = if inconsistent {
            None
        } else {
            let mut x = vec![T::zero(); self.cols];
            for (r, &c) in coeff_pivots.iter().enumerate() {
                x[c] = ech.matrix[(r, self.cols)].clone();
            }
            Some(x)
        };
        Ok(LinearSolution {
            particular,
            nullspace,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

fn nullspace_from_rref<T: Scalar>(ech: &Echelon<T>, cols: usize) -> Vec<Vec<T>> {
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (r, &p) in ech.pivots.iter().enumerate() {
            v[p] = -ech.matrix[(r, free)].clone();
        }
        basis.push(v);
    }
    basis
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant of the square matrix whose columns (equivalently rows) are
/// the given vectors.
pub fn det_of<T: Scalar>(vectors: &[Vec<T>]) -> T {
    Matrix::from_rows(vectors)
        .and_then(|m| m.det())
        .expect("det_of needs n vectors of length n")
}

/// Rank of a family of vectors of common length `dim`.
pub fn rank_of<T: Scalar>(vectors: &[Vec<T>], dim: usize) -> usize {
    Matrix::from_rows_with_cols(vectors, dim)
        .expect("vectors of common length")
        .rank()
}

/// Linear dependence among `n + 1` vectors of `Tⁿ` given by signed maximal
/// minors: with `W` the `n x (n+1)` matrix of columns `w_0..w_n`,
/// `c_k = (-1)^(n+k) det(W without column k)`, so that `Σ c_k w_k = 0` and
/// the last coefficient equals `det(w_0..w_{n-1})`.
pub fn minor_dependence<T: Scalar>(vectors: &[Vec<T>]) -> Vec<T> {
    let n = vectors.len() - 1;
    (0..=n)
        .map(|k| {
            let rest: Vec<Vec<T>> = vectors
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, v)| v.clone())
                .collect();
            let d = det_of(&rest);
            if (n + k).is_multiple_of(2) {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Indices of the lexicographically-first maximal linearly independent
/// subfamily (greedy scan in index order).
pub fn greedy_basis<T: Scalar>(vectors: &[Vec<T>], dim: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        rows.push(v.clone());
        if rank_of(&rows, dim) == rows.len() {
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        } else {
            rows.pop();
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ints;
    use num_traits::{One, Zero};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| ints(r)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_and_two_by_two_determinants() {
        assert_eq!(
            Matrix::<Rational>::identity(3).det().unwrap(),
            Rational::one()
        );
        assert_eq!(
            m(&[&[1, 2], &[3, 4]]).det().unwrap(),
            Rational::from_int(-2)
        );
        assert_eq!(
            m(&[&[0, 1], &[1, 0]]).det().unwrap(),
            Rational::from_int(-1)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), Rational::zero());
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        assert!(matches!(
            m(&[&[1, 2, 3]]).det(),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        ));
    }

    #[test]
    fn ranks() {
        assert_eq!(Matrix::<Rational>::zeros(2, 3).rank(), 0);
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_identity() {
        let s = Matrix::<Rational>::identity(2)
            .solve(&ints(&[3, 5]))
            .unwrap();
        assert_eq!(s.particular, Some(ints(&[3, 5])));
        assert!(s.nullspace.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let s = m(&[&[1, 1]]).solve(&ints(&[0])).unwrap();
        assert_eq!(s.particular, Some(ints(&[0, 0])));
        assert_eq!(s.nullspace, vec![ints(&[-1, 1])]);
    }

    #[test]
    fn solve_inconsistent() {
        let s = m(&[&[1, 1], &[1, 1]]).solve(&ints(&[0, 1])).unwrap();
        assert_eq!(s.particular, None);
        assert!(m(&[&[1]]).solve(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn minor_dependence_annihilates() {
        let vs: Vec<Vec<Rational>> = vec![
            ints(&[1, 0, 0]),
            ints(&[1, 1, 0]),
            ints(&[1, 0, 1]),
            ints(&[1, 1, 1]),
        ];
        let c = minor_dependence(&vs);
        let mut sum = vec![Rational::zero(); 3];
        for (ck, v) in c.iter().zip(&vs) {
            for (s, x) in sum.iter_mut().zip(v) {
                *s = s.clone() + ck.clone() * x.clone();
            }
        }
        assert!(sum.iter().all(Zero::is_zero));
        assert_eq!(c[3], det_of(&vs[..3]));
    }

    #[test]
    fn greedy_basis_skips_dependent_vectors() {
        let vs: Vec<Vec<Rational>> = vec![ints(&[1, 1]), ints(&[2, 2]), ints(&[0, 1])];
        assert_eq!(greedy_basis(&vs, 2), vec![0, 2]);
    }
}
