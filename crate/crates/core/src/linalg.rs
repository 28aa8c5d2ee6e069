//! Dense exact linear algebra over the rationals: Gaussian elimination,
//! rank, linear solves and determinants. Sized for the tiny systems that
//! show up here (dimension at most ~10).

use crate::rat::{Q, QVector};
use num_traits::{One, Zero};

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.dim());
        let mut m = QMatrix::zeros(r, c);
        for (i, v) in rows.iter().enumerate() {
            assert_eq!(v.dim(), c, "from_rows: ragged input");
            for (j, x) in v.0.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &f * &self[(r, j)];
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "inverse: not square");
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &c)| k != c) {
            return None;
        }
        let mut out = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    /// Determinant of a square matrix by fraction-free-ish Gaussian elimination.
    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "det: not square");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            let inv = piv.recip();
            for i in (c + 1)..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let v = &m[(i, j)] - &f * &m[(c, j)];
                    m[(i, j)] = v;
                }
            }
        }
        det
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Solution of the linear system `A x = b`, described by one particular
/// solution together with a basis of the kernel of `A`.
pub struct AffineSolution {
    pub particular: QVector,
    pub kernel_basis: Vec<QVector>,
    /// Columns in which the echelon form pivots; the complement parametrizes
    /// the solution set.
    pub pivot_cols: Vec<usize>,
}

/// Solve `A x = b` exactly. Returns `None` when the system is inconsistent.
pub fn solve_affine(a: &QMatrix, b: &[Q]) -> Option<AffineSolution> {
    assert_eq!(a.rows, b.len(), "solve_affine: shape mismatch");
    let mut aug = QMatrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, a.cols)] = b[i].clone();
    }
    let pivots = aug.rref();
    // a pivot in the rhs column means 0 = 1
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut particular = vec![Q::zero(); a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, a.cols)].clone();
    }
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut kernel = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Q::zero(); a.cols];
        v[f] = Q::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -aug[(r, f)].clone();
        }
        kernel.push(QVector(v));
    }
    Some(AffineSolution {
        particular: QVector(particular),
        kernel_basis: kernel,
        pivot_cols: pivots,
    })
}

/// Rank of the span of difference vectors `p_i - p_0`; this is the dimension
/// of the affine hull of the point set. Empty input has dimension -1 by
/// convention, encoded here as `None`.
pub fn affine_dimension(points: &[QVector]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<QVector> = points[1..].iter().map(|p| p.sub(first)).collect();
    if diffs.is_empty() {
        return Some(0);
    }
    Some(QMatrix::from_rows(&diffs).rank())
}
