//! Dense matrices over [`Rational`] with exact row reduction.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| Rational::from(x)));
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in matrix with {c} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in matrix with {rows} rows",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    /// `E_{i,j} - E_{j,i}` of size `n`.
    pub fn elementary_antisymmetric(n: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Rational::one();
        m[(j, i)] = -Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (i..self.cols).all(|j| (&self[(i, j)] + &self[(j, i)]).is_zero()))
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect())
    }

    pub fn checked_add(&self, rhs: &Mat) -> Result<Mat> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, rhs: &Mat) -> Result<Mat> {
        self.same_shape(rhs)?;
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    fn same_shape(&self, rhs: &Mat) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} versus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Stacks matrices vertically. All blocks must share a column count.
    pub fn vstack(blocks: &[Mat]) -> Result<Mat> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "stacking {} columns onto {cols}",
                    b.cols
                )));
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Mat { rows, cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = &mut m.data[r * m.cols + j];
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            // Columns of the pivot row that are nonzero; the rest of a row op is a no-op.
            let support: Vec<usize> = (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for &j in &support {
                    let delta = &factor * &m[(r, j)];
                    m.data[i * m.cols + j] -= delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column in increasing order.
    pub fn nullspace(&self) -> SolutionSpace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                let x = &r[(row, free)];
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        SolutionSpace {
            ambient: self.cols,
            basis,
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A basis for a linear subspace of `Q^ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub ambient: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// True when coordinate `i` is zero on every basis vector, i.e. forced to vanish.
    pub fn coordinate_vanishes(&self, i: usize) -> bool {
        self.basis.iter().all(|v| v[i].is_zero())
    }

    /// Linear combination of the basis with the given coefficients.
    pub fn combine(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (c, v) in coeffs.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(v) {
                o.add_product(c, x);
            }
        }
        out
    }

    /// Membership test by rank comparison.
    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        let mut cols = self.basis.clone();
        let base = Mat::from_columns(&cols, self.ambient).map_or(0, |m| m.rank());
        cols.push(v.to_vec());
        let extended = Mat::from_columns(&cols, self.ambient).map_or(0, |m| m.rank());
        base == extended
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rref_identity() {
        let (r, p) = Mat::identity(3).rref();
        assert_eq!(r, Mat::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero() {
        let (r, p) = Mat::zeros(2, 3).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, p) = m.rref();
        assert_eq!(r, Mat::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_needs_fractions() {
        let m = Mat::from_i64(&[&[2, 1, 0], &[1, 3, 1]]);
        let (r, p) = m.rref();
        assert_eq!(p, vec![0, 1]);
        assert_eq!(r[(0, 2)], Rational::new(-1, 5));
        assert_eq!(r[(1, 2)], Rational::new(2, 5));
    }

    #[test]
    fn nullspace_identity_and_zero() {
        assert!(Mat::identity(4).nullspace().is_trivial());
        assert_eq!(Mat::zeros(2, 3).nullspace().dim(), 3);
        assert_eq!(Mat::identity(4).rank(), 4);
        assert_eq!(Mat::zeros(3, 3).rank(), 0);
    }

    #[test]
    fn nullspace_single_equation() {
        let m = Mat::from_i64(&[&[1, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        for v in &ns.basis {
            assert!((&v[0] + &v[1]).is_zero());
            assert!(m.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        // free columns 1 and 2, in order
        assert_eq!(ns.basis[0], vec![q(-1), q(1), q(0)]);
        assert_eq!(ns.basis[1], vec![q(0), q(0), q(1)]);
    }

    #[test]
    fn matmul_and_transpose() {
        let a = Mat::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Mat::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.checked_mul(&b).unwrap(),
            Mat::from_i64(&[&[2, 1], &[4, 3]])
        );
        assert_eq!(a.transpose(), Mat::from_i64(&[&[1, 3], &[2, 4]]));
        assert!(a.checked_mul(&Mat::zeros(3, 1)).is_err());
    }

    #[test]
    fn elementary_antisymmetric_shape() {
        let e = Mat::elementary_antisymmetric(3, 0, 2);
        assert!(e.is_antisymmetric());
        assert_eq!(e[(0, 2)], q(1));
        assert_eq!(e[(2, 0)], q(-1));
    }

    #[test]
    fn contains_by_rank() {
        let ns = Mat::from_i64(&[&[1, 1, 0]]).nullspace();
        assert!(ns.contains(&[q(2), q(-2), q(5)]));
        assert!(!ns.contains(&[q(1), q(1), q(0)]));
    }
}
