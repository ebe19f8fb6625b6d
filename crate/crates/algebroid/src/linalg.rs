//! Dense matrices over a prime field and the elimination routines the rest
//! of the crate is built on.
//!
//! Everything is exact. Pivoting is always by lowest index, so every
//! computed basis (kernels, row spaces, tensor quotients) is deterministic.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// A dense `rows x cols` matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{} [", self.rows, self.cols, self.field.p())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            for v in row {
                data.push(v % field.p());
            }
        }
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_cols(field: PrimeField, rows: usize, cols: Vec<Vec<u32>>) -> Self {
        let c = cols.len();
        let mut m = Matrix::zero(field, rows, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_fn(field: PrimeField, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut m = Matrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// `self * other`, skipping zero entries of `self` (the matrices this
    /// crate produces are often sparse in practice).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let a = a as u64;
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    if b != 0 {
                        *o = ((*o as u64 + a * b as u64) % p) as u32;
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.field.p() as u64;
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            for (&a, &b) in row.iter().zip(v) {
                if a != 0 && b != 0 {
                    acc = (acc + a as u64 * b as u64) % p;
                }
            }
            *o = acc as u32;
        }
        out
    }

    /// Kronecker product; index convention `(i, j) -> i * other.cols + j`
    /// on columns and likewise on rows (left factor major).
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.field, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == 0 {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if b != 0 {
                            out.set(
                                i1 * other.rows + i2,
                                j1 * other.cols + j2,
                                self.field.mul(a, b),
                            );
                        }
                    }
                }
            }
        }
        out
    }

    /// `self * (a ⊗ b)` computed row-by-row without materializing `a ⊗ b`.
    ///
    /// `self` must have `a.rows * b.rows` columns.
    pub fn mul_kron(&self, a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, a.rows * b.rows);
        let mut out = Matrix::zero(self.field, self.rows, a.cols * b.cols);
        let at = a.transpose();
        for i in 0..self.rows {
            // reshape row i as an (a.rows x b.rows) block V; row of the
            // product is vec(aᵀ · V · b).
            let v = Matrix {
                field: self.field,
                rows: a.rows,
                cols: b.rows,
                data: self.row(i).to_vec(),
            };
            let w = at.mul(&v).mul(b);
            out.data[i * out.cols..(i + 1) * out.cols].copy_from_slice(&w.data);
        }
        out
    }

    /// `(a ⊗ b) * self` computed column-wise without materializing `a ⊗ b`.
    ///
    /// `self` must have `a.cols * b.cols` rows.
    pub fn kron_mul(a: &Matrix, b: &Matrix, g: &Matrix) -> Matrix {
        assert_eq!(g.rows, a.cols * b.cols);
        let mut out = Matrix::zero(g.field, a.rows * b.rows, g.cols);
        let bt = b.transpose();
        for j in 0..g.cols {
            let v = Matrix { field: g.field, rows: a.cols, cols: b.cols, data: g.col(j) };
            let w = a.mul(&v).mul(&bt);
            for i in 0..out.rows {
                out.set(i, j, w.data[i]);
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(other.row(i));
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form with lowest-index pivoting.
    /// Returns the RREF and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let f = m.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let (a, b) = (m.get(r, j), m.get(pr, j));
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = m.get(r, j);
                if v != 0 {
                    m.set(r, j, f.mul(v, inv));
                }
            }
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        for j in 0..m.cols {
                            let v = m.get(r, j);
                            if v != 0 {
                                let cur = m.get(i, j);
                                m.set(i, j, f.sub(cur, f.mul(factor, v)));
                            }
                        }
                    }
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

    /// A basis of the right nullspace, returned as the columns of a matrix.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(self.field, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, self.field.neg(r.get(row, fc)));
            }
        }
        basis
    }

    /// Solves `self * X = rhs`. Returns `None` if inconsistent; free
    /// variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // any pivot in the rhs block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.field, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    /// Solves and additionally demands the solution be unique.
    pub fn solve_unique(&self, rhs: &Matrix) -> Option<Matrix> {
        let x = self.solve(rhs)?;
        if self.rank() == self.cols {
            Some(x)
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let x = self.solve(&id)?;
        if self.mul(&x).is_identity() {
            Some(x)
        } else {
            None
        }
    }

    /// Requires equal shapes and entries; error text names a witness entry.
    pub fn expect_equal(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self == other {
            Ok(())
        } else {
            let idx = self.data.iter().zip(&other.data).position(|(a, b)| a != b).unwrap();
            Err(Error::Internal(format!(
                "{what}: matrices differ at entry ({}, {})",
                idx / self.cols,
                idx % self.cols
            )))
        }
    }

    /// First column where the two matrices differ, if any.
    pub fn first_differing_col(&self, other: &Matrix) -> Option<usize> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        (0..self.cols).find(|&j| (0..self.rows).any(|i| self.get(i, j) != other.get(i, j)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_and_rank() {
        // row3 = row1 + row2, so rank 2 with lowest-index pivots 0, 1
        let m = Matrix::from_rows(f(5), vec![vec![0, 1, 2], vec![1, 0, 1], vec![1, 1, 3]]);
        assert_eq!(m.rank(), 2);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.get(0, 0), 1);
        assert_eq!(r.get(1, 1), 1);
        assert_eq!(r.get(0, 1), 0);
        // rows that are scalar multiples mod p collapse to rank 1
        let m2 = Matrix::from_rows(f(5), vec![vec![1, 2, 3], vec![2, 4, 1], vec![3, 6, 4]]);
        assert_eq!(m2.rank(), 1);
    }

    #[test]
    fn nullspace_is_killed() {
        let m = Matrix::from_rows(f(7), vec![vec![1, 2, 0], vec![2, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&ns).is_zero());
        // and over F_3 the same rows are dependent, nullspace is 2-dim
        let m3 = Matrix::from_rows(f(3), vec![vec![1, 2, 0], vec![2, 1, 0]]);
        let ns3 = m3.nullspace();
        assert_eq!(ns3.cols(), 2);
        assert!(m3.mul(&ns3).is_zero());
    }

    #[test]
    fn solve_roundtrip_and_inconsistency() {
        let a = Matrix::from_rows(f(7), vec![vec![2, 1], vec![1, 3]]);
        let b = Matrix::from_rows(f(7), vec![vec![5], vec![6]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = Matrix::from_rows(f(7), vec![vec![1, 1], vec![2, 2]]);
        let bad = Matrix::from_rows(f(7), vec![vec![1], vec![3]]);
        assert!(singular.solve(&bad).is_none());
    }

    #[test]
    fn inverse_matches_solve() {
        let a = Matrix::from_rows(f(5), vec![vec![1, 2], vec![3, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
    }

    #[test]
    fn kron_helpers_agree_with_explicit_product() {
        let a = Matrix::from_rows(f(5), vec![vec![1, 2], vec![0, 3]]);
        let b = Matrix::from_rows(f(5), vec![vec![2, 0, 1], vec![1, 1, 0]]);
        let k = a.kron(&b);
        let g = Matrix::from_fn(f(5), k.cols(), 4, |i, j| (i * 7 + j * 3 + 1) as u32);
        assert_eq!(Matrix::kron_mul(&a, &b, &g), k.mul(&g));
        let h = Matrix::from_fn(f(5), 4, k.rows(), |i, j| (i * 5 + j + 2) as u32);
        assert_eq!(h.mul_kron(&a, &b), h.mul(&k));
    }
}
