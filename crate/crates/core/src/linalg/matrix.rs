use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: alloc::vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn scalar(field: Field, n: usize, c: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(alloc::format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Build from integer rows; every row must have the same length.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged matrix literal");
                row.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension(alloc::format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: r, cols, data })
    }

    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Self {
        let n = v.len();
        Matrix { field, rows: n, cols: 1, data: v }
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product shape mismatch")
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Dimension(alloc::format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum shape mismatch")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| f.neg(x)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| f.mul(c, x)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(k, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kronecker over different fields");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Row reduction with first-nonzero pivoting.
    pub fn echelon(&self) -> Echelon {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let Echelon { reduced, pivots } = self.echelon();
        let mut is_pivot = alloc::vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = alloc::vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(reduced.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Rank and a kernel basis.
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<Scalar>>) {
        let k = self.kernel();
        (self.cols - k.len(), k)
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.cols, &self.kernel())
    }

    /// Columns of `self` forming a basis of the column space.
    pub fn image_matrix(&self) -> Matrix {
        let piv = self.echelon().pivots;
        self.select_columns(&piv)
    }

    /// A solution of `self · x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(alloc::format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.field;
        let aug = self.hstack(&Matrix::column_vector(f, b.to_vec()));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = alloc::vec![f.zero(); self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solve `self · X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        let mut cols = Vec::with_capacity(b.cols);
        for j in 0..b.cols {
            match self.solve(&b.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Matrix::from_columns(self.field, self.cols, &cols)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n));
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows.max(1) as u64).is_zero()
    }

    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mul(&Matrix::column_vector(self.field, v.to_vec())).data
    }

    /// Re-express every entry in a larger field through the canonical embedding.
    pub fn embed(&self, target: Field) -> Result<Matrix> {
        let data = self.data.iter().map(|x| target.embed_from(&self.field, x)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: target, rows: self.rows, cols: self.cols, data })
    }

    /// Concatenate the entries row-major into a single vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            f.write_str(if i == 0 { ": " } else { "; " })?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.display(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of_vectors(field: Field, len: usize, vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, len, vs).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::Prime(2)
    }

    #[test]
    fn rank_kernel_identity_and_zero() {
        let (r, k) = Matrix::identity(f2(), 2).rank_kernel();
        assert_eq!((r, k.len()), (2, 0));
        let (r, k) = Matrix::zeros(f2(), 2, 3).rank_kernel();
        assert_eq!((r, k.len()), (0, 3));
        assert_eq!(rank_of_vectors(f2(), 3, &k), 3);
    }

    #[test]
    fn rank_kernel_all_ones_over_f2() {
        // Hand reduction: R2 <- R2 + R1 gives [[1,1],[0,0]]; free column 1 gives (1,1).
        let m = Matrix::from_i64(f2(), &[&[1, 1], &[1, 1]]);
        let (r, k) = m.rank_kernel();
        assert_eq!(r, 1);
        assert_eq!(k, alloc::vec![alloc::vec![Scalar::Fin(1), Scalar::Fin(1)]]);
    }

    #[test]
    fn empty_matrices() {
        let m = Matrix::zeros(f2(), 0, 0);
        assert_eq!(m.rank_kernel(), (0, Vec::new()));
        let m = Matrix::zeros(f2(), 0, 2);
        assert_eq!(m.rank_kernel().1.len(), 2);
    }

    #[test]
    fn solve_examples() {
        let q = Field::Rationals;
        let id = Matrix::identity(q, 3);
        let b: Vec<Scalar> = [4, -1, 7].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let zero = Matrix::zeros(q, 2, 2);
        assert_eq!(zero.solve(&[q.one(), q.zero()]).unwrap(), None);
        // Back substitution: x2 = 1, x1 = 3 - x2 = 2.
        let a = Matrix::from_i64(q, &[&[1, 1], &[0, 1]]);
        let x = a.solve(&[q.from_i64(3), q.from_i64(1)]).unwrap().unwrap();
        assert_eq!(x, alloc::vec![q.from_i64(2), q.from_i64(1)]);
        assert!(a.solve(&[q.one()]).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let a = Matrix::from_i64(f2(), &[&[1, 0], &[1, 1]]);
        assert_eq!(a.kronecker(&Matrix::identity(f2(), 1)), a);
        assert_eq!(a.kronecker(&Matrix::zeros(f2(), 0, 0)).shape(), (0, 0));
        let n = Matrix::from_i64(f2(), &[&[0, 1], &[0, 0]]);
        let expected = Matrix::from_i64(
            f2(),
            &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]],
        );
        assert_eq!(Matrix::identity(f2(), 2).kronecker(&n), expected);
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::Rationals;
        let a = Matrix::from_i64(q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #[test]
            fn rank_nullity_and_kernel(p in prop::sample::select(alloc::vec![2u64, 3, 5]), r in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
                let f = Field::Prime(p);
                let a = Matrix::random(f, r, c, &mut ChaCha8Rng::seed_from_u64(seed));
                let k = a.kernel_matrix();
                prop_assert_eq!(a.rank() + k.cols(), c);
                prop_assert!(a.mul(&k).is_zero());
            }

            #[test]
            fn rationals_solve(r in 1usize..4, c in 1usize..4, seed in any::<u64>()) {
                let q = Field::Rationals;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = Matrix::random(q, r, c, &mut rng);
                let x = Matrix::random(q, c, 1, &mut rng);
                let b = a.mul(&x);
                let sol = a.solve_matrix(&b).unwrap().expect("b is in the image");
                prop_assert_eq!(a.mul(&sol), b);
            }
        }
    }
}
