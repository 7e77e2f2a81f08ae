use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::reduce::RowReducer;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Column vectors are plain scalar lists; the field is carried by context.
pub type Vector = Vec<Scalar>;

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::scalar(field, n, &field.one())
    }

    /// `s` times the `n x n` identity.
    pub fn scalar(field: Field, n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    /// Builds from small integer rows; panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds from nested rows. `cols` is needed to describe `k x 0` shapes.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Self::new(field, n, cols, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension("column length mismatch".into()));
        }
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Result<Self> {
        Self::new(field, v.len(), 1, v.to_vec())
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch(self.field, other.field))
        } else {
            Ok(())
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length mismatch".into()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!(
                "shape {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        assert!(r0 <= r1 && r1 <= self.rows && c0 <= c1 && c1 <= self.cols);
        let mut m = Matrix::zeros(self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.set(r - r0, c - c0, self.get(r, c).clone());
            }
        }
        m
    }

    /// Horizontal concatenation; all parts must share a row count.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            if p.rows != rows {
                return Err(Error::Dimension("hstack row mismatch".into()));
            }
            m.same_field(p)?;
            m.paste(0, off, p);
            off += p.cols;
        }
        Ok(m)
    }

    /// Vertical concatenation; all parts must share a column count.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Matrix::zeros(field, rows, cols);
        let mut off = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            m.same_field(p)?;
            m.paste(off, 0, p);
            off += p.rows;
        }
        Ok(m)
    }

    /// `[[a, b], [c, d]]` from four blocks.
    pub fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        let f = a.field;
        let top = Matrix::hstack(f, a.rows, &[a, b])?;
        let bottom = Matrix::hstack(f, c.rows, &[c, d])?;
        Matrix::vstack(f, top.cols, &[&top, &bottom])
    }

    pub fn block_diag(a: &Matrix, d: &Matrix) -> Result<Matrix> {
        let f = a.field;
        Matrix::block2(
            a,
            &Matrix::zeros(f, a.rows, d.cols),
            &Matrix::zeros(f, d.rows, a.cols),
            d,
        )
    }

    /// Copies `src` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, src: &Matrix) {
        for r in 0..src.rows {
            for c in 0..src.cols {
                self.set(r0 + r, c0 + c, src.get(r, c).clone());
            }
        }
    }

    /// Reduced row echelon form (same shape, zero rows last) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let red = self.reducer();
        let pivots = red.pivots().to_vec();
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (i, r) in red.rows().iter().enumerate() {
            for (c, v) in r.iter().enumerate() {
                out.set(i, c, v.clone());
            }
        }
        (out, pivots)
    }

    fn reducer(&self) -> RowReducer {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in 0..self.rows {
            red.push(self.row(r).to_vec());
        }
        red
    }

    pub fn rank(&self) -> usize {
        self.reducer().rank()
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.reducer().kernel_basis()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    ///
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hstack(self.field, self.rows, &[self, b])?;
        let red = aug.reducer();
        if red.pivots().iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &pc) in red.rows().iter().zip(red.pivots()) {
            for j in 0..b.cols {
                x.set(pc, j, r[self.cols + j].clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Matrix::identity(self.field, self.rows))
            .expect("shapes agree")
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `vec` in row-major order: entry `(r, c)` lands at `r * cols + c`.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn unflatten(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Result<Matrix> {
        Matrix::new(field, rows, cols, v.to_vec())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    /// Panics on shape or field mismatch; use [`Matrix::matmul`] for a checked product.
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&-self.field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::identity(Q, 2).rref();
        assert_eq!(r, Matrix::identity(Q, 2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = Matrix::zeros(Q, 3, 3).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());

        let p1 = Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]);
        let (r, p) = p1.rref();
        assert_eq!(r, Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Q, 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(Q, 1, 2).kernel_basis().len(), 2);
        let p0 = Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]);
        assert_eq!(p0.kernel_basis(), vec![vec![Q.zero(), Q.one()]]);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(Q, &[&[3, -1], &[5, 2]]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));

        let p1 = Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]);
        let rhs = Matrix::from_i64(Q, &[&[1], &[1]]);
        let x = p1.solve(&rhs).unwrap().expect("consistent");
        assert_eq!(&p1 * &x, rhs);
        assert_eq!(*x.get(0, 0), Q.one());

        let rhs = Matrix::from_i64(Q, &[&[1], &[2]]);
        assert_eq!(p1.solve(&rhs).unwrap(), None);

        let short = Matrix::from_i64(Q, &[&[1]]);
        assert!(matches!(p1.solve(&short), Err(Error::Dimension(_))));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Field::Prime(3), 2);
        assert!(matches!(a.matmul(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.solve(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn inverse_and_singular() {
        let a = Matrix::from_i64(Q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]).inverse().is_none());
        assert!(Matrix::identity(Q, 0).inverse().unwrap().is_identity());
    }

    #[test]
    fn prime_field_rank_differs() {
        // det = 2, so rank drops over F_2 only.
        let rows: &[&[i64]] = &[&[1, 1], &[1, -1]];
        assert_eq!(Matrix::from_i64(Q, rows).rank(), 2);
        assert_eq!(Matrix::from_i64(Field::Prime(2), rows).rank(), 1);
    }
}
