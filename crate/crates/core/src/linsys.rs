//! Homogeneous linear conditions on families of unknown matrices.
//!
//! Every space this crate computes (cocycles, intertwiners, derivations,
//! B_E-linear maps) is the solution set of equations of the form
//! `Σ A·X_b + Σ X_b·B + Σ c·X_b = Σ ...` in unknown matrices `X_0, .., X_{k-1}`
//! of a common shape. Unknown `(b, r, c)` sits at flat position
//! `b·rows·cols + r·cols + c`, which matches [`Matrix::flatten`] per block.

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Scalar, Vector};

#[derive(Clone, Debug)]
pub enum Term<'a> {
    /// `A · X_b`
    Left(&'a Matrix, usize),
    /// `X_b · B`
    Right(usize, &'a Matrix),
    /// `c · X_b`
    Scaled(Scalar, usize),
}

impl<'a> Term<'a> {
    pub fn var(field: Field, block: usize) -> Self {
        Term::Scaled(field.one(), block)
    }
}

#[derive(Clone, Debug)]
pub struct FamilySystem {
    field: Field,
    rows: usize,
    cols: usize,
    blocks: usize,
    reducer: RowReducer,
}

impl FamilySystem {
    pub fn new(field: Field, rows: usize, cols: usize, blocks: usize) -> Self {
        FamilySystem {
            field,
            rows,
            cols,
            blocks,
            reducer: RowReducer::new(field, rows * cols * blocks),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.rows * self.cols * self.blocks
    }

    fn var(&self, b: usize, r: usize, c: usize) -> usize {
        (b * self.rows + r) * self.cols + c
    }

    fn accumulate(&self, term: &Term<'_>, negate: bool, r: usize, c: usize, out: &mut Vec<(usize, Scalar)>) {
        let sign = |s: Scalar| if negate { -s } else { s };
        match term {
            Term::Left(a, b) => {
                for k in 0..self.rows {
                    let v = a.get(r, k);
                    if !v.is_zero() {
                        out.push((self.var(*b, k, c), sign(v.clone())));
                    }
                }
            }
            Term::Right(b, m) => {
                for k in 0..self.cols {
                    let v = m.get(k, c);
                    if !v.is_zero() {
                        out.push((self.var(*b, r, k), sign(v.clone())));
                    }
                }
            }
            Term::Scaled(s, b) => {
                if !s.is_zero() {
                    out.push((self.var(*b, r, c), sign(s.clone())));
                }
            }
        }
    }

    fn check_term(&self, t: &Term<'_>) -> Result<()> {
        let (b, shape_ok) = match t {
            Term::Left(a, b) => (*b, a.shape() == (self.rows, self.rows) && a.field() == self.field),
            Term::Right(b, m) => (*b, m.shape() == (self.cols, self.cols) && m.field() == self.field),
            Term::Scaled(s, b) => (*b, s.field() == self.field),
        };
        if b >= self.blocks || !shape_ok {
            return Err(Error::Dimension(format!(
                "term does not fit a family of {} blocks of shape {}x{}",
                self.blocks, self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Imposes `Σ lhs = Σ rhs` entrywise.
    pub fn impose(&mut self, lhs: &[Term<'_>], rhs: &[Term<'_>]) -> Result<()> {
        for t in lhs.iter().chain(rhs) {
            self.check_term(t)?;
        }
        let mut entries = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries.clear();
                for t in lhs {
                    self.accumulate(t, false, r, c, &mut entries);
                }
                for t in rhs {
                    self.accumulate(t, true, r, c, &mut entries);
                }
                if !entries.is_empty() {
                    self.reducer.push_sparse(&entries);
                }
            }
        }
        Ok(())
    }

    /// Rank of the constraints imposed so far.
    pub fn rank(&self) -> usize {
        self.reducer.rank()
    }

    /// Canonical (RREF) basis of the solution space, as flat vectors.
    pub fn solution_basis(&self) -> Vec<Vector> {
        let raw = self.reducer.kernel_basis();
        crate::exactla::subspace::span_basis(self.field, self.unknowns(), &raw)
            .expect("kernel vectors have the right length")
    }

    pub fn solution_dim(&self) -> usize {
        self.unknowns() - self.rank()
    }

    /// Splits a flat vector into its blocks.
    pub fn unflatten(&self, v: &[Scalar]) -> Vec<Matrix> {
        unflatten_family(self.field, self.rows, self.cols, self.blocks, v)
    }
}

pub fn unflatten_family(field: Field, rows: usize, cols: usize, blocks: usize, v: &[Scalar]) -> Vec<Matrix> {
    let n = rows * cols;
    assert_eq!(v.len(), n * blocks, "family vector length");
    (0..blocks)
        .map(|b| Matrix::new(field, rows, cols, v[b * n..(b + 1) * n].to_vec()).expect("chunk has block size"))
        .collect()
}

pub fn flatten_family(family: &[Matrix]) -> Vector {
    family.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// Matrix of a linear map out of `rows × cols` matrices: column `r·cols + c`
/// is `f` applied to the matrix unit at `(r, c)`.
pub fn linear_map_matrix(
    field: Field,
    rows: usize,
    cols: usize,
    out_dim: usize,
    f: impl Fn(&Matrix) -> Vector,
) -> Matrix {
    let mut images = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut unit = Matrix::zeros(field, rows, cols);
            unit.set(r, c, field.one());
            images.push(f(&unit));
        }
    }
    Matrix::from_columns(field, out_dim, &images).expect("images have the declared length")
}
