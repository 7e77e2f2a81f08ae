//! Subspaces of `K^n` represented by canonical bases.
//!
//! A canonical basis is the list of nonzero rows of the RREF of any spanning
//! set, so two spanning sets of the same subspace give identical bases and
//! subspace equality is literal comparison.

use super::matrix::{Matrix, Vector};
use super::reduce::RowReducer;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

fn check_lengths(ambient: usize, vectors: &[Vector]) -> Result<()> {
    match vectors.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(Error::Dimension(format!(
            "vector of length {} in ambient dimension {ambient}",
            v.len()
        ))),
        None => Ok(()),
    }
}

fn reducer_of(field: Field, ambient: usize, vectors: &[Vector]) -> Result<RowReducer> {
    check_lengths(ambient, vectors)?;
    let mut red = RowReducer::new(field, ambient);
    for v in vectors {
        if let Some(bad) = v.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        red.push(v.clone());
    }
    Ok(red)
}

/// Canonical basis of `span(vectors)`.
pub fn span_basis(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Vec<Vector>> {
    Ok(reducer_of(field, ambient, vectors)?.into_rows())
}

/// Canonical basis of `U ∩ V`.
pub fn intersect(field: Field, ambient: usize, u: &[Vector], v: &[Vector]) -> Result<Vec<Vector>> {
    check_lengths(ambient, u)?;
    check_lengths(ambient, v)?;
    let u = span_basis(field, ambient, u)?;
    let v = span_basis(field, ambient, v)?;
    // a·U = b·V  <=>  [U | -V] (a, b)^T = 0 with U, V as column blocks.
    let mut cols: Vec<Vector> = u.clone();
    cols.extend(v.iter().map(|x| x.iter().map(|s| -s).collect()));
    let m = Matrix::from_columns(field, ambient, &cols)?;
    let hits: Vec<Vector> = m
        .kernel_basis()
        .into_iter()
        .map(|k| {
            let mut w = vec![field.zero(); ambient];
            for (a, ui) in k.iter().zip(&u) {
                if a.is_zero() {
                    continue;
                }
                for (wj, uj) in w.iter_mut().zip(ui) {
                    *wj = &*wj + &(a * uj);
                }
            }
            w
        })
        .collect();
    span_basis(field, ambient, &hits)
}

pub fn contains(field: Field, ambient: usize, u: &[Vector], x: &[Scalar]) -> Result<bool> {
    check_lengths(ambient, &[x.to_vec()])?;
    Ok(reducer_of(field, ambient, u)?.contains(x))
}

pub fn quotient_dim(field: Field, ambient: usize, u: &[Vector]) -> Result<usize> {
    Ok(ambient - reducer_of(field, ambient, u)?.rank())
}

/// Coordinates of `x` in the (linearly independent) list `basis`, if `x` lies in its span.
pub fn coordinates(field: Field, ambient: usize, basis: &[Vector], x: &[Scalar]) -> Result<Option<Vector>> {
    let a = Matrix::from_columns(field, ambient, basis)?;
    let b = Matrix::column_vector(field, x)?;
    Ok(a.solve(&b)?.map(|s| s.column(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn intersection_of_axes_is_zero() {
        assert!(intersect(Q, 2, &[v(&[1, 0])], &[v(&[0, 1])]).unwrap().is_empty());
    }

    #[test]
    fn intersection_of_planes() {
        let u = [v(&[1, 0, 0]), v(&[0, 1, 0])];
        let w = [v(&[0, 1, 1]), v(&[1, 0, -1])];
        // Both planes contain (1, 1, 0).
        assert_eq!(intersect(Q, 3, &u, &w).unwrap(), vec![v(&[1, 1, 0])]);
    }

    #[test]
    fn containment_and_quotient() {
        assert!(contains(Q, 2, &[v(&[1, 1])], &v(&[2, 2])).unwrap());
        assert!(!contains(Q, 2, &[v(&[1, 1])], &v(&[1, 0])).unwrap());
        assert_eq!(quotient_dim(Q, 2, &[v(&[0, 1])]).unwrap(), 1);
    }

    #[test]
    fn canonical_bases_agree() {
        let a = span_basis(Q, 3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let b = span_basis(Q, 3, &[v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[1, 2, 3])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(span_basis(Q, 2, &[v(&[1, 2, 3])]).is_err());
    }
}
