use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Vector};
use crate::report::{AxiomCheck, AxiomReport};

/// A finite-dimensional associative algebra given by structure constants.
///
/// `structure[i][j]` is the coefficient vector of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FDAlgebra {
    field: Field,
    labels: Vec<String>,
    structure: Vec<Vec<Vector>>,
    unit: Vector,
}

impl FDAlgebra {
    /// Checks table shapes only; use [`FDAlgebra::check`] for the algebra laws.
    pub fn new(field: Field, labels: Vec<String>, structure: Vec<Vec<Vector>>, unit: Vector) -> Result<Self> {
        let n = labels.len();
        let shape_ok = structure.len() == n
            && structure
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && unit.len() == n;
        if !shape_ok {
            return Err(Error::Dimension(format!(
                "structure table does not match {n} basis labels"
            )));
        }
        if let Some(s) = structure
            .iter()
            .flatten()
            .flatten()
            .chain(&unit)
            .find(|s| s.field() != field)
        {
            return Err(Error::FieldMismatch(field, s.field()));
        }
        Ok(FDAlgebra {
            field,
            labels,
            structure,
            unit,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// Coefficients of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.structure[i][j]
    }

    /// Overwrites one structure constant vector (fault injection, tests).
    pub fn set_product(&mut self, i: usize, j: usize, v: Vector) {
        assert_eq!(v.len(), self.dim(), "coefficient vector length");
        self.structure[i][j] = v;
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Product of two elements given by coefficient vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coef = ai * bj;
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&coef * c);
                    }
                }
            }
        }
        out
    }

    /// Exhaustive associativity on basis triples and two-sided unit law on basis elements.
    pub fn check(&self) -> AxiomReport {
        let n = self.dim();
        let mut report = AxiomReport::default();
        let mut assoc = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = &self.structure[i][j];
                for k in 0..n {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), &self.structure[j][k]);
                    if left != right {
                        assoc = Some(format!("({}·{})·{}", self.labels[i], self.labels[j], self.labels[k]));
                        break 'outer;
                    }
                }
            }
        }
        report.push(AxiomCheck::from_search("associativity", assoc));
        let unit = (0..n)
            .find(|&i| {
                let e = self.basis_vector(i);
                self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
            })
            .map(|i| format!("fails on {}", self.labels[i]));
        report.push(AxiomCheck::from_search("two-sided unit", unit));
        report
    }

    /// `{basis_labels, structure, unit}` with canonical scalar strings.
    pub fn to_json(&self) -> Value {
        let vec_json = |v: &Vector| Value::Array(v.iter().map(|s| json!(s.to_canonical_string())).collect());
        json!({
            "basis_labels": self.labels,
            "structure": self.structure.iter().map(|row| row.iter().map(vec_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "unit": vec_json(&self.unit),
        })
    }
}

/// Left-zero band algebra with adjoined unit: basis `1, ε_0, .., ε_{n-1}`
/// with `ε_α ε_β = ε_α`.
pub fn build_halo_algebra(field: Field, halo_size: usize) -> Result<FDAlgebra> {
    if halo_size == 0 {
        return Err(Error::Dimension("halo must be nonempty".into()));
    }
    let n = halo_size + 1;
    let e = |i: usize| {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        v
    };
    let mut labels = vec!["1".to_string()];
    labels.extend((0..halo_size).map(|a| format!("ε{a}")));
    let structure = (0..n)
        .map(|i| (0..n).map(|j| if i == 0 { e(j) } else { e(i) }).collect())
        .collect();
    FDAlgebra::new(field, labels, structure, e(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn halo_algebra_products() {
        let b = build_halo_algebra(Q, 2).unwrap();
        assert_eq!(b.dim(), 3);
        assert_eq!(b.product(1, 2), &b.basis_vector(1));
        assert_eq!(b.product(2, 1), &b.basis_vector(2));
        assert!(b.check().all_passed());
        let b1 = build_halo_algebra(Q, 1).unwrap();
        assert_eq!(b1.dim(), 2);
        assert_eq!(b1.product(1, 1), &b1.basis_vector(1));
        assert!(build_halo_algebra(Q, 0).is_err());
    }

    #[test]
    fn corrupted_table_fails_associativity() {
        let mut b = build_halo_algebra(Q, 2).unwrap();
        // ε0·ε1 = 0 breaks (ε1 ε0) ε1 = ε1 (ε0 ε1)
        b.set_product(1, 2, vec![Q.zero(); 3]);
        assert!(!b.check().get("associativity").unwrap().passed);
    }

    #[test]
    fn json_shape() {
        let j = build_halo_algebra(Q, 1).unwrap().to_json();
        assert_eq!(j["basis_labels"][1], "ε0");
        assert_eq!(j["structure"][1][1][1], "1");
    }
}
