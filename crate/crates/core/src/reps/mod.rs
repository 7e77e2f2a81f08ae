//! Representations of a digroup as explicit operator tables.
//!
//! A representation stores `λ_x` and `ρ_x` for every element `x = (g, α)`,
//! redundantly, so that the structural facts (ρ depends only on `g`, and
//! `λ_(g,α) = λ_(1,α) ρ_g`) are checked rather than assumed.

mod semilinear;

use std::sync::Arc;

pub use semilinear::SemilinearObject;

use crate::digroup::{Digroup, Element};
use crate::error::{Error, Result};
use crate::exactla::subspace;
use crate::exactla::{Field, Matrix, Vector};
use crate::linsys::{FamilySystem, Term};
use crate::report::{AxiomCheck, AxiomReport};

#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    digroup: Arc<Digroup>,
    field: Field,
    dim: usize,
    lambda: Vec<Matrix>,
    rho: Vec<Matrix>,
}

/// `0 → W → V → Q → 0` cut out of `V` by a stable subspace.
#[derive(Clone, Debug)]
pub struct SubQuotient {
    pub sub: Representation,
    pub quotient: Representation,
    /// `dim V × dim W`, columns are the given basis of `W`.
    pub iota: Matrix,
    /// `dim Q × dim V`.
    pub pi: Matrix,
}

impl Representation {
    /// Validated construction. Tables are indexed by [`Digroup::index`].
    pub fn new(digroup: Arc<Digroup>, field: Field, dim: usize, lambda: Vec<Matrix>, rho: Vec<Matrix>) -> Result<Self> {
        let r = Self::unchecked(digroup, field, dim, lambda, rho)?;
        let report = r.check_representation();
        if let Some(f) = report.failures().next() {
            return Err(Error::NotARepresentation(format!(
                "{}: {}",
                f.name,
                f.counterexample.as_deref().unwrap_or("")
            )));
        }
        Ok(r)
    }

    /// Only table sizes, shapes and fields are checked.
    pub fn unchecked(
        digroup: Arc<Digroup>,
        field: Field,
        dim: usize,
        lambda: Vec<Matrix>,
        rho: Vec<Matrix>,
    ) -> Result<Self> {
        let n = digroup.size();
        if lambda.len() != n || rho.len() != n {
            return Err(Error::Dimension(format!(
                "expected {n} operators each, got {} λ and {} ρ",
                lambda.len(),
                rho.len()
            )));
        }
        for m in lambda.iter().chain(&rho) {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "operator of shape {:?} on a space of dimension {dim}",
                    m.shape()
                )));
            }
        }
        Ok(Representation {
            digroup,
            field,
            dim,
            lambda,
            rho,
        })
    }

    /// Builds `λ_(g,α) = L_α ρ_g` and `ρ_(g,α) = ρ_g` from factored data, then validates.
    pub fn from_factored(
        digroup: Arc<Digroup>,
        field: Field,
        dim: usize,
        l: &[Matrix],
        rho_g: &[Matrix],
    ) -> Result<Self> {
        if l.len() != digroup.halo_size() || rho_g.len() != digroup.order() {
            return Err(Error::Dimension("factored tables have the wrong length".into()));
        }
        let mut lambda = Vec::with_capacity(digroup.size());
        let mut rho = Vec::with_capacity(digroup.size());
        for x in digroup.elements() {
            lambda.push(l[x.alpha].matmul(&rho_g[x.g])?);
            rho.push(rho_g[x.g].clone());
        }
        Self::new(digroup, field, dim, lambda, rho)
    }

    /// The zero-dimensional representation.
    pub fn zero(digroup: Arc<Digroup>, field: Field) -> Self {
        let n = digroup.size();
        let z = Matrix::zeros(field, 0, 0);
        Representation {
            digroup,
            field,
            dim: 0,
            lambda: vec![z.clone(); n],
            rho: vec![z; n],
        }
    }

    /// Every operator is the identity of `K^dim`.
    pub fn trivial(digroup: Arc<Digroup>, field: Field, dim: usize) -> Self {
        let n = digroup.size();
        let i = Matrix::identity(field, dim);
        Representation {
            digroup,
            field,
            dim,
            lambda: vec![i.clone(); n],
            rho: vec![i; n],
        }
    }

    pub fn digroup(&self) -> &Arc<Digroup> {
        &self.digroup
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self, x: Element) -> &Matrix {
        &self.lambda[self.digroup.index(x)]
    }

    pub fn rho(&self, x: Element) -> &Matrix {
        &self.rho[self.digroup.index(x)]
    }

    /// All `λ` operators, by element index.
    pub fn lambdas(&self) -> &[Matrix] {
        &self.lambda
    }

    pub fn rhos(&self) -> &[Matrix] {
        &self.rho
    }

    /// Mutable access for fault injection and tests; validity is not maintained.
    pub fn lambda_mut(&mut self, x: Element) -> &mut Matrix {
        let i = self.digroup.index(x);
        &mut self.lambda[i]
    }

    pub fn rho_mut(&mut self, x: Element) -> &mut Matrix {
        let i = self.digroup.index(x);
        &mut self.rho[i]
    }

    pub fn same_digroup(&self, other: &Representation) -> bool {
        Arc::ptr_eq(&self.digroup, &other.digroup) || *self.digroup == *other.digroup
    }

    /// Exhaustive check of the five operator identities over `D × D` plus
    /// invertibility of every `ρ_x`.
    pub fn check_representation(&self) -> AxiomReport {
        let d = &*self.digroup;
        let n = d.size();
        let first = |f: &dyn Fn(usize, usize) -> bool| -> Option<String> {
            for x in 0..n {
                for y in 0..n {
                    if !f(x, y) {
                        return Some(format!("x={}, y={}", d.element(x), d.element(y)));
                    }
                }
            }
            None
        };
        let (l, r) = (&self.lambda, &self.rho);
        let mut report = AxiomReport::default();
        report.push(AxiomCheck::from_search(
            "λ(x⊣y) = λ(x)λ(y)",
            first(&|x, y| l[d.dashv_idx(x, y)] == &l[x] * &l[y]),
        ));
        report.push(AxiomCheck::from_search(
            "ρ(x⊢y) = ρ(x)ρ(y)",
            first(&|x, y| r[d.vdash_idx(x, y)] == &r[x] * &r[y]),
        ));
        let units = d.halo();
        report.push(AxiomCheck::from_search(
            "ρ(e) = I at bar-units",
            units
                .iter()
                .find(|&&e| !r[d.index(e)].is_identity())
                .map(|e| format!("e={e}")),
        ));
        report.push(AxiomCheck::from_search(
            "ρ(x)λ(y) = λ(x⊢y)",
            first(&|x, y| l[d.vdash_idx(x, y)] == &r[x] * &l[y]),
        ));
        report.push(AxiomCheck::from_search(
            "λ(x)ρ(y) = λ(x⊣y)",
            first(&|x, y| l[d.dashv_idx(x, y)] == &l[x] * &r[y]),
        ));
        report.push(AxiomCheck::from_search(
            "ρ(x) invertible",
            (0..n)
                .find(|&x| r[x].rank() < self.dim)
                .map(|x| format!("x={}", d.element(x))),
        ));
        report
    }

    pub fn is_valid(&self) -> bool {
        self.check_representation().all_passed()
    }

    /// `g ↦ ρ_g`, after checking that `ρ_(g,α)` does not depend on `α` and
    /// that the result is multiplicative.
    pub fn rho_group_form(&self) -> Result<Vec<Matrix>> {
        let d = &*self.digroup;
        let grp = d.group();
        let table: Vec<Matrix> = (0..d.order()).map(|g| self.rho(Element::new(g, 0)).clone()).collect();
        for x in d.elements() {
            if *self.rho(x) != table[x.g] {
                return Err(Error::NotARepresentation(format!("ρ differs between (g,0) and {x}")));
            }
        }
        for g in 0..d.order() {
            for h in 0..d.order() {
                if table[grp.mul(g, h)] != &table[g] * &table[h] {
                    return Err(Error::NotARepresentation(format!("ρ(gh) ≠ ρ(g)ρ(h) at g={g}, h={h}")));
                }
            }
        }
        Ok(table)
    }

    /// `α ↦ L_α = λ_(1,α)`, after checking `λ_(g,α) = L_α ρ_g` everywhere.
    pub fn lambda_factorization(&self) -> Result<Vec<Matrix>> {
        let d = &*self.digroup;
        let one = d.group().identity();
        let l: Vec<Matrix> = (0..d.halo_size())
            .map(|a| self.lambda(Element::new(one, a)).clone())
            .collect();
        for x in d.elements() {
            if *self.lambda(x) != &l[x.alpha] * self.rho(x) {
                return Err(Error::NotARepresentation(format!("λ{x} ≠ λ(1,α)ρ(g)")));
            }
        }
        Ok(l)
    }

    fn check_vectors(&self, basis: &[Vector]) -> Result<()> {
        for v in basis {
            if v.len() != self.dim {
                return Err(Error::Dimension(format!(
                    "vector of length {} in dimension {}",
                    v.len(),
                    self.dim
                )));
            }
            if let Some(s) = v.iter().find(|s| s.field() != self.field) {
                return Err(Error::FieldMismatch(self.field, s.field()));
            }
        }
        Ok(())
    }

    /// Whether `span(basis)` is stable under every `λ_x` and `ρ_x`.
    pub fn is_subrepresentation(&self, basis: &[Vector]) -> Result<bool> {
        self.check_vectors(basis)?;
        let span = subspace::span_basis(self.field, self.dim, basis)?;
        let mut red = crate::exactla::RowReducer::new(self.field, self.dim);
        for v in &span {
            red.push(v.clone());
        }
        for op in self.lambda.iter().chain(&self.rho) {
            for v in &span {
                if !red.contains(&op.mul_vec(v)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Restriction to `W = span(basis)` (in the given, linearly independent
    /// basis) and the induced quotient on the coordinates that are not pivots
    /// of the RREF basis of `W`.
    pub fn sub_quotient(&self, basis: &[Vector]) -> Result<SubQuotient> {
        self.check_vectors(basis)?;
        let n = self.dim;
        let k = basis.len();
        let canon = subspace::span_basis(self.field, n, basis)?;
        if canon.len() != k {
            return Err(Error::DependentVectors);
        }
        let pivots: Vec<usize> = canon
            .iter()
            .map(|v| v.iter().position(|s| !s.is_zero()).expect("nonzero row"))
            .collect();
        let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let iota = Matrix::from_columns(self.field, n, basis)?;
        let mut section = Matrix::zeros(self.field, n, complement.len());
        for (j, &c) in complement.iter().enumerate() {
            section.set(c, j, self.field.one());
        }
        let t = Matrix::hstack(self.field, n, &[&iota, &section])?;
        let t_inv = t
            .inverse()
            .ok_or_else(|| Error::Consistency("complement is not complementary".into()))?;
        let pi = t_inv.submatrix(k, n, 0, n);

        let restrict = |op: &Matrix| -> Result<Matrix> { iota.solve(&(op * &iota))?.ok_or(Error::NotStable) };
        let induce = |op: &Matrix| -> Matrix { &(&pi * op) * &section };
        let sub_l = self.lambda.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let sub_r = self.rho.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let quo_l = self.lambda.iter().map(induce).collect();
        let quo_r = self.rho.iter().map(induce).collect();
        let sub = Representation::unchecked(self.digroup.clone(), self.field, k, sub_l, sub_r)?;
        let quotient = Representation::unchecked(self.digroup.clone(), self.field, n - k, quo_l, quo_r)?;
        Ok(SubQuotient {
            sub,
            quotient,
            iota,
            pi,
        })
    }

    /// Block-diagonal sum, coordinates of `self` first.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.same_digroup(other) {
            return Err(Error::DigroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let sum = |a: &[Matrix], b: &[Matrix]| -> Result<Vec<Matrix>> {
            a.iter().zip(b).map(|(x, y)| Matrix::block_diag(x, y)).collect()
        };
        Representation::unchecked(
            self.digroup.clone(),
            self.field,
            self.dim + other.dim,
            sum(&self.lambda, &other.lambda)?,
            sum(&self.rho, &other.rho)?,
        )
    }

    /// Canonical basis of the intertwiners `self → other`
    /// (`f λ_x = λ'_x f` and `f ρ_x = ρ'_x f` for every `x`).
    pub fn hom_rep(&self, other: &Representation) -> Result<Vec<Matrix>> {
        if !self.same_digroup(other) {
            return Err(Error::DigroupMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mut sys = FamilySystem::new(self.field, other.dim, self.dim, 1);
        for x in 0..self.digroup.size() {
            sys.impose(&[Term::Right(0, &self.lambda[x])], &[Term::Left(&other.lambda[x], 0)])?;
            sys.impose(&[Term::Right(0, &self.rho[x])], &[Term::Left(&other.rho[x], 0)])?;
        }
        Ok(sys
            .solution_basis()
            .iter()
            .map(|v| sys.unflatten(v).remove(0))
            .collect())
    }

    /// `ε_α = λ_(1,α)`, `t_g = ρ_(g,·)`.
    pub fn to_semilinear(&self) -> Result<SemilinearObject> {
        let t = self.rho_group_form()?;
        let epsilon = self.lambda_factorization()?;
        SemilinearObject::new(self.digroup.clone(), self.field, self.dim, epsilon, t)
    }

    /// `ρ_(g,α) = t_g`, `λ_(g,α) = ε_α t_g`.
    pub fn from_semilinear(m: &SemilinearObject) -> Result<Representation> {
        Representation::from_factored(m.digroup().clone(), m.field(), m.dim(), m.epsilon(), m.t())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digroup::FiniteGroup;

    const Q: Field = Field::Rational;

    fn c2_two_points() -> Arc<Digroup> {
        Arc::new(Digroup::trivial_action(FiniteGroup::cyclic(2).unwrap(), 2).unwrap())
    }

    /// `ρ = χ(g) I`, `λ_(g,α) = χ(g) P_α` with the sign character of C₂.
    fn worked_example() -> Representation {
        let p = [
            Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]),
            Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]),
        ];
        let rho = [Matrix::identity(Q, 2), Matrix::from_i64(Q, &[&[-1, 0], &[0, -1]])];
        Representation::from_factored(c2_two_points(), Q, 2, &p, &rho).unwrap()
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn worked_example_is_valid() {
        let r = worked_example();
        assert!(r.is_valid(), "{}", r.check_representation());
        assert_eq!(
            r.rho_group_form().unwrap()[1],
            Matrix::from_i64(Q, &[&[-1, 0], &[0, -1]])
        );
        let l = r.lambda_factorization().unwrap();
        assert_eq!(l[1], Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]));
        assert_eq!(
            *r.lambda(Element::new(1, 1)),
            Matrix::from_i64(Q, &[&[-1, 0], &[-1, 0]])
        );
    }

    #[test]
    fn perturbation_breaks_multiplicativity() {
        let mut r = worked_example();
        let m = r.lambda_mut(Element::new(0, 1));
        let bumped = m.get(0, 1) + &Q.one();
        m.set(0, 1, bumped);
        let report = r.check_representation();
        let c = report.get("λ(x⊣y) = λ(x)λ(y)").unwrap();
        assert!(!c.passed && c.counterexample.is_some());
        assert!(Representation::new(r.digroup.clone(), Q, 2, r.lambda.clone(), r.rho.clone()).is_err());
    }

    #[test]
    fn singular_rho_is_rejected() {
        let d = c2_two_points();
        let z = Matrix::zeros(Q, 1, 1);
        let r = Representation::unchecked(d, Q, 1, vec![z.clone(); 4], vec![z; 4]).unwrap();
        assert!(!r.check_representation().get("ρ(x) invertible").unwrap().passed);
    }

    #[test]
    fn identity_operators() {
        assert!(Representation::trivial(c2_two_points(), Q, 3).is_valid());
        assert!(Representation::zero(c2_two_points(), Q).is_valid());
    }

    #[test]
    fn stable_subspaces() {
        let r = worked_example();
        assert!(r.is_subrepresentation(&[v(&[0, 1])]).unwrap());
        assert!(!r.is_subrepresentation(&[v(&[1, 1])]).unwrap());
        assert!(r.is_subrepresentation(&[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(r.is_subrepresentation(&[]).unwrap());
    }

    #[test]
    fn sub_and_quotient_of_worked_example() {
        let r = worked_example();
        let sq = r.sub_quotient(&[v(&[0, 1])]).unwrap();
        assert!(sq.sub.is_valid() && sq.quotient.is_valid());
        for x in r.digroup().elements() {
            let chi = if x.g == 0 { 1 } else { -1 };
            assert!(sq.sub.lambda(x).is_zero());
            assert_eq!(*sq.sub.rho(x), Matrix::from_i64(Q, &[&[chi]]));
            assert_eq!(*sq.quotient.lambda(x), Matrix::from_i64(Q, &[&[chi]]));
            assert_eq!(*sq.quotient.rho(x), Matrix::from_i64(Q, &[&[chi]]));
        }
        assert!((&sq.pi * &sq.iota).is_zero());
        assert_eq!(sq.pi.rank(), 1);
        assert!(matches!(r.sub_quotient(&[v(&[1, 1])]), Err(Error::NotStable)));
        assert!(matches!(
            r.sub_quotient(&[v(&[0, 1]), v(&[0, 2])]),
            Err(Error::DependentVectors)
        ));
    }

    #[test]
    fn degenerate_sub_quotients() {
        let r = worked_example();
        let full = r.sub_quotient(&[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(full.quotient.dim(), 0);
        let none = r.sub_quotient(&[]).unwrap();
        assert_eq!(none.sub.dim(), 0);
        assert_eq!(none.quotient, r);
    }

    #[test]
    fn sums_and_homs() {
        let r = worked_example();
        let sq = r.sub_quotient(&[v(&[0, 1])]).unwrap();
        let s = sq.sub.direct_sum(&sq.quotient).unwrap();
        assert!(s.is_valid());
        assert_eq!(s.dim(), 2);
        assert_eq!(r.direct_sum(&Representation::zero(r.digroup().clone(), Q)).unwrap(), r);
        assert_eq!(sq.sub.hom_rep(&sq.sub).unwrap().len(), 1);
        assert!(sq.quotient.hom_rep(&sq.sub).unwrap().is_empty());
        assert!(r.hom_rep(&r).unwrap().iter().any(|m| m.is_identity()));
    }

    #[test]
    fn semilinear_round_trip() {
        let r = worked_example();
        let m = r.to_semilinear().unwrap();
        assert_eq!(m.t()[1], Matrix::from_i64(Q, &[&[-1, 0], &[0, -1]]));
        assert_eq!(Representation::from_semilinear(&m).unwrap(), r);
    }
}
