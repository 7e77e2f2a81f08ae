//! Finite-dimensional realizations of the enveloping algebra `A_D` and the
//! halo algebra `B_E`, algebra modules, and an Ext¹ computed from
//! derivations.
//!
//! `A_D` has basis `R_g` (index `g`) and `M_(α,g)` (index `|G| + α|G| + g`),
//! where `M_(α,g)` stands for `L_(1,α) R_g`. Products:
//!
//! ```text
//! R_g R_h = R_gh          R_g M_(α,h) = M_(g∙α, gh)
//! M_(α,g) R_h = M_(α,gh)  M_(α,g) M_(β,h) = M_(α,gh)
//! ```

mod algebra;

use std::sync::Arc;

pub use algebra::{build_halo_algebra, FDAlgebra};

use crate::digroup::{Digroup, Element, GAction};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Vector};
use crate::linsys::{flatten_family, FamilySystem, Term};
use crate::report::{AxiomCheck, AxiomReport};
use crate::reps::Representation;

/// Index of `R_g` in the enveloping algebra basis.
pub fn r_index(_d: &Digroup, g: usize) -> usize {
    g
}

/// Index of `M_(α,g)` in the enveloping algebra basis.
pub fn m_index(d: &Digroup, alpha: usize, g: usize) -> usize {
    d.order() * (1 + alpha) + g
}

/// Image of `ℓ_x` for `x = (g, α)`.
pub fn ell_index(d: &Digroup, x: Element) -> usize {
    m_index(d, x.alpha, x.g)
}

pub fn build_enveloping_algebra(d: &Digroup, field: Field) -> FDAlgebra {
    let n = d.order();
    let k = d.halo_size();
    let dim = n * (1 + k);
    let grp = d.group();
    let act = d.action();
    // basis element -> (Some(α) for M, None for R, g)
    let decode = |i: usize| -> (Option<usize>, usize) {
        if i < n {
            (None, i)
        } else {
            (Some(i / n - 1), i % n)
        }
    };
    let e = |i: usize| {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        v
    };
    let mut labels: Vec<String> = (0..n).map(|g| format!("R{g}")).collect();
    for a in 0..k {
        labels.extend((0..n).map(|g| format!("M({a},{g})")));
    }
    let structure = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let (a, g) = decode(i);
                    let (b, h) = decode(j);
                    let gh = grp.mul(g, h);
                    e(match (a, b) {
                        (None, None) => r_index(d, gh),
                        (None, Some(b)) => m_index(d, act.act(g, b), gh),
                        (Some(a), _) => m_index(d, a, gh),
                    })
                })
                .collect()
        })
        .collect();
    FDAlgebra::new(field, labels, structure, e(r_index(d, grp.identity()))).expect("shapes are consistent")
}

/// The five defining relations evaluated on `ℓ_x = M_(α,g)` and `r_x = R_g`
/// for every pair `x, y`.
pub fn check_relations(a: &FDAlgebra, d: &Digroup) -> AxiomReport {
    let mut report = AxiomReport::default();
    if a.dim() != d.order() * (1 + d.halo_size()) {
        report.push(AxiomCheck::fail(
            "basis size",
            format!("dimension {} does not match the digroup", a.dim()),
        ));
        return report;
    }
    let ell = |x: Element| a.basis_vector(ell_index(d, x));
    let r = |x: Element| a.basis_vector(r_index(d, x.g));
    let elems: Vec<Element> = d.elements().collect();
    let first = |f: &dyn Fn(Element, Element) -> bool| -> Option<String> {
        elems
            .iter()
            .flat_map(|&x| elems.iter().map(move |&y| (x, y)))
            .find(|&(x, y)| !f(x, y))
            .map(|(x, y)| format!("x={x}, y={y}"))
    };
    let vd = |x, y| d.vdash(x, y).expect("in range");
    let dv = |x, y| d.dashv(x, y).expect("in range");
    report.push(AxiomCheck::from_search(
        "ℓ(x⊣y) = ℓ(x)ℓ(y)",
        first(&|x, y| a.mul(&ell(x), &ell(y)) == ell(dv(x, y))),
    ));
    report.push(AxiomCheck::from_search(
        "r(x⊢y) = r(x)r(y)",
        first(&|x, y| a.mul(&r(x), &r(y)) == r(vd(x, y))),
    ));
    report.push(AxiomCheck::from_search(
        "r(e) = 1 at bar-units",
        d.halo()
            .into_iter()
            .find(|&e| r(e) != *a.unit())
            .map(|e| format!("e={e}")),
    ));
    report.push(AxiomCheck::from_search(
        "r(x)ℓ(y) = ℓ(x⊢y)",
        first(&|x, y| a.mul(&r(x), &ell(y)) == ell(vd(x, y))),
    ));
    report.push(AxiomCheck::from_search(
        "ℓ(x)r(y) = ℓ(x⊣y)",
        first(&|x, y| a.mul(&ell(x), &r(y)) == ell(dv(x, y))),
    ));
    report
}

/// `τ_g` on `B_E` in the basis `1, ε_0, ..`: fixes 1 and sends `ε_α` to `ε_(g∙α)`.
pub fn tau_automorphism(field: Field, g: usize, action: &GAction) -> Matrix {
    let n = action.set_size() + 1;
    let mut m = Matrix::zeros(field, n, n);
    m.set(0, 0, field.one());
    for a in 0..action.set_size() {
        m.set(1 + action.act(g, a), 1 + a, field.one());
    }
    m
}

/// Whether the linear map `m` (acting on coefficient columns) is multiplicative
/// on basis pairs and fixes the unit.
pub fn is_algebra_automorphism(a: &FDAlgebra, m: &Matrix) -> bool {
    let img = |v: &Vector| m.mul_vec(v).expect("square of algebra size");
    if m.shape() != (a.dim(), a.dim()) || m.rank() < a.dim() || img(a.unit()) != *a.unit() {
        return false;
    }
    (0..a.dim()).all(|i| {
        (0..a.dim()).all(|j| img(a.product(i, j)) == a.mul(&img(&a.basis_vector(i)), &img(&a.basis_vector(j))))
    })
}

/// A left module: one matrix per basis element of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraModule {
    algebra: Arc<FDAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl AlgebraModule {
    pub fn new(algebra: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::unchecked(algebra, dim, action)?;
        if let Some(f) = m.check().failures().next() {
            return Err(Error::InvalidModule(format!(
                "{}: {}",
                f.name,
                f.counterexample.as_deref().unwrap_or("")
            )));
        }
        Ok(m)
    }

    pub fn unchecked(algebra: Arc<FDAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        for m in &action {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(algebra.field(), m.field()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "action of shape {:?} in dimension {dim}",
                    m.shape()
                )));
            }
        }
        Ok(AlgebraModule { algebra, dim, action })
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, coeffs: &[crate::exactla::Scalar]) -> Matrix {
        let field = self.algebra.field();
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (c, m) in coeffs.iter().zip(&self.action) {
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    pub fn check(&self) -> AxiomReport {
        let a = &*self.algebra;
        let n = a.dim();
        let mut report = AxiomReport::default();
        let bad = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| &self.action[i] * &self.action[j] != self.act(a.product(i, j)))
            .map(|(i, j)| format!("{}·{}", a.labels()[i], a.labels()[j]));
        report.push(AxiomCheck::from_search("action respects products", bad));
        report.push(AxiomCheck::from_search(
            "unit acts as identity",
            (!self.act(a.unit()).is_identity()).then(|| "unit".to_string()),
        ));
        report
    }
}

fn same_algebra(a: &Arc<FDAlgebra>, b: &Arc<FDAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// `R_g ↦ ρ_g`, `M_(α,g) ↦ λ_(1,α) ρ_g`. The algebra must be the enveloping
/// algebra of the representation's digroup.
pub fn rep_to_module(r: &Representation, algebra: &Arc<FDAlgebra>) -> Result<AlgebraModule> {
    let d = r.digroup();
    if algebra.dim() != d.order() * (1 + d.halo_size()) || algebra.field() != r.field() {
        return Err(Error::AlgebraMismatch);
    }
    if let Some(f) = r.check_representation().failures().next() {
        return Err(Error::NotARepresentation(f.name.clone()));
    }
    let one = d.group().identity();
    let mut action = vec![Matrix::zeros(r.field(), 0, 0); algebra.dim()];
    for g in 0..d.order() {
        let rho = r.rho(Element::new(g, 0));
        action[r_index(d, g)] = rho.clone();
        for a in 0..d.halo_size() {
            action[m_index(d, a, g)] = r.lambda(Element::new(one, a)) * rho;
        }
    }
    AlgebraModule::new(algebra.clone(), r.dim(), action)
}

/// `λ_(g,α) = M_(α,g)`, `ρ_(g,α) = R_g`.
pub fn module_to_rep(m: &AlgebraModule, d: Arc<Digroup>) -> Result<Representation> {
    if m.algebra.dim() != d.order() * (1 + d.halo_size()) {
        return Err(Error::AlgebraMismatch);
    }
    if let Some(f) = m.check().failures().next() {
        return Err(Error::InvalidModule(f.name.clone()));
    }
    let mut lambda = Vec::with_capacity(d.size());
    let mut rho = Vec::with_capacity(d.size());
    for x in d.elements() {
        lambda.push(m.action[ell_index(&d, x)].clone());
        rho.push(m.action[r_index(&d, x.g)].clone());
    }
    let field = m.algebra.field();
    Representation::new(d, field, m.dim, lambda, rho)
}

/// Ext¹ between modules over a finite-dimensional algebra, as derivations
/// modulo inner derivations.
#[derive(Clone, Debug)]
pub struct DerivationExt {
    pub dim_derivations: usize,
    pub dim_inner: usize,
    pub dim: usize,
    /// Representatives `c(e_i)` of a basis of the quotient.
    pub cocycle_basis: Vec<Vec<Matrix>>,
}

/// Solves `c(e_i e_j) = w(e_i) c(e_j) + c(e_i) q(e_j)` on basis pairs with
/// `c(1) = 0`, then quotients by `c_t(e_i) = w(e_i) t − t q(e_i)`.
pub fn derivation_ext1(q: &AlgebraModule, w: &AlgebraModule) -> Result<DerivationExt> {
    if !same_algebra(&q.algebra, &w.algebra) {
        return Err(Error::AlgebraMismatch);
    }
    let a = &*q.algebra;
    let field = a.field();
    let n = a.dim();
    let (rows, cols) = (w.dim, q.dim);
    let mut sys = FamilySystem::new(field, rows, cols, n);
    for i in 0..n {
        for j in 0..n {
            let lhs: Vec<Term> = a
                .product(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| Term::Scaled(c.clone(), k))
                .collect();
            sys.impose(&lhs, &[Term::Left(&w.action[i], j), Term::Right(i, &q.action[j])])?;
        }
    }
    let unit: Vec<Term> = a
        .unit()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| Term::Scaled(c.clone(), k))
        .collect();
    sys.impose(&unit, &[])?;
    let der = sys.solution_basis();

    let width = sys.unknowns();
    let mut inner = RowReducer::new(field, width);
    for r in 0..rows {
        for c in 0..cols {
            let mut t = Matrix::zeros(field, rows, cols);
            t.set(r, c, field.one());
            let family: Vec<Matrix> = (0..n).map(|i| &(&w.action[i] * &t) - &(&t * &q.action[i])).collect();
            inner.push(flatten_family(&family));
        }
    }
    let dim_inner = inner.rank();
    let mut cocycle_basis = Vec::new();
    for v in &der {
        if inner.push(v.clone()) {
            cocycle_basis.push(sys.unflatten(v));
        }
    }
    if inner.rank() != der.len() {
        return Err(Error::Consistency("inner derivations are not derivations".into()));
    }
    Ok(DerivationExt {
        dim_derivations: der.len(),
        dim_inner,
        dim: der.len() - dim_inner,
        cocycle_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digroup::FiniteGroup;

    const Q: Field = Field::Rational;

    fn worked_digroup() -> Arc<Digroup> {
        Arc::new(Digroup::trivial_action(FiniteGroup::cyclic(2).unwrap(), 2).unwrap())
    }

    fn worked_rep() -> Representation {
        let p = [
            Matrix::from_i64(Q, &[&[1, 0], &[0, 0]]),
            Matrix::from_i64(Q, &[&[1, 0], &[1, 0]]),
        ];
        let rho = [Matrix::identity(Q, 2), Matrix::from_i64(Q, &[&[-1, 0], &[0, -1]])];
        Representation::from_factored(worked_digroup(), Q, 2, &p, &rho).unwrap()
    }

    #[test]
    fn enveloping_algebra_dimensions() {
        let d1 = Digroup::trivial_action(FiniteGroup::cyclic(1).unwrap(), 1).unwrap();
        let a1 = build_enveloping_algebra(&d1, Q);
        assert_eq!(a1.dim(), 2);
        assert_eq!(a1.product(1, 1), &a1.basis_vector(1));
        let a = build_enveloping_algebra(&worked_digroup(), Q);
        assert_eq!(a.dim(), 6);
        assert_eq!(a.unit(), &a.basis_vector(0));
        assert!(a.check().all_passed());
        let report = check_relations(&a, &worked_digroup());
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn enveloping_algebra_with_nontrivial_action() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let d = Digroup::new(GAction::from_permutation_hom(s3.clone(), 3, &(0..6).collect::<Vec<_>>()).unwrap());
        let a = build_enveloping_algebra(&d, Q);
        assert_eq!(a.dim(), 24);
        assert!(a.check().all_passed());
        assert!(check_relations(&a, &d).all_passed());
    }

    #[test]
    fn relation_fault_is_reported() {
        let d = worked_digroup();
        let mut a = build_enveloping_algebra(&d, Q);
        // M(1,0)·M(0,0) should be M(1,0)
        let wrong = a.basis_vector(m_index(&d, 0, 0));
        a.set_product(m_index(&d, 1, 0), m_index(&d, 0, 0), wrong);
        let report = check_relations(&a, &d);
        let c = report.get("ℓ(x⊣y) = ℓ(x)ℓ(y)").unwrap();
        assert!(!c.passed);
    }

    #[test]
    fn module_round_trip() {
        let r = worked_rep();
        let a = Arc::new(build_enveloping_algebra(r.digroup(), Q));
        let m = rep_to_module(&r, &a).unwrap();
        assert_eq!(
            *m.action(m_index(r.digroup(), 1, 0)),
            Matrix::from_i64(Q, &[&[1, 0], &[1, 0]])
        );
        assert_eq!(
            *m.action(r_index(r.digroup(), 1)),
            Matrix::from_i64(Q, &[&[-1, 0], &[0, -1]])
        );
        assert_eq!(module_to_rep(&m, r.digroup().clone()).unwrap(), r);
    }

    #[test]
    fn identity_module_is_trivial_rep() {
        let d = Arc::new(Digroup::trivial_action(FiniteGroup::cyclic(1).unwrap(), 1).unwrap());
        let a = Arc::new(build_enveloping_algebra(&d, Q));
        let m = AlgebraModule::new(a.clone(), 1, vec![Matrix::identity(Q, 1); 2]).unwrap();
        assert_eq!(module_to_rep(&m, d.clone()).unwrap(), Representation::trivial(d, Q, 1));
    }

    #[test]
    fn tau_is_an_action_by_automorphisms() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let swap = GAction::new(c2.clone(), 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let b = build_halo_algebra(Q, 2).unwrap();
        let ts = tau_automorphism(Q, 1, &swap);
        assert_eq!(ts, Matrix::from_i64(Q, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert!((&ts * &ts).is_identity());
        assert!(is_algebra_automorphism(&b, &ts));
        let triv = GAction::trivial(c2, 2).unwrap();
        assert!(tau_automorphism(Q, 1, &triv).is_identity());
    }

    #[test]
    fn derivations_over_the_halo_algebra() {
        let b = Arc::new(build_halo_algebra(Q, 2).unwrap());
        let one = AlgebraModule::new(b.clone(), 1, vec![Matrix::identity(Q, 1); 3]).unwrap();
        assert_eq!(derivation_ext1(&one, &one).unwrap().dim, 0);
    }

    #[test]
    fn derivations_for_the_worked_example() {
        let r = worked_rep();
        let basis = vec![vec![Q.zero(), Q.one()]];
        let sq = r.sub_quotient(&basis).unwrap();
        let a = Arc::new(build_enveloping_algebra(r.digroup(), Q));
        let qm = rep_to_module(&sq.quotient, &a).unwrap();
        let wm = rep_to_module(&sq.sub, &a).unwrap();
        let ext = derivation_ext1(&qm, &wm).unwrap();
        assert_eq!(ext.dim, 1);
        assert_eq!(ext.cocycle_basis.len(), 1);
        let other = Arc::new(build_halo_algebra(Q, 2).unwrap());
        let foreign = AlgebraModule::new(other, 1, vec![Matrix::identity(Q, 1); 3]).unwrap();
        assert!(matches!(derivation_ext1(&qm, &foreign), Err(Error::AlgebraMismatch)));
    }
}
