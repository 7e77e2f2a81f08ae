//! The halo-algebra side: `B_E`-linear maps and extensions between the
//! underlying modules of semilinear objects, the `G`-action on them, the
//! induction functor `L`, and the comparison of Ext¹ over the digroup with
//! the `G`-invariant part of Ext¹ over `B_E`.

use std::sync::Arc;

use serde::Serialize;

use crate::digroup::Digroup;
use crate::error::{Error, Result};
use crate::exactla::{subspace, Field, Matrix, RowReducer, Vector};
use crate::ext::{self, extension_from_cocycle, is_split};
use crate::linsys::{flatten_family, unflatten_family, FamilySystem, Term};
use crate::report::{AxiomCheck, AxiomReport};
use crate::reps::{Representation, SemilinearObject};

/// `Hom_{B_E}(Q, W)` with the matrices of the conjugation action of `G` in
/// the coordinates of `basis`.
#[derive(Clone, Debug)]
pub struct HomSpaceWithAction {
    pub basis: Vec<Matrix>,
    pub g_action: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct BEExtResult {
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_ext: usize,
    /// Representative families `η_α` of a basis of Z/B.
    pub eta_basis: Vec<Vec<Matrix>>,
    /// Action of each `g` on classes, in the coordinates of `eta_basis`.
    pub g_action_on_classes: Vec<Matrix>,
}

impl BEExtResult {
    pub fn invariant_dim(&self) -> usize {
        fixed_space(
            &self.g_action_on_classes,
            self.dim_ext,
            field_of(&self.g_action_on_classes),
        )
        .len()
    }
}

fn field_of(ms: &[Matrix]) -> Field {
    ms.first().map(Matrix::field).unwrap_or(Field::Rational)
}

fn compatible(q: &SemilinearObject, w: &SemilinearObject) -> Result<()> {
    if q.digroup().halo_size() != w.digroup().halo_size() {
        return Err(Error::Dimension(format!(
            "halo sizes {} and {} differ",
            q.digroup().halo_size(),
            w.digroup().halo_size()
        )));
    }
    if q.field() != w.field() {
        return Err(Error::FieldMismatch(q.field(), w.field()));
    }
    Ok(())
}

/// Canonical basis of `{f : f ε^Q_α = ε^W_α f}`.
pub fn hom_be(q: &SemilinearObject, w: &SemilinearObject) -> Result<Vec<Matrix>> {
    compatible(q, w)?;
    let mut sys = FamilySystem::new(q.field(), w.dim(), q.dim(), 1);
    for (eq, ew) in q.epsilon().iter().zip(w.epsilon()) {
        sys.impose(&[Term::Right(0, eq)], &[Term::Left(ew, 0)])?;
    }
    Ok(sys
        .solution_basis()
        .iter()
        .map(|v| sys.unflatten(v).remove(0))
        .collect())
}

/// Coordinates of `x` in the span of `basis` (flattened), or an error when
/// `x` leaves the span.
fn coordinates_in(field: Field, basis: &[Vector], x: &Vector, what: &str) -> Result<Vector> {
    if basis.is_empty() {
        return if x.iter().all(|s| s.is_zero()) {
            Ok(Vec::new())
        } else {
            Err(Error::Consistency(format!("{what} leaves the zero space")))
        };
    }
    subspace::coordinates(field, x.len(), basis, x)?
        .ok_or_else(|| Error::Consistency(format!("{what} leaves the span")))
}

fn inverses(t: &[Matrix]) -> Result<Vec<Matrix>> {
    t.iter()
        .map(|m| {
            m.inverse()
                .ok_or_else(|| Error::InvalidSemilinear("t(g) is singular".into()))
        })
        .collect()
}

/// Checks `A_1 = I` and `A_g A_h = A_gh` against the group of `d`.
fn is_group_action(d: &Digroup, mats: &[Matrix]) -> bool {
    let grp = d.group();
    mats[grp.identity()].is_identity()
        && (0..grp.order()).all(|g| (0..grp.order()).all(|h| &mats[g] * &mats[h] == mats[grp.mul(g, h)]))
}

/// `g·f = t^W_g f (t^Q_g)⁻¹` in the coordinates of `basis`.
pub fn g_action_on_hom(basis: &[Matrix], q: &SemilinearObject, w: &SemilinearObject) -> Result<HomSpaceWithAction> {
    compatible(q, w)?;
    let field = q.field();
    let flat: Vec<Vector> = basis.iter().map(Matrix::flatten).collect();
    let tq_inv = inverses(q.t())?;
    let mut g_action = Vec::with_capacity(q.t().len());
    for (g, tw) in w.t().iter().enumerate() {
        let cols = basis
            .iter()
            .map(|f| {
                let gf = &(tw * f) * &tq_inv[g];
                let linear = q.epsilon().iter().zip(w.epsilon()).all(|(eq, ew)| &gf * eq == ew * &gf);
                if !linear {
                    return Err(Error::Consistency(format!("g·f is not B_E-linear at g={g}")));
                }
                coordinates_in(field, &flat, &gf.flatten(), "g·f")
            })
            .collect::<Result<Vec<_>>>()?;
        g_action.push(Matrix::from_columns(field, basis.len(), &cols)?);
    }
    if !is_group_action(q.digroup(), &g_action) {
        return Err(Error::Consistency("conjugation on Hom is not a group action".into()));
    }
    Ok(HomSpaceWithAction {
        basis: basis.to_vec(),
        g_action,
    })
}

/// Canonical basis (in coordinates) of the common fixed space of `mats`.
fn fixed_space(mats: &[Matrix], dim: usize, field: Field) -> Vec<Vector> {
    if dim == 0 {
        return Vec::new();
    }
    let mut red = RowReducer::new(field, dim);
    for m in mats {
        let diff = m - &Matrix::identity(field, dim);
        for r in 0..dim {
            red.push(diff.row(r).to_vec());
        }
    }
    subspace::span_basis(field, dim, &red.kernel_basis()).expect("lengths agree")
}

/// The `G`-fixed maps, as matrices.
pub fn invariants(space: &HomSpaceWithAction) -> Vec<Matrix> {
    let Some(first) = space.basis.first() else {
        return Vec::new();
    };
    let field = first.field();
    fixed_space(&space.g_action, space.basis.len(), field)
        .iter()
        .map(|c| {
            c.iter()
                .zip(&space.basis)
                .filter(|(a, _)| !a.is_zero())
                .fold(Matrix::zeros(field, first.rows(), first.cols()), |acc, (a, f)| {
                    &acc + &f.scale(a)
                })
        })
        .collect()
}

fn eta_is_cocycle(eta: &[Matrix], q: &SemilinearObject, w: &SemilinearObject) -> bool {
    let (eq, ew) = (q.epsilon(), w.epsilon());
    (0..eta.len()).all(|a| (0..eta.len()).all(|b| &(&ew[a] * &eta[b]) + &(&eta[a] * &eq[b]) == eta[a]))
}

/// Extensions of the underlying `B_E`-modules: `η` with
/// `ε^W_α η_β + η_α ε^Q_β = η_α`, modulo `η_α = ε^W_α t − t ε^Q_α`, plus the
/// induced action `(g·η)_α = t^W_g η_(g⁻¹∙α) (t^Q_g)⁻¹` on classes.
pub fn ext1_be(q: &SemilinearObject, w: &SemilinearObject) -> Result<BEExtResult> {
    compatible(q, w)?;
    let field = q.field();
    let (wd, qd) = (w.dim(), q.dim());
    let k = q.epsilon().len();
    let (eq, ew) = (q.epsilon(), w.epsilon());
    let mut sys = FamilySystem::new(field, wd, qd, k);
    let one = field.one();
    for (a, ew_a) in ew.iter().enumerate() {
        for (b, eq_b) in eq.iter().enumerate() {
            sys.impose(
                &[Term::Scaled(one.clone(), a)],
                &[Term::Left(ew_a, b), Term::Right(a, eq_b)],
            )?;
        }
    }
    let z = sys.solution_basis();
    let width = sys.unknowns();

    let mut b_red = RowReducer::new(field, width);
    for r in 0..wd {
        for c in 0..qd {
            let mut t = Matrix::zeros(field, wd, qd);
            t.set(r, c, field.one());
            let eta: Vec<Matrix> = (0..k).map(|a| &(&ew[a] * &t) - &(&t * &eq[a])).collect();
            b_red.push(flatten_family(&eta));
        }
    }
    let b_basis: Vec<Vector> = b_red.rows().to_vec();
    let dim_b = b_basis.len();
    let mut red = b_red.clone();
    let mut reps: Vec<Vector> = Vec::new();
    for v in &z {
        if red.push(v.clone()) {
            reps.push(v.clone());
        }
    }
    if red.rank() != z.len() {
        return Err(Error::Consistency("a B_E coboundary is not a cocycle".into()));
    }

    let d = q.digroup();
    let grp = d.group();
    let act = d.action();
    let tq_inv = inverses(q.t())?;
    let twist = |g: usize, v: &Vector| -> Vec<Matrix> {
        let eta = unflatten_family(field, wd, qd, k, v);
        let gi = grp.inv(g);
        (0..k)
            .map(|a| &(&w.t()[g] * &eta[act.act(gi, a)]) * &tq_inv[g])
            .collect()
    };
    // columns: B basis first, then class representatives
    let mut all = b_basis.clone();
    all.extend(reps.iter().cloned());
    let dim_ext = reps.len();
    let mut g_action_on_classes = Vec::with_capacity(grp.order());
    for g in 0..grp.order() {
        for v in &b_basis {
            let moved = flatten_family(&twist(g, v));
            if !b_red.contains(&moved) {
                return Err(Error::Consistency(format!("g={g} does not preserve B")));
            }
        }
        let mut cols = Vec::with_capacity(dim_ext);
        for v in &reps {
            let moved = twist(g, v);
            if !eta_is_cocycle(&moved, q, w) {
                return Err(Error::Consistency(format!("g={g} does not preserve Z")));
            }
            let c = coordinates_in(field, &all, &flatten_family(&moved), "g·η")?;
            cols.push(c[dim_b..].to_vec());
        }
        g_action_on_classes.push(Matrix::from_columns(field, dim_ext, &cols)?);
    }
    if !is_group_action(d, &g_action_on_classes) {
        return Err(Error::Consistency(
            "action on B_E extension classes is not a group action".into(),
        ));
    }
    Ok(BEExtResult {
        dim_z: z.len(),
        dim_b,
        dim_ext,
        eta_basis: reps.iter().map(|v| unflatten_family(field, wd, qd, k, v)).collect(),
        g_action_on_classes,
    })
}

/// Dimensions compared by the collapse check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    #[serde(rename = "hom_BE_dim")]
    pub hom_be_dim: usize,
    pub invariants_dim: usize,
    pub hom_rep_dim: usize,
    #[serde(rename = "ext1_BE_dim")]
    pub ext1_be_dim: usize,
    #[serde(rename = "ext1_BE_invariant_dim")]
    pub ext1_be_invariant_dim: usize,
    pub ext1_rep_dim: usize,
    /// `None` unless the invariant part vanishes; then whether every
    /// extension built from a cocycle splits.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_criterion: Option<bool>,
    pub collapse_ok: bool,
}

impl CollapseReport {
    pub fn hom_ok(&self) -> bool {
        self.invariants_dim == self.hom_rep_dim
    }
}

/// Compares Ext¹ over the digroup with the `G`-invariants of Ext¹ over `B_E`,
/// and Hom over the digroup with the `G`-invariant `B_E`-linear maps.
pub fn verify_collapse(q: &Representation, w: &Representation) -> Result<CollapseReport> {
    ext::check_maschke(q.field(), q.digroup().order())?;
    let (qs, ws) = (q.to_semilinear()?, w.to_semilinear()?);
    let hom = hom_be(&qs, &ws)?;
    let space = g_action_on_hom(&hom, &qs, &ws)?;
    let inv = invariants(&space);
    let hom_rep = q.hom_rep(w)?;
    let be = ext1_be(&qs, &ws)?;
    let be_inv = be.invariant_dim();
    let rep = ext::ext1_dim(q, w)?;
    let splitting_criterion = if be_inv == 0 {
        let mut ok = true;
        for theta in ext::cocycle_space(q, w)? {
            ok &= is_split(&extension_from_cocycle(&theta, q, w)?)?.split;
        }
        Some(ok)
    } else {
        None
    };
    Ok(CollapseReport {
        hom_be_dim: hom.len(),
        invariants_dim: inv.len(),
        hom_rep_dim: hom_rep.len(),
        ext1_be_dim: be.dim_ext,
        ext1_be_invariant_dim: be_inv,
        ext1_rep_dim: rep.dim_ext,
        collapse_ok: be_inv == rep.dim_ext && splitting_criterion != Some(false),
        splitting_criterion,
    })
}

/// A module over the halo algebra with no group data: `ε_α ε_β = ε_α`.
#[derive(Clone, Debug, PartialEq)]
pub struct BandModule {
    field: Field,
    dim: usize,
    epsilon: Vec<Matrix>,
}

impl BandModule {
    pub fn new(field: Field, dim: usize, epsilon: Vec<Matrix>) -> Result<Self> {
        if epsilon.is_empty() {
            return Err(Error::Dimension("halo must be nonempty".into()));
        }
        for e in &epsilon {
            if e.field() != field {
                return Err(Error::FieldMismatch(field, e.field()));
            }
            if e.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "ε of shape {:?} in dimension {dim}",
                    e.shape()
                )));
            }
        }
        for (a, ea) in epsilon.iter().enumerate() {
            for (b, eb) in epsilon.iter().enumerate() {
                if ea * eb != *ea {
                    return Err(Error::InvalidModule(format!("ε{a}ε{b} ≠ ε{a}")));
                }
            }
        }
        Ok(BandModule { field, dim, epsilon })
    }

    /// The underlying module of a semilinear object.
    pub fn underlying(m: &SemilinearObject) -> Self {
        BandModule {
            field: m.field(),
            dim: m.dim(),
            epsilon: m.epsilon().to_vec(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> &[Matrix] {
        &self.epsilon
    }
}

/// `L(M) = ⊕_g M_g`: `ε_α` acts on block `g` as `ε^M_(g⁻¹∙α)` and `t_h`
/// carries block `g` to block `hg`.
pub fn induction_l(m: &BandModule, d: Arc<Digroup>) -> Result<SemilinearObject> {
    if m.epsilon.len() != d.halo_size() {
        return Err(Error::Dimension("module and digroup have different halo sizes".into()));
    }
    let grp = d.group();
    let n = grp.order();
    let k = m.dim;
    let field = m.field;
    let epsilon = (0..d.halo_size())
        .map(|a| {
            let mut e = Matrix::zeros(field, n * k, n * k);
            for g in 0..n {
                let src = &m.epsilon[d.action().act(grp.inv(g), a)];
                e.paste(g * k, g * k, src);
            }
            e
        })
        .collect();
    let id = Matrix::identity(field, k);
    let t = (0..n)
        .map(|h| {
            let mut p = Matrix::zeros(field, n * k, n * k);
            for g in 0..n {
                p.paste(grp.mul(h, g) * k, g * k, &id);
            }
            p
        })
        .collect();
    SemilinearObject::new(d, field, n * k, epsilon, t)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    /// `dim Hom(L(M), N)` in the semilinear category.
    pub left_dim: usize,
    /// `dim Hom_{B_E}(M, N)`.
    pub right_dim: usize,
    pub checks: AxiomReport,
}

impl AdjunctionReport {
    pub fn passed(&self) -> bool {
        self.left_dim == self.right_dim && self.checks.all_passed()
    }
}

/// Compares `Hom(L(M), N)` with `Hom_{B_E}(M, N)` and checks that
/// `Φ ↦ Φ|_(block 1)` and `f ↦ (m_g ↦ t_g f(m))` are mutually inverse.
pub fn verify_adjunction(m: &BandModule, n: &SemilinearObject) -> Result<AdjunctionReport> {
    if m.field != n.field() {
        return Err(Error::FieldMismatch(m.field, n.field()));
    }
    let d = n.digroup().clone();
    let lm = induction_l(m, d.clone())?;
    let field = m.field;
    let grp = d.group();
    let (k, nd) = (m.dim, n.dim());

    let mut left = FamilySystem::new(field, nd, lm.dim(), 1);
    for (el, en) in lm.epsilon().iter().zip(n.epsilon()) {
        left.impose(&[Term::Right(0, el)], &[Term::Left(en, 0)])?;
    }
    for (tl, tn) in lm.t().iter().zip(n.t()) {
        left.impose(&[Term::Right(0, tl)], &[Term::Left(tn, 0)])?;
    }
    let left_basis: Vec<Matrix> = left
        .solution_basis()
        .iter()
        .map(|v| left.unflatten(v).remove(0))
        .collect();

    let mut right = FamilySystem::new(field, nd, k, 1);
    for (em, en) in m.epsilon.iter().zip(n.epsilon()) {
        right.impose(&[Term::Right(0, em)], &[Term::Left(en, 0)])?;
    }
    let right_basis: Vec<Matrix> = right
        .solution_basis()
        .iter()
        .map(|v| right.unflatten(v).remove(0))
        .collect();

    let one = grp.identity();
    let restrict = |phi: &Matrix| phi.submatrix(0, nd, one * k, (one + 1) * k);
    let extend = |f: &Matrix| {
        let mut out = Matrix::zeros(field, nd, lm.dim());
        for g in 0..grp.order() {
            out.paste(0, g * k, &(&n.t()[g] * f));
        }
        out
    };
    let is_left = |phi: &Matrix| {
        lm.epsilon()
            .iter()
            .zip(n.epsilon())
            .all(|(el, en)| phi * el == en * phi)
            && lm.t().iter().zip(n.t()).all(|(tl, tn)| phi * tl == tn * phi)
    };
    let is_right = |f: &Matrix| m.epsilon.iter().zip(n.epsilon()).all(|(em, en)| f * em == en * f);

    let mut checks = AxiomReport::default();
    checks.push(AxiomCheck::from_search(
        "restriction lands in Hom_B(M, N) and extends back",
        left_basis
            .iter()
            .position(|phi| {
                let f = restrict(phi);
                !(is_right(&f) && extend(&f) == *phi)
            })
            .map(|i| format!("left basis member {i}")),
    ));
    checks.push(AxiomCheck::from_search(
        "extension lands in Hom(L(M), N) and restricts back",
        right_basis
            .iter()
            .position(|f| {
                let phi = extend(f);
                !(is_left(&phi) && restrict(&phi) == *f)
            })
            .map(|i| format!("right basis member {i}")),
    ));
    Ok(AdjunctionReport {
        left_dim: left_basis.len(),
        right_dim: right_basis.len(),
        checks,
    })
}
