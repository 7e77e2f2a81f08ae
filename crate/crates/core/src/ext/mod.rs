//! Short exact sequences of representations, equivariant sections by group
//! averaging, and Ext¹ as cocycles modulo coboundaries.
//!
//! With `V ≅ W ⊕ Q` through `[ι | s]` for a ρ-equivariant section `s`, every
//! `ρ_x` is block diagonal and every `λ_x` is block upper triangular; the
//! upper-right blocks `θ_x` form a cocycle. Changing `s` to `s + ιt` changes
//! `θ` by `δt`, `(δt)_x = λ^W_x t − t λ^Q_x`.

use crate::digroup::Element;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, RowReducer, Vector};
use crate::linsys::{flatten_family, linear_map_matrix, FamilySystem, Term};
use crate::report::{AxiomCheck, AxiomReport};
use crate::reps::Representation;

/// `0 → W →ι V →π Q → 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    sub: Representation,
    mid: Representation,
    quotient: Representation,
    iota: Matrix,
    pi: Matrix,
}

impl ShortExactSeq {
    /// Checks exactness and that `ι`, `π` intertwine both operator families.
    pub fn new(
        sub: Representation,
        mid: Representation,
        quotient: Representation,
        iota: Matrix,
        pi: Matrix,
    ) -> Result<Self> {
        if !sub.same_digroup(&mid) || !quotient.same_digroup(&mid) {
            return Err(Error::DigroupMismatch);
        }
        let (w, v, q) = (sub.dim(), mid.dim(), quotient.dim());
        if iota.shape() != (v, w) || pi.shape() != (q, v) {
            return Err(Error::Dimension(format!(
                "ι is {:?} and π is {:?} for dimensions W={w}, V={v}, Q={q}",
                iota.shape(),
                pi.shape()
            )));
        }
        if iota.rank() != w {
            return Err(Error::NotExact("ι is not injective".into()));
        }
        if pi.rank() != q {
            return Err(Error::NotExact("π is not surjective".into()));
        }
        if !(&pi * &iota).is_zero() || w + q != v {
            return Err(Error::NotExact("image of ι is not the kernel of π".into()));
        }
        for i in 0..mid.digroup().size() {
            let ok = &mid.lambdas()[i] * &iota == &iota * &sub.lambdas()[i]
                && &mid.rhos()[i] * &iota == &iota * &sub.rhos()[i]
                && &pi * &mid.lambdas()[i] == &quotient.lambdas()[i] * &pi
                && &pi * &mid.rhos()[i] == &quotient.rhos()[i] * &pi;
            if !ok {
                return Err(Error::NotExact(format!(
                    "ι or π fails to intertwine at {}",
                    mid.digroup().element(i)
                )));
            }
        }
        Ok(ShortExactSeq {
            sub,
            mid,
            quotient,
            iota,
            pi,
        })
    }

    /// The sequence cut out of `v` by the stable subspace `span(basis)`.
    pub fn from_subspace(v: &Representation, basis: &[Vector]) -> Result<Self> {
        let sq = v.sub_quotient(basis)?;
        Self::new(sq.sub, v.clone(), sq.quotient, sq.iota, sq.pi)
    }

    pub fn sub(&self) -> &Representation {
        &self.sub
    }

    pub fn mid(&self) -> &Representation {
        &self.mid
    }

    pub fn quotient(&self) -> &Representation {
        &self.quotient
    }

    pub fn iota(&self) -> &Matrix {
        &self.iota
    }

    pub fn pi(&self) -> &Matrix {
        &self.pi
    }

    pub fn field(&self) -> Field {
        self.mid.field()
    }
}

/// `θ_x ∈ Hom(Q, W)` for every element `x`, by element index.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleFamily {
    pub theta: Vec<Matrix>,
}

impl CocycleFamily {
    pub fn new(theta: Vec<Matrix>) -> Self {
        CocycleFamily { theta }
    }

    pub fn zero(q: &Representation, w: &Representation) -> Self {
        let z = Matrix::zeros(q.field(), w.dim(), q.dim());
        CocycleFamily::new(vec![z; q.digroup().size()])
    }

    pub fn at(&self, i: usize) -> &Matrix {
        &self.theta[i]
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(Matrix::is_zero)
    }

    pub fn flatten(&self) -> Vector {
        flatten_family(&self.theta)
    }

    pub fn add(&self, other: &CocycleFamily) -> CocycleFamily {
        CocycleFamily::new(self.theta.iter().zip(&other.theta).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &CocycleFamily) -> CocycleFamily {
        CocycleFamily::new(self.theta.iter().zip(&other.theta).map(|(a, b)| a - b).collect())
    }

    fn check_shape(&self, q: &Representation, w: &Representation) -> Result<()> {
        if !q.same_digroup(w) {
            return Err(Error::DigroupMismatch);
        }
        if self.theta.len() != q.digroup().size() || self.theta.iter().any(|m| m.shape() != (w.dim(), q.dim())) {
            return Err(Error::Dimension("cocycle family has the wrong shape".into()));
        }
        Ok(())
    }

    /// The three cocycle identities, exhaustively over pairs.
    pub fn check(&self, q: &Representation, w: &Representation) -> Result<AxiomReport> {
        self.check_shape(q, w)?;
        let d = q.digroup();
        let n = d.size();
        let t = &self.theta;
        let first = |f: &dyn Fn(usize, usize) -> bool| -> Option<String> {
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| !f(x, y))
                .map(|(x, y)| format!("x={}, y={}", d.element(x), d.element(y)))
        };
        let (lw, rw, lq, rq) = (w.lambdas(), w.rhos(), q.lambdas(), q.rhos());
        let mut report = AxiomReport::default();
        report.push(AxiomCheck::from_search(
            "θ(x⊣y) = λW(x)θ(y) + θ(x)λQ(y)",
            first(&|x, y| t[d.dashv_idx(x, y)] == &(&lw[x] * &t[y]) + &(&t[x] * &lq[y])),
        ));
        report.push(AxiomCheck::from_search(
            "θ(x⊢y) = ρW(x)θ(y)",
            first(&|x, y| t[d.vdash_idx(x, y)] == &rw[x] * &t[y]),
        ));
        report.push(AxiomCheck::from_search(
            "θ(x⊣y) = θ(x)ρQ(y)",
            first(&|x, y| t[d.dashv_idx(x, y)] == &t[x] * &rq[y]),
        ));
        Ok(report)
    }

    pub fn is_cocycle(&self, q: &Representation, w: &Representation) -> Result<bool> {
        Ok(self.check(q, w)?.all_passed())
    }
}

#[derive(Clone, Debug)]
pub struct Ext1Result {
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_ext: usize,
    /// Cocycles whose classes form a basis of Z¹/B¹.
    pub class_basis: Vec<CocycleFamily>,
}

/// Errors unless `|G|` is invertible in the field.
pub fn check_maschke(field: Field, group_order: usize) -> Result<()> {
    if field.is_unit_integer(group_order as u64) {
        Ok(())
    } else {
        Err(Error::MaschkeHypothesis {
            characteristic: field.characteristic(),
            order: group_order,
        })
    }
}

/// Some linear right inverse of `π` (free coordinates set to zero).
pub fn linear_section(ses: &ShortExactSeq) -> Result<Matrix> {
    let q = ses.quotient.dim();
    ses.pi.solve(&Matrix::identity(ses.field(), q))?.ok_or(Error::NoSection)
}

/// A ρ-equivariant section obtained by averaging the default linear section.
pub fn average_section(ses: &ShortExactSeq) -> Result<Matrix> {
    check_maschke(ses.field(), ses.mid.digroup().order())?;
    let s0 = linear_section(ses)?;
    average_section_from(ses, &s0)
}

/// `(1/|G|) Σ_g ρ^V_g s₀ (ρ^Q_g)⁻¹`, checked to be a ρ-equivariant section.
pub fn average_section_from(ses: &ShortExactSeq, s0: &Matrix) -> Result<Matrix> {
    let field = ses.field();
    let d = ses.mid.digroup();
    let order = d.order();
    check_maschke(field, order)?;
    let (v, q) = (ses.mid.dim(), ses.quotient.dim());
    if s0.shape() != (v, q) {
        return Err(Error::Dimension(format!("section must be {v}x{q}")));
    }
    if !(&ses.pi * s0).is_identity() && q > 0 {
        return Err(Error::NoSection);
    }
    let mut acc = Matrix::zeros(field, v, q);
    for g in 0..order {
        let x = Element::new(g, 0);
        let rq_inv = ses
            .quotient
            .rho(x)
            .inverse()
            .ok_or(Error::NotARepresentation("singular ρ".into()))?;
        acc = &acc + &(&(ses.mid.rho(x) * s0) * &rq_inv);
    }
    let s = acc.scale(&field.from_i64(order as i64).inv().expect("order is a unit"));
    if q > 0 && !(&ses.pi * &s).is_identity() {
        return Err(Error::Consistency("averaged map is not a section".into()));
    }
    for i in 0..d.size() {
        if &ses.mid.rhos()[i] * &s != &s * &ses.quotient.rhos()[i] {
            return Err(Error::Consistency(format!(
                "averaged section is not equivariant at {}",
                d.element(i)
            )));
        }
    }
    Ok(s)
}

/// Splits every operator along `V ≅ W ⊕ Q` given by `[ι | sec]` and returns
/// the upper-right blocks of the `λ_x`.
pub fn block_decompose(ses: &ShortExactSeq, sec: &Matrix) -> Result<(CocycleFamily, AxiomReport)> {
    let (w, v, q) = (ses.sub.dim(), ses.mid.dim(), ses.quotient.dim());
    if sec.shape() != (v, q) {
        return Err(Error::Dimension(format!("section must be {v}x{q}")));
    }
    let t = Matrix::hstack(ses.field(), v, &[&ses.iota, sec])?;
    let t_inv = t.inverse().ok_or(Error::NoSection)?;
    let d = ses.mid.digroup();
    let mut theta = Vec::with_capacity(d.size());
    let mut rho_diag = None;
    let mut lambda_tri = None;
    for i in 0..d.size() {
        let x = d.element(i);
        let r = &(&t_inv * &ses.mid.rhos()[i]) * &t;
        let rho_ok = r.submatrix(0, w, w, v).is_zero()
            && r.submatrix(w, v, 0, w).is_zero()
            && r.submatrix(0, w, 0, w) == ses.sub.rhos()[i]
            && r.submatrix(w, v, w, v) == ses.quotient.rhos()[i];
        if !rho_ok {
            rho_diag.get_or_insert_with(|| format!("x={x}"));
            if !r.submatrix(w, v, 0, w).is_zero() || !r.submatrix(0, w, w, v).is_zero() {
                return Err(Error::NotEquivariant(format!("ρ{x} is not block diagonal")));
            }
        }
        let l = &(&t_inv * &ses.mid.lambdas()[i]) * &t;
        let lambda_ok = l.submatrix(w, v, 0, w).is_zero()
            && l.submatrix(0, w, 0, w) == ses.sub.lambdas()[i]
            && l.submatrix(w, v, w, v) == ses.quotient.lambdas()[i];
        if !lambda_ok {
            lambda_tri.get_or_insert_with(|| format!("x={x}"));
        }
        theta.push(l.submatrix(0, w, w, v));
    }
    let family = CocycleFamily::new(theta);
    let mut report = AxiomReport::default();
    report.push(AxiomCheck::from_search("ρ block diagonal", rho_diag));
    report.push(AxiomCheck::from_search("λ block upper triangular", lambda_tri));
    report.extend(family.check(&ses.quotient, &ses.sub)?);
    Ok((family, report))
}

/// The cocycle of a sequence with respect to its averaged section.
pub fn cocycle_of_extension(ses: &ShortExactSeq) -> Result<CocycleFamily> {
    let s = average_section(ses)?;
    Ok(block_decompose(ses, &s)?.0)
}

fn same_setting(q: &Representation, w: &Representation) -> Result<()> {
    if !q.same_digroup(w) {
        return Err(Error::DigroupMismatch);
    }
    if q.field() != w.field() {
        return Err(Error::FieldMismatch(q.field(), w.field()));
    }
    Ok(())
}

/// Canonical basis of Z¹(Q, W): all three identities over all pairs, on the
/// full family `θ_x`.
pub fn cocycle_space(q: &Representation, w: &Representation) -> Result<Vec<CocycleFamily>> {
    same_setting(q, w)?;
    let d = q.digroup();
    let n = d.size();
    let mut sys = FamilySystem::new(q.field(), w.dim(), q.dim(), n);
    let one = q.field().one();
    for x in 0..n {
        for y in 0..n {
            let xy_r = d.dashv_idx(x, y);
            let xy_l = d.vdash_idx(x, y);
            sys.impose(
                &[Term::Scaled(one.clone(), xy_r)],
                &[Term::Left(&w.lambdas()[x], y), Term::Right(x, &q.lambdas()[y])],
            )?;
            sys.impose(&[Term::Scaled(one.clone(), xy_l)], &[Term::Left(&w.rhos()[x], y)])?;
            sys.impose(&[Term::Scaled(one.clone(), xy_r)], &[Term::Right(x, &q.rhos()[y])])?;
        }
    }
    Ok(sys
        .solution_basis()
        .iter()
        .map(|v| CocycleFamily::new(sys.unflatten(v)))
        .collect())
}

/// Canonical basis of `{t : ρ^W_g t = t ρ^Q_g for all g}`.
pub fn hom_rho(q: &Representation, w: &Representation) -> Result<Vec<Matrix>> {
    same_setting(q, w)?;
    let d = q.digroup();
    let mut sys = FamilySystem::new(q.field(), w.dim(), q.dim(), 1);
    for g in 0..d.order() {
        let x = Element::new(g, 0);
        sys.impose(&[Term::Left(w.rho(x), 0)], &[Term::Right(0, q.rho(x))])?;
    }
    Ok(sys
        .solution_basis()
        .iter()
        .map(|v| sys.unflatten(v).remove(0))
        .collect())
}

fn is_rho_equivariant(t: &Matrix, q: &Representation, w: &Representation) -> bool {
    q.rhos().iter().zip(w.rhos()).all(|(rq, rw)| rw * t == t * rq)
}

fn coboundary_unchecked(t: &Matrix, q: &Representation, w: &Representation) -> CocycleFamily {
    CocycleFamily::new(
        q.lambdas()
            .iter()
            .zip(w.lambdas())
            .map(|(lq, lw)| &(lw * t) - &(t * lq))
            .collect(),
    )
}

/// `(δt)_x = λ^W_x t − t λ^Q_x` for a ρ-intertwiner `t`.
pub fn coboundary(t: &Matrix, q: &Representation, w: &Representation) -> Result<CocycleFamily> {
    same_setting(q, w)?;
    if t.shape() != (w.dim(), q.dim()) {
        return Err(Error::Dimension(format!("t must be {}x{}", w.dim(), q.dim())));
    }
    if !is_rho_equivariant(t, q, w) {
        return Err(Error::NotRhoEquivariant);
    }
    Ok(coboundary_unchecked(t, q, w))
}

/// Some ρ-intertwiner `t` with `δt = θ`, if one exists.
pub fn solve_coboundary(theta: &CocycleFamily, q: &Representation, w: &Representation) -> Result<Option<Matrix>> {
    same_setting(q, w)?;
    theta.check_shape(q, w)?;
    let field = q.field();
    let (wd, qd) = (w.dim(), q.dim());
    if wd * qd == 0 {
        return Ok(Some(Matrix::zeros(field, wd, qd)));
    }
    let n = q.digroup().size();
    let block = wd * qd;
    // unknown t ↦ (δt, ρW t − t ρQ over all x)
    let a = linear_map_matrix(field, wd, qd, 2 * n * block, |t| {
        let mut out = coboundary_unchecked(t, q, w).flatten();
        for (rq, rw) in q.rhos().iter().zip(w.rhos()) {
            out.extend((&(rw * t) - &(t * rq)).flatten());
        }
        out
    });
    let mut rhs = theta.flatten();
    rhs.extend(std::iter::repeat_n(field.zero(), n * block));
    let b = Matrix::column_vector(field, &rhs)?;
    Ok(a.solve(&b)?
        .map(|x| Matrix::new(field, wd, qd, x.column(0)).expect("shape")))
}

/// Whether two cocycles define the same class in Z¹/B¹.
pub fn same_class(a: &CocycleFamily, b: &CocycleFamily, q: &Representation, w: &Representation) -> Result<bool> {
    Ok(solve_coboundary(&a.sub(b), q, w)?.is_some())
}

/// `dim Z¹`, `dim B¹` and representative cocycles extending a basis of B¹.
pub fn ext1_dim(q: &Representation, w: &Representation) -> Result<Ext1Result> {
    same_setting(q, w)?;
    check_maschke(q.field(), q.digroup().order())?;
    let z = cocycle_space(q, w)?;
    let width = q.digroup().size() * w.dim() * q.dim();
    let mut red = RowReducer::new(q.field(), width);
    for t in hom_rho(q, w)? {
        red.push(coboundary_unchecked(&t, q, w).flatten());
    }
    let dim_b = red.rank();
    let mut class_basis = Vec::new();
    for theta in &z {
        if red.push(theta.flatten()) {
            class_basis.push(theta.clone());
        }
    }
    if red.rank() != z.len() {
        return Err(Error::Consistency("a coboundary is not a cocycle".into()));
    }
    Ok(Ext1Result {
        dim_z: z.len(),
        dim_b,
        dim_ext: z.len() - dim_b,
        class_basis,
    })
}

/// `V_θ = W ⊕ Q` with `ρ` block diagonal and `λ_x = [[λ^W_x, θ_x], [0, λ^Q_x]]`.
pub fn extension_from_cocycle(theta: &CocycleFamily, q: &Representation, w: &Representation) -> Result<ShortExactSeq> {
    same_setting(q, w)?;
    if let Some(f) = theta.check(q, w)?.failures().next() {
        return Err(Error::NotACocycle(format!(
            "{}: {}",
            f.name,
            f.counterexample.as_deref().unwrap_or("")
        )));
    }
    let field = q.field();
    let (wd, qd) = (w.dim(), q.dim());
    let lambda = (0..q.digroup().size())
        .map(|i| {
            Matrix::block2(
                &w.lambdas()[i],
                &theta.theta[i],
                &Matrix::zeros(field, qd, wd),
                &q.lambdas()[i],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = q
        .rhos()
        .iter()
        .zip(w.rhos())
        .map(|(rq, rw)| Matrix::block_diag(rw, rq))
        .collect::<Result<Vec<_>>>()?;
    let v = Representation::new(q.digroup().clone(), field, wd + qd, lambda, rho)?;
    let iota = Matrix::vstack(
        field,
        wd,
        &[&Matrix::identity(field, wd), &Matrix::zeros(field, qd, wd)],
    )?;
    let pi = Matrix::hstack(
        field,
        qd,
        &[&Matrix::zeros(field, qd, wd), &Matrix::identity(field, qd)],
    )?;
    ShortExactSeq::new(w.clone(), v, q.clone(), iota, pi)
}

/// Outcome of a split test.
#[derive(Clone, Debug)]
pub struct SplitDecision {
    pub split: bool,
    /// The cocycle with respect to the averaged section.
    pub theta: CocycleFamily,
    /// A section intertwining every `λ_x` and `ρ_x`, when split.
    pub witness: Option<Matrix>,
    /// The nonzero class, when not split.
    pub certificate: Option<CocycleFamily>,
}

fn check_full_section(ses: &ShortExactSeq, s: &Matrix) -> bool {
    let d = ses.mid.digroup();
    (ses.quotient.dim() == 0 || (&ses.pi * s).is_identity())
        && (0..d.size()).all(|i| {
            &ses.mid.lambdas()[i] * s == s * &ses.quotient.lambdas()[i]
                && &ses.mid.rhos()[i] * s == s * &ses.quotient.rhos()[i]
        })
}

/// Decides whether the sequence splits in the category of representations.
pub fn is_split(ses: &ShortExactSeq) -> Result<SplitDecision> {
    check_maschke(ses.field(), ses.mid.digroup().order())?;
    let (q, w) = (&ses.quotient, &ses.sub);
    if w.dim() == 0 || q.dim() == 0 {
        let s = linear_section(ses)?;
        if !check_full_section(ses, &s) {
            return Err(Error::Consistency(
                "degenerate sequence has no equivariant section".into(),
            ));
        }
        return Ok(SplitDecision {
            split: true,
            theta: CocycleFamily::zero(q, w),
            witness: Some(s),
            certificate: None,
        });
    }
    let s = average_section(ses)?;
    let (theta, report) = block_decompose(ses, &s)?;
    if let Some(f) = report.failures().next() {
        return Err(Error::Consistency(format!("block decomposition: {}", f.name)));
    }
    match solve_coboundary(&theta, q, w)? {
        Some(t) => {
            let witness = &s - &(&ses.iota * &t);
            if !check_full_section(ses, &witness) {
                return Err(Error::Consistency("corrected section is not equivariant".into()));
            }
            Ok(SplitDecision {
                split: true,
                theta,
                witness: Some(witness),
                certificate: None,
            })
        }
        None => Ok(SplitDecision {
            split: false,
            certificate: Some(theta.clone()),
            theta,
            witness: None,
        }),
    }
}

/// Checks that moving the averaged section by `ιt` moves the cocycle by `δt`.
pub fn change_of_splitting_check(ses: &ShortExactSeq, t: &Matrix) -> Result<bool> {
    let (q, w) = (&ses.quotient, &ses.sub);
    let dt = coboundary(t, q, w)?;
    let s = average_section(ses)?;
    let (theta, _) = block_decompose(ses, &s)?;
    let moved = &s + &(&ses.iota * t);
    let (theta_t, _) = block_decompose(ses, &moved)?;
    Ok(theta_t == theta.add(&dt))
}

/// One nonzero Ext¹ between members of a list.
#[derive(Clone, Debug)]
pub struct NonSplitWitness {
    /// Index of the quotient representation.
    pub quotient: usize,
    /// Index of the sub representation.
    pub sub: usize,
    pub dim_ext: usize,
    pub cocycle: CocycleFamily,
}

/// Ext¹ for every ordered pair; any nonzero value certifies that the
/// category is not semisimple.
pub fn semisimplicity_probe(reps: &[Representation]) -> Result<Vec<NonSplitWitness>> {
    let mut out = Vec::new();
    for (i, q) in reps.iter().enumerate() {
        for (j, w) in reps.iter().enumerate() {
            let e = ext1_dim(q, w)?;
            if e.dim_ext > 0 {
                out.push(NonSplitWitness {
                    quotient: i,
                    sub: j,
                    dim_ext: e.dim_ext,
                    cocycle: e.class_basis[0].clone(),
                });
            }
        }
    }
    Ok(out)
}
