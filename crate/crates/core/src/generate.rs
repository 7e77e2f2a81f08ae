//! Seeded random instances: digroups, representations and extensions.
//!
//! Representations are built valid by construction. A module over the halo
//! algebra has all `ε_α` sharing one kernel `K`; in a basis adapted to a
//! complement `C ⊕ K` each `ε_α = [[I, 0], [A_α, 0]]`. Group operators are
//! `diag(T^C_g, T^K_g)` and compatibility reduces to
//! `A_(g∙α) = T^K_g A_α (T^C_g)⁻¹`, solved by averaging over stabilizers.
//! Everything is then conjugated by a random invertible matrix.

use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digroup::{permutations, Digroup, FiniteGroup, GAction};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::ext::{self, CocycleFamily, ShortExactSeq};
use crate::reps::{Representation, SemilinearObject};

pub const MAX_GROUP_ORDER: usize = 6;
pub const MAX_HALO_SIZE: usize = 3;
pub const MAX_DIM: usize = 4;

/// Checks the generator caps.
pub fn check_caps(group_order: usize, halo_size: usize, dim: usize) -> Result<()> {
    if group_order == 0 || group_order > MAX_GROUP_ORDER {
        return Err(Error::CapsExceeded(format!(
            "|G| = {group_order} not in 1..={MAX_GROUP_ORDER}"
        )));
    }
    if halo_size == 0 || halo_size > MAX_HALO_SIZE {
        return Err(Error::CapsExceeded(format!(
            "|E| = {halo_size} not in 1..={MAX_HALO_SIZE}"
        )));
    }
    if dim > MAX_DIM {
        return Err(Error::CapsExceeded(format!("dim = {dim} exceeds {MAX_DIM}")));
    }
    Ok(())
}

/// A pair of representations over one digroup.
#[derive(Clone, Debug)]
pub struct RepPair {
    pub quotient: Representation,
    pub sub: Representation,
}

pub struct Generator {
    rng: ChaCha8Rng,
    field: Field,
}

impl Generator {
    pub fn new(seed: u64, field: Field) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A group of the given order; order 4 and 6 pick one of the two isomorphism types.
    pub fn group(&mut self, order: usize) -> Result<FiniteGroup> {
        check_caps(order, 1, 0)?;
        match order {
            4 if self.rng.random_bool(0.5) => {
                let c2 = FiniteGroup::cyclic(2)?;
                FiniteGroup::direct_product(&c2, &c2)
            }
            6 if self.rng.random_bool(0.5) => FiniteGroup::symmetric(3),
            n => FiniteGroup::cyclic(n),
        }
    }

    /// `G × E` with an action drawn uniformly from `Hom(G, S_|E|)`.
    pub fn digroup(&mut self, group_order: usize, halo_size: usize) -> Result<Arc<Digroup>> {
        check_caps(group_order, halo_size, 0)?;
        let g = self.group(group_order)?;
        let sym = FiniteGroup::symmetric(halo_size)?;
        let homs = g.homomorphisms(&sym);
        let hom = homs.choose(&mut self.rng).expect("trivial hom exists");
        Ok(Arc::new(Digroup::new(GAction::from_permutation_hom(
            g, halo_size, hom,
        )?)))
    }

    fn small(&mut self) -> i64 {
        self.rng.random_range(-2..=2)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let f = self.field;
        let data = (0..rows * cols).map(|_| f.from_i64(self.small())).collect();
        Matrix::new(f, rows, cols, data).expect("sizes match")
    }

    pub fn invertible(&mut self, n: usize) -> Matrix {
        loop {
            let m = self.matrix(n, n);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Permutation matrices of a homomorphism `G → S_m`.
    fn permutation_rep(&mut self, group: &FiniteGroup, m: usize) -> Result<Vec<Matrix>> {
        let f = self.field;
        let sym = FiniteGroup::symmetric(m)?;
        let homs = group.homomorphisms(&sym);
        let hom = homs.choose(&mut self.rng).expect("trivial hom exists");
        let perms = permutations(m);
        Ok(hom
            .iter()
            .map(|&p| {
                let mut mat = Matrix::zeros(f, m, m);
                for (i, &j) in perms[p].iter().enumerate() {
                    mat.set(j, i, f.one());
                }
                mat
            })
            .collect())
    }

    /// A character into `{±1}`, read off a homomorphism into `S_2`.
    fn character(&mut self, group: &FiniteGroup) -> Result<Vec<Matrix>> {
        let f = self.field;
        Ok(self
            .permutation_rep(group, 2)?
            .iter()
            .map(|m| Matrix::from_i64(f, &[&[if m.get(0, 0).is_zero() { -1 } else { 1 }]]))
            .collect())
    }

    /// A representation of `group` of dimension `dim`, as a direct sum of
    /// characters into `{±1}` and permutation representations.
    pub fn group_rep(&mut self, group: &FiniteGroup, dim: usize) -> Result<Vec<Matrix>> {
        let f = self.field;
        let mut blocks: Vec<Vec<Matrix>> = Vec::new();
        let mut left = dim;
        while left > 0 {
            let size = self.rng.random_range(1..=left.min(3));
            let block = if size == 1 {
                self.character(group)?
            } else {
                self.permutation_rep(group, size)?
            };
            blocks.push(block);
            left -= size;
        }
        Ok((0..group.order())
            .map(|g| {
                blocks.iter().fold(Matrix::zeros(f, 0, 0), |acc, b| {
                    Matrix::block_diag(&acc, &b[g]).expect("same field")
                })
            })
            .collect())
    }

    /// A random valid semilinear object of dimension `dim` over `d`.
    pub fn semilinear(&mut self, d: &Arc<Digroup>, dim: usize) -> Result<SemilinearObject> {
        check_caps(d.order(), d.halo_size(), dim)?;
        let f = self.field;
        ext::check_maschke(f, d.order())?;
        let grp = d.group();
        let act = d.action();
        let r = self.rng.random_range(0..=dim);
        let kd = dim - r;
        let tc = self.group_rep(grp, r)?;
        let tk = self.group_rep(grp, kd)?;
        let tc_inv: Vec<Matrix> = tc.iter().map(|m| m.inverse().expect("group operators")).collect();

        let mut a: Vec<Option<Matrix>> = vec![None; d.halo_size()];
        for alpha in 0..d.halo_size() {
            if a[alpha].is_some() {
                continue;
            }
            let stab: Vec<usize> = (0..grp.order()).filter(|&s| act.act(s, alpha) == alpha).collect();
            let b = self.matrix(kd, r);
            let mut avg = Matrix::zeros(f, kd, r);
            for &s in &stab {
                avg = &avg + &(&(&tk[s] * &b) * &tc_inv[s]);
            }
            let avg = avg.scale(&f.from_i64(stab.len() as i64).inv().expect("stabilizer order is a unit"));
            for g in 0..grp.order() {
                let target = act.act(g, alpha);
                if a[target].is_none() {
                    a[target] = Some(&(&tk[g] * &avg) * &tc_inv[g]);
                }
            }
        }
        let p = self.invertible(dim);
        let p_inv = p.inverse().expect("invertible");
        let conj = |m: &Matrix| &(&p * m) * &p_inv;
        let epsilon = a
            .into_iter()
            .map(|am| {
                let am = am.expect("every point lies in an orbit");
                let e = Matrix::block2(
                    &Matrix::identity(f, r),
                    &Matrix::zeros(f, r, kd),
                    &am,
                    &Matrix::zeros(f, kd, kd),
                )
                .expect("block shapes");
                conj(&e)
            })
            .collect();
        let t = tc
            .iter()
            .zip(&tk)
            .map(|(c, k)| conj(&Matrix::block_diag(c, k).expect("same field")))
            .collect();
        SemilinearObject::new(d.clone(), f, dim, epsilon, t)
    }

    pub fn representation(&mut self, d: &Arc<Digroup>, dim: usize) -> Result<Representation> {
        Representation::from_semilinear(&self.semilinear(d, dim)?)
    }

    /// Two representations of dimension at most `max_dim` over a random
    /// digroup of the given shape.
    pub fn pair(&mut self, group_order: usize, halo_size: usize, max_dim: usize) -> Result<RepPair> {
        check_caps(group_order, halo_size, max_dim)?;
        let d = self.digroup(group_order, halo_size)?;
        let qd = self.rng.random_range(1..=max_dim.max(1));
        let wd = self.rng.random_range(1..=max_dim.max(1));
        Ok(RepPair {
            quotient: self.representation(&d, qd)?,
            sub: self.representation(&d, wd)?,
        })
    }

    /// A random element of `span(basis)` with small integer coefficients.
    pub fn combination(&mut self, basis: &[CocycleFamily], q: &Representation, w: &Representation) -> CocycleFamily {
        let f = self.field;
        let mut acc = CocycleFamily::zero(q, w);
        for theta in basis {
            let c = f.from_i64(self.small());
            acc = acc.add(&CocycleFamily::new(theta.theta.iter().map(|m| m.scale(&c)).collect()));
        }
        acc
    }

    /// An extension of `q` by `w` from a random cocycle, expressed in a random
    /// basis of the middle term.
    pub fn extension(&mut self, q: &Representation, w: &Representation) -> Result<ShortExactSeq> {
        let z = ext::cocycle_space(q, w)?;
        let theta = self.combination(&z, q, w);
        let ses = ext::extension_from_cocycle(&theta, q, w)?;
        let p = self.invertible(ses.mid().dim());
        scramble(&ses, &p)
    }
}

/// Rewrites the middle term in the basis given by the columns of `p`.
pub fn scramble(ses: &ShortExactSeq, p: &Matrix) -> Result<ShortExactSeq> {
    let p_inv = p
        .inverse()
        .ok_or_else(|| Error::Dimension("change of basis is singular".into()))?;
    let v = ses.mid();
    let conj = |m: &Matrix| &(&p_inv * m) * p;
    let mid = Representation::unchecked(
        v.digroup().clone(),
        v.field(),
        v.dim(),
        v.lambdas().iter().map(conj).collect(),
        v.rhos().iter().map(conj).collect(),
    )?;
    ShortExactSeq::new(
        ses.sub().clone(),
        mid,
        ses.quotient().clone(),
        &p_inv * ses.iota(),
        ses.pi() * p,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_objects_are_valid() {
        for seed in 0..40 {
            let mut g = Generator::new(seed, Field::Rational);
            let order = [1, 2, 3, 6][seed as usize % 4];
            let halo = 1 + seed as usize % 3;
            let d = g.digroup(order, halo).unwrap();
            assert!(d.check_axioms().all_passed());
            let dim = seed as usize % 4;
            let r = g.representation(&d, dim).unwrap();
            assert!(r.is_valid(), "seed {seed}: {}", r.check_representation());
        }
    }

    #[test]
    fn determinism() {
        let a = Generator::new(7, Field::Rational).pair(6, 3, 3).unwrap();
        let b = Generator::new(7, Field::Rational).pair(6, 3, 3).unwrap();
        assert_eq!(a.quotient, b.quotient);
        assert_eq!(a.sub, b.sub);
    }

    #[test]
    fn caps() {
        let mut g = Generator::new(0, Field::Rational);
        assert!(matches!(g.digroup(7, 1), Err(Error::CapsExceeded(_))));
        assert!(matches!(g.digroup(2, 4), Err(Error::CapsExceeded(_))));
        let d = g.digroup(2, 2).unwrap();
        assert!(matches!(g.representation(&d, 5), Err(Error::CapsExceeded(_))));
    }

    #[test]
    fn extensions_are_exact() {
        let mut g = Generator::new(3, Field::Rational);
        let pair = g.pair(3, 2, 2).unwrap();
        let ses = g.extension(&pair.quotient, &pair.sub).unwrap();
        assert!(ses.mid().is_valid());
    }
}
