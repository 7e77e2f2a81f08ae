//! Independent reference computations for the integration tests.
//!
//! Spaces are written as kernels of Kronecker-product matrices on row-major
//! vectorisations (`vec(A X B) = (A ⊗ Bᵀ) vec X`) and ranks come from a plain
//! Gaussian elimination on `BigRational`, sharing no code with the crate's
//! linear algebra.

#![allow(dead_code)]

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use digroup_core::generate::Generator;
use digroup_core::{Field, Matrix, Representation};

pub type Q = BigRational;
pub type Dense = Vec<Vec<Q>>;

pub fn big(m: &Matrix) -> Dense {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|s| s.as_rational().expect("rational field"))
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn transpose(a: &Dense, rows: usize, cols: usize) -> Dense {
    (0..cols)
        .map(|c| (0..rows).map(|r| a[r][c].clone()).collect())
        .collect()
}

/// `a ⊗ b` for `a: m×n`, `b: p×q`.
pub fn kron(a: &Dense, (m, n): (usize, usize), b: &Dense, (p, q): (usize, usize)) -> Dense {
    let mut out = vec![vec![Q::zero(); n * q]; m * p];
    for i in 0..m {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[i * p + k][j * q + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Incremental fully reduced echelon form.
pub struct Echelon {
    width: usize,
    rows: Vec<(usize, Vec<Q>)>,
    seen: HashSet<Vec<Q>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn push(&mut self, mut v: Vec<Q>) -> bool {
        assert_eq!(v.len(), self.width);
        if v.iter().all(Zero::is_zero) || !self.seen.insert(v.clone()) {
            return false;
        }
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let pivots: HashSet<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.width)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut k = vec![Q::zero(); self.width];
                k[free] = Q::one();
                for (p, row) in &self.rows {
                    k[*p] = -row[free].clone();
                }
                k
            })
            .collect()
    }
}

/// Adds `coef · block` to the column range of unknown block `b`.
fn add_block(rows: &mut [Vec<Q>], block: &Dense, b: usize, size: usize, sign: bool) {
    for (r, row) in block.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                if sign {
                    rows[r][b * size + c] += v;
                } else {
                    rows[r][b * size + c] -= v;
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub hom_rep: usize,
    pub hom_rho: usize,
    pub z: usize,
    pub b: usize,
    pub ext: usize,
}

/// `Hom`, `Z¹`, `B¹` and `Ext¹` dimensions for `(Q, W)` from scratch.
pub fn reference_dims(q: &Representation, w: &Representation) -> Dims {
    let d = q.digroup();
    let n = d.size();
    let (qd, wd) = (q.dim(), w.dim());
    let s = qd * wd;
    let (iw, iq) = (identity(wd), identity(qd));
    let left = |a: &Matrix| kron(&big(a), (wd, wd), &iq, (qd, qd));
    let right = |b: &Matrix| kron(&iw, (wd, wd), &transpose(&big(b), qd, qd), (qd, qd));
    let lw: Vec<Dense> = w.lambdas().iter().map(left).collect();
    let rw: Vec<Dense> = w.rhos().iter().map(left).collect();
    let lq: Vec<Dense> = q.lambdas().iter().map(right).collect();
    let rq: Vec<Dense> = q.rhos().iter().map(right).collect();

    // Intertwiners: ρW t = t ρQ, optionally λW t = t λQ.
    let mut rho_only = Echelon::new(s);
    let mut both = Echelon::new(s);
    for x in 0..n {
        let mut rows = vec![vec![Q::zero(); s]; s];
        add_block(&mut rows, &rw[x], 0, s, true);
        add_block(&mut rows, &rq[x], 0, s, false);
        for r in rows {
            rho_only.push(r.clone());
            both.push(r);
        }
        let mut rows = vec![vec![Q::zero(); s]; s];
        add_block(&mut rows, &lw[x], 0, s, true);
        add_block(&mut rows, &lq[x], 0, s, false);
        for r in rows {
            both.push(r);
        }
    }
    let hom_rho = rho_only.kernel();

    // Cocycles on the family (θ_x)_x.
    let width = n * s;
    let mut z = Echelon::new(width);
    for x in 0..n {
        for y in 0..n {
            let (xl, xr) = (d.dashv_idx(x, y), d.vdash_idx(x, y));
            let mut a = vec![vec![Q::zero(); width]; s];
            add_block(&mut a, &identity(s), xl, s, true);
            add_block(&mut a, &lw[x], y, s, false);
            add_block(&mut a, &lq[y], x, s, false);
            let mut b = vec![vec![Q::zero(); width]; s];
            add_block(&mut b, &identity(s), xr, s, true);
            add_block(&mut b, &rw[x], y, s, false);
            let mut c = vec![vec![Q::zero(); width]; s];
            add_block(&mut c, &identity(s), xl, s, true);
            add_block(&mut c, &rq[y], x, s, false);
            for r in a.into_iter().chain(b).chain(c) {
                z.push(r);
            }
        }
    }
    let dim_z = width - z.rank();

    // Coboundaries: images of intertwiners under t ↦ (λW_x t − t λQ_x)_x.
    let mut bspace = Echelon::new(width);
    for t in &hom_rho {
        let mut v = Vec::with_capacity(width);
        for x in 0..n {
            for r in 0..s {
                let mut acc = Q::zero();
                for c in 0..s {
                    let coef = &lw[x][r][c] - &lq[x][r][c];
                    if !coef.is_zero() && !t[c].is_zero() {
                        acc += coef * &t[c];
                    }
                }
                v.push(acc);
            }
        }
        bspace.push(v);
    }
    let dim_b = bspace.rank();
    Dims {
        hom_rep: s - both.rank(),
        hom_rho: hom_rho.len(),
        z: dim_z,
        b: dim_b,
        ext: dim_z - dim_b,
    }
}

/// A seeded pair `(Q, W)` over ℚ.
pub fn pair(seed: u64, group_order: usize, halo_size: usize, max_dim: usize) -> (Representation, Representation) {
    let mut g = Generator::new(seed, Field::Rational);
    let p = g.pair(group_order, halo_size, max_dim).expect("within caps");
    (p.quotient, p.sub)
}
