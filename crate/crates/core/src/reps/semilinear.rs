use std::sync::Arc;

use crate::digroup::Digroup;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::report::{AxiomCheck, AxiomReport};

/// A `B_E`-module (`ε_α` acting) with a compatible family of invertible maps
/// `t_g`, one per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct SemilinearObject {
    digroup: Arc<Digroup>,
    field: Field,
    dim: usize,
    epsilon: Vec<Matrix>,
    t: Vec<Matrix>,
}

impl SemilinearObject {
    pub fn new(digroup: Arc<Digroup>, field: Field, dim: usize, epsilon: Vec<Matrix>, t: Vec<Matrix>) -> Result<Self> {
        let m = Self::unchecked(digroup, field, dim, epsilon, t)?;
        if let Some(f) = m.check().failures().next() {
            return Err(Error::InvalidSemilinear(format!(
                "{}: {}",
                f.name,
                f.counterexample.as_deref().unwrap_or("")
            )));
        }
        Ok(m)
    }

    pub fn unchecked(
        digroup: Arc<Digroup>,
        field: Field,
        dim: usize,
        epsilon: Vec<Matrix>,
        t: Vec<Matrix>,
    ) -> Result<Self> {
        if epsilon.len() != digroup.halo_size() || t.len() != digroup.order() {
            return Err(Error::Dimension("semilinear tables have the wrong length".into()));
        }
        for m in epsilon.iter().chain(&t) {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::Dimension(format!(
                    "operator of shape {:?} in dimension {dim}",
                    m.shape()
                )));
            }
        }
        Ok(SemilinearObject {
            digroup,
            field,
            dim,
            epsilon,
            t,
        })
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

    pub fn epsilon(&self) -> &[Matrix] {
        &self.epsilon
    }

    pub fn t(&self) -> &[Matrix] {
        &self.t
    }

    pub fn check(&self) -> AxiomReport {
        let grp = self.digroup.group();
        let act = self.digroup.action();
        let n = grp.order();
        let e = self.epsilon.len();
        let mut report = AxiomReport::default();
        let pairs = |n1: usize, n2: usize| (0..n1).flat_map(move |a| (0..n2).map(move |b| (a, b)));
        report.push(AxiomCheck::from_search(
            "ε(α)ε(β) = ε(α)",
            pairs(e, e)
                .find(|&(a, b)| &self.epsilon[a] * &self.epsilon[b] != self.epsilon[a])
                .map(|(a, b)| format!("α={a}, β={b}")),
        ));
        report.push(AxiomCheck::from_search(
            "t(1) = I",
            (!self.t[grp.identity()].is_identity()).then(|| "t(1)".to_string()),
        ));
        report.push(AxiomCheck::from_search(
            "t(g)t(h) = t(gh)",
            pairs(n, n)
                .find(|&(g, h)| &self.t[g] * &self.t[h] != self.t[grp.mul(g, h)])
                .map(|(g, h)| format!("g={g}, h={h}")),
        ));
        report.push(AxiomCheck::from_search(
            "t(g)ε(α) = ε(g∙α)t(g)",
            pairs(n, e)
                .find(|&(g, a)| &self.t[g] * &self.epsilon[a] != &self.epsilon[act.act(g, a)] * &self.t[g])
                .map(|(g, a)| format!("g={g}, α={a}")),
        ));
        report
    }
}
