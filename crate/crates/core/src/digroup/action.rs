use serde::Serialize;

use super::group::{permutations, FiniteGroup};
use crate::error::{Error, Result};

/// A left action of a finite group on `{0, .., set_size - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GAction {
    group: FiniteGroup,
    set_size: usize,
    act: Vec<Vec<usize>>,
}

impl GAction {
    /// `act[g][α] = g∙α`. Checks the unit and compatibility laws.
    pub fn new(group: FiniteGroup, set_size: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        let a = Self::unchecked(group, set_size, act)?;
        if let Some(problem) = a.violations().into_iter().next() {
            return Err(Error::InvalidAction(problem));
        }
        Ok(a)
    }

    pub fn unchecked(group: FiniteGroup, set_size: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        if set_size == 0 {
            return Err(Error::InvalidAction("halo must be nonempty".into()));
        }
        if act.len() != group.order() || act.iter().any(|r| r.len() != set_size) {
            return Err(Error::InvalidAction(format!(
                "action table must be {} x {set_size}",
                group.order()
            )));
        }
        if act.iter().flatten().any(|&x| x >= set_size) {
            return Err(Error::InvalidAction("action entry out of range".into()));
        }
        Ok(GAction { group, set_size, act })
    }

    pub fn trivial(group: FiniteGroup, set_size: usize) -> Result<Self> {
        let act = vec![(0..set_size).collect(); group.order()];
        Self::new(group, set_size, act)
    }

    /// Action through a homomorphism into `S_m` (`perms[i]` is the image of element `i`
    /// as an index into [`permutations`]`(m)`).
    pub fn from_permutation_hom(group: FiniteGroup, set_size: usize, hom: &[usize]) -> Result<Self> {
        let perms = permutations(set_size);
        let act = hom
            .iter()
            .map(|&p| {
                perms
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::InvalidAction("bad permutation index".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, set_size, act)
    }

    pub fn violations(&self) -> Vec<String> {
        let g = &self.group;
        let mut out = Vec::new();
        let e = g.identity();
        if let Some(a) = (0..self.set_size).find(|&a| self.act[e][a] != a) {
            out.push(format!("identity moves {a}"));
        }
        'outer: for x in 0..g.order() {
            for y in 0..g.order() {
                for a in 0..self.set_size {
                    if self.act[g.mul(x, y)][a] != self.act[x][self.act[y][a]] {
                        out.push(format!("(gh)∙α ≠ g∙(h∙α) at g={x}, h={y}, α={a}"));
                        break 'outer;
                    }
                }
            }
        }
        out
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn act(&self, g: usize, alpha: usize) -> usize {
        self.act[g][alpha]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn is_trivial(&self) -> bool {
        self.act.iter().all(|r| r.iter().enumerate().all(|(a, &b)| a == b))
    }
}
