//! Finite groups, G-sets, and product-model generalized digroups.
//!
//! A digroup here is always `G × E` for a finite group `G` acting on a finite
//! halo set `E`, with
//!
//! ```text
//! (g,α) ⊢ (h,β) = (gh, g∙β)        (g,α) ⊣ (h,β) = (gh, α)
//! ```
//!
//! and bar-units `(1, α)`. Every generalized digroup is isomorphic to one of
//! these, so no other presentation is supported.

mod action;
mod group;

use std::fmt;

use serde::Serialize;

pub use action::GAction;
pub use group::{permutations, FiniteGroup};

use crate::error::{Error, Result};
use crate::report::{AxiomCheck, AxiomReport};

/// Element `(g, α)` of a product-model digroup, by indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Element {
    pub g: usize,
    pub alpha: usize,
}

impl Element {
    pub fn new(g: usize, alpha: usize) -> Self {
        Element { g, alpha }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.g, self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Digroup {
    action: GAction,
}

/// The right group at a bar-unit `(1, α)`, listed so that `elements[g] = (g, g∙α)`.
///
/// As a set this is `{(g⁻¹, g⁻¹∙α)}`; indexing by `g` makes `g ↦ elements[g]`
/// an isomorphism from `G` onto `(elements, ⊢)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightGroup {
    pub unit: Element,
    pub elements: Vec<Element>,
    /// `table[i][j]` is the index of `elements[i] ⊢ elements[j]`.
    pub table: Vec<Vec<usize>>,
}

impl Digroup {
    pub fn new(action: GAction) -> Self {
        Digroup { action }
    }

    /// `G × E` with `G` acting trivially on `|E| = halo_size` points.
    pub fn trivial_action(group: FiniteGroup, halo_size: usize) -> Result<Self> {
        Ok(Digroup::new(GAction::trivial(group, halo_size)?))
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn action(&self) -> &GAction {
        &self.action
    }

    pub fn halo_size(&self) -> usize {
        self.action.set_size()
    }

    pub fn order(&self) -> usize {
        self.group().order()
    }

    /// `|D| = |G| · |E|`.
    pub fn size(&self) -> usize {
        self.order() * self.halo_size()
    }

    pub fn index(&self, x: Element) -> usize {
        x.g * self.halo_size() + x.alpha
    }

    pub fn element(&self, i: usize) -> Element {
        Element::new(i / self.halo_size(), i % self.halo_size())
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn contains(&self, x: Element) -> bool {
        x.g < self.order() && x.alpha < self.halo_size()
    }

    fn check(&self, x: Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "{x} is not an element of a digroup of shape {}x{}",
                self.order(),
                self.halo_size()
            )))
        }
    }

    pub fn vdash(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.vdash_unchecked(x, y))
    }

    pub fn dashv(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.dashv_unchecked(x, y))
    }

    pub(crate) fn vdash_unchecked(&self, x: Element, y: Element) -> Element {
        Element::new(self.group().mul(x.g, y.g), self.action.act(x.g, y.alpha))
    }

    pub(crate) fn dashv_unchecked(&self, x: Element, y: Element) -> Element {
        Element::new(self.group().mul(x.g, y.g), x.alpha)
    }

    /// `⊢` on flat element indices.
    pub fn vdash_idx(&self, x: usize, y: usize) -> usize {
        self.index(self.vdash_unchecked(self.element(x), self.element(y)))
    }

    /// `⊣` on flat element indices.
    pub fn dashv_idx(&self, x: usize, y: usize) -> usize {
        self.index(self.dashv_unchecked(self.element(x), self.element(y)))
    }

    /// The bar-units `(1, α)`.
    pub fn halo(&self) -> Vec<Element> {
        let e = self.group().identity();
        (0..self.halo_size()).map(|a| Element::new(e, a)).collect()
    }

    pub fn is_bar_unit(&self, x: Element) -> bool {
        self.contains(x) && x.g == self.group().identity()
    }

    /// `(g,α)^♯ = (g⁻¹, g⁻¹∙α)`; both `x ⊢ x^♯` and `x^♯ ⊢ x` are bar-units.
    pub fn sharp(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        let gi = self.group().inv(x.g);
        Ok(Element::new(gi, self.action.act(gi, x.alpha)))
    }

    /// Left and right inverses of `x` relative to the bar-unit `e = (1, β)`:
    /// `left ⊣ x = e` and `x ⊢ right = e`.
    pub fn inverses_at(&self, x: Element, e: Element) -> Result<(Element, Element)> {
        self.check(x)?;
        if !self.is_bar_unit(e) {
            return Err(Error::NotBarUnit(e));
        }
        let gi = self.group().inv(x.g);
        let left = Element::new(gi, e.alpha);
        let right = Element::new(gi, self.action.act(gi, e.alpha));
        if self.dashv_unchecked(left, x) != e || self.vdash_unchecked(x, right) != e {
            return Err(Error::Consistency(format!("inverse formulas fail for {x} at {e}")));
        }
        Ok((left, right))
    }

    /// Exhaustive check of the digroup axioms; the report carries the first
    /// counterexample for each failing law.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.size();
        let el = |i| self.element(i);
        let vd = |a, b| self.vdash_idx(a, b);
        let dv = |a, b| self.dashv_idx(a, b);
        let triple = |p: &dyn Fn(usize, usize, usize) -> bool| -> Option<String> {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !p(a, b, c) {
                            return Some(format!("x={}, y={}, z={}", el(a), el(b), el(c)));
                        }
                    }
                }
            }
            None
        };

        let mut report = AxiomReport::default();
        if let Some(p) = self.group().violations().into_iter().next() {
            report.push(AxiomCheck::fail("group table", p));
        } else {
            report.push(AxiomCheck::pass("group table"));
        }
        report.push(AxiomCheck::from_search(
            "⊢ associative",
            triple(&|a, b, c| vd(vd(a, b), c) == vd(a, vd(b, c))),
        ));
        report.push(AxiomCheck::from_search(
            "⊣ associative",
            triple(&|a, b, c| dv(dv(a, b), c) == dv(a, dv(b, c))),
        ));

        let halo: Vec<usize> = self.halo().into_iter().map(|e| self.index(e)).collect();
        let gd1 = halo
            .iter()
            .flat_map(|&e| (0..n).map(move |x| (e, x)))
            .find(|&(e, x)| dv(x, e) != x || vd(e, x) != x);
        report.push(AxiomCheck::from_search(
            "bar-units",
            gd1.map(|(e, x)| format!("e={}, x={}", el(e), el(x))),
        ));

        let gd2 = halo
            .iter()
            .flat_map(|&e| (0..n).map(move |x| (e, x)))
            .find(|&(e, x)| self.inverses_at(el(x), el(e)).is_err());
        report.push(AxiomCheck::from_search(
            "inverses at bar-units",
            gd2.map(|(e, x)| format!("e={}, x={}", el(e), el(x))),
        ));

        report.push(AxiomCheck::from_search(
            "mixed x⊢(y⊣z)=(x⊢y)⊣z",
            triple(&|a, b, c| vd(a, dv(b, c)) == dv(vd(a, b), c)),
        ));
        report.push(AxiomCheck::from_search(
            "mixed x⊣(y⊣z)=x⊣(y⊢z)",
            triple(&|a, b, c| dv(a, dv(b, c)) == dv(a, vd(b, c))),
        ));
        report.push(AxiomCheck::from_search(
            "mixed (x⊢y)⊢z=(x⊣y)⊢z",
            triple(&|a, b, c| vd(vd(a, b), c) == vd(dv(a, b), c)),
        ));
        report
    }

    pub fn right_group_at(&self, e: Element) -> Result<RightGroup> {
        if !self.is_bar_unit(e) {
            return Err(Error::NotBarUnit(e));
        }
        let g = self.group();
        let elements: Vec<Element> = (0..g.order())
            .map(|x| Element::new(x, self.action.act(x, e.alpha)))
            .collect();
        let position = |y: Element| elements.iter().position(|&z| z == y);
        let mut table = vec![vec![0; g.order()]; g.order()];
        for a in 0..g.order() {
            for b in 0..g.order() {
                let prod = self.vdash_unchecked(elements[a], elements[b]);
                let at = position(prod)
                    .ok_or_else(|| Error::Consistency(format!("right group at {e} not closed: {prod}")))?;
                if at != g.mul(a, b) {
                    return Err(Error::Consistency(format!(
                        "right group at {e}: multiplication not transported at ({a}, {b})"
                    )));
                }
                table[a][b] = at;
            }
        }
        // Same set as the right inverses relative to e.
        for x in self.elements() {
            let (_, right) = self.inverses_at(x, e)?;
            if position(right).is_none() {
                return Err(Error::Consistency(format!("right inverse {right} of {x} missing")));
            }
        }
        Ok(RightGroup {
            unit: e,
            elements,
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2).unwrap()
    }

    fn trivial_d() -> Digroup {
        Digroup::trivial_action(c2(), 2).unwrap()
    }

    fn swap_d() -> Digroup {
        Digroup::new(GAction::new(c2(), 2, vec![vec![0, 1], vec![1, 0]]).unwrap())
    }

    const S: usize = 1;
    fn el(g: usize, a: usize) -> Element {
        Element::new(g, a)
    }

    #[test]
    fn products_trivial_action() {
        let d = trivial_d();
        assert_eq!(d.vdash(el(S, 0), el(S, 1)).unwrap(), el(0, 1));
        assert_eq!(d.dashv(el(S, 0), el(S, 1)).unwrap(), el(0, 0));
        for x in d.elements() {
            for e in d.halo() {
                assert_eq!(d.vdash(e, x).unwrap(), x);
                assert_eq!(d.dashv(x, e).unwrap(), x);
            }
        }
        assert!(d.vdash(el(2, 0), el(0, 0)).is_err());
    }

    #[test]
    fn products_swap_action() {
        let d = swap_d();
        assert_eq!(d.vdash(el(S, 0), el(0, 0)).unwrap(), el(S, 1));
        assert_eq!(d.dashv(el(S, 0), el(S, 0)).unwrap(), el(0, 0));
    }

    #[test]
    fn halo_listing() {
        assert_eq!(trivial_d().halo(), vec![el(0, 0), el(0, 1)]);
        let one = Digroup::trivial_action(FiniteGroup::cyclic(1).unwrap(), 1).unwrap();
        assert_eq!(one.halo().len(), 1);
        let three = Digroup::trivial_action(c2(), 3).unwrap();
        assert_eq!(three.halo().len(), 3);
    }

    #[test]
    fn sharp_examples() {
        let d = trivial_d();
        assert_eq!(d.sharp(el(S, 0)).unwrap(), el(S, 0));
        assert_eq!(d.vdash(el(S, 0), el(S, 0)).unwrap(), el(0, 0));
        assert_eq!(d.sharp(el(0, 1)).unwrap(), el(0, 1));
        assert_eq!(swap_d().sharp(el(S, 0)).unwrap(), el(S, 1));
        for d in [trivial_d(), swap_d()] {
            for x in d.elements() {
                let xs = d.sharp(x).unwrap();
                assert!(d.is_bar_unit(d.vdash(x, xs).unwrap()));
                assert!(d.is_bar_unit(d.vdash(xs, x).unwrap()));
            }
        }
    }

    #[test]
    fn inverses_examples() {
        let d = trivial_d();
        assert_eq!(d.inverses_at(el(S, 0), el(0, 1)).unwrap(), (el(S, 1), el(S, 1)));
        assert_eq!(d.inverses_at(el(0, 1), el(0, 1)).unwrap(), (el(0, 1), el(0, 1)));
        let (_, right) = swap_d().inverses_at(el(S, 0), el(0, 0)).unwrap();
        assert_eq!(right, el(S, 1));
        assert!(matches!(d.inverses_at(el(S, 0), el(S, 0)), Err(Error::NotBarUnit(_))));
    }

    #[test]
    fn axioms_hold_for_product_models() {
        assert!(trivial_d().check_axioms().all_passed());
        assert!(swap_d().check_axioms().all_passed());
        let one = Digroup::trivial_action(FiniteGroup::cyclic(1).unwrap(), 1).unwrap();
        assert!(one.check_axioms().all_passed());
    }

    #[test]
    fn corrupted_table_reports_associativity() {
        let mut t = FiniteGroup::cyclic(3).unwrap().table().to_vec();
        t[1].swap(1, 2);
        let g = FiniteGroup::unchecked(t).unwrap();
        let a = GAction::unchecked(g, 1, vec![vec![0]; 3]).unwrap();
        let report = Digroup::new(a).check_axioms();
        assert!(!report.get("⊢ associative").unwrap().passed);
        assert!(report.get("⊢ associative").unwrap().counterexample.is_some());
    }

    #[test]
    fn right_groups() {
        let d = trivial_d();
        let rg = d.right_group_at(el(0, 0)).unwrap();
        assert_eq!(rg.elements, vec![el(0, 0), el(S, 0)]);
        let one = Digroup::trivial_action(FiniteGroup::cyclic(1).unwrap(), 2).unwrap();
        assert_eq!(one.right_group_at(el(0, 1)).unwrap().elements, vec![el(0, 1)]);
        let rg = swap_d().right_group_at(el(0, 0)).unwrap();
        assert_eq!(rg.elements, vec![el(0, 0), el(S, 1)]);
        assert!(d.right_group_at(el(S, 0)).is_err());
    }
}
