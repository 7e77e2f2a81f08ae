use serde::Serialize;

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<Vec<usize>>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Validated construction: the table must be a group law.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::unchecked(mul)?;
        if let Some(problem) = g.violations().into_iter().next() {
            return Err(Error::InvalidGroup(problem));
        }
        Ok(g)
    }

    /// Accepts any square table with in-range entries. Identity and inverses
    /// are located on a best-effort basis; use [`FiniteGroup::violations`] to
    /// find out what is wrong with it.
    pub fn unchecked(mul: Vec<Vec<usize>>) -> Result<Self> {
        let order = mul.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if mul.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidGroup("table is not square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mul[e][x] == x && mul[x][e] == x))
            .unwrap_or(0);
        let inv = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                    .unwrap_or(0)
            })
            .collect();
        Ok(FiniteGroup {
            order,
            mul,
            identity,
            inv,
        })
    }

    /// Every failed group axiom, with the first witness for each.
    pub fn violations(&self) -> Vec<String> {
        let n = self.order;
        let mut out = Vec::new();
        if let Some((a, b, c)) = self.first_nonassociative() {
            out.push(format!("associativity fails at ({a}, {b}, {c})"));
        }
        let e = self.identity;
        if let Some(x) = (0..n).find(|&x| self.mul[e][x] != x || self.mul[x][e] != x) {
            out.push(format!("no two-sided identity (fails at {x})"));
        }
        if let Some(g) = (0..n).find(|&g| self.mul[g][self.inv[g]] != e || self.mul[self.inv[g]][g] != e) {
            out.push(format!("element {g} has no inverse"));
        }
        out
    }

    pub fn first_nonassociative(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul[a][b];
                for c in 0..n {
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Cyclic group of order `n` (`1 <= n <= 12`), generated by element 1.
    pub fn cyclic(n: usize) -> Result<Self> {
        if !(1..=12).contains(&n) {
            return Err(Error::InvalidGroup(format!("cyclic order {n} outside 1..=12")));
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(mul)
    }

    /// Symmetric group on `n <= 4` letters; elements are permutations in
    /// lexicographic order, so element 0 is the identity.
    pub fn symmetric(n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::InvalidGroup(format!("symmetric degree {n} outside 1..=4")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed");
        // (a * b)(i) = a(b(i)): apply b first.
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Self::from_table(mul)
    }

    /// `a × b` with element `(i, j)` at index `i * |b| + j`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (n, m) = (a.order, b.order);
        let mul = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table(mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// Greedy generating set: each generator is the least element outside the
    /// subgroup generated by the previous ones.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = self.closure(&gens);
        while let Some(x) = (0..self.order).find(|&x| !sub[x]) {
            gens.push(x);
            sub = self.closure(&gens);
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Every group homomorphism `self -> target`, as image tables.
    pub fn homomorphisms(&self, target: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let m = target.order;
        let mut out = Vec::new();
        let mut images = vec![0usize; gens.len()];
        loop {
            if let Some(h) = self.extend_hom(&gens, &images, target) {
                out.push(h);
            }
            // odometer over generator images
            let mut k = 0;
            while k < images.len() {
                images[k] += 1;
                if images[k] < m {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
            if k == images.len() {
                break;
            }
        }
        out
    }

    fn extend_hom(&self, gens: &[usize], images: &[usize], target: &FiniteGroup) -> Option<Vec<usize>> {
        let mut map: Vec<Option<usize>> = vec![None; self.order];
        map[self.identity] = Some(target.identity);
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            let fx = map[x].expect("visited");
            for (&s, &fs) in gens.iter().zip(images) {
                let y = self.mul(x, s);
                let fy = target.mul(fx, fs);
                match map[y] {
                    Some(v) if v != fy => return None,
                    Some(_) => {}
                    None => {
                        map[y] = Some(fy);
                        stack.push(y);
                    }
                }
            }
        }
        let map: Vec<usize> = map.into_iter().map(|v| v.expect("generators span")).collect();
        let ok = (0..self.order).all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])));
        ok.then_some(map)
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_groups_are_groups() {
        for n in 1..=12 {
            assert!(FiniteGroup::cyclic(n).unwrap().violations().is_empty());
        }
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        // S3 is not abelian
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let c6 = FiniteGroup::direct_product(&c2, &c3).unwrap();
        assert!(c6.violations().is_empty());
        assert_eq!(c6.order(), 6);
        assert!(FiniteGroup::cyclic(13).is_err());
    }

    #[test]
    fn swapped_entries_break_associativity() {
        let mut t = FiniteGroup::cyclic(3).unwrap().table().to_vec();
        t[1].swap(1, 2);
        let g = FiniteGroup::unchecked(t).unwrap();
        assert!(g.first_nonassociative().is_some());
        assert!(FiniteGroup::from_table(g.table().to_vec()).is_err());
    }

    #[test]
    fn homomorphism_counts() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(c6.homomorphisms(&c2).len(), 2);
        assert_eq!(c3.homomorphisms(&c2).len(), 1);
        // sign character plus trivial
        assert_eq!(s3.homomorphisms(&c2).len(), 2);
        // Hom(S3, S3): 6 automorphisms + 3 onto order-2 subgroups + trivial
        assert_eq!(s3.homomorphisms(&s3).len(), 10);
    }
}
