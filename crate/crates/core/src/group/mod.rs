//! Finite groups given by explicit Cayley tables.
//!
//! Every group produced here has its identity at index 0. Subgroups are
//! carried as sorted element lists; quotients order cosets by their smallest
//! member, so the identity coset is again index 0.

mod action;
mod character;

pub use action::{semidirect_product, GroupAction, SemidirectProduct};
pub use character::{
    character_table, dual_group, irreducible_representation, CharacterTable, DualGroup,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table and computes inverses.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup {
                reason: "empty table".into(),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} has length {} instead of {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup {
                        reason: format!("entry ({i},{j}) = {v} out of range"),
                    });
                }
            }
            table.extend_from_slice(row);
        }
        let at = |i: usize, j: usize| table[i * n + j];

        for i in 0..n {
            if at(0, i) != i || at(i, 0) != i {
                return Err(Error::NotAGroup {
                    reason: format!("index 0 is not a two-sided identity (fails at {i})"),
                });
            }
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row_seen[at(i, j)], true) {
                    return Err(Error::NotAGroup {
                        reason: format!("row {i} is not a permutation"),
                    });
                }
                if std::mem::replace(&mut col_seen[at(j, i)], true) {
                    return Err(Error::NotAGroup {
                        reason: format!("column {i} is not a permutation"),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for cc in 0..n {
                    if at(ab, cc) != at(a, at(b, cc)) {
                        return Err(Error::NotAGroup {
                            reason: format!("associativity fails on ({a},{b},{cc})"),
                        });
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| at(i, j) == 0).expect("latin square"))
            .collect();
        Ok(Self {
            order: n,
            table,
            inverse,
        })
    }

    /// Builds a group from a multiplication closure on `0..n`, validating it.
    pub fn from_fn(n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| mul(i, j)).collect())
            .collect();
        Self::from_table(&rows)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_fn(n, |a, b| (a + b) % n).expect("cyclic group table is valid")
    }

    /// Symmetric group on `k` letters; elements are permutations in
    /// lexicographic order of their one-line notation, `(p*q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let n = perms.len();
        Self::from_fn(n, |a, b| {
            let prod: Vec<usize> = (0..k).map(|i| perms[a][perms[b][i]]).collect();
            index(&prod)
        })
        .expect("symmetric group table is valid")
    }

    /// Direct product with elements `(a, b)` at index `a + |A| * b`.
    pub fn direct_product(a: &Self, b: &Self) -> Self {
        let na = a.order();
        Self::from_fn(na * b.order(), |x, y| {
            a.mul(x % na, y % na) + na * b.mul(x / na, y / na)
        })
        .expect("direct product table is valid")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// `h^-1 g h`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.inv(h), self.mul(g, h))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Conjugacy classes sorted by (size, smallest member); each class is
    /// sorted so its first entry is the representative.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|h| self.conjugate(g, h)).collect();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    /// Smallest subgroup containing `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let gens: BTreeSet<usize> = self
            .elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            .collect();
        self.generated_subgroup(&gens.into_iter().collect::<Vec<_>>())
    }

    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        Subgroup::new(self, elements)
    }

    pub fn is_normal(&self, elements: &[usize]) -> bool {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        elements
            .iter()
            .all(|&n| self.elements().all(|g| set.contains(&self.conjugate(n, g))))
    }

    /// Quotient by a normal subgroup; cosets are ordered by smallest member.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        let sub = self.subgroup(normal)?;
        if !self.is_normal(&sub.elements) {
            return Err(Error::NotNormal(sub.elements.clone()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut coset: Vec<usize> = sub.elements.iter().map(|&n| self.mul(g, n)).collect();
            coset.sort_unstable();
            for &x in &coset {
                coset_of[x] = cosets.len();
            }
            cosets.push(coset);
        }
        let group = Self::from_fn(cosets.len(), |a, b| {
            coset_of[self.mul(cosets[a][0], cosets[b][0])]
        })?;
        let projection = GroupHom::new(self.clone(), group.clone(), coset_of.clone())?;
        Ok(Quotient {
            group,
            projection,
            cosets,
        })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
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
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// A subgroup as a sorted list of parent elements together with the group
/// structure on positions in that list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
    position: Vec<Option<usize>>,
}

impl Subgroup {
    fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) || elements.iter().any(|&e| e >= parent.order()) {
            return Err(Error::NotASubgroup(elements));
        }
        let mut position = vec![None; parent.order()];
        for (i, &e) in elements.iter().enumerate() {
            position[e] = Some(i);
        }
        let n = elements.len();
        let mut rows = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                match position[parent.mul(elements[i], elements[j])] {
                    Some(k) => rows[i][j] = k,
                    None => return Err(Error::NotASubgroup(elements)),
                }
            }
        }
        let group = FiniteGroup::from_table(&rows)?;
        Ok(Self {
            elements,
            group,
            position,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, parent_element: usize) -> bool {
        self.position
            .get(parent_element)
            .is_some_and(|p| p.is_some())
    }

    /// Position of a parent element in the sorted list.
    pub fn index_of(&self, parent_element: usize) -> Option<usize> {
        self.position.get(parent_element).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    pub cosets: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn coset_of(&self, g: usize) -> usize {
        self.projection.apply(g)
    }

    /// Smallest member of a coset.
    pub fn representative(&self, coset: usize) -> usize {
        self.cosets[coset][0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism {
                reason: format!(
                    "map has length {} for a group of order {}",
                    map.len(),
                    source.order()
                ),
            });
        }
        if let Some(i) = map.iter().position(|&v| v >= target.order()) {
            return Err(Error::NotAHomomorphism {
                reason: format!("image of {i} is out of range"),
            });
        }
        if map[0] != 0 {
            return Err(Error::NotAHomomorphism {
                reason: "identity not sent to identity".into(),
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(Error::NotAHomomorphism {
                        reason: format!("f({x}*{y}) != f({x})*f({y})"),
                    });
                }
            }
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self {
            source: g.clone(),
            target: g.clone(),
            map: g.elements().collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&x| self.map[x] == 0)
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.map.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.image().len() == self.target.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn z2_from_table() {
        let g = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inverses(), &[0, 1]);
    }

    #[test]
    fn rejects_non_latin_table() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NotAGroup { .. }));
    }

    #[test]
    fn rejects_non_associative_table() {
        // a latin square with identity 0 that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(&rows).unwrap_err();
        match err {
            Error::NotAGroup { reason } => assert!(reason.contains("associativity"), "{reason}"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rejects_ragged_and_out_of_range() {
        assert!(FiniteGroup::from_table(&[vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]).is_err());
        assert!(FiniteGroup::from_table(&[]).is_err());
    }

    #[test]
    fn s3_class_sizes_match_brute_force_orbits() {
        let g = s3();
        // brute-force oracle: orbit of each element under conjugation
        let mut sizes: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        for x in g.elements() {
            if seen.contains(&x) {
                continue;
            }
            let orbit: BTreeSet<usize> =
                g.elements().map(|h| g.mul(g.mul(g.inv(h), x), h)).collect();
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
        assert_eq!(sizes, vec![1, 3, 2]);
        let classes = g.conjugacy_classes();
        assert_eq!(
            classes.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(classes[0], vec![0]);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        for n in [2, 4] {
            let classes = FiniteGroup::cyclic(n).conjugacy_classes();
            assert_eq!(classes, (0..n).map(|i| vec![i]).collect::<Vec<_>>());
        }
    }

    #[test]
    fn doubling_map_kernel_image_quotient() {
        let z4 = FiniteGroup::cyclic(4);
        let h = GroupHom::new(z4.clone(), z4.clone(), vec![0, 2, 0, 2]).unwrap();
        assert_eq!(h.kernel(), vec![0, 2]);
        assert_eq!(h.image(), vec![0, 2]);
        let q = z4.quotient(&[0, 2]).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.projection.map(), &[0, 1, 0, 1]);
        assert_eq!(q.cosets, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn quotient_by_transposition_subgroup_is_not_normal() {
        let g = s3();
        // element 1 is the transposition [0,2,1]
        assert_eq!(g.element_order(1), 2);
        let err = g.quotient(&[0, 1]).unwrap_err();
        assert!(matches!(err, Error::NotNormal(_)));
    }

    #[test]
    fn homomorphism_validation() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(z4, z2, vec![0, 1, 1, 1]).is_err());
    }

    #[test]
    fn commutator_subgroup_of_s3_is_a3() {
        let g = s3();
        let d = g.commutator_subgroup();
        assert_eq!(d.len(), 3);
        assert!(g.is_normal(&d));
    }

    #[test]
    fn subgroup_positions() {
        let g = FiniteGroup::cyclic(6);
        let s = g.subgroup(&[4, 0, 2]).unwrap();
        assert_eq!(s.elements, vec![0, 2, 4]);
        assert_eq!(s.index_of(4), Some(2));
        assert!(!s.contains(3));
        assert!(g.subgroup(&[0, 1]).is_err());
    }
}
