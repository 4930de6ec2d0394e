use std::collections::BTreeSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A right action `m -> m^g` of a finite group on `0..set_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub group: FiniteGroup,
    set_size: usize,
    perm: Vec<Vec<usize>>,
}

impl GroupAction {
    /// `perm[g][m]` is `m^g`.
    pub fn new(group: FiniteGroup, set_size: usize, perm: Vec<Vec<usize>>) -> Result<Self> {
        if perm.len() != group.order() {
            return Err(Error::NotAnAction {
                reason: format!(
                    "{} maps given for a group of order {}",
                    perm.len(),
                    group.order()
                ),
            });
        }
        for (g, p) in perm.iter().enumerate() {
            if p.len() != set_size {
                return Err(Error::NotAnAction {
                    reason: format!("map of {g} has length {} instead of {set_size}", p.len()),
                });
            }
            let mut seen = vec![false; set_size];
            for &m in p {
                if m >= set_size || std::mem::replace(&mut seen[m], true) {
                    return Err(Error::NotAnAction {
                        reason: format!("map of {g} is not a permutation"),
                    });
                }
            }
        }
        if perm[0].iter().enumerate().any(|(m, &x)| m != x) {
            return Err(Error::NotAnAction {
                reason: "identity does not act trivially".into(),
            });
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(m) = (0..set_size).find(|&m| perm[h][perm[g][m]] != perm[gh][m]) {
                    return Err(Error::NotAnAction {
                        reason: format!("(m^g)^h != m^(gh) for m={m}, g={g}, h={h}"),
                    });
                }
            }
        }
        Ok(Self {
            group,
            set_size,
            perm,
        })
    }

    pub fn trivial(group: FiniteGroup, set_size: usize) -> Self {
        let perm = vec![(0..set_size).collect(); group.order()];
        Self {
            group,
            set_size,
            perm,
        }
    }

    /// Right conjugation `m^g = g^-1 m g` of a group on itself.
    pub fn conjugation(group: &FiniteGroup) -> Self {
        let perm = group
            .elements()
            .map(|g| group.elements().map(|m| group.conjugate(m, g)).collect())
            .collect();
        Self {
            group: group.clone(),
            set_size: group.order(),
            perm,
        }
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    /// `m^g`
    pub fn apply(&self, m: usize, g: usize) -> usize {
        self.perm[g][m]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.perm
    }

    pub fn is_trivial(&self) -> bool {
        self.perm
            .iter()
            .all(|p| p.iter().enumerate().all(|(m, &x)| m == x))
    }

    /// Checks that each `m -> m^g` is an automorphism of `target`.
    pub fn check_automorphisms(&self, target: &FiniteGroup) -> Result<()> {
        if target.order() != self.set_size {
            return Err(Error::NotAnAction {
                reason: "acted-on set is not the given group".into(),
            });
        }
        for g in self.group.elements() {
            for a in target.elements() {
                for b in target.elements() {
                    if self.apply(target.mul(a, b), g)
                        != target.mul(self.apply(a, g), self.apply(b, g))
                    {
                        return Err(Error::NotAutomorphism { g, a, b });
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbits ordered by smallest member, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.set_size];
        let mut out = Vec::new();
        for m in 0..self.set_size {
            if seen[m] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.group.elements().map(|g| self.apply(m, g)).collect();
            for &x in &orbit {
                seen[x] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| self.apply(point, g) == point)
            .collect()
    }

    /// Smallest group element carrying `from` to `to`, if any.
    pub fn transporter(&self, from: usize, to: usize) -> Option<usize> {
        self.group.elements().find(|&g| self.apply(from, g) == to)
    }
}

/// `N x| H` for a right action of `H` on `N` by automorphisms, with product
/// `(n1, h1)(n2, h2) = (n1^h2 * n2, h1 h2)`. Element `(n, h)` is stored at
/// index `n + |N| * h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub normal_order: usize,
}

impl SemidirectProduct {
    pub fn index(&self, n: usize, h: usize) -> usize {
        n + self.normal_order * h
    }

    pub fn components(&self, x: usize) -> (usize, usize) {
        (x % self.normal_order, x / self.normal_order)
    }
}

pub fn semidirect_product(
    normal: &FiniteGroup,
    acting: &FiniteGroup,
    act: &GroupAction,
) -> Result<SemidirectProduct> {
    if act.group != *acting {
        return Err(Error::NotAnAction {
            reason: "action is not by the given group".into(),
        });
    }
    act.check_automorphisms(normal)?;
    let nn = normal.order();
    let group = FiniteGroup::from_fn(nn * acting.order(), |x, y| {
        let (n1, h1) = (x % nn, x / nn);
        let (n2, h2) = (y % nn, y / nn);
        normal.mul(act.apply(n1, h2), n2) + nn * acting.mul(h1, h2)
    })?;
    Ok(SemidirectProduct {
        group,
        normal_order: nn,
    })
}
