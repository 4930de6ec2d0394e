//! Finite crossed modules and the groups derived from them.

use crate::error::{Error, Result};
use crate::group::{
    dual_group, semidirect_product, DualGroup, FiniteGroup, GroupAction, GroupHom, Quotient,
    SemidirectProduct, Subgroup,
};
use crate::Settings;

/// `K = ker d`, `I = im d`, `C = X1 / I`, `D = |K| |C|` and `|X| = |X1| |K|`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subquotients {
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub coker: Quotient,
    pub d: usize,
    pub abs_order: usize,
}

/// `(X1, X2, mu, d)` with a right action `m^g` of `X1` on `X2` by
/// automorphisms and a boundary `d: X2 -> X1`, satisfying
/// `d(m^g) = g^-1 d(m) g` and `m^(d n) = n^-1 m n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedModule {
    pub x1: FiniteGroup,
    pub x2: FiniteGroup,
    pub action: GroupAction,
    pub boundary: GroupHom,
    pub sub: Subquotients,
}

impl CrossedModule {
    pub fn new(action: GroupAction, boundary: GroupHom) -> Result<Self> {
        let x1 = boundary.target.clone();
        let x2 = boundary.source.clone();
        if action.group != x1 {
            return Err(Error::NotAnAction {
                reason: "acting group is not the target of the boundary map".into(),
            });
        }
        action.check_automorphisms(&x2)?;
        for m in x2.elements() {
            for g in x1.elements() {
                if boundary.apply(action.apply(m, g)) != x1.conjugate(boundary.apply(m), g) {
                    return Err(Error::EquivarianceViolation { m, g });
                }
            }
        }
        for m in x2.elements() {
            for n in x2.elements() {
                if action.apply(m, boundary.apply(n)) != x2.conjugate(m, n) {
                    return Err(Error::PeifferViolation { m, n });
                }
            }
        }

        let kernel = x2.subgroup(&boundary.kernel())?;
        let image = x1.subgroup(&boundary.image())?;
        let central = kernel
            .elements
            .iter()
            .all(|&k| x2.elements().all(|m| x2.mul(k, m) == x2.mul(m, k)));
        if !central {
            return Err(Error::InvariantFailure("ker d is not central".into()));
        }
        let coker = x1.quotient(&image.elements)?;
        let sub = Subquotients {
            d: kernel.order() * coker.group.order(),
            abs_order: x1.order() * kernel.order(),
            kernel,
            image,
            coker,
        };
        Ok(Self {
            x1,
            x2,
            action,
            boundary,
            sub,
        })
    }

    /// Builds from raw tables: `action[g][m] = m^g`, `boundary[m] = d(m)`.
    pub fn from_tables(
        x1: &[Vec<usize>],
        x2: &[Vec<usize>],
        action: Vec<Vec<usize>>,
        boundary: Vec<usize>,
    ) -> Result<Self> {
        let x1 = FiniteGroup::from_table(x1)?;
        let x2 = FiniteGroup::from_table(x2)?;
        let n2 = x2.order();
        let action = GroupAction::new(x1.clone(), n2, action)?;
        let boundary = GroupHom::new(x2, x1, boundary)?;
        Self::new(action, boundary)
    }

    /// `D(G)`: `X1 = X2 = G`, conjugation action, identity boundary.
    pub fn drinfeld_double(g: &FiniteGroup) -> Self {
        Self::new(GroupAction::conjugation(g), GroupHom::identity(g))
            .expect("the Drinfeld double satisfies the crossed module axioms")
    }

    /// `m^g`
    pub fn act(&self, m: usize, g: usize) -> usize {
        self.action.apply(m, g)
    }

    pub fn d(&self, m: usize) -> usize {
        self.boundary.apply(m)
    }

    pub fn is_modular_boundary(&self) -> bool {
        self.boundary.is_bijective()
    }

    /// The action of `coker d` on `ker d`, `k^(Ig) = k^g`, on kernel positions.
    pub fn coker_action_on_kernel(&self) -> Result<GroupAction> {
        let k = &self.sub.kernel;
        let coker = &self.sub.coker;
        let mut perms = Vec::with_capacity(coker.group.order());
        for coset in &coker.cosets {
            let image_of = |g: usize| -> Vec<usize> {
                k.elements
                    .iter()
                    .map(|&x| k.index_of(self.act(x, g)).expect("ker d is mu-stable"))
                    .collect()
            };
            let first = image_of(coset[0]);
            if let Some(&g) = coset.iter().find(|&&g| image_of(g) != first) {
                return Err(Error::IllDefined(format!(
                    "representatives {} and {g} of a coset act differently on ker d",
                    coset[0]
                )));
            }
            perms.push(first);
        }
        let act = GroupAction::new(coker.group.clone(), k.order(), perms)?;
        act.check_automorphisms(&k.group)?;
        Ok(act)
    }

    /// `G(X) = (ker d)^* x| coker d` with the dual action `chi^c(k) = chi(k^(c^-1))`.
    pub fn tannakian_group(&self, settings: &Settings) -> Result<TannakianGroup> {
        let kernel_group = self.sub.kernel.group.clone();
        let dual = dual_group(&kernel_group, settings)?;
        let coker = self.sub.coker.group.clone();
        let on_kernel = self.coker_action_on_kernel()?;
        let nk = kernel_group.order();
        let mut perms = Vec::with_capacity(coker.order());
        for cc in coker.elements() {
            let cinv = coker.inv(cc);
            let mut perm = Vec::with_capacity(nk);
            for chi in 0..nk {
                let row: Vec<_> = (0..nk)
                    .map(|k| dual.pairing(chi, on_kernel.apply(k, cinv)))
                    .collect();
                perm.push(dual.find(&row, 1e-6).ok_or_else(|| {
                    Error::IllDefined("dual action leaves the character group".into())
                })?);
            }
            perms.push(perm);
        }
        let dual_action = GroupAction::new(coker.clone(), nk, perms)?;
        let product = semidirect_product(&dual.group, &coker, &dual_action)?;
        let labels = product
            .group
            .elements()
            .map(|x| product.components(x))
            .collect();
        Ok(TannakianGroup {
            group: product.group.clone(),
            labels,
            dual,
            dual_action,
            product,
        })
    }

    /// `Xbar = (I, X2/K, mubar, dbar)`.
    pub fn quotient_xbar(&self) -> Result<XBar> {
        let image = &self.sub.image;
        let projection = self.x2.quotient(&self.sub.kernel.elements)?;
        let mut perms = Vec::with_capacity(image.order());
        for &g in &image.elements {
            let mut perm = Vec::with_capacity(projection.cosets.len());
            for coset in &projection.cosets {
                let target = projection.coset_of(self.act(coset[0], g));
                if coset
                    .iter()
                    .any(|&m| projection.coset_of(self.act(m, g)) != target)
                {
                    return Err(Error::IllDefined(
                        "mubar depends on the coset representative".into(),
                    ));
                }
                perm.push(target);
            }
            perms.push(perm);
        }
        let bar_boundary: Vec<usize> = projection
            .cosets
            .iter()
            .map(|coset| {
                image
                    .index_of(self.d(coset[0]))
                    .expect("d lands in its image")
            })
            .collect();
        let action = GroupAction::new(image.group.clone(), projection.cosets.len(), perms)?;
        let boundary = GroupHom::new(projection.group.clone(), image.group.clone(), bar_boundary)?;
        let xmod = CrossedModule::new(action, boundary)?;
        if !xmod.boundary.is_bijective() {
            return Err(Error::InvariantFailure("dbar is not a bijection".into()));
        }
        Ok(XBar {
            xmod,
            projection,
            inclusion: image.elements.clone(),
        })
    }

    /// `X' = (I, X2, mu restricted to I, d)`.
    pub fn restricted_xprime(&self) -> Result<CrossedModule> {
        let image = &self.sub.image;
        let perms = image
            .elements
            .iter()
            .map(|&g| self.x2.elements().map(|m| self.act(m, g)).collect())
            .collect();
        let action = GroupAction::new(image.group.clone(), self.x2.order(), perms)?;
        let map = self
            .x2
            .elements()
            .map(|m| image.index_of(self.d(m)).expect("d lands in its image"))
            .collect();
        let boundary = GroupHom::new(self.x2.clone(), image.group.clone(), map)?;
        CrossedModule::new(action, boundary)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TannakianGroup {
    pub group: FiniteGroup,
    /// element index -> (character of K, element of C)
    pub labels: Vec<(usize, usize)>,
    pub dual: DualGroup,
    pub dual_action: GroupAction,
    pub product: SemidirectProduct,
}

impl TannakianGroup {
    pub fn index(&self, chi: usize, c: usize) -> usize {
        self.product.index(chi, c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct XBar {
    pub xmod: CrossedModule,
    /// `X2 -> X2/K`, cosets ordered by smallest member.
    pub projection: Quotient,
    /// Elements of `X1` making up `I`, in the order used as `Xbar.x1`.
    pub inclusion: Vec<usize>,
}
