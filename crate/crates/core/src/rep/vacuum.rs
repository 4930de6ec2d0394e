//! The vacuum object `V_K = k[K] (x) k(C)` and its Frobenius structure.
//!
//! Basis vectors `(k, Iy)` are indexed `k_pos * |C| + c`. In this basis the
//! object structure is `P(m)(k, Iy) = delta(m^y, k) (k, Iy)` and
//! `Q(g)(k, Iy) = (k, Igy)`, and the multiplication is
//! `(k, c)(k', c') = delta(c, c') (k k', c')`.
//!
//! The counit is `eps(k, c) = delta(k, e) / |C|`, so that `eps . eta = 1`,
//! and the coproduct is the dual of the multiplication under `eps . m`:
//! `Delta(k, c) = |C| sum_{k'} (k k', c) (x) (k'^-1, c)`, giving
//! `m . Delta = |K||C| id`.

use crate::crossed::CrossedModule;
use crate::linalg::{apply_kron, c, identity, kron, max_abs, max_abs_diff, zeros, Mat, C64};
use crate::rep::object::{braiding, RepObject};

#[derive(Debug, Clone, PartialEq)]
pub struct VacuumAlgebra {
    pub object: RepObject,
    /// `A (x) A -> A`
    pub mult: Mat,
    /// `1 -> A`
    pub unit: Mat,
    /// `A -> A (x) A`
    pub comult: Mat,
    /// `A -> 1`
    pub counit: Mat,
    /// basis index -> (position in K, coset index in C)
    pub basis: Vec<(usize, usize)>,
}

impl VacuumAlgebra {
    pub fn dim(&self) -> usize {
        self.object.dim
    }
}

pub fn vacuum_object(x: &CrossedModule) -> VacuumAlgebra {
    let kernel = &x.sub.kernel;
    let coker = &x.sub.coker;
    let nk = kernel.order();
    let nc = coker.group.order();
    let n = nk * nc;
    let idx = |k: usize, cc: usize| k * nc + cc;
    let basis: Vec<(usize, usize)> = (0..nk)
        .flat_map(|k| (0..nc).map(move |cc| (k, cc)))
        .collect();

    let mut p = vec![zeros(n, n); x.x2.order()];
    for (k, &kel) in kernel.elements.iter().enumerate() {
        for cc in 0..nc {
            let y = coker.representative(cc);
            // m^y = k  <=>  m = k^(y^-1)
            let m = x.act(kel, x.x1.inv(y));
            p[m][(idx(k, cc), idx(k, cc))] = c(1.0);
        }
    }
    let q =
        x.x1.elements()
            .map(|g| {
                let cg = coker.coset_of(g);
                let mut mat = zeros(n, n);
                for k in 0..nk {
                    for cc in 0..nc {
                        mat[(idx(k, coker.group.mul(cg, cc)), idx(k, cc))] = c(1.0);
                    }
                }
                mat
            })
            .collect();
    let object = RepObject { dim: n, p, q };

    let kg = &kernel.group;
    let mut mult = zeros(n, n * n);
    let mut comult = zeros(n * n, n);
    let mut unit = zeros(n, 1);
    let mut counit = zeros(1, n);
    for k in 0..nk {
        for cc in 0..nc {
            let a = idx(k, cc);
            for k2 in 0..nk {
                mult[(idx(kg.mul(k, k2), cc), a * n + idx(k2, cc))] = c(1.0);
                let left = idx(kg.mul(k, k2), cc);
                let right = idx(kg.inv(k2), cc);
                comult[(left * n + right, a)] += c(nc as f64);
            }
        }
    }
    for cc in 0..nc {
        unit[(idx(0, cc), 0)] = c(1.0);
        counit[(0, idx(0, cc))] = c(1.0 / nc as f64);
    }
    VacuumAlgebra {
        object,
        mult,
        unit,
        comult,
        counit,
        basis,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    Associativity,
    Unitality,
    Commutativity,
    FrobeniusLeft,
    FrobeniusRight,
    Special,
    Symmetric,
    Coalgebra,
    Morphisms,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Associativity => "associativity",
            Law::Unitality => "unitality",
            Law::Commutativity => "braided commutativity",
            Law::FrobeniusLeft => "frobenius (id x m)(Delta x id) = Delta m",
            Law::FrobeniusRight => "frobenius (m x id)(id x Delta) = Delta m",
            Law::Special => "special",
            Law::Symmetric => "symmetric",
            Law::Coalgebra => "coassociativity and counit",
            Law::Morphisms => "structure maps are morphisms",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawCheck {
    pub law: Law,
    pub residual: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusReport {
    pub laws: Vec<LawCheck>,
    /// `eps . eta = beta_1`
    pub beta_unit: C64,
    /// `m . Delta = beta_A id`
    pub beta_algebra: C64,
}

impl FrobeniusReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> Vec<&LawCheck> {
        self.laws.iter().filter(|l| !l.passed).collect()
    }

    pub fn residual(&self, law: Law) -> Option<f64> {
        self.laws.iter().find(|l| l.law == law).map(|l| l.residual)
    }
}

pub fn check_frobenius(x: &CrossedModule, alg: &VacuumAlgebra, tol: f64) -> FrobeniusReport {
    let n = alg.dim();
    let id = identity(n);
    let (m, eta, delta, eps) = (&alg.mult, &alg.unit, &alg.comult, &alg.counit);
    let mut laws = Vec::new();
    let mut push = |law: Law, residual: f64| {
        laws.push(LawCheck {
            law,
            residual,
            passed: residual < tol,
        })
    };

    // m(m (x) id) and m(id (x) m) on a_i (x) a_j (x) a_l
    let mut assoc: f64 = 0.0;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let (mut left, mut right) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                    for a in 0..n {
                        left += m[(k, a * n + l)] * m[(a, i * n + j)];
                        right += m[(k, i * n + a)] * m[(a, j * n + l)];
                    }
                    assoc = assoc.max((left - right).norm());
                }
            }
        }
    }
    push(Law::Associativity, assoc);
    push(
        Law::Unitality,
        max_abs_diff(&(m * kron(eta, &id)), &id).max(max_abs_diff(&(m * kron(&id, eta)), &id)),
    );
    let r_aa = braiding(x, &alg.object, &alg.object);
    push(Law::Commutativity, max_abs_diff(&(m * r_aa), m));
    // (id (x) m)(delta (x) id) and (m (x) id)(id (x) delta) against delta m,
    // entry (a (x) c, i (x) j)
    let delta_m = delta * m;
    let (mut frob_left, mut frob_right): (f64, f64) = (0.0, 0.0);
    for a in 0..n {
        for cc in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let (mut left, mut right) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
                    for b in 0..n {
                        left += delta[(a * n + b, i)] * m[(cc, b * n + j)];
                        right += m[(a, i * n + b)] * delta[(b * n + cc, j)];
                    }
                    let target = delta_m[(a * n + cc, i * n + j)];
                    frob_left = frob_left.max((left - target).norm());
                    frob_right = frob_right.max((right - target).norm());
                }
            }
        }
    }
    push(Law::FrobeniusLeft, frob_left);
    push(Law::FrobeniusRight, frob_right);

    let beta_unit = (eps * eta)[(0, 0)];
    let m_delta = m * delta;
    let beta_algebra = m_delta[(0, 0)];
    let mut special = max_abs(&(m_delta - &id * beta_algebra));
    if beta_unit.norm() < tol || beta_algebra.norm() < tol {
        special = f64::INFINITY;
    }
    push(Law::Special, special);

    // Phi_1[i][j] = eps(m(a_j (x) a_i)), Phi_2[i][j] = eps(m(a_i (x) a_j))
    let form = eps * m;
    let mut symmetric: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            symmetric = symmetric.max((form[(0, j * n + i)] - form[(0, i * n + j)]).norm());
        }
    }
    push(Law::Symmetric, symmetric);

    let coassoc = max_abs_diff(
        &apply_kron(delta, &id, delta),
        &apply_kron(&id, delta, delta),
    );
    let counit = max_abs_diff(&(kron(eps, &id) * delta), &id)
        .max(max_abs_diff(&(kron(&id, eps) * delta), &id));
    push(Law::Coalgebra, coassoc.max(counit));

    let a = &alg.object;
    let aa = a.tensor(a, x);
    let one = RepObject::unit(x);
    let morph = aa
        .morphism_residual(a, m)
        .max(one.morphism_residual(a, eta))
        .max(a.morphism_residual(&aa, delta))
        .max(a.morphism_residual(&one, eps));
    push(Law::Morphisms, morph);

    FrobeniusReport {
        laws,
        beta_unit,
        beta_algebra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;

    #[test]
    fn x4_vacuum_character() {
        let x = corpus::x4_double_cover();
        let alg = vacuum_object(&x);
        assert_eq!(alg.dim(), 4);
        alg.object.validate(&x, 1e-12).unwrap();
        let ch = alg.object.character(&x);
        for m in 0..4 {
            for g in 0..4 {
                let e = if m % 2 == 0 && g % 2 == 0 { 2.0 } else { 0.0 };
                assert!((ch.get(m, g) - c(e)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn x4_frobenius_scalars() {
        let x = corpus::x4_double_cover();
        let report = check_frobenius(&x, &vacuum_object(&x), 1e-8);
        assert!(report.all_passed(), "{:?}", report.failures());
        assert!((report.beta_unit - c(1.0)).norm() < 1e-12);
        assert!((report.beta_unit * report.beta_algebra - c(4.0)).norm() < 1e-12);
    }

    #[test]
    fn double_vacuum_is_unit() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let alg = vacuum_object(&x);
        assert_eq!(alg.object, RepObject::unit(&x));
        assert!(check_frobenius(&x, &alg, 1e-8).all_passed());
    }

    #[test]
    fn corrupted_multiplication_breaks_commutativity() {
        let x = corpus::x4_double_cover();
        let mut alg = vacuum_object(&x);
        // (k0, c0) * (k0, c1) = 0; make it non-zero on one side only
        let n = alg.dim();
        alg.mult[(0, 0 * n + 1)] = c(1.0);
        let report = check_frobenius(&x, &alg, 1e-8);
        let comm = report.residual(Law::Commutativity).unwrap();
        assert!(comm > 0.5, "{comm}");
        assert!(!report.all_passed());
    }

    #[test]
    fn vacuum_with_nontrivial_coker_action() {
        let x = corpus::inversion_on_z3();
        let alg = vacuum_object(&x);
        alg.object.validate(&x, 1e-12).unwrap();
        assert!(check_frobenius(&x, &alg, 1e-8).all_passed());
    }
}
