//! Representations of `G(X)` as transparent objects of `M(X)`.
//!
//! A representation `rho` of `G(X) = K^* x| C` becomes the object with
//! `P(m) = 1/|K| sum_chi chi(m) rho(chi, 1)` for `m` in `K` (zero elsewhere)
//! and `Q(g) = rho(1, Ig)`.

use crate::crossed::{CrossedModule, TannakianGroup};
use crate::error::{Error, Result};
use crate::group::{character_table, irreducible_representation, FiniteGroup};
use crate::linalg::{c, max_abs_diff, zeros, Mat};
use crate::rep::object::RepObject;
use crate::Settings;

pub fn functor_f_from_gx(x: &CrossedModule, gx: &TannakianGroup, rho: &[Mat]) -> Result<RepObject> {
    check_representation(&gx.group, rho)?;
    let n = rho[0].nrows();
    let kernel = &x.sub.kernel;
    let nk = kernel.order() as f64;
    let p =
        x.x2.elements()
            .map(|m| match kernel.index_of(m) {
                Some(k) => {
                    (0..kernel.order()).fold(zeros(n, n), |acc, chi| {
                        acc + &rho[gx.index(chi, 0)] * gx.dual.pairing(chi, k)
                    }) / c(nk)
                }
                None => zeros(n, n),
            })
            .collect();
    let q =
        x.x1.elements()
            .map(|g| rho[gx.index(0, x.sub.coker.coset_of(g))].clone())
            .collect();
    Ok(RepObject { dim: n, p, q })
}

fn check_representation(g: &FiniteGroup, rho: &[Mat]) -> Result<()> {
    if rho.len() != g.order() {
        return Err(Error::Shape {
            field: "representation".into(),
            message: format!("{} matrices for a group of order {}", rho.len(), g.order()),
        });
    }
    let n = rho[0].nrows();
    if rho.iter().any(|m| m.shape() != (n, n)) {
        return Err(Error::Shape {
            field: "representation".into(),
            message: "matrices must be square of one size".into(),
        });
    }
    for a in g.elements() {
        for b in g.elements() {
            let r = max_abs_diff(&(&rho[a] * &rho[b]), &rho[g.mul(a, b)]);
            if r > 1e-8 {
                return Err(Error::NotAHomomorphism {
                    reason: format!("rho({a}) rho({b}) != rho({a}{b}), residual {r:e}"),
                });
            }
        }
    }
    Ok(())
}

/// Left regular representation, `L(g) e_h = e_(gh)`.
pub fn regular_representation(g: &FiniteGroup) -> Vec<Mat> {
    let n = g.order();
    g.elements()
        .map(|a| {
            let mut m = zeros(n, n);
            for h in g.elements() {
                m[(g.mul(a, h), h)] = c(1.0);
            }
            m
        })
        .collect()
}

/// One matrix representation per irreducible character of `G(X)`, in
/// character-table order.
pub fn gx_irreps(gx: &TannakianGroup, settings: &Settings) -> Result<Vec<Vec<Mat>>> {
    let table = character_table(&gx.group, settings)?;
    (0..table.num_irreps())
        .map(|chi| irreducible_representation(&gx.group, &table, chi, settings))
        .collect()
}
