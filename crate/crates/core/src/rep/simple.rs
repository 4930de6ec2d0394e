//! Simple objects of `M(X)` by orbit and stabilizer.
//!
//! A simple object is labelled by an orbit `O` of `X1` on `X2` (represented
//! by its smallest member `m0`) and an irreducible character `sigma` of
//! `Stab(m0)`. It is induced from `sigma`: the fibre over `m in O` is a copy
//! of the representation space, and `Q(g)` moves the fibre over `n` to the
//! fibre over `n^(g^-1)`, twisted by `sigma(h_m g h_n^-1)` where `h_m` is the
//! smallest element with `m0^(h_m) = m`.

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::group::{character_table, irreducible_representation};
use crate::linalg::{c, identity, round_guarded, zeros, C64};
use crate::rep::object::{char_forms, hermitian_form, CharacterX, RepObject};
use crate::{Settings, INT_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SimpleLabel {
    pub orbit_rep: usize,
    pub stab_char: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleObject {
    pub label: SimpleLabel,
    pub dim: usize,
    pub character: CharacterX,
    pub twist: C64,
    pub object: RepObject,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleTable {
    pub simples: Vec<SimpleObject>,
}

impl SimpleTable {
    /// The tensor unit is always the first simple: orbit `{e}`, trivial character.
    pub const UNIT: usize = 0;

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(|s| s.dim).collect()
    }

    pub fn twists(&self) -> Vec<C64> {
        self.simples.iter().map(|s| s.twist).collect()
    }

    pub fn characters(&self) -> Vec<&CharacterX> {
        self.simples.iter().map(|s| &s.character).collect()
    }
}

pub fn simple_objects(x: &CrossedModule, settings: &Settings) -> Result<SimpleTable> {
    let mut simples = Vec::new();
    for orbit in x.action.orbits() {
        let m0 = orbit[0];
        let stab = x.x1.subgroup(&x.action.stabilizer(m0))?;
        let table = character_table(&stab.group, settings)?;
        let transversal: Vec<usize> = orbit
            .iter()
            .map(|&m| {
                x.action
                    .transporter(m0, m)
                    .expect("m lies in the orbit of m0")
            })
            .collect();
        let position = |m: usize| orbit.binary_search(&m).ok();
        let into_stab = |m_pos: usize, g: usize, n_pos: usize| -> usize {
            let s = x.x1.mul(
                x.x1.mul(transversal[m_pos], g),
                x.x1.inv(transversal[n_pos]),
            );
            stab.index_of(s).expect("h_m g h_n^-1 stabilizes m0")
        };

        for chi in 0..table.num_irreps() {
            let sigma = irreducible_representation(&stab.group, &table, chi, settings)?;
            let deg = table.degrees[chi];
            let dim = orbit.len() * deg;

            let mut p = vec![zeros(dim, dim); x.x2.order()];
            for (pos, &m) in orbit.iter().enumerate() {
                p[m].view_mut((pos * deg, pos * deg), (deg, deg))
                    .copy_from(&identity(deg));
            }
            let mut q = Vec::with_capacity(x.x1.order());
            for g in x.x1.elements() {
                let ginv = x.x1.inv(g);
                let mut mat = zeros(dim, dim);
                for (n_pos, &n) in orbit.iter().enumerate() {
                    let m_pos = position(x.act(n, ginv)).expect("orbit is stable");
                    let s = into_stab(m_pos, g, n_pos);
                    mat.view_mut((m_pos * deg, n_pos * deg), (deg, deg))
                        .copy_from(&sigma[s]);
                }
                q.push(mat);
            }
            let object = RepObject { dim, p, q };

            let mut character = CharacterX::zero(x);
            for (pos, &m) in orbit.iter().enumerate() {
                for g in x.x1.elements() {
                    if x.act(m, g) != m {
                        continue;
                    }
                    let s = into_stab(pos, g, pos);
                    character.values[m * character.n1 + g] = table.value(chi, s);
                }
            }
            let twist =
                x.x2.elements()
                    .map(|m| character.get(m, x.d(m)))
                    .sum::<C64>()
                    / dim as f64;
            simples.push(SimpleObject {
                label: SimpleLabel {
                    orbit_rep: m0,
                    stab_char: chi,
                },
                dim,
                character,
                twist,
                object,
            });
        }
    }
    let table = SimpleTable { simples };
    verify_simple_table(x, &table, settings.tol)?;
    Ok(table)
}

/// Max residuals of the bilinear and hermitian Gram matrices against identity.
pub fn gram_residuals(x: &CrossedModule, table: &SimpleTable) -> (f64, f64) {
    let mut bil: f64 = 0.0;
    let mut her: f64 = 0.0;
    for (i, a) in table.simples.iter().enumerate() {
        for (j, b) in table.simples.iter().enumerate() {
            let (u, v) = char_forms(x, &a.character, &b.character);
            let t = c(if i == j { 1.0 } else { 0.0 });
            bil = bil.max((u - t).norm());
            her = her.max((v - t).norm());
        }
    }
    (bil, her)
}

/// `max |psi_p(m, g d(m)) - omega_p psi_p(m, g)|`
pub fn twist_law_residual(x: &CrossedModule, table: &SimpleTable) -> f64 {
    let mut worst: f64 = 0.0;
    for s in &table.simples {
        for m in x.x2.elements() {
            for g in x.x1.elements() {
                let lhs = s.character.get(m, x.x1.mul(g, x.d(m)));
                worst = worst.max((lhs - s.twist * s.character.get(m, g)).norm());
            }
        }
    }
    worst
}

fn verify_simple_table(x: &CrossedModule, table: &SimpleTable, tol: f64) -> Result<()> {
    let (bil, her) = gram_residuals(x, table);
    if bil > tol || her > tol {
        return Err(Error::InvariantFailure(format!(
            "simple characters not orthonormal (bilinear {bil:e}, hermitian {her:e})"
        )));
    }
    let sum: usize = table.dims().iter().map(|d| d * d).sum();
    if sum != x.x1.order() * x.x2.order() {
        return Err(Error::InvariantFailure(format!(
            "sum of squared dimensions {sum} != |X1||X2| = {}",
            x.x1.order() * x.x2.order()
        )));
    }
    let twist = twist_law_residual(x, table);
    if twist > tol {
        return Err(Error::InvariantFailure(format!(
            "twist law residual {twist:e}"
        )));
    }
    for s in &table.simples {
        s.object.validate(x, tol)?;
        let traced = s.object.character(x);
        let diff = traced.max_diff(&s.character);
        if diff > tol {
            return Err(Error::InvariantFailure(format!(
                "character of simple {:?} disagrees with its matrices by {diff:e}",
                s.label
            )));
        }
    }
    Ok(())
}

/// Multiplicities `(psi_p, psi)` of each simple in a character.
pub fn decompose(
    x: &CrossedModule,
    table: &SimpleTable,
    character: &CharacterX,
) -> Result<Vec<usize>> {
    let mut mult = Vec::with_capacity(table.len());
    for (p, s) in table.simples.iter().enumerate() {
        let z = hermitian_form(x, &s.character, character);
        match round_guarded(z, INT_GUARD) {
            Some(k) if k >= 0 => mult.push(k as usize),
            _ => {
                return Err(Error::NonIntegerMultiplicity {
                    context: format!("simple {p} in a decomposition"),
                    value: format!("{z}"),
                })
            }
        }
    }
    let total: usize = mult.iter().zip(table.dims()).map(|(m, d)| m * d).sum();
    let dim = character.dimension();
    if round_guarded(dim, INT_GUARD) != Some(total as i64) {
        return Err(Error::InvariantFailure(format!(
            "multiplicities account for dimension {total}, character has {dim}"
        )));
    }
    Ok(mult)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;

    fn table(x: &CrossedModule) -> SimpleTable {
        simple_objects(x, &Settings::default()).unwrap()
    }

    #[test]
    fn double_of_z2() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2));
        let t = table(&x);
        assert_eq!(t.dims(), vec![1, 1, 1, 1]);
        let expected = [1.0, 1.0, 1.0, -1.0];
        for (w, e) in t.twists().iter().zip(expected) {
            assert!((w - c(e)).norm() < 1e-12);
        }
        // oracle: psi_(a, chi)(m, g) = delta(m, a) chi(g)
        let chi = |k: usize, g: usize| if k == 1 && g == 1 { -1.0 } else { 1.0 };
        for (p, s) in t.simples.iter().enumerate() {
            let (a, k) = (p / 2, p % 2);
            for m in 0..2 {
                for g in 0..2 {
                    let v = if m == a { chi(k, g) } else { 0.0 };
                    assert!((s.character.get(m, g) - c(v)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn double_of_s3() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let t = table(&x);
        assert_eq!(t.dims(), vec![1, 1, 2, 3, 3, 2, 2, 2]);
        assert_eq!(t.dims().iter().map(|d| d * d).sum::<usize>(), 36);
    }

    #[test]
    fn trivial_module_has_one_simple() {
        let t = table(&corpus::trivial());
        assert_eq!(t.dims(), vec![1]);
        assert!((t.simples[0].twist - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn characters_do_not_depend_on_transversal_choice() {
        // replace h_m by h_m s for s in Stab(m0): the formula must give the same value
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let t = table(&x);
        let s = Settings::default();
        for simple in &t.simples {
            let m0 = simple.label.orbit_rep;
            let stab_elems = x.action.stabilizer(m0);
            let stab = x.x1.subgroup(&stab_elems).unwrap();
            let ct = character_table(&stab.group, &s).unwrap();
            for m in x.x2.elements() {
                for g in x.x1.elements() {
                    if x.act(m, g) != m {
                        continue;
                    }
                    let Some(h) = x.action.transporter(m0, m) else {
                        continue;
                    };
                    for &st in &stab_elems {
                        let h2 = x.x1.mul(st, h);
                        assert_eq!(x.act(m0, h2), m);
                        let conj = x.x1.mul(x.x1.mul(h2, g), x.x1.inv(h2));
                        let v = ct.value(simple.label.stab_char, stab.index_of(conj).unwrap());
                        assert!((v - simple.character.get(m, g)).norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn decompose_unit_and_tensor_with_dual() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let t = table(&x);
        let unit = RepObject::unit(&x);
        let m = decompose(&x, &t, &unit.character(&x)).unwrap();
        assert_eq!(m[0], 1);
        assert_eq!(m.iter().sum::<usize>(), 1);
        for s in &t.simples {
            let vv = s.object.tensor(&s.object.dual(&x), &x);
            assert_eq!(decompose(&x, &t, &vv.character(&x)).unwrap()[0], 1);
        }
    }

    #[test]
    fn decompose_rejects_fractional_character() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2));
        let t = table(&x);
        let mut ch = t.simples[1].character.clone();
        ch.values.iter_mut().for_each(|v| *v *= 0.5);
        assert!(matches!(
            decompose(&x, &t, &ch),
            Err(Error::NonIntegerMultiplicity { .. })
        ));
    }
}
