//! Ordinary character theory by Burnside's class-sum method, plus explicit
//! unitary matrices for each irreducible character.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{
    c, hermitian_eigenspace, max_abs_diff, smallest_singular_vector, zeros, Mat, C64,
};
use crate::{Settings, INT_GUARD, RETRY_BUDGET};

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub group_order: usize,
    /// Classes sorted by (size, smallest member); representative = first entry.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `chars[i][j]` is the value of the i-th irreducible character on class j.
    pub chars: Vec<Vec<C64>>,
    pub degrees: Vec<usize>,
}

impl CharacterTable {
    pub fn num_irreps(&self) -> usize {
        self.chars.len()
    }

    pub fn value(&self, chi: usize, g: usize) -> C64 {
        self.chars[chi][self.class_of[g]]
    }

    /// Row/column orthogonality residual, max over all entries.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.group_order as f64;
        let r = self.num_irreps();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in 0..r {
                let s: C64 = self
                    .classes
                    .iter()
                    .enumerate()
                    .map(|(k, cl)| self.chars[i][k] * self.chars[j][k].conj() * cl.len() as f64)
                    .sum::<C64>()
                    / n;
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
                // column orthogonality
                let t: C64 = (0..r)
                    .map(|p| self.chars[p][i] * self.chars[p][j].conj())
                    .sum();
                let target = if i == j {
                    n / self.classes[i].len() as f64
                } else {
                    0.0
                };
                worst = worst.max((t - target).norm());
            }
        }
        worst
    }
}

fn class_coefficients(
    g: &FiniteGroup,
    classes: &[Vec<usize>],
    class_of: &[usize],
) -> Vec<DMatrix<f64>> {
    let r = classes.len();
    let mut mats = vec![DMatrix::<f64>::zeros(r, r); r];
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            for &x in ci {
                for &y in cj {
                    let z = g.mul(x, y);
                    let k = class_of[z];
                    if classes[k][0] == z {
                        mats[i][(j, k)] += 1.0;
                    }
                }
            }
        }
    }
    mats
}

fn sort_key(degree: usize, row: &[C64]) -> (usize, Vec<(i64, i64)>) {
    let q = |x: f64| (x * 1e6).round() as i64;
    (degree, row.iter().map(|z| (-q(z.re), -q(z.im))).collect())
}

pub fn character_table(g: &FiniteGroup, settings: &Settings) -> Result<CharacterTable> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let r = classes.len();
    let mut class_of = vec![0; n];
    for (k, cl) in classes.iter().enumerate() {
        for &x in cl {
            class_of[x] = k;
        }
    }
    let coeffs = class_coefficients(g, &classes, &class_of);
    let sizes: Vec<f64> = classes.iter().map(|c| c.len() as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);

    for _attempt in 0..RETRY_BUDGET {
        let mut combo = DMatrix::<f64>::zeros(r, r);
        for m in &coeffs {
            combo += m * rng.random_range(-1.0..1.0);
        }
        let eig = combo.complex_eigenvalues();
        let scale = 1.0 + eig.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let separated =
            (0..r).all(|a| ((a + 1)..r).all(|b| (eig[a] - eig[b]).norm() > 1e-6 * scale));
        if !separated {
            continue;
        }
        let combo_c = combo.map(c);
        let mut rows: Vec<(usize, Vec<C64>)> = Vec::with_capacity(r);
        let mut ok = true;
        for lambda in eig.iter() {
            let shifted = &combo_c - Mat::identity(r, r) * *lambda;
            let (v, smin) = smallest_singular_vector(&shifted);
            if smin > 1e-7 * scale || v[0].norm() < 1e-9 {
                ok = false;
                break;
            }
            let w: Vec<C64> = v.iter().map(|x| x / v[0]).collect();
            let norm: f64 = w.iter().zip(&sizes).map(|(x, s)| x.norm_sqr() / s).sum();
            let deg_f = (n as f64 / norm).sqrt();
            let deg = deg_f.round();
            if (deg - deg_f).abs() > INT_GUARD || deg < 1.0 {
                ok = false;
                break;
            }
            let row: Vec<C64> = w.iter().zip(&sizes).map(|(x, s)| x * deg / s).collect();
            rows.push((deg as usize, row));
        }
        if !ok {
            continue;
        }
        rows.sort_by(|a, b| sort_key(a.0, &a.1).cmp(&sort_key(b.0, &b.1)));
        let table = CharacterTable {
            group_order: n,
            classes: classes.clone(),
            class_of: class_of.clone(),
            degrees: rows.iter().map(|r| r.0).collect(),
            chars: rows.into_iter().map(|r| r.1).collect(),
        };
        let sum_sq: usize = table.degrees.iter().map(|d| d * d).sum();
        if sum_sq != n || table.orthogonality_residual() > settings.tol {
            continue;
        }
        return Ok(table);
    }
    Err(Error::NumericalDegeneracy(format!(
        "character table of a group of order {n} not separated after {RETRY_BUDGET} attempts"
    )))
}

/// Character group of a finite abelian group, with its evaluation pairing.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGroup {
    pub group: FiniteGroup,
    /// `values[chi][a]`
    pub values: Vec<Vec<C64>>,
}

impl DualGroup {
    pub fn pairing(&self, chi: usize, a: usize) -> C64 {
        self.values[chi][a]
    }

    /// Index of the character matching `row` pointwise within `tol`.
    pub fn find(&self, row: &[C64], tol: f64) -> Option<usize> {
        self.values
            .iter()
            .position(|v| v.iter().zip(row).all(|(x, y)| (x - y).norm() < tol))
    }
}

pub fn dual_group(a: &FiniteGroup, settings: &Settings) -> Result<DualGroup> {
    if !a.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let table = character_table(a, settings)?;
    let n = a.order();
    let values: Vec<Vec<C64>> = (0..n)
        .map(|chi| a.elements().map(|x| table.value(chi, x)).collect())
        .collect();
    let lookup = DualGroup {
        group: FiniteGroup::trivial(),
        values: values.clone(),
    };
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<C64> = (0..n).map(|x| values[i][x] * values[j][x]).collect();
            rows[i][j] = lookup.find(&prod, 1e-6).ok_or_else(|| {
                Error::NumericalDegeneracy("product of characters not found in table".into())
            })?;
        }
    }
    Ok(DualGroup {
        group: FiniteGroup::from_table(&rows)?,
        values,
    })
}

fn left_regular(g: &FiniteGroup, h: usize) -> Mat {
    let n = g.order();
    let mut m = zeros(n, n);
    for x in g.elements() {
        m[(g.mul(h, x), x)] = c(1.0);
    }
    m
}

fn right_regular(g: &FiniteGroup, h: usize) -> Mat {
    let n = g.order();
    let mut m = zeros(n, n);
    for x in g.elements() {
        m[(g.mul(x, g.inv(h)), x)] = c(1.0);
    }
    m
}

/// Unitary matrices `sigma(h)` of the irreducible representation with
/// character `chi`, obtained by cutting the isotypic component of the
/// regular representation with a random hermitian element of its commutant.
pub fn irreducible_representation(
    g: &FiniteGroup,
    table: &CharacterTable,
    chi: usize,
    settings: &Settings,
) -> Result<Vec<Mat>> {
    let deg = table.degrees[chi];
    if deg == 1 {
        return Ok(g
            .elements()
            .map(|h| Mat::from_element(1, 1, table.value(chi, h)))
            .collect());
    }
    let n = g.order();
    let lefts: Vec<Mat> = g.elements().map(|h| left_regular(g, h)).collect();
    let mut proj = zeros(n, n);
    for h in g.elements() {
        proj += &lefts[h] * (table.value(chi, h).conj() * (deg as f64 / n as f64));
    }
    let isotypic = hermitian_eigenspace(&proj, 1.0, 0.5);
    if isotypic.ncols() != deg * deg {
        return Err(Error::NumericalDegeneracy(format!(
            "isotypic component has dimension {} instead of {}",
            isotypic.ncols(),
            deg * deg
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed ^ (chi as u64).wrapping_mul(0x9e37_79b9));
    for _attempt in 0..RETRY_BUDGET {
        let mut coeff = vec![C64::new(0.0, 0.0); n];
        for h in g.elements() {
            let hi = g.inv(h);
            if hi < h {
                continue;
            }
            if hi == h {
                coeff[h] = c(rng.random_range(-1.0..1.0));
            } else {
                let z = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                coeff[h] = z;
                coeff[hi] = z.conj();
            }
        }
        let mut commutant = zeros(n, n);
        for h in g.elements() {
            commutant += right_regular(g, h) * coeff[h];
        }
        let restricted = isotypic.adjoint() * commutant * &isotypic;
        let eig = SymmetricEigen::new(restricted);
        let mut order: Vec<usize> = (0..deg * deg).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let ev = |k: usize| eig.eigenvalues[order[k]];
        if ev(deg - 1) - ev(0) > 1e-6 || ev(deg) - ev(deg - 1) < 1e-4 {
            continue;
        }
        let mut y = zeros(deg * deg, deg);
        for k in 0..deg {
            y.set_column(k, &eig.eigenvectors.column(order[k]));
        }
        let basis = &isotypic * y;
        let sigma: Vec<Mat> = lefts.iter().map(|l| basis.adjoint() * l * &basis).collect();
        let hom_ok = g.elements().all(|a| {
            g.elements()
                .all(|b| max_abs_diff(&(&sigma[a] * &sigma[b]), &sigma[g.mul(a, b)]) < settings.tol)
        });
        let trace_ok = g
            .elements()
            .all(|h| (sigma[h].trace() - table.value(chi, h)).norm() < settings.tol);
        if hom_ok && trace_ok {
            return Ok(sigma);
        }
    }
    Err(Error::NumericalDegeneracy(format!(
        "could not split the isotypic component of character {chi}"
    )))
}
