use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::linalg::{c, round_guarded, zeros, Mat, C64};
use crate::rep::object::{double_braiding_residual, hermitian_form, tensor_character};
use crate::rep::simple::SimpleTable;
use crate::INT_GUARD;

/// Fusion multiplicities `N_{pq}^r`, stored flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fusion {
    pub rank: usize,
    coeffs: Vec<usize>,
}

impl Fusion {
    pub fn new(rank: usize, coeffs: Vec<usize>) -> Self {
        assert_eq!(coeffs.len(), rank * rank * rank);
        Self { rank, coeffs }
    }

    pub fn get(&self, p: usize, q: usize, r: usize) -> usize {
        self.coeffs[(p * self.rank + q) * self.rank + r]
    }

    /// Non-zero entries as `(p, q, r, N)`.
    pub fn triples(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.rank;
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let v = self.get(p, q, r);
                    if v != 0 {
                        out.push((p, q, r, v));
                    }
                }
            }
        }
        out
    }
}

/// Dimensions, twists, normalized S-matrix, fusion and transparency of one category.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    pub dims: Vec<usize>,
    pub twists: Vec<C64>,
    /// `S_pq = s_pq / |X|`
    pub s: Mat,
    pub fusion: Fusion,
    pub transparent: Vec<bool>,
    pub unit: usize,
    /// `|X| = |X1| |ker d|`
    pub abs_order: usize,
    /// `D = |ker d| |coker d|`
    pub vacuum_dim: usize,
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn det_s(&self) -> C64 {
        self.s.determinant()
    }

    pub fn transparent_set(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&p| self.transparent[p]).collect()
    }

    pub fn is_modular(&self) -> bool {
        self.det_s().norm() > INT_GUARD
    }

    /// For every simple in the collinear set: transparent, trivial twist,
    /// natural-number dimension.
    pub fn is_modularizable(&self, tol: f64) -> bool {
        let collinear = collinear_set(self, tol);
        collinear.iter().all(|&p| {
            self.transparent[p] && (self.twists[p] - c(1.0)).norm() < tol && self.dims[p] > 0
        })
    }
}

pub fn fusion(x: &CrossedModule, table: &SimpleTable) -> Result<Fusion> {
    let n = table.len();
    let dims = table.dims();
    let mut coeffs = Vec::with_capacity(n * n * n);
    for (p, a) in table.simples.iter().enumerate() {
        for (q, b) in table.simples.iter().enumerate() {
            let prod = tensor_character(x, &a.character, &b.character);
            let mut weighted = 0;
            for (r, s) in table.simples.iter().enumerate() {
                let z = hermitian_form(x, &s.character, &prod);
                let k = match round_guarded(z, INT_GUARD) {
                    Some(k) if k >= 0 => k as usize,
                    _ => {
                        return Err(Error::NonIntegerMultiplicity {
                            context: format!("N_({p},{q})^{r}"),
                            value: format!("{z}"),
                        })
                    }
                };
                weighted += k * dims[r];
                coeffs.push(k);
            }
            if weighted != dims[p] * dims[q] {
                return Err(Error::InvariantFailure(format!(
                    "fusion of {p} and {q} has dimension {weighted}, expected {}",
                    dims[p] * dims[q]
                )));
            }
        }
    }
    let fusion = Fusion::new(n, coeffs);
    for q in 0..n {
        for r in 0..n {
            if fusion.get(SimpleTable::UNIT, q, r) != usize::from(q == r) {
                return Err(Error::InvariantFailure(
                    "unit does not fuse trivially".into(),
                ));
            }
            for p in 0..n {
                if fusion.get(p, q, r) != fusion.get(q, p, r) {
                    return Err(Error::InvariantFailure("fusion is not commutative".into()));
                }
            }
        }
    }
    Ok(fusion)
}

/// `S_pq = 1/|X| sum_{m,n} psi_p(m, d n) psi_q(n, d m)`
pub fn s_matrix(x: &CrossedModule, table: &SimpleTable) -> Mat {
    let n = table.len();
    let abs = x.sub.abs_order as f64;
    let bd: Vec<usize> = x.x2.elements().map(|m| x.d(m)).collect();
    let mut s = zeros(n, n);
    for (p, a) in table.simples.iter().enumerate() {
        for (q, b) in table.simples.iter().enumerate() {
            let mut acc = c(0.0);
            for m in x.x2.elements() {
                for nn in x.x2.elements() {
                    acc += a.character.get(m, bd[nn]) * b.character.get(nn, bd[m]);
                }
            }
            s[(p, q)] = acc / abs;
        }
    }
    s
}

/// Simples whose S-row is `d_p` times the unit row.
pub fn collinear_set(md: &ModularData, tol: f64) -> Vec<usize> {
    let n = md.rank();
    (0..n)
        .filter(|&p| {
            (0..n).all(|q| (md.s[(p, q)] - md.s[(md.unit, q)] * md.dims[p] as f64).norm() < tol)
        })
        .collect()
}

/// Multiplicities `mu_p = D [S^2]_{1p}` of the simples in the vacuum object.
pub fn vacuum_multiplicities(md: &ModularData) -> Result<Vec<usize>> {
    let s2 = &md.s * &md.s;
    (0..md.rank())
        .map(|p| {
            let z = s2[(md.unit, p)] * md.vacuum_dim as f64;
            match round_guarded(z, INT_GUARD) {
                Some(k) if k >= 0 => Ok(k as usize),
                _ => Err(Error::NonIntegerMultiplicity {
                    context: format!("vacuum multiplicity of {p}"),
                    value: format!("{z}"),
                }),
            }
        })
        .collect()
}

/// Transparent simples by row collinearity, cross-checked against the
/// vacuum multiplicities (`mu_p = d_p` on the set, `0` off it) and against
/// trivial twists.
pub fn transparent_simples(md: &ModularData, tol: f64) -> Result<Vec<usize>> {
    let collinear = collinear_set(md, tol);
    let mu = vacuum_multiplicities(md)?;
    for p in 0..md.rank() {
        let expected = if collinear.contains(&p) {
            md.dims[p]
        } else {
            0
        };
        if mu[p] != expected {
            return Err(Error::CriterionMismatch {
                index: p,
                detail: format!(
                    "collinearity says {}, vacuum multiplicity {}",
                    collinear.contains(&p),
                    mu[p]
                ),
            });
        }
    }
    for &p in &collinear {
        if (md.twists[p] - c(1.0)).norm() > tol {
            return Err(Error::InvariantFailure(format!(
                "transparent simple {p} has twist {}",
                md.twists[p]
            )));
        }
    }
    Ok(collinear)
}

/// Transparency by matrices: `R_{q,p} R_{p,q} = id` for every simple `q`.
pub fn transparent_by_braiding(x: &CrossedModule, table: &SimpleTable, tol: f64) -> Vec<bool> {
    table
        .simples
        .iter()
        .map(|p| {
            table
                .simples
                .iter()
                .all(|q| double_braiding_residual(x, &p.object, &q.object) < tol)
        })
        .collect()
}

/// Computes S, fusion and transparency for a simple table.
pub fn modular_data(x: &CrossedModule, table: &SimpleTable, tol: f64) -> Result<ModularData> {
    let s = s_matrix(x, table);
    let asym = (&s - s.transpose())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if asym > tol {
        return Err(Error::InvariantFailure(format!(
            "S is not symmetric ({asym:e})"
        )));
    }
    let dims = table.dims();
    let abs = x.sub.abs_order as f64;
    for (q, &d) in dims.iter().enumerate() {
        if (s[(SimpleTable::UNIT, q)] - c(d as f64 / abs)).norm() > tol {
            return Err(Error::InvariantFailure(format!("S_(1,{q}) != d_{q}/|X|")));
        }
    }
    let mut md = ModularData {
        twists: table.twists(),
        fusion: fusion(x, table)?,
        transparent: vec![false; dims.len()],
        dims,
        s,
        unit: SimpleTable::UNIT,
        abs_order: x.sub.abs_order,
        vacuum_dim: x.sub.d,
    };
    for p in transparent_simples(&md, tol)? {
        md.transparent[p] = true;
    }
    Ok(md)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;
    use crate::rep::object::double_braiding;
    use crate::rep::simple::simple_objects;
    use crate::Settings;

    fn data(x: &CrossedModule) -> (SimpleTable, ModularData) {
        let t = simple_objects(x, &Settings::default()).unwrap();
        let md = modular_data(x, &t, 1e-8).unwrap();
        (t, md)
    }

    #[test]
    fn double_of_z2_s_matrix() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2));
        let (_, md) = data(&x);
        let h = [
            [1., 1., 1., 1.],
            [1., 1., -1., -1.],
            [1., -1., 1., -1.],
            [1., -1., -1., 1.],
        ];
        for p in 0..4 {
            for q in 0..4 {
                assert!((md.s[(p, q)] - c(h[p][q] / 2.0)).norm() < 1e-10);
            }
        }
        assert_eq!(md.transparent_set(), vec![0]);
        // group-like fusion (a, chi)(b, xi) = (a + b, chi xi)
        for p in 0..4 {
            for q in 0..4 {
                let r = (((p / 2) ^ (q / 2)) << 1) | ((p % 2) ^ (q % 2));
                assert_eq!(md.fusion.get(p, q, r), 1);
            }
        }
    }

    #[test]
    fn braiding_trace_matches_character_formula() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2));
        let (t, md) = data(&x);
        for (p, a) in t.simples.iter().enumerate() {
            for (q, b) in t.simples.iter().enumerate() {
                let tr = double_braiding(&x, &a.object, &b.object).trace();
                assert!((tr - md.s[(p, q)] * md.abs_order as f64).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn trivial_module_s_is_one() {
        let (_, md) = data(&corpus::trivial());
        assert_eq!(md.s.shape(), (1, 1));
        assert!((md.s[(0, 0)] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn trivial_boundary_everything_transparent() {
        let x = corpus::trivial_boundary_z2();
        let (t, md) = data(&x);
        for p in 0..md.rank() {
            for q in 0..md.rank() {
                let e = (md.dims[p] * md.dims[q]) as f64 / md.abs_order as f64;
                assert!((md.s[(p, q)] - c(e)).norm() < 1e-10);
            }
        }
        assert_eq!(md.transparent_set().len(), md.rank());
        assert_eq!(transparent_by_braiding(&x, &t, 1e-8), md.transparent);
    }

    #[test]
    fn x4_transparent_count() {
        let x = corpus::x4_double_cover();
        let (t, md) = data(&x);
        let tset = md.transparent_set();
        assert_eq!(tset.len(), 4);
        assert_eq!(
            tset.iter().map(|&p| md.dims[p] * md.dims[p]).sum::<usize>(),
            4
        );
        assert_eq!(transparent_by_braiding(&x, &t, 1e-8), md.transparent);
        assert!(md.is_modularizable(1e-8));
        assert!(!md.is_modular());
    }

    #[test]
    fn criterion_mismatch_detected() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::cyclic(2));
        let (_, mut md) = data(&x);
        // pretend the vacuum were larger: mu no longer matches collinearity
        md.vacuum_dim = 2;
        assert!(matches!(
            transparent_simples(&md, 1e-8),
            Err(Error::CriterionMismatch { .. })
        ));
    }

    #[test]
    fn fusion_dimension_rule_on_double_of_s3() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let (_, md) = data(&x);
        for p in 0..md.rank() {
            for q in 0..md.rank() {
                let total: usize = (0..md.rank())
                    .map(|r| md.fusion.get(p, q, r) * md.dims[r])
                    .sum();
                assert_eq!(total, md.dims[p] * md.dims[q]);
            }
        }
        assert!(md.is_modular());
    }
}
