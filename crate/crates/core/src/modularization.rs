//! Modularization of `M(X)` by local modules over the vacuum algebra.
//!
//! An object `V` is induced to the free module `A (x) V`. The restriction
//! functor keeps the summand graded by the trivial coset `I` of `C`, giving
//! a module over `k[K]` in `M(X')`, and the coinvariant functor divides out
//! the `K`-action, landing in `M(Xbar)`. Both steps are realized on the
//! image of an explicit idempotent.

use crate::crossed::{CrossedModule, XBar};
use crate::error::{Error, Result};
use crate::linalg::{
    c, complement_basis, idempotent_coordinates, identity, kron, max_abs_diff, zeros, Mat,
};
use crate::rep::modular::{collinear_set, modular_data, ModularData};
use crate::rep::object::{braiding, double_braiding, RepObject};
use crate::rep::simple::{simple_objects, SimpleTable};
use crate::rep::vacuum::{vacuum_object, VacuumAlgebra};
use crate::Settings;

/// A module `(V, rho: A (x) V -> V)` over the vacuum algebra `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct VacModule {
    pub underlying: RepObject,
    pub rho: Mat,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModuleResiduals {
    pub associativity: f64,
    pub unit: f64,
    pub morphism: f64,
    pub locality: f64,
}

impl ModuleResiduals {
    pub fn max(&self) -> f64 {
        self.associativity
            .max(self.unit)
            .max(self.morphism)
            .max(self.locality)
    }
}

impl VacModule {
    pub fn dim(&self) -> usize {
        self.underlying.dim
    }

    pub fn residuals(&self, x: &CrossedModule, alg: &VacuumAlgebra) -> ModuleResiduals {
        let v = &self.underlying;
        let iv = identity(v.dim);
        let ia = identity(alg.dim());
        let associativity = max_abs_diff(
            &(&self.rho * kron(&alg.mult, &iv)),
            &(&self.rho * kron(&ia, &self.rho)),
        );
        let unit = max_abs_diff(&(&self.rho * kron(&alg.unit, &iv)), &iv);
        let morphism = alg.object.tensor(v, x).morphism_residual(v, &self.rho);
        let locality = max_abs_diff(&(&self.rho * double_braiding(x, &alg.object, v)), &self.rho);
        ModuleResiduals {
            associativity,
            unit,
            morphism,
            locality,
        }
    }

    pub fn validate(&self, x: &CrossedModule, alg: &VacuumAlgebra, tol: f64) -> Result<()> {
        self.underlying.validate(x, tol)?;
        let r = self.residuals(x, alg);
        if r.max() > tol {
            return Err(Error::InvariantFailure(format!(
                "module axioms violated: {r:?}"
            )));
        }
        Ok(())
    }

    /// The action of a single algebra element, `w -> rho(a (x) w)`.
    pub fn action_of(&self, a: &Mat) -> Mat {
        &self.rho * kron(a, &identity(self.dim()))
    }
}

fn basis_vector(n: usize, i: usize) -> Mat {
    let mut v = zeros(n, 1);
    v[(i, 0)] = c(1.0);
    v
}

/// `(A (x) V, m (x) id_V)`
pub fn induce(x: &CrossedModule, alg: &VacuumAlgebra, v: &RepObject) -> VacModule {
    VacModule {
        underlying: alg.object.tensor(v, x),
        rho: kron(&alg.mult, &identity(v.dim)),
    }
}

/// The idempotents `rho((e, Iy) (x) -)`, one per coset of `I`.
pub fn coset_projectors(alg: &VacuumAlgebra, module: &VacModule) -> Vec<Mat> {
    let nc = alg.dim() / alg.basis.iter().filter(|(_, cc)| *cc == 0).count();
    (0..nc)
        .map(|cc| {
            let pos = alg
                .basis
                .iter()
                .position(|&b| b == (0, cc))
                .expect("basis covers K x C");
            module.action_of(&basis_vector(alg.dim(), pos))
        })
        .collect()
}

/// Restriction to the summand over the trivial coset, as a module over the
/// vacuum of `X'` (which is `k[K]`).
pub fn functor_f_restrict(
    x: &CrossedModule,
    alg: &VacuumAlgebra,
    xprime: &CrossedModule,
    alg_prime: &VacuumAlgebra,
    module: &VacModule,
    tol: f64,
) -> Result<VacModule> {
    let nc = x.sub.coker.group.order();
    let nk = x.sub.kernel.order();
    let e = &coset_projectors(alg, module)[0];
    let (b, l) = idempotent_coordinates(e, tol);
    let expected = module.dim() / nc;
    if module.dim() % nc != 0 || b.ncols() != expected {
        return Err(Error::ProjectorRankMismatch {
            expected,
            found: b.ncols(),
        });
    }
    let v = &module.underlying;
    let p = v.p.iter().map(|pm| &l * pm * &b).collect();
    let q = x
        .sub
        .image
        .elements
        .iter()
        .map(|&h| &l * &v.q[h] * &b)
        .collect();
    // k[K] -> A, x -> (x, I)
    let mut embed = zeros(alg.dim(), nk);
    for k in 0..nk {
        let pos = alg
            .basis
            .iter()
            .position(|&bb| bb == (k, 0))
            .expect("basis covers K x C");
        embed[(pos, k)] = c(1.0);
    }
    let out = VacModule {
        underlying: RepObject {
            dim: expected,
            p,
            q,
        },
        rho: &l * &module.rho * kron(&embed, &b),
    };
    out.validate(xprime, alg_prime, tol)?;
    Ok(out)
}

/// `K`-coinvariants of a module over `k[K]` in `M(X')`, as an object of
/// `M(Xbar)`. The grading by a coset `Km` sums the projectors of its members.
pub fn functor_fprime_coinv(
    xprime: &CrossedModule,
    xbar: &XBar,
    module: &VacModule,
    tol: f64,
) -> Result<RepObject> {
    let nk = xprime.sub.kernel.order();
    let n = module.dim();
    let averaging = (0..nk).fold(zeros(n, n), |acc, k| {
        acc + module.action_of(&basis_vector(nk, k))
    }) / c(nk as f64);
    let (b, l) = idempotent_coordinates(&averaging, tol);
    if n % nk != 0 || b.ncols() != n / nk {
        return Err(Error::ProjectorRankMismatch {
            expected: n / nk,
            found: b.ncols(),
        });
    }
    let v = &module.underlying;
    let mut p = Vec::with_capacity(xbar.projection.cosets.len());
    for coset in &xbar.projection.cosets {
        let sum = coset.iter().fold(zeros(n, n), |acc, &m| acc + &v.p[m]);
        // well defined on the quotient iff it commutes with averaging
        let r = max_abs_diff(&(&sum * &averaging), &(&averaging * &sum));
        if r > tol {
            return Err(Error::IllDefinedQuotient(format!(
                "grading by coset of {} does not descend ({r:e})",
                coset[0]
            )));
        }
        p.push(&l * sum * &b);
    }
    let mut q = Vec::with_capacity(v.q.len());
    for (h, qh) in v.q.iter().enumerate() {
        let r = max_abs_diff(&(qh * &averaging), &(&averaging * qh));
        if r > tol {
            return Err(Error::IllDefinedQuotient(format!(
                "action of {h} does not descend ({r:e})"
            )));
        }
        q.push(&l * qh * &b);
    }
    let out = RepObject {
        dim: b.ncols(),
        p,
        q,
    };
    out.validate(&xbar.xmod, tol)?;
    Ok(out)
}

/// Everything needed to push objects of `M(X)` into `M(Xbar)`.
#[derive(Debug, Clone)]
pub struct Modularizer {
    pub x: CrossedModule,
    pub alg: VacuumAlgebra,
    pub xprime: CrossedModule,
    pub alg_prime: VacuumAlgebra,
    pub xbar: XBar,
    pub tol: f64,
}

impl Modularizer {
    pub fn new(x: &CrossedModule, tol: f64) -> Result<Self> {
        let xprime = x.restricted_xprime()?;
        Ok(Self {
            alg: vacuum_object(x),
            alg_prime: vacuum_object(&xprime),
            xbar: x.quotient_xbar()?,
            x: x.clone(),
            xprime,
            tol,
        })
    }

    pub fn induce(&self, v: &RepObject) -> VacModule {
        induce(&self.x, &self.alg, v)
    }

    pub fn restrict(&self, module: &VacModule) -> Result<VacModule> {
        functor_f_restrict(
            &self.x,
            &self.alg,
            &self.xprime,
            &self.alg_prime,
            module,
            self.tol,
        )
    }

    pub fn coinvariants(&self, module: &VacModule) -> Result<RepObject> {
        functor_fprime_coinv(&self.xprime, &self.xbar, module, self.tol)
    }

    pub fn modularize(&self, v: &RepObject) -> Result<RepObject> {
        self.coinvariants(&self.restrict(&self.induce(v))?)
    }
}

pub fn modularize_object(x: &CrossedModule, v: &RepObject, tol: f64) -> Result<RepObject> {
    Modularizer::new(x, tol)?.modularize(v)
}

/// `M (x)_A N`, the cokernel of `rho_M R_{M,A} (x) id_N - id_M (x) rho_N`,
/// realized on the orthogonal complement of the image.
pub fn tensor_over_a(
    x: &CrossedModule,
    alg: &VacuumAlgebra,
    m: &VacModule,
    n: &VacModule,
    tol: f64,
) -> VacModule {
    let (dm, dn) = (m.dim(), n.dim());
    let left = kron(
        &(&m.rho * braiding(x, &m.underlying, &alg.object)),
        &identity(dn),
    );
    let right = kron(&identity(dm), &n.rho);
    let s = complement_basis(&(left - right), tol);
    let q = s.adjoint();
    let whole = m.underlying.tensor(&n.underlying, x);
    let underlying = RepObject {
        dim: s.ncols(),
        p: whole.p.iter().map(|pm| &q * pm * &s).collect(),
        q: whole.q.iter().map(|qg| &q * qg * &s).collect(),
    };
    let rho = &q * kron(&m.rho, &identity(dn)) * kron(&identity(alg.dim()), &s);
    VacModule { underlying, rho }
}

/// Result of comparing two sets of modular data up to relabeling.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchReport {
    /// `permutation[p]` is the simple of the second category matched to `p`.
    pub permutation: Option<Vec<usize>>,
    pub dims_residual: f64,
    pub twists_residual: f64,
    pub s_residual: f64,
    pub fusion_residual: f64,
}

impl MatchReport {
    pub fn matched(&self) -> bool {
        self.permutation.is_some()
    }
}

fn residuals_under(a: &ModularData, b: &ModularData, perm: &[usize]) -> (f64, f64, f64, f64) {
    let n = a.rank();
    let mut dims: f64 = 0.0;
    let mut twists: f64 = 0.0;
    let mut s: f64 = 0.0;
    let mut fusion: f64 = 0.0;
    for p in 0..n {
        dims = dims.max((a.dims[p] as f64 - b.dims[perm[p]] as f64).abs());
        twists = twists.max((a.twists[p] - b.twists[perm[p]]).norm());
        for q in 0..n {
            s = s.max((a.s[(p, q)] - b.s[(perm[p], perm[q])]).norm());
            for r in 0..n {
                let d =
                    a.fusion.get(p, q, r) as f64 - b.fusion.get(perm[p], perm[q], perm[r]) as f64;
                fusion = fusion.max(d.abs());
            }
        }
    }
    (dims, twists, s, fusion)
}

/// Residuals of a given relabeling; the permutation is kept only if all of
/// them are below `tol`.
pub fn check_permutation(
    a: &ModularData,
    b: &ModularData,
    perm: &[usize],
    tol: f64,
) -> MatchReport {
    let (dims, twists, s, fusion) = if a.rank() == b.rank() && perm.len() == a.rank() {
        residuals_under(a, b, perm)
    } else {
        (f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY)
    };
    let ok = dims < tol && twists < tol && s < tol && fusion < tol;
    MatchReport {
        permutation: ok.then(|| perm.to_vec()),
        dims_residual: dims,
        twists_residual: twists,
        s_residual: s,
        fusion_residual: fusion,
    }
}

/// First relabeling, in lexicographic order, that matches dimensions,
/// twists, S and fusion.
pub fn match_modular_data(a: &ModularData, b: &ModularData, tol: f64) -> MatchReport {
    let n = a.rank();
    if n != b.rank() {
        return check_permutation(a, b, &[], tol);
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(a, b, tol, &mut perm, &mut used) {
        return check_permutation(a, b, &perm, tol);
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut report = check_permutation(a, b, &identity, tol);
    report.permutation = None;
    report
}

fn extend(
    a: &ModularData,
    b: &ModularData,
    tol: f64,
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let p = perm.len();
    if p == a.rank() {
        return true;
    }
    for cand in 0..b.rank() {
        if used[cand] || a.dims[p] != b.dims[cand] || (a.twists[p] - b.twists[cand]).norm() > tol {
            continue;
        }
        perm.push(cand);
        if consistent(a, b, tol, perm) {
            used[cand] = true;
            if extend(a, b, tol, perm, used) {
                return true;
            }
            used[cand] = false;
        }
        perm.pop();
    }
    false
}

/// Checks every S entry and fusion coefficient involving the newest label.
fn consistent(a: &ModularData, b: &ModularData, tol: f64, perm: &[usize]) -> bool {
    let p = perm.len() - 1;
    for q in 0..=p {
        if (a.s[(p, q)] - b.s[(perm[p], perm[q])]).norm() > tol {
            return false;
        }
        for r in 0..=p {
            let triples = [
                (p, q, r),
                (q, p, r),
                (q, r, p),
                (r, q, p),
                (p, r, q),
                (r, p, q),
            ];
            if triples
                .iter()
                .any(|&(i, j, k)| a.fusion.get(i, j, k) != b.fusion.get(perm[i], perm[j], perm[k]))
            {
                return false;
            }
        }
    }
    true
}

/// One named check of the modularization.
#[derive(Debug, Clone, PartialEq)]
pub struct Leg {
    pub name: &'static str,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct ModularizationReport {
    pub xbar: XBar,
    pub xbar_table: SimpleTable,
    pub xbar_data: ModularData,
    pub double_data: ModularData,
    /// Relabeling obtained by transporting simples along `dbar`.
    pub transported: MatchReport,
    /// Relabeling found by search.
    pub searched: MatchReport,
    pub legs: Vec<Leg>,
}

impl ModularizationReport {
    pub fn all_passed(&self) -> bool {
        self.legs.iter().all(|l| l.passed)
    }
}

/// Verlinde residual `max |N_pq^r - sum_s S_ps S_qs conj(S_rs) / S_1s|`.
pub fn verlinde_residual(md: &ModularData) -> f64 {
    let n = md.rank();
    let mut worst: f64 = 0.0;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let mut z = c(0.0);
                for s in 0..n {
                    z += md.s[(p, s)] * md.s[(q, s)] * md.s[(r, s)].conj() / md.s[(md.unit, s)];
                }
                worst = worst.max((z - c(md.fusion.get(p, q, r) as f64)).norm());
            }
        }
    }
    worst
}

/// For every simple of `M(Xbar)`, the simple of `D(I)` whose character is
/// its transport along `dbar`.
pub fn transport_along_boundary(
    xbar: &CrossedModule,
    bar_table: &SimpleTable,
    double_table: &SimpleTable,
    tol: f64,
) -> Option<Vec<usize>> {
    bar_table
        .simples
        .iter()
        .map(|p| {
            double_table.simples.iter().position(|q| {
                xbar.x2.elements().all(|m| {
                    xbar.x1.elements().all(|g| {
                        (p.character.get(m, g) - q.character.get(xbar.d(m), g)).norm() < tol
                    })
                })
            })
        })
        .collect()
}

pub fn verify_modularization(
    x: &CrossedModule,
    settings: &Settings,
) -> Result<ModularizationReport> {
    let tol = settings.tol;
    let xbar = x.quotient_xbar()?;
    let bar = &xbar.xmod;
    let xbar_table = simple_objects(bar, settings)?;
    let xbar_data = modular_data(bar, &xbar_table, tol)?;
    let double = CrossedModule::drinfeld_double(&bar.x1);
    let double_table = simple_objects(&double, settings)?;
    let double_data = modular_data(&double, &double_table, tol)?;
    let mut legs = Vec::new();

    let det = xbar_data.det_s().norm();
    let t = xbar_data.transparent_set();
    let collinear = collinear_set(&xbar_data, tol);
    legs.push(Leg {
        name: "modular",
        passed: det > crate::INT_GUARD && t == [xbar_data.unit] && collinear == t,
        residual: det,
        detail: format!("|det S| = {det:.6e}, transparent = {t:?}"),
    });

    let transported = match transport_along_boundary(bar, &xbar_table, &double_table, tol) {
        Some(perm) => check_permutation(&xbar_data, &double_data, &perm, tol),
        None => check_permutation(&xbar_data, &double_data, &[], tol),
    };
    let searched = match_modular_data(&xbar_data, &double_data, tol);
    let worst = transported
        .dims_residual
        .max(transported.twists_residual)
        .max(transported.s_residual)
        .max(transported.fusion_residual);
    legs.push(Leg {
        name: "matches double",
        passed: transported.matched() && searched.matched(),
        residual: worst,
        detail: format!(
            "transported {:?}, searched {:?}",
            transported.permutation, searched.permutation
        ),
    });

    let verlinde = verlinde_residual(&xbar_data);
    legs.push(Leg {
        name: "verlinde",
        passed: verlinde < crate::INT_GUARD,
        residual: verlinde,
        detail: format!("max deviation {verlinde:.3e}"),
    });

    let image = bar.x1.order();
    let sum: usize = xbar_data.dims.iter().map(|d| d * d).sum();
    legs.push(Leg {
        name: "counts",
        passed: sum == image * image && xbar_data.rank() == double_data.rank(),
        residual: (sum as f64 - (image * image) as f64).abs(),
        detail: format!(
            "{} simples (double has {}), sum of squared dimensions {sum} vs |I|^2 = {}",
            xbar_data.rank(),
            double_data.rank(),
            image * image
        ),
    });

    Ok(ModularizationReport {
        xbar,
        xbar_table,
        xbar_data,
        double_data,
        transported,
        searched,
        legs,
    })
}
