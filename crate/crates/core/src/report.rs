//! The invariant suite and the machine-readable data report.

use serde::Serialize;

use crate::crossed::{CrossedModule, TannakianGroup};
use crate::error::Result;
use crate::group::{character_table, FiniteGroup, GroupAction, GroupHom};
use crate::io::XModDocument;
use crate::linalg::{c, C64};
use crate::modularization::{verify_modularization, ModularizationReport, Modularizer};
use crate::rep::modular::{
    collinear_set, modular_data, transparent_by_braiding, vacuum_multiplicities, ModularData,
};
use crate::rep::simple::{
    decompose, gram_residuals, simple_objects, twist_law_residual, SimpleTable,
};
use crate::rep::tannakian::{functor_f_from_gx, gx_irreps, regular_representation};
use crate::rep::vacuum::{check_frobenius, vacuum_object, FrobeniusReport};
use crate::{Settings, INT_GUARD};

/// One named verdict of the invariant suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub residual: f64,
    pub detail: String,
}

fn check(name: &str, passed: bool, residual: f64, detail: String) -> Check {
    Check {
        name: name.into(),
        passed,
        residual: residual_value(residual),
        detail,
    }
}

/// Every quantity the reports and the suite are built from, computed once.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub x: CrossedModule,
    pub settings: Settings,
    pub table: SimpleTable,
    pub data: ModularData,
    pub gx: TannakianGroup,
    pub frobenius: FrobeniusReport,
    pub modularization: ModularizationReport,
    /// For every simple of `M(X)`, the multiplicities of the `Xbar`-simples
    /// in its modularization.
    pub images: Vec<Vec<usize>>,
}

impl Analysis {
    pub fn new(x: &CrossedModule, settings: &Settings) -> Result<Self> {
        let tol = settings.tol;
        let table = simple_objects(x, settings)?;
        let data = modular_data(x, &table, tol)?;
        let gx = x.tannakian_group(settings)?;
        let frobenius = check_frobenius(x, &vacuum_object(x), tol);
        let modularization = verify_modularization(x, settings)?;
        let mz = Modularizer::new(x, tol)?;
        let bar = &modularization.xbar.xmod;
        let images = table
            .simples
            .iter()
            .map(|s| {
                let out = mz.modularize(&s.object)?;
                decompose(bar, &modularization.xbar_table, &out.character(bar))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            x: x.clone(),
            settings: *settings,
            table,
            data,
            gx,
            frobenius,
            modularization,
            images,
        })
    }

    pub fn checks(&self) -> Result<Vec<Check>> {
        let x = &self.x;
        let tol = self.settings.tol;
        let md = &self.data;
        let mut out = Vec::new();

        let sum: usize = md.dims.iter().map(|d| d * d).sum();
        let order = x.x1.order() * x.x2.order();
        out.push(check(
            "burnside sum",
            sum == order,
            (sum as f64 - order as f64).abs(),
            format!("sum of squared dimensions {sum}, |X1||X2| = {order}"),
        ));

        let (bil, her) = gram_residuals(x, &self.table);
        out.push(check(
            "orthogonality",
            bil.max(her) < tol,
            bil.max(her),
            format!("bilinear {bil:.3e}, hermitian {her:.3e}"),
        ));

        let twist = twist_law_residual(x, &self.table);
        out.push(check("twist law", twist < tol, twist, String::new()));

        let collinear = collinear_set(md, tol);
        let mu = vacuum_multiplicities(md)?;
        let by_mu: Vec<usize> = (0..md.rank()).filter(|&p| mu[p] > 0).collect();
        let braided = transparent_by_braiding(x, &self.table, tol);
        let by_braiding: Vec<usize> = (0..md.rank()).filter(|&p| braided[p]).collect();
        let t_sum: usize = collinear.iter().map(|&p| md.dims[p] * md.dims[p]).sum();
        let twists_ok = collinear
            .iter()
            .all(|&p| (md.twists[p] - c(1.0)).norm() < tol);
        let mu_ok = collinear.iter().all(|&p| mu[p] == md.dims[p]);
        out.push(check(
            "transparency concordance",
            collinear == by_mu && collinear == by_braiding && mu_ok && twists_ok && t_sum == x.sub.d,
            (t_sum as f64 - x.sub.d as f64).abs(),
            format!(
                "collinear {collinear:?}, vacuum support {by_mu:?}, braiding {by_braiding:?}, sum of squares {t_sum} vs |K||C| = {}",
                x.sub.d
            ),
        ));

        let det = md.det_s().norm();
        let bijective = x.is_modular_boundary();
        out.push(check(
            "modularity criterion",
            (det > INT_GUARD) == bijective,
            det,
            format!("|det S| = {det:.6e}, boundary bijective: {bijective}"),
        ));

        out.push(check(
            "modularizable",
            md.is_modularizable(tol),
            0.0,
            "transparent simples have trivial twist and integer dimension".into(),
        ));

        out.push(self.tannakian_check()?);

        let worst = self
            .frobenius
            .laws
            .iter()
            .map(|l| l.residual)
            .fold(0.0, f64::max);
        let failed: Vec<&str> = self
            .frobenius
            .failures()
            .iter()
            .map(|l| l.law.name())
            .collect();
        out.push(check(
            "frobenius laws",
            self.frobenius.all_passed(),
            worst,
            format!(
                "beta_1 = {}, beta_A = {}, failed: {failed:?}",
                self.frobenius.beta_unit.re, self.frobenius.beta_algebra.re
            ),
        ));

        for leg in &self.modularization.legs {
            out.push(check(
                &format!("modularization: {}", leg.name),
                leg.passed,
                leg.residual,
                leg.detail.clone(),
            ));
        }

        let nbar = self.modularization.xbar_table.len();
        let covered: Vec<bool> = (0..nbar)
            .map(|r| self.images.iter().any(|m| m[r] > 0))
            .collect();
        let dims_ok = self.images.iter().zip(&self.table.simples).all(|(m, s)| {
            m.iter()
                .zip(self.modularization.xbar_table.dims())
                .map(|(k, d)| k * d)
                .sum::<usize>()
                == s.dim
        });
        let units_ok = (0..md.rank()).filter(|&p| md.transparent[p]).all(|p| {
            self.images[p][0] == md.dims[p] && self.images[p].iter().sum::<usize>() == md.dims[p]
        });
        out.push(check(
            "modularize images",
            dims_ok && units_ok && covered.iter().all(|&b| b),
            0.0,
            format!(
                "dimensions preserved: {dims_ok}, transparent simples to unit copies: {units_ok}, covered: {}/{nbar}",
                covered.iter().filter(|&&b| b).count()
            ),
        ));
        Ok(out)
    }

    fn tannakian_check(&self) -> Result<Check> {
        let x = &self.x;
        let tol = self.settings.tol;
        let md = &self.data;
        let gx_table = character_table(&self.gx.group, &self.settings)?;
        let mut gx_degrees = gx_table.degrees.clone();
        gx_degrees.sort_unstable();
        let mut t_dims: Vec<usize> = md.transparent_set().iter().map(|&p| md.dims[p]).collect();
        t_dims.sort_unstable();

        let regular = functor_f_from_gx(x, &self.gx, &regular_representation(&self.gx.group))?;
        let vacuum = vacuum_object(x).object.character(x);
        let residual = regular.character(x).max_diff(&vacuum);

        let mut images = Vec::new();
        for rho in gx_irreps(&self.gx, &self.settings)? {
            let obj = functor_f_from_gx(x, &self.gx, &rho)?;
            let mult = decompose(x, &self.table, &obj.character(x))?;
            if mult.iter().sum::<usize>() == 1 {
                images.push(
                    mult.iter()
                        .position(|&k| k == 1)
                        .expect("one simple summand"),
                );
            }
        }
        images.sort_unstable();
        let exhausts = images == md.transparent_set();
        Ok(check(
            "tannakian group",
            gx_degrees == t_dims && residual < tol && exhausts,
            residual,
            format!(
                "|G(X)| = {}, irrep degrees {gx_degrees:?}, transparent dimensions {t_dims:?}, irreps map onto transparent simples: {exhausts}",
                self.gx.group.order()
            ),
        ))
    }
}

/// Staged axiom verdicts for a parsed document; stops at the first failure.
pub fn axiom_verdicts(
    doc: &XModDocument,
) -> (Vec<&'static str>, Option<(&'static str, crate::Error)>) {
    let mut passed = Vec::new();
    let x1 = match FiniteGroup::from_table(&doc.x1.table) {
        Ok(g) => g,
        Err(e) => return (passed, Some(("x1 is a group", e))),
    };
    passed.push("x1 is a group");
    let x2 = match FiniteGroup::from_table(&doc.x2.table) {
        Ok(g) => g,
        Err(e) => return (passed, Some(("x2 is a group", e))),
    };
    passed.push("x2 is a group");
    let action = match GroupAction::new(x1.clone(), x2.order(), doc.action.clone()) {
        Ok(a) => a,
        Err(e) => return (passed, Some(("action is a right action", e))),
    };
    passed.push("action is a right action");
    if let Err(e) = action.check_automorphisms(&x2) {
        return (passed, Some(("action is by automorphisms", e)));
    }
    passed.push("action is by automorphisms");
    let boundary = match GroupHom::new(x2, x1, doc.boundary.clone()) {
        Ok(b) => b,
        Err(e) => return (passed, Some(("boundary is a homomorphism", e))),
    };
    passed.push("boundary is a homomorphism");
    match CrossedModule::new(action, boundary) {
        Ok(_) => {
            passed.push("equivariance");
            passed.push("peiffer identity");
            (passed, None)
        }
        Err(e @ crate::Error::EquivarianceViolation { .. }) => (passed, Some(("equivariance", e))),
        Err(e) => {
            passed.push("equivariance");
            (passed, Some(("peiffer identity", e)))
        }
    }
}

/// Rounds to 15 significant digits and clears signed zeros.
pub fn number(v: f64) -> f64 {
    if v.abs() < 1e-13 {
        return 0.0;
    }
    let r: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    r + 0.0
}

fn residual_value(v: f64) -> f64 {
    if !v.is_finite() {
        return f64::MAX;
    }
    if v == 0.0 {
        return 0.0;
    }
    format!("{v:.2e}").parse().expect("formatted float parses")
}

pub fn complex(z: C64) -> [f64; 2] {
    [number(z.re), number(z.im)]
}

#[derive(Debug, Clone, Serialize)]
pub struct Orders {
    pub x1: usize,
    pub x2: usize,
    pub kernel: usize,
    pub image: usize,
    pub cokernel: usize,
    pub abs_order: usize,
    pub vacuum_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleEntry {
    pub orbit_rep: usize,
    pub stab_char: usize,
    pub dim: usize,
    pub twist: [f64; 2],
    pub transparent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GxEntry {
    pub order: usize,
    /// element -> (character of ker d, element of coker d)
    pub labels: Vec<(usize, usize)>,
    pub table: Vec<Vec<usize>>,
    pub irrep_degrees: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawEntry {
    pub law: &'static str,
    pub passed: bool,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusEntry {
    pub beta_unit: [f64; 2],
    pub beta_algebra: [f64; 2],
    pub laws: Vec<LawEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DataReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub input_sha256: String,
    pub seed: u64,
    pub tol: f64,
    pub name: Option<String>,
    pub orders: Orders,
    pub simples: Vec<SimpleEntry>,
    pub s_matrix: Vec<Vec<[f64; 2]>>,
    pub det_s: [f64; 2],
    pub modular: bool,
    /// `[p, q, r, N_pq^r]` for every non-zero coefficient
    pub fusion: Vec<[usize; 4]>,
    pub transparent: Vec<bool>,
    pub gx: GxEntry,
    pub frobenius: FrobeniusEntry,
    pub xbar: XModDocument,
    pub verification: Vec<Check>,
}

pub fn gx_entry(gx: &TannakianGroup, settings: &Settings) -> Result<GxEntry> {
    let table = character_table(&gx.group, settings)?;
    Ok(GxEntry {
        order: gx.group.order(),
        labels: gx.labels.clone(),
        table: gx.group.table_rows(),
        irrep_degrees: table.degrees,
    })
}

impl DataReport {
    pub fn new(analysis: &Analysis, name: Option<&str>, input_sha256: &str) -> Result<Self> {
        let x = &analysis.x;
        let md = &analysis.data;
        let n = md.rank();
        let s_matrix = (0..n)
            .map(|p| (0..n).map(|q| complex(md.s[(p, q)])).collect())
            .collect();
        let simples = analysis
            .table
            .simples
            .iter()
            .enumerate()
            .map(|(p, s)| SimpleEntry {
                orbit_rep: s.label.orbit_rep,
                stab_char: s.label.stab_char,
                dim: s.dim,
                twist: complex(s.twist),
                transparent: md.transparent[p],
            })
            .collect();
        let fusion = md
            .fusion
            .triples()
            .into_iter()
            .map(|(p, q, r, v)| [p, q, r, v])
            .collect();
        let frob = &analysis.frobenius;
        Ok(Self {
            tool: "xmodcat",
            version: env!("CARGO_PKG_VERSION"),
            input_sha256: input_sha256.to_owned(),
            seed: analysis.settings.seed,
            tol: analysis.settings.tol,
            name: name.map(str::to_owned),
            orders: Orders {
                x1: x.x1.order(),
                x2: x.x2.order(),
                kernel: x.sub.kernel.order(),
                image: x.sub.image.order(),
                cokernel: x.sub.coker.group.order(),
                abs_order: x.sub.abs_order,
                vacuum_dim: x.sub.d,
            },
            simples,
            s_matrix,
            det_s: complex(md.det_s()),
            modular: md.is_modular(),
            fusion,
            transparent: md.transparent.clone(),
            gx: gx_entry(&analysis.gx, &analysis.settings)?,
            frobenius: FrobeniusEntry {
                beta_unit: complex(frob.beta_unit),
                beta_algebra: complex(frob.beta_algebra),
                laws: frob
                    .laws
                    .iter()
                    .map(|l| LawEntry {
                        law: l.law.name(),
                        passed: l.passed,
                        residual: residual_value(l.residual),
                    })
                    .collect(),
            },
            xbar: XModDocument::from_crossed_module(
                &analysis.modularization.xbar.xmod,
                name.map(|n| format!("{n}_bar")).as_deref(),
            ),
            verification: analysis.checks()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
