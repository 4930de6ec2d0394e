use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::linalg::{c, identity, kron, max_abs, max_abs_diff, zeros, Mat, C64};

/// An object `(V, P, Q)` of `M(X)`: grading projectors `P(m)` for `m` in
/// `X2` and an `X1`-action `Q(g)` with `P(m) Q(g) = Q(g) P(m^g)`.
///
/// Objects do not hold on to their crossed module; every operation takes it
/// explicitly so the same matrices can be reinterpreted over `X'` or `Xbar`.
#[derive(Debug, Clone, PartialEq)]
pub struct RepObject {
    pub dim: usize,
    pub p: Vec<Mat>,
    pub q: Vec<Mat>,
}

impl RepObject {
    pub fn unit(x: &CrossedModule) -> Self {
        let one = identity(1);
        let p =
            x.x2.elements()
                .map(|m| if m == 0 { one.clone() } else { zeros(1, 1) })
                .collect();
        Self {
            dim: 1,
            p,
            q: vec![one; x.x1.order()],
        }
    }

    /// Largest violation of the object axioms.
    pub fn axiom_residual(&self, x: &CrossedModule) -> Result<f64> {
        let n = self.dim;
        if self.p.len() != x.x2.order() || self.q.len() != x.x1.order() {
            return Err(Error::InvariantFailure(
                "structure maps have the wrong count".into(),
            ));
        }
        if self.p.iter().chain(&self.q).any(|m| m.shape() != (n, n)) {
            return Err(Error::InvariantFailure(
                "structure maps have the wrong shape".into(),
            ));
        }
        let mut worst: f64 = 0.0;
        let total = self.p.iter().fold(zeros(n, n), |acc, m| acc + m);
        worst = worst.max(max_abs_diff(&total, &identity(n)));
        for a in x.x2.elements() {
            for b in x.x2.elements() {
                let prod = &self.p[a] * &self.p[b];
                let expected = if a == b {
                    self.p[a].clone()
                } else {
                    zeros(n, n)
                };
                worst = worst.max(max_abs_diff(&prod, &expected));
            }
        }
        worst = worst.max(max_abs_diff(&self.q[0], &identity(n)));
        for g in x.x1.elements() {
            for h in x.x1.elements() {
                worst = worst.max(max_abs_diff(
                    &(&self.q[g] * &self.q[h]),
                    &self.q[x.x1.mul(g, h)],
                ));
            }
            for m in x.x2.elements() {
                let lhs = &self.p[m] * &self.q[g];
                let rhs = &self.q[g] * &self.p[x.act(m, g)];
                worst = worst.max(max_abs_diff(&lhs, &rhs));
            }
        }
        Ok(worst)
    }

    pub fn validate(&self, x: &CrossedModule, tol: f64) -> Result<()> {
        let r = self.axiom_residual(x)?;
        if r > tol {
            return Err(Error::InvariantFailure(format!(
                "object axioms violated, residual {r:e}"
            )));
        }
        Ok(())
    }

    /// `psi(m, g) = tr(P(m) Q(g))`
    pub fn character(&self, x: &CrossedModule) -> CharacterX {
        let n1 = x.x1.order();
        let mut values = Vec::with_capacity(x.x2.order() * n1);
        for m in x.x2.elements() {
            for g in x.x1.elements() {
                values.push((&self.p[m] * &self.q[g]).trace());
            }
        }
        CharacterX { n1, values }
    }

    /// Grading `(V (x) W)_m = sum over n l = m of V_n (x) W_l`, diagonal action.
    pub fn tensor(&self, other: &Self, x: &CrossedModule) -> Self {
        let g2 = &x.x2;
        let p = g2
            .elements()
            .map(|m| {
                g2.elements().fold(
                    zeros(self.dim * other.dim, self.dim * other.dim),
                    |acc, n| acc + kron(&self.p[n], &other.p[g2.mul(g2.inv(n), m)]),
                )
            })
            .collect();
        let q = self
            .q
            .iter()
            .zip(&other.q)
            .map(|(a, b)| kron(a, b))
            .collect();
        Self {
            dim: self.dim * other.dim,
            p,
            q,
        }
    }

    /// `(V*)_m = (V_{m^-1})*`, `Q*(g) = Q(g^-1)*`, on the dual basis.
    pub fn dual(&self, x: &CrossedModule) -> Self {
        let p =
            x.x2.elements()
                .map(|m| self.p[x.x2.inv(m)].transpose())
                .collect();
        let q =
            x.x1.elements()
                .map(|g| self.q[x.x1.inv(g)].transpose())
                .collect();
        Self {
            dim: self.dim,
            p,
            q,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim + other.dim;
        let block = |a: &Mat, b: &Mat| {
            let mut m = zeros(n, n);
            m.view_mut((0, 0), (self.dim, self.dim)).copy_from(a);
            m.view_mut((self.dim, self.dim), (other.dim, other.dim))
                .copy_from(b);
            m
        };
        Self {
            dim: n,
            p: self
                .p
                .iter()
                .zip(&other.p)
                .map(|(a, b)| block(a, b))
                .collect(),
            q: self
                .q
                .iter()
                .zip(&other.q)
                .map(|(a, b)| block(a, b))
                .collect(),
        }
    }

    /// How far a linear map `f: self -> target` is from commuting with the
    /// grading and the action.
    pub fn morphism_residual(&self, target: &Self, f: &Mat) -> f64 {
        let graded = self
            .p
            .iter()
            .zip(&target.p)
            .map(|(a, b)| max_abs_diff(&(f * a), &(b * f)));
        let equivariant = self
            .q
            .iter()
            .zip(&target.q)
            .map(|(a, b)| max_abs_diff(&(f * a), &(b * f)));
        graded.chain(equivariant).fold(0.0, f64::max)
    }
}

/// `R_{V,W}(v (x) w) = sum_m Q_W(d m) w (x) P_V(m) v`, as a matrix
/// `V (x) W -> W (x) V`.
pub fn braiding(x: &CrossedModule, v: &RepObject, w: &RepObject) -> Mat {
    let n = v.dim * w.dim;
    let sum =
        x.x2.elements()
            .fold(zeros(n, n), |acc, m| acc + kron(&w.q[x.d(m)], &v.p[m]));
    // right multiplication by the flip permutes columns
    let mut out = zeros(n, n);
    for i in 0..v.dim {
        for j in 0..w.dim {
            out.set_column(i * w.dim + j, &sum.column(j * v.dim + i));
        }
    }
    out
}

/// Double braiding `R_{W,V} R_{V,W}` on `V (x) W`.
pub fn double_braiding(x: &CrossedModule, v: &RepObject, w: &RepObject) -> Mat {
    braiding(x, w, v) * braiding(x, v, w)
}

/// A character of `M(X)`, stored densely as `|X2| x |X1|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterX {
    pub n1: usize,
    pub values: Vec<C64>,
}

impl CharacterX {
    pub fn get(&self, m: usize, g: usize) -> C64 {
        self.values[m * self.n1 + g]
    }

    pub fn zero(x: &CrossedModule) -> Self {
        Self {
            n1: x.x1.order(),
            values: vec![c(0.0); x.x1.order() * x.x2.order()],
        }
    }

    /// `sum_m psi(m, e)`
    pub fn dimension(&self) -> C64 {
        self.values.chunks(self.n1).map(|row| row[0]).sum()
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled_sum(terms: &[(usize, &CharacterX)]) -> Option<Self> {
        let first = terms.first()?.1;
        let mut out = first.clone();
        out.values.iter_mut().for_each(|v| *v = c(0.0));
        for (k, ch) in terms {
            for (o, v) in out.values.iter_mut().zip(&ch.values) {
                *o += v * *k as f64;
            }
        }
        Some(out)
    }
}

/// The bilinear form `1/|X1| sum psi1(m, g^-1) psi2(m, g)` and the hermitian
/// form `1/|X1| sum conj(psi1(m, g)) psi2(m, g)`.
pub fn char_forms(x: &CrossedModule, a: &CharacterX, b: &CharacterX) -> (C64, C64) {
    let n1 = x.x1.order() as f64;
    let mut bil = c(0.0);
    let mut her = c(0.0);
    for m in x.x2.elements() {
        for g in x.x1.elements() {
            bil += a.get(m, x.x1.inv(g)) * b.get(m, g);
            her += a.get(m, g).conj() * b.get(m, g);
        }
    }
    (bil / n1, her / n1)
}

pub fn hermitian_form(x: &CrossedModule, a: &CharacterX, b: &CharacterX) -> C64 {
    let n1 = x.x1.order() as f64;
    let mut her = c(0.0);
    for (u, v) in a.values.iter().zip(&b.values) {
        her += u.conj() * v;
    }
    her / n1
}

/// `psi(m, g) = sum over n l = m of psi_p(n, g) psi_q(l, g)`
pub fn tensor_character(x: &CrossedModule, a: &CharacterX, b: &CharacterX) -> CharacterX {
    let g2 = &x.x2;
    let mut out = CharacterX::zero(x);
    for n in g2.elements() {
        for l in g2.elements() {
            let m = g2.mul(n, l);
            for g in x.x1.elements() {
                out.values[m * out.n1 + g] += a.get(n, g) * b.get(l, g);
            }
        }
    }
    out
}

/// Whether the double braiding of `v` with `w` is the identity.
pub fn double_braiding_residual(x: &CrossedModule, v: &RepObject, w: &RepObject) -> f64 {
    max_abs(&(double_braiding(x, v, w) - identity(v.dim * w.dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::group::FiniteGroup;

    #[test]
    fn unit_is_valid_and_braids_trivially() {
        let x = CrossedModule::drinfeld_double(&FiniteGroup::symmetric(3));
        let u = RepObject::unit(&x);
        u.validate(&x, 1e-12).unwrap();
        assert_eq!(braiding(&x, &u, &u), identity(1));
        assert_eq!(u.dual(&x), u);
        let ch = u.character(&x);
        let (bil, her) = char_forms(&x, &ch, &ch);
        assert!((bil - c(1.0)).norm() < 1e-12 && (her - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn trivial_boundary_braiding_is_flip() {
        let x = corpus::trivial_boundary_z2_z2();
        // object: grading on both elements of X2, Z/2 swapping nothing
        let v = RepObject::unit(&x).direct_sum(&RepObject {
            dim: 1,
            p: vec![zeros(1, 1), identity(1)],
            q: vec![identity(1), identity(1) * c(-1.0)],
        });
        v.validate(&x, 1e-12).unwrap();
        assert!(max_abs_diff(&braiding(&x, &v, &v), &crate::linalg::flip(2, 2)) < 1e-12);
    }

    #[test]
    fn tensor_dimension_and_unit_law() {
        let x = corpus::x4_double_cover();
        let u = RepObject::unit(&x);
        let v = RepObject {
            dim: 1,
            p: (0..4)
                .map(|m| if m == 3 { identity(1) } else { zeros(1, 1) })
                .collect(),
            q: vec![identity(1); 4],
        };
        v.validate(&x, 1e-12).unwrap();
        let t = u.tensor(&v, &x);
        assert_eq!(t.character(&x), v.character(&x));
        let ch = tensor_character(&x, &v.character(&x), &v.character(&x));
        assert_eq!(v.tensor(&v, &x).character(&x), ch);
        assert!((ch.dimension() - c(1.0)).norm() < 1e-12);
    }
}
