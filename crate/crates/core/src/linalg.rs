//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat = DMatrix<C64>;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn zeros(rows: usize, cols: usize) -> Mat {
    Mat::zeros(rows, cols)
}

pub fn identity(n: usize) -> Mat {
    Mat::identity(n, n)
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

/// `kron(a, b) * x` without forming the Kronecker product.
pub fn apply_kron(a: &Mat, b: &Mat, x: &Mat) -> Mat {
    let (p, q) = (a.ncols(), b.ncols());
    let (pr, qr) = (a.nrows(), b.nrows());
    assert_eq!(x.nrows(), p * q, "apply_kron: shape mismatch");
    let bt = b.transpose();
    let mut out = zeros(pr * qr, x.ncols());
    for col in 0..x.ncols() {
        let v = Mat::from_fn(p, q, |i, j| x[(i * q + j, col)]);
        let w = a * v * &bt;
        for i in 0..pr {
            for j in 0..qr {
                out[(i * qr + j, col)] = w[(i, j)];
            }
        }
    }
    out
}

/// Permutation matrix of the flip `V (x) W -> W (x) V`, with the
/// Kronecker convention that `v_i (x) w_j` sits at index `i * dim_w + j`.
pub fn flip(dim_v: usize, dim_w: usize) -> Mat {
    let n = dim_v * dim_w;
    let mut m = zeros(n, n);
    for i in 0..dim_v {
        for j in 0..dim_w {
            m[(j * dim_v + i, i * dim_w + j)] = c(1.0);
        }
    }
    m
}

pub fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn image_basis(m: &Mat, tol: f64) -> Mat {
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return zeros(rows, 0);
    }
    // Eigenvectors of `m m^*` with eigenvalue above `tol` span the image.
    let gram = m * m.adjoint();
    let eig = SymmetricEigen::new(gram);
    let keep: Vec<usize> = (0..rows).filter(|&i| eig.eigenvalues[i] > tol).collect();
    let mut basis = zeros(rows, keep.len());
    for (k, &i) in keep.iter().enumerate() {
        basis.set_column(k, &eig.eigenvectors.column(i));
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of the column space of `m`.
pub fn complement_basis(m: &Mat, tol: f64) -> Mat {
    let rows = m.nrows();
    let b = image_basis(m, tol);
    let proj = identity(rows) - &b * b.adjoint();
    hermitian_eigenspace(&proj, 1.0, 0.5)
}

/// Columns spanning the eigenspace of a hermitian matrix for eigenvalues
/// within `radius` of `target`, orthonormal.
pub fn hermitian_eigenspace(h: &Mat, target: f64, radius: f64) -> Mat {
    let n = h.nrows();
    if n == 0 {
        return zeros(0, 0);
    }
    let eig = SymmetricEigen::new(h.clone());
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| (eig.eigenvalues[i] - target).abs() < radius)
        .collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = zeros(n, idx.len());
    for (k, &i) in idx.iter().enumerate() {
        out.set_column(k, &eig.eigenvectors.column(i));
    }
    out
}

/// Coordinates on the image of an idempotent `e`: returns `(b, l)` with
/// `b` an orthonormal basis of the image and `l = b^* e`, so that
/// `l * b = 1` and `b * l = e`.
pub fn idempotent_coordinates(e: &Mat, tol: f64) -> (Mat, Mat) {
    let b = image_basis(e, tol);
    let l = b.adjoint() * e;
    (b, l)
}

/// Unit vector spanning (approximately) the kernel of a square matrix,
/// together with the smallest singular value.
pub fn smallest_singular_vector(m: &Mat) -> (Vec<C64>, f64) {
    let gram = m.adjoint() * m;
    let eig = SymmetricEigen::new(gram);
    let imin = (0..eig.eigenvalues.len())
        .min_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .expect("non-empty matrix");
    let v = eig.eigenvectors.column(imin).into_owned();
    let smin = (m * &v).norm();
    (v.iter().copied().collect(), smin)
}

pub fn trace(m: &Mat) -> C64 {
    m.trace()
}

/// Round to the nearest integer if within `guard`, otherwise `None`.
pub fn round_guarded(z: C64, guard: f64) -> Option<i64> {
    let r = z.re.round();
    if (z.re - r).abs() < guard && z.im.abs() < guard {
        Some(r as i64)
    } else {
        None
    }
}
