//! Dense complex linear algebra with explicit tolerance control.
//!
//! Rank and nullspace use singular-value thresholding with the relative cutoff
//! `tol * sigma_max` (absolute `tol` when `sigma_max <= tol`). The SVD itself
//! is nalgebra's; everything is deterministic for identical input.

mod matrix;

pub use matrix::{c64, ComplexMatrix, C64};
pub(crate) use matrix::re;

use nalgebra::{DMatrix, Schur, SVD};

use crate::error::{Error, Result};

/// Numerical tolerance used by every residual check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Self(eps))
        } else {
            Err(Error::input("tol", format!("tolerance must be a positive finite number, got {eps}")))
        }
    }

    #[inline]
    pub fn eps(self) -> f64 {
        self.0
    }

    /// True when `residual <= eps`.
    #[inline]
    pub fn accepts(self, residual: f64) -> bool {
        residual <= self.0
    }

    /// Cutoff for rank decisions: `max(eps, 1e-8)`.
    pub fn for_rank(self) -> Self {
        Self(self.0.max(1e-8))
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

/// Singular values (descending) and the full set of right singular vectors
/// as rows of `V^H`. Wide matrices are padded with zero rows so `V` is square.
fn svd_full(m: &ComplexMatrix) -> (Vec<f64>, DMatrix<C64>) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::<C64>::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(&m.to_nalgebra());
        p
    } else {
        m.to_nalgebra()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("SVD requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v_rows = DMatrix::from_fn(order.len(), c, |i, j| v_t[(order[i], j)]);
    (sv, v_rows)
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.to_nalgebra().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

fn cutoff(sigma_max: f64, tol: Tolerance) -> f64 {
    if sigma_max <= tol.eps() {
        tol.eps()
    } else {
        tol.eps() * sigma_max
    }
}

/// Numerical rank: singular values above `tol * sigma_max`.
pub fn rank(m: &ComplexMatrix, tol: Tolerance) -> usize {
    let sv = singular_values(m);
    let Some(&smax) = sv.first() else {
        return 0;
    };
    let cut = cutoff(smax, tol);
    sv.iter().filter(|&&s| s > cut).count()
}

/// Orthonormal basis (standard inner product) of the numerical kernel of `m`,
/// returned as column vectors.
pub fn nullspace(m: &ComplexMatrix, tol: Tolerance) -> Vec<ComplexMatrix> {
    let c = m.cols();
    if c == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return ComplexMatrix::identity(c).columns();
    }
    let (sv, v_rows) = svd_full(m);
    let smax = sv.first().copied().unwrap_or(0.0);
    let cut = cutoff(smax, tol);
    let mut out = Vec::new();
    for (i, s) in sv.iter().enumerate() {
        if *s <= cut {
            out.push(canonical_phase(ComplexMatrix::from_fn(c, 1, |j, _| v_rows[(i, j)].conj())));
        }
    }
    out
}

/// Rotates a vector so its largest-modulus entry (first one on ties) is real positive.
pub fn canonical_phase(v: ComplexMatrix) -> ComplexMatrix {
    let mut best = 0;
    let mut best_abs = -1.0;
    for (k, z) in v.as_slice().iter().enumerate() {
        let a = z.norm();
        if a > best_abs * (1.0 + 1e-12) + 1e-300 {
            best_abs = a;
            best = k;
        }
    }
    if best_abs <= 0.0 {
        return v;
    }
    let z = v.as_slice()[best];
    let phase = (z / z.norm()).conj();
    v.scale(phase)
}

/// Adjoint of `t: dom -> cod` with respect to the inner products
/// `(x, y) = y^H G x` given by the two Gram matrices:
/// `t* = G_dom^{-1} t^H G_cod`.
pub fn adjoint_wrt(
    t: &ComplexMatrix,
    gram_dom: &ComplexMatrix,
    gram_cod: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    if gram_dom.rows() != t.cols() || gram_cod.rows() != t.rows() {
        return Err(Error::input(
            "gram",
            format!(
                "Gram shapes {:?}/{:?} do not fit a {}x{} map",
                gram_dom.shape(),
                gram_cod.shape(),
                t.rows(),
                t.cols()
            ),
        ));
    }
    if !is_positive_definite(gram_dom) || !is_positive_definite(gram_cod) {
        return Err(Error::NotPositiveDefinite);
    }
    let inv = gram_dom.try_inverse().ok_or(Error::NotPositiveDefinite)?;
    Ok(&(&inv * &t.adjoint()) * gram_cod)
}

/// Hermitian positive definite test on the eigenvalues of the Hermitian part.
pub fn is_positive_definite(g: &ComplexMatrix) -> bool {
    if !g.is_square() {
        return false;
    }
    if g.rows() == 0 {
        return true;
    }
    let scale = g.max_abs().max(1.0);
    if g.distance(&g.adjoint()) > 1e-9 * scale {
        return false;
    }
    let herm = (g + &g.adjoint()).scale_real(0.5).to_nalgebra();
    let eig = herm.symmetric_eigenvalues();
    let max = eig.iter().copied().fold(0.0, f64::max);
    max > 0.0 && eig.iter().all(|&v| v > 1e-13 * max)
}

/// Eigenvalues of a square matrix via a complex Schur decomposition.
pub fn eigenvalues(m: &ComplexMatrix) -> Vec<C64> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    if m.rows() == 0 {
        return Vec::new();
    }
    // Unshifted-stall cases (e.g. permutation matrices) are retried after a
    // unitary change of basis, which leaves the spectrum unchanged.
    let n = m.rows();
    let mut a = m.to_nalgebra();
    for attempt in 0..8 {
        if let Some(schur) = Schur::try_new(a.clone(), f64::EPSILON, 20_000) {
            let (_, t) = schur.unpack();
            return (0..n).map(|i| t[(i, i)]).collect();
        }
        let q = householder(n, attempt);
        a = &q * &a * &q;
    }
    panic!("Schur iteration did not converge");
}

/// Reflection `I − 2 v vᴴ / vᴴv` for a fixed irregular vector `v`.
fn householder(n: usize, salt: usize) -> DMatrix<C64> {
    let v = DMatrix::from_fn(n, 1, |i, _| c64(1.0 + ((i + 1) * (salt + 3)) as f64 * 0.618_033_988_7 % 1.0, 0.3 * i as f64));
    let vv = (v.adjoint() * &v)[(0, 0)];
    DMatrix::identity(n, n) - (&v * v.adjoint()) * (c64(2.0, 0.0) / vv)
}

/// Orthonormalises the given column vectors with respect to `(x, y) = y^H G x`
/// by modified Gram-Schmidt, dropping vectors that become dependent.
pub fn gram_schmidt(vectors: &[ComplexMatrix], gram: &ComplexMatrix, tol: Tolerance) -> Vec<ComplexMatrix> {
    let ip = |x: &ComplexMatrix, y: &ComplexMatrix| -> C64 { (&(&y.adjoint() * gram) * x)[(0, 0)] };
    let mut out: Vec<ComplexMatrix> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &out {
            let c = ip(&w, u);
            w = &w - &u.scale(c);
        }
        let n = ip(&w, &w).re.max(0.0).sqrt();
        let ref_norm = ip(v, v).re.max(0.0).sqrt();
        if n > tol.eps().sqrt() * ref_norm.max(1e-300) && n > 0.0 {
            out.push(w.scale_real(1.0 / n));
        }
    }
    out
}

/// Builds the matrix of a linear map on `rows x cols` matrices by evaluating
/// it on the row-major unit basis. Column `k` is `vec(f(E_k))`.
pub fn linear_map_matrix(
    rows: usize,
    cols: usize,
    mut f: impl FnMut(&ComplexMatrix) -> ComplexMatrix,
) -> ComplexMatrix {
    let n = rows * cols;
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = ComplexMatrix::zeros(rows, cols);
        e[(k / cols, k % cols)] = re(1.0);
        columns.push(f(&e).vectorize());
    }
    ComplexMatrix::hstack(&columns)
}

/// Kernel of a linear map on `rows x cols` matrices, reshaped back into matrices.
pub fn matrix_kernel(
    rows: usize,
    cols: usize,
    tol: Tolerance,
    f: impl FnMut(&ComplexMatrix) -> ComplexMatrix,
) -> Vec<ComplexMatrix> {
    let lin = linear_map_matrix(rows, cols, f);
    nullspace(&lin, tol).into_iter().map(|v| v.reshape(rows, cols)).collect()
}

/// Least-squares solution of `a x = b` through the SVD pseudo-inverse.
/// Returns the solution together with the residual `max|a x - b|`.
pub fn solve_least_squares(a: &ComplexMatrix, b: &ComplexMatrix, tol: Tolerance) -> (ComplexMatrix, f64) {
    let svd = SVD::new(a.to_nalgebra(), true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = cutoff(smax, tol);
    let x = svd
        .solve(&b.to_nalgebra(), cut)
        .expect("SVD computed with U and V");
    let x = ComplexMatrix::from_nalgebra(&x);
    let resid = (a * &x).distance(b);
    (x, resid)
}

/// `sqrt` of a Hermitian positive definite matrix and its inverse.
pub fn hermitian_sqrt_and_inverse(g: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !is_positive_definite(g) {
        return Err(Error::NotPositiveDefinite);
    }
    let herm = (g + &g.adjoint()).scale_real(0.5).to_nalgebra();
    let eig = herm.symmetric_eigen();
    let n = g.rows();
    let q = ComplexMatrix::from_nalgebra(&eig.eigenvectors);
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let d = ComplexMatrix::diagonal(&vals.iter().map(|v| re(v.sqrt())).collect::<Vec<_>>());
    let dinv = ComplexMatrix::diagonal(&vals.iter().map(|v| re(1.0 / v.sqrt())).collect::<Vec<_>>());
    let sqrt = &(&q * &d) * &q.adjoint();
    let isqrt = &(&q * &dinv) * &q.adjoint();
    debug_assert_eq!(sqrt.rows(), n);
    Ok((sqrt, isqrt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn eigenvalues_of_cyclic_permutations() {
        for n in 2..7 {
            let p = ComplexMatrix::from_fn(n, n, |i, j| if j == (i + 1) % n { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
            let ev = eigenvalues(&p);
            assert_eq!(ev.len(), n);
            for z in ev {
                assert!((z.powu(n as u32) - c64(1.0, 0.0)).norm() < 1e-9, "{z}");
            }
        }
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::new(1e-6).unwrap().eps(), 1e-6);
    }

    #[test]
    fn nullspace_rank_one_row() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0]]);
        let ns = nullspace(&m, tol());
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let s = 1.0 / 2f64.sqrt();
        // proportional to (1,-1)/sqrt(2) up to phase
        let overlap = v.inner(&ComplexMatrix::column(&[re(s), re(-s)])).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nullspace_zero_and_full_rank() {
        let z = ComplexMatrix::zeros(2, 2);
        let ns = nullspace(&z, tol());
        assert_eq!(ns.len(), 2);
        assert!((ns[0].inner(&ns[1])).norm() < 1e-12);
        assert!(nullspace(&ComplexMatrix::identity(3), tol()).is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&ComplexMatrix::identity(3), tol()), 3);
        assert_eq!(rank(&ComplexMatrix::zeros(3, 2), tol()), 0);
        assert_eq!(rank(&ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[1.0, 1.0]]), tol()), 1);
    }

    #[test]
    fn adjoint_identity_and_orthonormal() {
        let i = ComplexMatrix::identity(2);
        let g = ComplexMatrix::from_real_rows(&[&[2.0, 0.5], &[0.5, 1.0]]);
        assert!(adjoint_wrt(&i, &g, &g).unwrap().distance(&i) < 1e-14);
        let t = ComplexMatrix::from_fn(2, 3, |i, j| c64(i as f64 - j as f64, 0.5 * j as f64));
        let adj = adjoint_wrt(&t, &ComplexMatrix::identity(3), &ComplexMatrix::identity(2)).unwrap();
        assert!(adj.distance(&t.adjoint()) < 1e-14);
    }

    #[test]
    fn adjoint_scalar_gram_oracle() {
        // (T u, v)_cod = (u, T* v)_dom on basis vectors: with G_dom=[[2]], G_cod=[[1]], T=[[1]]:
        // conj(v) * 1 * u = conj(T* v) * 2 * u  =>  T* = 1/2.
        let t = ComplexMatrix::scalar(re(1.0));
        let adj = adjoint_wrt(&t, &ComplexMatrix::scalar(re(2.0)), &ComplexMatrix::scalar(re(1.0))).unwrap();
        assert!((adj[(0, 0)] - re(0.5)).norm() < 1e-15);
    }

    #[test]
    fn adjoint_rejects_indefinite_gram() {
        let t = ComplexMatrix::identity(2);
        let bad = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        assert!(matches!(adjoint_wrt(&t, &bad, &bad), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn eigenvalues_of_triangular() {
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[0.0, -3.0]]);
        let mut ev: Vec<f64> = eigenvalues(&m).iter().map(|z| z.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 3.0).abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn least_squares_exact_system() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0], &[5.0, 6.0]]);
        let x = ComplexMatrix::column(&[re(1.0), re(-1.0)]);
        let b = &a * &x;
        let (sol, resid) = solve_least_squares(&a, &b, tol());
        assert!(resid < 1e-12);
        assert!(sol.distance(&x) < 1e-12);
    }

    #[test]
    fn gram_schmidt_against_weighted_gram() {
        let g = ComplexMatrix::from_real_rows(&[&[4.0, 1.0], &[1.0, 2.0]]);
        let vs = ComplexMatrix::identity(2).columns();
        let on = gram_schmidt(&vs, &g, tol());
        assert_eq!(on.len(), 2);
        for a in &on {
            for b in &on {
                let v = (&(&b.adjoint() * &g) * a)[(0, 0)];
                let expect = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
                assert!((v - re(expect)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn sqrt_of_gram() {
        let g = ComplexMatrix::from_real_rows(&[&[4.0, 1.0], &[1.0, 2.0]]);
        let (s, si) = hermitian_sqrt_and_inverse(&g).unwrap();
        assert!((&s * &s).distance(&g) < 1e-12);
        assert!((&s * &si).distance(&ComplexMatrix::identity(2)) < 1e-12);
    }
}
