use crate::error::{Error, Result};
use crate::numeric::{is_positive_definite, nullspace, re, ComplexMatrix, Tolerance, C64};

use super::FiniteHopfStarAlgebra;

/// Scaling convention for the Haar functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// `φ(I_0) = 1` where `I_0` is the unit of the counit block.
    #[default]
    CounitBlock,
    /// `φ(1) = 1`.
    State,
}

/// Left Haar functional and the data derived from it.
#[derive(Debug, Clone)]
pub struct HaarData {
    /// `φ(e_i)`.
    pub phi: Vec<C64>,
    /// `gram[c][b] = φ(e_c* e_b)`; `(x, y) = φ(y* x) = y^H gram x`.
    pub gram: ComplexMatrix,
    /// `pairing[j][l] = φ(e_j e_l)`.
    pub pairing: ComplexMatrix,
    /// `ρ` with `φ(ab) = φ(b ρ(a))`.
    pub modular: ComplexMatrix,
    /// The normalized left integral `I_0`: `a I_0 = ε(a) I_0`, `ε(I_0) = 1`.
    pub integral: ComplexMatrix,
    pub normalization: Normalization,
}

impl HaarData {
    pub fn value(&self, a: &ComplexMatrix) -> C64 {
        self.phi.iter().enumerate().map(|(i, p)| p * a[(i, 0)]).sum()
    }

    pub fn phi_row(&self) -> ComplexMatrix {
        ComplexMatrix::row(&self.phi)
    }
}

/// The left integral `I_0` normalized by `ε(I_0) = 1`.
///
/// It spans `{h : e_i h = ε(e_i) h}`; for a Hopf *-algebra of the kind
/// handled here it is the minimal central projection of the counit block.
pub fn left_integral(h: &FiniteHopfStarAlgebra, tol: Tolerance) -> Result<ComplexMatrix> {
    let n = h.dim();
    let id = ComplexMatrix::identity(n);
    let rows: Vec<ComplexMatrix> = (0..n)
        .map(|i| &h.left_mult(&h.basis_vector(i)) - &id.scale(h.counit()[i]))
        .collect();
    let ns = nullspace(&ComplexMatrix::vstack(&rows), tol);
    if ns.len() != 1 {
        return Err(Error::inconsistent(format!(
            "space of left integrals has dimension {}, expected 1",
            ns.len()
        )));
    }
    let v = &ns[0];
    let e = h.counit_of(v);
    if e.norm() <= tol.eps() {
        return Err(Error::inconsistent("left integral is annihilated by the counit"));
    }
    Ok(v.scale(e.inv()))
}

/// Solves `(ι⊗φ)Δ(a) = φ(a)1` and normalizes.
pub fn haar_left(h: &FiniteHopfStarAlgebra, normalization: Normalization, tol: Tolerance) -> Result<HaarData> {
    let n = h.dim();
    // row (i, j): Σ_k d[i][j][k] φ_k - u_j φ_i = 0
    let mut sys = ComplexMatrix::zeros(n * n, n);
    for i in 0..n {
        for j in 0..n {
            let r = i * n + j;
            for k in 0..n {
                sys[(r, k)] += h.d(i, j, k);
            }
            sys[(r, i)] -= h.unit()[j];
        }
    }
    let ns = nullspace(&sys, tol);
    if ns.len() != 1 {
        return Err(Error::inconsistent(format!(
            "left invariant functionals form a space of dimension {}, expected 1",
            ns.len()
        )));
    }
    let raw: Vec<C64> = ns[0].as_slice().to_vec();
    let integral = left_integral(h, tol)?;
    let eval = |a: &[C64]| -> C64 { raw.iter().zip(a).map(|(p, x)| p * x).sum() };
    let scale = match normalization {
        Normalization::CounitBlock => eval(integral.as_slice()),
        Normalization::State => eval(h.unit()),
    };
    if scale.norm() <= tol.eps() {
        return Err(Error::inconsistent("Haar functional vanishes on the normalizing element"));
    }
    let phi: Vec<C64> = raw.iter().map(|p| p / scale).collect();

    let mut pairing = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            pairing[(j, l)] = (0..n).map(|k| h.m(j, l, k) * phi[k]).sum();
        }
    }
    // gram[c][b] = φ(e_c* e_b) = Σ_j St[j][c] φ(e_j e_b)
    let gram = &h.star_matrix().transpose() * &pairing;
    if !is_positive_definite(&gram) {
        return Err(Error::NotPositiveDefinite);
    }
    let pinv = pairing
        .try_inverse()
        .ok_or_else(|| Error::inconsistent("Haar pairing is degenerate"))?;
    let modular = &pinv * &pairing.transpose();
    Ok(HaarData {
        phi,
        gram,
        pairing,
        modular,
        integral,
        normalization,
    })
}

/// Residual of left invariance `max_{a,j} |Σ_k d[a][j][k] φ_k − u_j φ_a|`.
pub fn left_invariance_residual(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> f64 {
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s: C64 = (0..n).map(|k| h.d(i, j, k) * haar.phi[k]).sum();
            worst = worst.max((s - h.unit()[j] * haar.phi[i]).norm());
        }
    }
    worst
}

/// Residual of `φ(ab) = φ(bρ(a))` over basis pairs.
pub fn modular_residual(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> f64 {
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        let ra = haar.modular.col(a);
        for b in 0..n {
            let lhs = haar.pairing[(a, b)];
            let rhs = haar.value(&h.multiply(&h.basis_vector(b), &ra));
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// `|φ(I_0) − 1|` (or `|φ(1) − 1|` under the state normalization).
pub fn normalization_residual(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> f64 {
    let target = match haar.normalization {
        Normalization::CounitBlock => haar.value(&haar.integral),
        Normalization::State => haar.value(&h.unit_vector()),
    };
    (target - re(1.0)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra, FiniteGroup};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn function_algebra_z2_haar_is_counting_measure() {
        let h = function_algebra(&FiniteGroup::cyclic(2));
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        for p in &haar.phi {
            assert!((p - re(1.0)).norm() < 1e-12);
        }
        // I_0 = δ_e
        assert!(haar.integral.distance(&h.basis_vector(0)) < 1e-12);
    }

    #[test]
    fn group_algebra_haar_is_scaled_delta_e() {
        // φ(g) = c δ_{g,e}; φ(I_0) = c/|G| = 1 gives c = |G|
        for g in [FiniteGroup::cyclic(2), FiniteGroup::symmetric3()] {
            let n = g.order();
            let h = group_algebra(&g);
            let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
            assert!((haar.phi[0] - re(n as f64)).norm() < 1e-10);
            for p in &haar.phi[1..] {
                assert!(p.norm() < 1e-10);
            }
            let avg = ComplexMatrix::column(&vec![re(1.0 / n as f64); n]);
            assert!(haar.integral.distance(&avg) < 1e-12);
            assert!((haar.value(&haar.integral) - re(1.0)).norm() < 1e-12);
            let state = haar_left(&h, Normalization::State, tol()).unwrap();
            assert!((state.phi[0] - re(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn modular_map_is_antipode_squared() {
        let h = group_algebra(&FiniteGroup::symmetric3());
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let s2 = h.antipode() * h.antipode();
        assert!(haar.modular.distance(&s2) < 1e-10);
        assert!(modular_residual(&h, &haar) < 1e-10);
        assert!(left_invariance_residual(&h, &haar) < 1e-12);
    }
}
