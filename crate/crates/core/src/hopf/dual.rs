use crate::error::{Error, Result};
use crate::numeric::{re, ComplexMatrix, Tolerance, C64};

use super::{block_decompose, FiniteHopfStarAlgebra, HaarData};

/// The dual Hopf *-algebra `Â` on the dual basis `ê_a(e_i) = δ_ai`.
#[derive(Debug, Clone)]
pub struct DualAlgebra {
    pub algebra: FiniteHopfStarAlgebra,
    /// `pairing[a][i] = ê_a(e_i)`; the identity in the dual basis.
    pub pairing: ComplexMatrix,
}

/// `m̂ = Δᵀ`, `Δ̂ = mᵀ`, unit `ε`, counit evaluation at `1`, `Ŝ = Sᵀ`
/// and `ω*(a) = conj(ω(S(a)*))`.
pub fn dual(h: &FiniteHopfStarAlgebra) -> DualAlgebra {
    let n = h.dim();
    let mut mult = vec![re(0.0); n * n * n];
    let mut comult = vec![re(0.0); n * n * n];
    for i in 0..n {
        for a in 0..n {
            for b in 0..n {
                mult[(a * n + b) * n + i] = h.d(i, a, b);
                comult[(i * n + a) * n + b] = h.m(a, b, i);
            }
        }
    }
    let antipode = h.antipode().transpose();
    let star = (&h.star_matrix().conj() * h.antipode()).transpose();
    let names = h.basis_names().iter().map(|b| format!("{b}^")).collect();
    let algebra = FiniteHopfStarAlgebra::new(
        names,
        mult,
        h.counit().to_vec(),
        comult,
        h.unit().to_vec(),
        antipode,
        star,
    )
    .expect("dual of a well-formed algebra is well formed");
    DualAlgebra {
        algebra,
        pairing: ComplexMatrix::identity(n),
    }
}

/// Fourier transform `F(a) = φ(· a)` in the dual basis; its matrix is `φ(e_b e_l)`.
pub fn fourier(haar: &HaarData) -> ComplexMatrix {
    haar.pairing.clone()
}

pub fn fourier_inv(haar: &HaarData) -> Result<ComplexMatrix> {
    haar.pairing
        .try_inverse()
        .ok_or_else(|| Error::inconsistent("Fourier transform is singular"))
}

/// The functional `ψ̂` on `Â` fixed by `ψ̂ ∘ F = ε`, as a `1 x n` row.
pub fn dual_right_haar(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> Result<ComplexMatrix> {
    Ok(&h.counit_row() * &fourier_inv(haar)?)
}

/// `max |ψ̂(F(a)* F(b)) − φ(a* b)|` over basis pairs.
pub fn plancherel_residual(h: &FiniteHopfStarAlgebra, d: &DualAlgebra, haar: &HaarData) -> Result<f64> {
    let f = fourier(haar);
    let psi = dual_right_haar(h, haar)?;
    let hat = &d.algebra;
    let n = h.dim();
    let fcols = f.columns();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        let fa_star = hat.star(&fcols[a]);
        for b in 0..n {
            let prod = hat.multiply(&fa_star, &fcols[b]);
            let lhs = (&psi * &prod)[(0, 0)];
            let rhs = haar.gram[(a, b)];
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

/// `max |(ψ̂⊗ι)Δ̂(ω) − ψ̂(ω)1̂|` over the dual basis.
pub fn dual_right_invariance_residual(h: &FiniteHopfStarAlgebra, d: &DualAlgebra, haar: &HaarData) -> Result<f64> {
    let psi = dual_right_haar(h, haar)?;
    let hat = &d.algebra;
    let n = h.dim();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for k in 0..n {
            let s: C64 = (0..n).map(|j| hat.d(i, j, k) * psi[(0, j)]).sum();
            worst = worst.max((s - psi[(0, i)] * hat.unit()[k]).norm());
        }
    }
    Ok(worst)
}

/// Group-like unitaries `Δg = g⊗g`, `g*g = gg* = 1`, read off the characters
/// of `Â` (its one-dimensional blocks).
pub fn group_like_unitaries(h: &FiniteHopfStarAlgebra, seed: u64, tol: Tolerance) -> Result<Vec<ComplexMatrix>> {
    let d = dual(h);
    let bs = block_decompose(&d.algebra, seed, tol)?;
    let one = h.unit_vector();
    let mut out = Vec::new();
    for blk in bs.blocks.iter().filter(|b| b.dim == 1) {
        let g = ComplexMatrix::from_fn(h.dim(), 1, |i, _| blk.irrep[i][(0, 0)]);
        let res = group_like_residual(h, &g);
        let unitary = h
            .multiply(&h.star(&g), &g)
            .distance(&one)
            .max(h.multiply(&g, &h.star(&g)).distance(&one));
        if res.max(unitary) > tol.eps() {
            return Err(Error::inconsistent(format!(
                "character of the dual fails the group-like test (residual {:.3e})",
                res.max(unitary)
            )));
        }
        out.push(g);
    }
    Ok(out)
}

/// `max |Δg − g⊗g|`.
pub fn group_like_residual(h: &FiniteHopfStarAlgebra, g: &ComplexMatrix) -> f64 {
    h.comultiply(g).distance(&g.kron(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra, haar_left, FiniteGroup, Normalization, DEFAULT_SEED};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let d = dual(&group_algebra(&g)).algebra;
            let f = function_algebra(&g);
            assert_eq!(d.mult_map(), f.mult_map());
            assert_eq!(d.comult_map(), f.comult_map());
            assert_eq!(d.unit(), f.unit());
            assert_eq!(d.counit(), f.counit());
            assert_eq!(d.antipode(), f.antipode());
            assert_eq!(d.star_matrix(), f.star_matrix());
        }
    }

    #[test]
    fn biduality() {
        let h = function_algebra(&FiniteGroup::symmetric3());
        let dd = dual(&dual(&h).algebra).algebra;
        assert_eq!(dd.mult_map(), h.mult_map());
        assert_eq!(dd.comult_map(), h.comult_map());
        assert!(dd.star_matrix().distance(h.star_matrix()) < 1e-15);
        assert!(dd.antipode().distance(h.antipode()) < 1e-15);
    }

    #[test]
    fn fourier_of_point_mass_is_evaluation() {
        let h = function_algebra(&FiniteGroup::cyclic(2));
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let f = fourier(&haar);
        assert!(f.distance(&ComplexMatrix::identity(2)) < 1e-12);
        // F(I_0) = 1_Â = ε
        let fi0 = &f * &haar.integral;
        assert!(fi0.distance(&ComplexMatrix::column(h.counit())) < 1e-12);
    }

    #[test]
    fn plancherel_on_s3() {
        for h in [
            group_algebra(&FiniteGroup::symmetric3()),
            function_algebra(&FiniteGroup::symmetric3()),
        ] {
            let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
            let d = dual(&h);
            assert!(plancherel_residual(&h, &d, &haar).unwrap() < 1e-10);
            assert!(dual_right_invariance_residual(&h, &d, &haar).unwrap() < 1e-10);
        }
    }

    #[test]
    fn group_likes() {
        let s3 = FiniteGroup::symmetric3();
        let gl = group_like_unitaries(&group_algebra(&s3), DEFAULT_SEED, tol()).unwrap();
        assert_eq!(gl.len(), 6);
        assert_eq!(group_like_unitaries(&function_algebra(&s3), DEFAULT_SEED, tol()).unwrap().len(), 2);
        assert_eq!(
            group_like_unitaries(&function_algebra(&FiniteGroup::cyclic(3)), DEFAULT_SEED, tol())
                .unwrap()
                .len(),
            3
        );
    }
}
