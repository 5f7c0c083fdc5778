//! Finite-dimensional *-representations, tensor products through `Δ`,
//! intertwiner spaces and decomposition into block irreducibles.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{BlockStructure, FiniteHopfStarAlgebra, HaarData};
use crate::numeric::{
    adjoint_wrt, hermitian_sqrt_and_inverse, is_positive_definite, nullspace, rank, re, ComplexMatrix,
    Tolerance,
};

/// A linear map between representation carriers that commutes with the action.
pub type Intertwiner = ComplexMatrix;

/// `π: A → End(K)` stored as one matrix per basis element, with the Gram
/// matrix of the inner product on `K`.
#[derive(Debug, Clone)]
pub struct Representation {
    algebra: Arc<FiniteHopfStarAlgebra>,
    matrices: Vec<ComplexMatrix>,
    gram: ComplexMatrix,
}

impl Representation {
    pub fn new(
        algebra: Arc<FiniteHopfStarAlgebra>,
        matrices: Vec<ComplexMatrix>,
        gram: ComplexMatrix,
    ) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::input(
                "matrices",
                format!("expected {} matrices, got {}", algebra.dim(), matrices.len()),
            ));
        }
        let d = gram.rows();
        if !gram.is_square() || matrices.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::input("matrices", format!("all matrices must be {d}x{d}")));
        }
        if !is_positive_definite(&gram) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self {
            algebra,
            matrices,
            gram,
        })
    }

    pub fn algebra(&self) -> &Arc<FiniteHopfStarAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &ComplexMatrix {
        &self.matrices[i]
    }

    pub fn gram(&self) -> &ComplexMatrix {
        &self.gram
    }

    /// `π(a)` for a coordinate column `a`.
    pub fn action(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for (i, m) in self.matrices.iter().enumerate() {
            let c = a[(i, 0)];
            if c != re(0.0) {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// Gram-aware adjoint of a map out of this carrier into `target`.
    pub fn adjoint_to(&self, t: &ComplexMatrix, target: &Representation) -> ComplexMatrix {
        adjoint_wrt(t, &self.gram, &target.gram).expect("carrier Grams are positive definite")
    }

    /// The same action with the identity Gram, after moving to an orthonormal basis:
    /// returns `(π_o, G^{1/2})` with `π_o(a) = G^{1/2} π(a) G^{-1/2}`.
    pub fn orthonormalized(&self) -> (Representation, ComplexMatrix) {
        let (sq, isq) = hermitian_sqrt_and_inverse(&self.gram).expect("Gram is positive definite");
        let mats = self.matrices.iter().map(|m| &(&sq * m) * &isq).collect();
        let rep = Representation {
            algebra: Arc::clone(&self.algebra),
            matrices: mats,
            gram: ComplexMatrix::identity(self.dim()),
        };
        (rep, sq)
    }

    /// `(homomorphism, unitality, *-property)` residuals.
    pub fn residuals(&self) -> (f64, f64, f64) {
        let h = &*self.algebra;
        let n = h.dim();
        let d = self.dim();
        let mut hom: f64 = 0.0;
        let mut star: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.matrices[i] * &self.matrices[j];
                let rhs = self.action(&h.multiply(&h.basis_vector(i), &h.basis_vector(j)));
                hom = hom.max(lhs.distance(&rhs));
            }
            let adj = adjoint_wrt(&self.matrices[i], &self.gram, &self.gram).expect("positive Gram");
            star = star.max(adj.distance(&self.action(&h.star(&h.basis_vector(i)))));
        }
        let unital = self.action(&h.unit_vector()).distance(&ComplexMatrix::identity(d));
        (hom, unital, star)
    }

    pub fn max_residual(&self) -> f64 {
        let (a, b, c) = self.residuals();
        a.max(b).max(c)
    }

    fn same_algebra(&self, other: &Representation) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(Error::input("representation", "representations of different algebras"))
        }
    }
}

/// Left regular representation with `(x, y) = φ(y* x)`.
pub fn regular_rep(h: &Arc<FiniteHopfStarAlgebra>, haar: &HaarData) -> Representation {
    let mats = (0..h.dim()).map(|i| h.left_mult(&h.basis_vector(i))).collect();
    Representation::new(Arc::clone(h), mats, haar.gram.clone()).expect("Haar Gram is positive definite")
}

/// The trivial representation `a ↦ ε(a)`.
pub fn unit_rep(h: &Arc<FiniteHopfStarAlgebra>) -> Representation {
    trivial_rep(h, 1, ComplexMatrix::identity(1))
}

/// `a ↦ ε(a) id` on a carrier with the given Gram matrix.
pub fn trivial_rep(h: &Arc<FiniteHopfStarAlgebra>, dim: usize, gram: ComplexMatrix) -> Representation {
    let id = ComplexMatrix::identity(dim);
    let mats = h.counit().iter().map(|e| id.scale(*e)).collect();
    Representation::new(Arc::clone(h), mats, gram).expect("Gram is positive definite")
}

/// The irreducible representation of block `i` on its orthonormal carrier.
pub fn block_irrep(h: &Arc<FiniteHopfStarAlgebra>, blocks: &BlockStructure, i: usize) -> Result<Representation> {
    let blk = blocks
        .blocks
        .get(i)
        .ok_or_else(|| Error::input("block", format!("block index {i} out of range (have {})", blocks.len())))?;
    Representation::new(Arc::clone(h), blk.irrep.clone(), ComplexMatrix::identity(blk.dim))
}

/// `(π × π′)(e_i) = Σ_{jk} d[i][j][k] π(e_j) ⊗ π′(e_k)` on `K ⊗ K′`.
pub fn tensor_rep(p: &Representation, q: &Representation) -> Result<Representation> {
    p.same_algebra(q)?;
    let h = &*p.algebra;
    let n = h.dim();
    let dim = p.dim() * q.dim();
    let mut krons: Vec<Vec<Option<ComplexMatrix>>> = vec![vec![None; n]; n];
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for j in 0..n {
            for k in 0..n {
                let c = h.d(i, j, k);
                if c == re(0.0) {
                    continue;
                }
                let kr = krons[j][k].get_or_insert_with(|| p.matrices[j].kron(&q.matrices[k]));
                m = &m + &kr.scale(c);
            }
        }
        mats.push(m);
    }
    Ok(Representation {
        algebra: Arc::clone(&p.algebra),
        matrices: mats,
        gram: p.gram.kron(&q.gram),
    })
}

/// Block-diagonal sum of representations.
pub fn direct_sum(reps: &[&Representation]) -> Result<Representation> {
    let first = reps
        .first()
        .ok_or_else(|| Error::input("representation", "direct sum of no representations"))?;
    for r in reps {
        first.same_algebra(r)?;
    }
    let n = first.algebra.dim();
    let mats = (0..n)
        .map(|i| ComplexMatrix::direct_sum(&reps.iter().map(|r| r.matrices[i].clone()).collect::<Vec<_>>()))
        .collect();
    let gram = ComplexMatrix::direct_sum(&reps.iter().map(|r| r.gram.clone()).collect::<Vec<_>>());
    Ok(Representation {
        algebra: Arc::clone(&first.algebra),
        matrices: mats,
        gram,
    })
}

/// Basis of `Hom(π, π′)`, orthonormal for the entrywise inner product.
///
/// Uses `vec(Tπ(a) − π′(a)T) = (I ⊗ π(a)ᵀ − π′(a) ⊗ I) vec(T)` in row-major vectorization.
pub fn hom_space(p: &Representation, q: &Representation, tol: Tolerance) -> Result<Vec<Intertwiner>> {
    p.same_algebra(q)?;
    let (dp, dq) = (p.dim(), q.dim());
    let ip = ComplexMatrix::identity(dp);
    let iq = ComplexMatrix::identity(dq);
    let blocks: Vec<ComplexMatrix> = (0..p.algebra.dim())
        .map(|i| &iq.kron(&p.matrices[i].transpose()) - &q.matrices[i].kron(&ip))
        .collect();
    Ok(nullspace(&ComplexMatrix::vstack(&blocks), tol)
        .into_iter()
        .map(|v| v.reshape(dq, dp))
        .collect())
}

/// `max_i |T π(e_i) − π′(e_i) T|`.
pub fn intertwiner_residual(t: &ComplexMatrix, p: &Representation, q: &Representation) -> f64 {
    (0..p.algebra.dim())
        .map(|i| (t * &p.matrices[i]).distance(&(&q.matrices[i] * t)))
        .fold(0.0, f64::max)
}

/// `π ≅ ⊕_i n_i p_i` with explicit isometries.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub multiplicities: Vec<usize>,
    /// `isometries[i][a]: p_i → π`, `w* w = id`, `Σ w w* = id`.
    pub isometries: Vec<Vec<Intertwiner>>,
}

impl Decomposition {
    /// `max |Σ w w* − id|` on the carrier of `π`.
    pub fn completeness_residual(&self, pi: &Representation, irreps: &[Representation]) -> f64 {
        let mut sum = ComplexMatrix::zeros(pi.dim(), pi.dim());
        for (i, ws) in self.isometries.iter().enumerate() {
            for w in ws {
                sum = &sum + &(w * &irreps[i].adjoint_to(w, pi));
            }
        }
        sum.distance(&ComplexMatrix::identity(pi.dim()))
    }

    /// `max |w_a* w_b − δ_ab id|` over pairs within and across blocks.
    pub fn isometry_residual(&self, pi: &Representation, irreps: &[Representation]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, wi) in self.isometries.iter().enumerate() {
            for (j, wj) in self.isometries.iter().enumerate() {
                for (a, x) in wi.iter().enumerate() {
                    let xs = irreps[i].adjoint_to(x, pi);
                    for (b, y) in wj.iter().enumerate() {
                        let prod = &xs * y;
                        let target = if i == j && a == b {
                            ComplexMatrix::identity(irreps[i].dim())
                        } else {
                            ComplexMatrix::zeros(irreps[i].dim(), irreps[j].dim())
                        };
                        worst = worst.max(prod.distance(&target));
                    }
                }
            }
        }
        worst
    }
}

/// Multiplicities by `n_i = rank π(I_i) / dim H_i`, cross-checked against
/// `dim Hom(p_i, π)`, and isometries from an orthonormalized intertwiner basis.
pub fn decompose(
    pi: &Representation,
    blocks: &BlockStructure,
    irreps: &[Representation],
    tol: Tolerance,
) -> Result<Decomposition> {
    let rank_tol = tol.for_rank();
    let mut multiplicities = Vec::with_capacity(blocks.len());
    let mut isometries = Vec::with_capacity(blocks.len());
    for (i, blk) in blocks.blocks.iter().enumerate() {
        let r = rank(&pi.action(&blk.projection), rank_tol);
        if !r.is_multiple_of(blk.dim) {
            return Err(Error::inconsistent(format!(
                "rank {r} of the block-{i} projection is not a multiple of {}",
                blk.dim
            )));
        }
        let mult = r / blk.dim;
        let homs = hom_space(&irreps[i], pi, rank_tol)?;
        if homs.len() != mult {
            return Err(Error::inconsistent(format!(
                "block {i}: rank formula gives multiplicity {mult}, intertwiner space has dimension {}",
                homs.len()
            )));
        }
        // ⟨x, y⟩ id = y* x on Hom(p_i, π)
        let nd = blk.dim as f64;
        let ip = |x: &ComplexMatrix, y: &ComplexMatrix| (&irreps[i].adjoint_to(y, pi) * x).trace() / nd;
        let mut ws: Vec<ComplexMatrix> = Vec::new();
        for v in homs {
            let mut w = v;
            for u in &ws {
                let c = ip(&w, u);
                w = &w - &u.scale(c);
            }
            let nrm = ip(&w, &w).re;
            if nrm <= 0.0 {
                return Err(Error::inconsistent("degenerate intertwiner during orthonormalization"));
            }
            ws.push(w.scale_real(1.0 / nrm.sqrt()));
        }
        multiplicities.push(mult);
        isometries.push(ws);
    }
    let total: usize = multiplicities.iter().zip(blocks.dims()).map(|(m, d)| m * d).sum();
    if total != pi.dim() {
        return Err(Error::inconsistent(format!(
            "multiplicities account for {total} of {} carrier dimensions",
            pi.dim()
        )));
    }
    Ok(Decomposition {
        multiplicities,
        isometries,
    })
}

/// `π̄(a) = π_o(S(a))ᵀ` in an orthonormal basis; requires `S² = id`.
pub fn conjugate_rep(pi: &Representation, tol: Tolerance) -> Result<Representation> {
    let h = &*pi.algebra;
    if !h.is_kac(tol) {
        return Err(Error::Unsupported(
            "conjugate representation needs an involutive antipode".into(),
        ));
    }
    let (o, _) = pi.orthonormalized();
    let mats = (0..h.dim())
        .map(|i| o.action(&h.antipode().col(i)).transpose())
        .collect();
    Representation::new(Arc::clone(&pi.algebra), mats, ComplexMatrix::identity(pi.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{block_decompose, function_algebra, group_algebra, haar_left, FiniteGroup, Normalization};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    struct Fixture {
        h: Arc<FiniteHopfStarAlgebra>,
        bs: BlockStructure,
        irreps: Vec<Representation>,
        regular: Representation,
    }

    fn fixture(h: FiniteHopfStarAlgebra) -> Fixture {
        let h = Arc::new(h);
        let bs = block_decompose(&h, crate::hopf::DEFAULT_SEED, tol()).unwrap();
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let irreps = (0..bs.len()).map(|i| block_irrep(&h, &bs, i).unwrap()).collect();
        let regular = regular_rep(&h, &haar);
        Fixture { h, bs, irreps, regular }
    }

    #[test]
    fn regular_rep_of_function_algebra_z2() {
        let f = fixture(function_algebra(&FiniteGroup::cyclic(2)));
        let diag = |a: f64, b: f64| ComplexMatrix::diagonal(&[re(a), re(b)]);
        assert_eq!(*f.regular.matrix(0), diag(1.0, 0.0));
        assert_eq!(*f.regular.matrix(1), diag(0.0, 1.0));
        assert!(f.regular.max_residual() < 1e-12);
    }

    #[test]
    fn regular_decomposition_of_s3() {
        let f = fixture(group_algebra(&FiniteGroup::symmetric3()));
        let dec = decompose(&f.regular, &f.bs, &f.irreps, tol()).unwrap();
        assert_eq!(dec.multiplicities, vec![1, 1, 2]);
        assert!(dec.completeness_residual(&f.regular, &f.irreps) < 1e-9);
        assert!(dec.isometry_residual(&f.regular, &f.irreps) < 1e-9);
        for (i, ws) in dec.isometries.iter().enumerate() {
            for w in ws {
                assert!(intertwiner_residual(w, &f.irreps[i], &f.regular) < 1e-9);
            }
        }
    }

    #[test]
    fn schur_orthogonality() {
        let f = fixture(group_algebra(&FiniteGroup::symmetric3()));
        for (i, p) in f.irreps.iter().enumerate() {
            assert!(p.max_residual() < 1e-10);
            for (j, q) in f.irreps.iter().enumerate() {
                let homs = hom_space(p, q, tol()).unwrap();
                assert_eq!(homs.len(), usize::from(i == j));
            }
        }
        // the unit representation is the counit block
        let u = unit_rep(&f.h);
        assert_eq!(hom_space(&u, &f.irreps[f.bs.counit_index], tol()).unwrap().len(), 1);
        assert_eq!(hom_space(&f.regular, &f.regular, tol()).unwrap().len(), 6);
    }

    #[test]
    fn left_integral_spans_invariants_of_regular() {
        let f = fixture(function_algebra(&FiniteGroup::cyclic(2)));
        let homs = hom_space(&unit_rep(&f.h), &f.regular, tol()).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].distance(&ComplexMatrix::column(&[re(1.0), re(0.0)])) < 1e-12);
    }

    #[test]
    fn z2_grading_multiplies() {
        let f = fixture(function_algebra(&FiniteGroup::cyclic(2)));
        let gg = tensor_rep(&f.irreps[1], &f.irreps[1]).unwrap();
        let dec = decompose(&gg, &f.bs, &f.irreps, tol()).unwrap();
        assert_eq!(dec.multiplicities, vec![1, 0]);
    }

    #[test]
    fn tensor_of_regular_is_comultiplication() {
        let f = fixture(group_algebra(&FiniteGroup::symmetric3()));
        let ll = tensor_rep(&f.regular, &f.regular).unwrap();
        let h = &f.h;
        for i in 0..h.dim() {
            // (π_l × π_l)(a) x = Δ(a) x
            let da = h.comultiply(&h.basis_vector(i));
            for x in 0..36 {
                let mut xv = ComplexMatrix::zeros(36, 1);
                xv[(x, 0)] = re(1.0);
                let lhs = ll.matrix(i) * &xv;
                // Δ(a)x computed in A⊗A with factorwise products
                let mut rhs = ComplexMatrix::zeros(36, 1);
                let (x1, x2) = (x / 6, x % 6);
                for j in 0..6 {
                    for k in 0..6 {
                        let c = da[(j * 6 + k, 0)];
                        if c == re(0.0) {
                            continue;
                        }
                        let l = h.multiply(&h.basis_vector(j), &h.basis_vector(x1));
                        let r = h.multiply(&h.basis_vector(k), &h.basis_vector(x2));
                        rhs = &rhs + &l.kron(&r).scale(c);
                    }
                }
                assert!(lhs.distance(&rhs) < 1e-12);
            }
        }
        assert!(ll.max_residual() < 1e-9);
    }

    #[test]
    fn unit_is_tensor_identity() {
        let f = fixture(group_algebra(&FiniteGroup::symmetric3()));
        let p = &f.irreps[2];
        let up = tensor_rep(&unit_rep(&f.h), p).unwrap();
        for i in 0..6 {
            assert!(up.matrix(i).distance(p.matrix(i)) < 1e-12);
        }
    }

    #[test]
    fn conjugates() {
        let f = fixture(function_algebra(&FiniteGroup::cyclic(3)));
        // conjugate of p_g is p_{g^{-1}}
        for g in 0..3 {
            let c = conjugate_rep(&f.irreps[g], tol()).unwrap();
            let ginv = (3 - g) % 3;
            assert_eq!(hom_space(&f.irreps[ginv], &c, tol()).unwrap().len(), 1);
        }
        let s = fixture(group_algebra(&FiniteGroup::symmetric3()));
        let c = conjugate_rep(&s.irreps[2], tol()).unwrap();
        assert!(c.max_residual() < 1e-10);
        assert_eq!(hom_space(&s.irreps[2], &c, tol()).unwrap().len(), 1);
        let u = unit_rep(&s.h);
        let cu = conjugate_rep(&u, tol()).unwrap();
        assert!(cu.matrix(3).distance(u.matrix(3)) < 1e-15);
        // Hom(ε, π × π̄) is nonzero
        let pp = tensor_rep(&s.irreps[2], &c).unwrap();
        assert_eq!(hom_space(&u, &pp, tol()).unwrap().len(), 1);
    }
}
