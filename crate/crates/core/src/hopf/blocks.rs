//! Wedderburn decomposition `A ≅ ⊕_i End(H_i)` of a finite-dimensional C*-algebra
//! presented by structure constants.
//!
//! The center is found as a kernel, a random self-adjoint central element is
//! diagonalized on it and its spectral projections are polished by Newton
//! iteration. Inside each block the same is done with a random self-adjoint
//! element to obtain a minimal projection `e`, and `Ae` with the inner product
//! `y* x = ⟨x, y⟩ e` is an irreducible carrier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::{c64, eigenvalues, nullspace, rank, re, ComplexMatrix, Tolerance, C64};

use super::FiniteHopfStarAlgebra;

pub const DEFAULT_SEED: u64 = 0x5eed;

const MAX_ATTEMPTS: usize = 16;

/// One simple summand `End(H_i)`.
#[derive(Debug, Clone)]
pub struct Block {
    /// Minimal central projection `I_i`.
    pub projection: ComplexMatrix,
    /// `dim H_i`.
    pub dim: usize,
    /// Minimal projection `e ≤ I_i`.
    pub minimal_projection: ComplexMatrix,
    /// Orthonormal basis `v_a` of `A e`; matrix units are `v_a v_b*`.
    pub basis: Vec<ComplexMatrix>,
    /// The irreducible representation on `A e`, one `dim x dim` matrix per basis element.
    pub irrep: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
    pub counit_index: usize,
    pub seed: u64,
}

impl BlockStructure {
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn counit_projection(&self) -> &ComplexMatrix {
        &self.blocks[self.counit_index].projection
    }

    /// Matrix unit `E_ab = v_a v_b*` of block `i`.
    pub fn matrix_unit(&self, h: &FiniteHopfStarAlgebra, i: usize, a: usize, b: usize) -> ComplexMatrix {
        let blk = &self.blocks[i];
        h.multiply(&blk.basis[a], &h.star(&blk.basis[b]))
    }
}

/// Polishes an approximate self-adjoint idempotent with `p ← 3p² − 2p³`.
fn refine_projection(h: &FiniteHopfStarAlgebra, p: &ComplexMatrix) -> ComplexMatrix {
    let mut p = p.clone();
    for _ in 0..60 {
        let p2 = h.multiply(&p, &p);
        let p3 = h.multiply(&p2, &p);
        let next = &p2.scale_real(3.0) - &p3.scale_real(2.0);
        let next = (&next + &h.star(&next)).scale_real(0.5);
        let step = next.distance(&p);
        p = next;
        if step < 1e-15 {
            break;
        }
    }
    p
}

fn random_element(h: &FiniteHopfStarAlgebra, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(h.dim(), 1, |_, _| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Groups eigenvalues (sorted by real part) into clusters of `size` equal values.
/// Returns cluster means, or `None` when the spectrum is not cleanly separated.
fn cluster(mut values: Vec<C64>, size: usize, tol: Tolerance) -> Option<Vec<C64>> {
    values.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
    let spread_tol = 1e-6_f64.max(tol.eps().sqrt());
    let mut means = Vec::new();
    for chunk in values.chunks(size) {
        let mean: C64 = chunk.iter().sum::<C64>() / size as f64;
        if chunk.iter().any(|v| (v - mean).norm() > spread_tol) {
            return None;
        }
        means.push(mean);
    }
    for w in means.windows(2) {
        if (w[1] - w[0]).norm() < 1e-3 {
            return None;
        }
    }
    Some(means)
}

/// Spectral projection of the element with left-multiplication matrix `l`
/// onto eigenvalue `means[k]`, started from the local unit `start`.
fn spectral_projection(
    l: &ComplexMatrix,
    start: &ComplexMatrix,
    means: &[C64],
    k: usize,
) -> ComplexMatrix {
    let mut x = start.clone();
    for (j, mu) in means.iter().enumerate() {
        if j == k {
            continue;
        }
        let shifted = &(l * &x) - &x.scale(*mu);
        x = shifted.scale((means[k] - mu).inv());
    }
    x
}

/// Orthonormal basis (standard inner product) of the range of `m`.
fn range_basis(m: &ComplexMatrix, tol: Tolerance) -> ComplexMatrix {
    let kernel = nullspace(&m.adjoint(), tol);
    if kernel.is_empty() {
        return ComplexMatrix::identity(m.rows());
    }
    ComplexMatrix::hstack(&nullspace(&ComplexMatrix::hstack(&kernel).adjoint(), tol))
}

fn central_projections(
    h: &FiniteHopfStarAlgebra,
    rng: &mut ChaCha8Rng,
    tol: Tolerance,
) -> Result<Vec<ComplexMatrix>> {
    let n = h.dim();
    // z central iff Σ_i z_i (m[i][j][k] - m[j][i][k]) = 0 for all j, k
    let mut sys = ComplexMatrix::zeros(n * n, n);
    for j in 0..n {
        for k in 0..n {
            for i in 0..n {
                sys[(j * n + k, i)] = h.m(i, j, k) - h.m(j, i, k);
            }
        }
    }
    let center = nullspace(&sys, tol);
    let c = center.len();
    if c == 0 {
        return Err(Error::inconsistent("algebra has trivial center"));
    }
    let zmat = ComplexMatrix::hstack(&center);
    let unit = h.unit_vector();
    if c == 1 {
        return Ok(vec![unit]);
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut z = ComplexMatrix::zeros(n, 1);
        for v in &center {
            z = &z + &v.scale(c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        let z = (&z + &h.star(&z)).scale_real(0.5);
        let lz = h.left_mult(&z);
        let restricted = &(&zmat.adjoint() * &lz) * &zmat;
        let Some(means) = cluster(eigenvalues(&restricted), 1, tol) else {
            continue;
        };
        if means.len() != c {
            continue;
        }
        let projections = (0..c)
            .map(|k| refine_projection(h, &spectral_projection(&lz, &unit, &means, k)))
            .collect();
        return Ok(projections);
    }
    Err(Error::inconsistent("could not separate the spectrum of a central element"))
}

/// Orthonormalizes spanning vectors of `A e` under `y* x = ⟨x, y⟩ e`.
fn carrier_basis(
    h: &FiniteHopfStarAlgebra,
    e: &ComplexMatrix,
    dim: usize,
    tol: Tolerance,
) -> Result<Vec<ComplexMatrix>> {
    // coefficient of e in an element of eAe
    let pivot = (0..h.dim())
        .max_by(|&a, &b| e[(a, 0)].norm().partial_cmp(&e[(b, 0)].norm()).unwrap())
        .expect("nonempty");
    let ip = |x: &ComplexMatrix, y: &ComplexMatrix| -> C64 { h.multiply(&h.star(y), x)[(pivot, 0)] / e[(pivot, 0)] };
    let re_ = h.right_mult(e);
    let mut out: Vec<ComplexMatrix> = Vec::new();
    for j in 0..h.dim() {
        let v = re_.col(j);
        let mut w = v.clone();
        for u in &out {
            let c = ip(&w, u);
            w = &w - &u.scale(c);
        }
        let nrm = ip(&w, &w).re;
        if nrm > tol.eps().sqrt() * ip(&v, &v).re.max(1e-300) && nrm > 1e-12 {
            out.push(w.scale_real(1.0 / nrm.sqrt()));
        }
        if out.len() == dim {
            break;
        }
    }
    if out.len() != dim {
        return Err(Error::inconsistent(format!(
            "carrier of block has dimension {}, expected {dim}",
            out.len()
        )));
    }
    Ok(out)
}

fn irrep_matrices(h: &FiniteHopfStarAlgebra, e: &ComplexMatrix, basis: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let pivot = (0..h.dim())
        .max_by(|&a, &b| e[(a, 0)].norm().partial_cmp(&e[(b, 0)].norm()).unwrap())
        .expect("nonempty");
    let d = basis.len();
    let adj: Vec<ComplexMatrix> = basis.iter().map(|v| h.star(v)).collect();
    (0..h.dim())
        .map(|j| {
            let ej = h.basis_vector(j);
            let ejv: Vec<ComplexMatrix> = basis.iter().map(|v| h.multiply(&ej, v)).collect();
            ComplexMatrix::from_fn(d, d, |a, b| h.multiply(&adj[a], &ejv[b])[(pivot, 0)] / e[(pivot, 0)])
        })
        .collect()
}

fn sort_key(p: &ComplexMatrix, is_counit: bool, dim: usize) -> (bool, usize, usize, Vec<(i64, i64)>) {
    let first = p.as_slice().iter().position(|z| z.norm() > 1e-6).unwrap_or(usize::MAX);
    let rounded = p
        .as_slice()
        .iter()
        .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
        .collect();
    (!is_counit, dim, first, rounded)
}

/// Decomposes `H` into matrix blocks using a seeded random central element.
pub fn block_decompose(h: &FiniteHopfStarAlgebra, seed: u64, tol: Tolerance) -> Result<BlockStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let projections = central_projections(h, &mut rng, tol)?;
    let rank_tol = tol.for_rank();
    let mut blocks = Vec::new();
    for p in projections {
        let r = rank(&h.left_mult(&p), rank_tol);
        let dim = (r as f64).sqrt().round() as usize;
        if dim * dim != r || dim == 0 {
            return Err(Error::inconsistent(format!(
                "central projection generates a subalgebra of dimension {r}, not a square"
            )));
        }
        let e = if dim == 1 {
            p.clone()
        } else {
            minimal_projection(h, &p, dim, &mut rng, tol)?
        };
        let basis = carrier_basis(h, &e, dim, tol)?;
        let irrep = irrep_matrices(h, &e, &basis);
        blocks.push(Block {
            projection: p,
            dim,
            minimal_projection: e,
            basis,
            irrep,
        });
    }
    let total: usize = blocks.iter().map(|b| b.dim * b.dim).sum();
    if total != h.dim() {
        return Err(Error::inconsistent(format!(
            "block dimensions account for {total} of {} basis elements",
            h.dim()
        )));
    }
    let counit_hits: Vec<usize> = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| (h.counit_of(&b.projection) - re(1.0)).norm() < 1e-6)
        .map(|(i, _)| i)
        .collect();
    if counit_hits.len() != 1 || blocks[counit_hits[0]].dim != 1 {
        return Err(Error::inconsistent("counit does not single out a one-dimensional block"));
    }
    let counit = counit_hits[0];
    let mut indexed: Vec<(usize, Block)> = blocks.into_iter().enumerate().collect();
    indexed.sort_by_cached_key(|(i, b)| sort_key(&b.projection, *i == counit, b.dim));
    let counit_index = indexed.iter().position(|(i, _)| *i == counit).expect("present");
    Ok(BlockStructure {
        blocks: indexed.into_iter().map(|(_, b)| b).collect(),
        counit_index,
        seed,
    })
}

fn minimal_projection(
    h: &FiniteHopfStarAlgebra,
    p: &ComplexMatrix,
    dim: usize,
    rng: &mut ChaCha8Rng,
    tol: Tolerance,
) -> Result<ComplexMatrix> {
    let block_basis = range_basis(&h.left_mult(p), tol.for_rank());
    for _ in 0..MAX_ATTEMPTS {
        let r = random_element(h, rng);
        let sa = (&r + &h.star(&r)).scale_real(0.5);
        let x = h.multiply(p, &sa);
        let lx = h.left_mult(&x);
        let restricted = &(&block_basis.adjoint() * &lx) * &block_basis;
        let Some(means) = cluster(eigenvalues(&restricted), dim, tol) else {
            continue;
        };
        if means.len() != dim {
            continue;
        }
        let e = refine_projection(h, &spectral_projection(&lx, p, &means, 0));
        if rank(&h.right_mult(&e), Tolerance::new(1e-8)?) != dim {
            continue;
        }
        return Ok(e);
    }
    Err(Error::inconsistent("could not isolate a minimal projection"))
}

/// Residuals of the defining properties of the block structure:
/// `(sum to 1, orthogonal idempotents, self-adjoint, central, irreps)`.
pub fn block_residuals(h: &FiniteHopfStarAlgebra, bs: &BlockStructure) -> BlockResiduals {
    let n = h.dim();
    let mut sum = ComplexMatrix::zeros(n, 1);
    let mut orth: f64 = 0.0;
    let mut adj: f64 = 0.0;
    let mut central: f64 = 0.0;
    let mut irrep: f64 = 0.0;
    for (i, b) in bs.blocks.iter().enumerate() {
        sum = &sum + &b.projection;
        adj = adj.max(h.star(&b.projection).distance(&b.projection));
        for (j, c) in bs.blocks.iter().enumerate() {
            let prod = h.multiply(&b.projection, &c.projection);
            let target = if i == j { b.projection.clone() } else { ComplexMatrix::zeros(n, 1) };
            orth = orth.max(prod.distance(&target));
        }
        let l = h.left_mult(&b.projection);
        let r = h.right_mult(&b.projection);
        central = central.max(l.distance(&r));
        irrep = irrep.max(irrep_residual(h, &b.irrep));
        let on_own = irrep_of(h, &b.irrep, &b.projection);
        irrep = irrep.max(on_own.distance(&ComplexMatrix::identity(b.dim)));
    }
    BlockResiduals {
        completeness: sum.distance(&h.unit_vector()),
        orthogonality: orth,
        self_adjoint: adj,
        central,
        irreps: irrep,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BlockResiduals {
    pub completeness: f64,
    pub orthogonality: f64,
    pub self_adjoint: f64,
    pub central: f64,
    pub irreps: f64,
}

fn irrep_of(h: &FiniteHopfStarAlgebra, mats: &[ComplexMatrix], a: &ComplexMatrix) -> ComplexMatrix {
    let d = mats[0].rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..h.dim() {
        if a[(i, 0)] != re(0.0) {
            out = &out + &mats[i].scale(a[(i, 0)]);
        }
    }
    out
}

/// Homomorphism, unitality and *-residual of a family of matrices with identity Gram.
fn irrep_residual(h: &FiniteHopfStarAlgebra, mats: &[ComplexMatrix]) -> f64 {
    let n = h.dim();
    let d = mats[0].rows();
    let mut worst = irrep_of(h, mats, &h.unit_vector()).distance(&ComplexMatrix::identity(d));
    for i in 0..n {
        for j in 0..n {
            let prod = &mats[i] * &mats[j];
            let lin = irrep_of(h, mats, &h.multiply(&h.basis_vector(i), &h.basis_vector(j)));
            worst = worst.max(prod.distance(&lin));
        }
        let st = irrep_of(h, mats, &h.star(&h.basis_vector(i)));
        worst = worst.max(st.distance(&mats[i].adjoint()));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra, FiniteGroup};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn check(bs: &BlockStructure, h: &FiniteHopfStarAlgebra) {
        let r = block_residuals(h, bs);
        for v in [r.completeness, r.orthogonality, r.self_adjoint, r.central, r.irreps] {
            assert!(v < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn function_algebra_s3_has_six_points() {
        let h = function_algebra(&FiniteGroup::symmetric3());
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        assert_eq!(bs.dims(), vec![1; 6]);
        assert_eq!(bs.counit_index, 0);
        // blocks come out in group order
        for (i, b) in bs.blocks.iter().enumerate() {
            assert!(b.projection.distance(&h.basis_vector(i)) < 1e-10);
        }
        check(&bs, &h);
    }

    #[test]
    fn group_algebra_s3_blocks() {
        let h = group_algebra(&FiniteGroup::symmetric3());
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        assert_eq!(bs.dims(), vec![1, 1, 2]);
        assert_eq!(bs.counit_index, 0);
        // sign block: (1/6) Σ sgn(g) g
        let sgn = [1.0, -1.0, -1.0, -1.0, 1.0, 1.0];
        let expected = ComplexMatrix::column(&sgn.iter().map(|s| re(s / 6.0)).collect::<Vec<_>>());
        assert!(bs.blocks[1].projection.distance(&expected) < 1e-10);
        check(&bs, &h);
    }

    #[test]
    fn group_algebra_z2_blocks() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        assert_eq!(bs.dims(), vec![1, 1]);
        let plus = ComplexMatrix::column(&[re(0.5), re(0.5)]);
        let minus = ComplexMatrix::column(&[re(0.5), re(-0.5)]);
        assert!(bs.blocks[0].projection.distance(&plus) < 1e-12);
        assert!(bs.blocks[1].projection.distance(&minus) < 1e-12);
    }

    #[test]
    fn decomposition_is_seed_independent_up_to_order() {
        let h = group_algebra(&FiniteGroup::symmetric3());
        let a = block_decompose(&h, 1, tol()).unwrap();
        let b = block_decompose(&h, 99, tol()).unwrap();
        for (x, y) in a.blocks.iter().zip(&b.blocks) {
            assert!(x.projection.distance(&y.projection) < 1e-10);
        }
        check(&b, &h);
    }

    #[test]
    fn matrix_units_multiply() {
        let h = group_algebra(&FiniteGroup::symmetric3());
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let e = |a, b| bs.matrix_unit(&h, 2, a, b);
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        let lhs = h.multiply(&e(a, b), &e(c, d));
                        let rhs = if b == c { e(a, d) } else { ComplexMatrix::zeros(6, 1) };
                        assert!(lhs.distance(&rhs) < 1e-10);
                    }
                }
            }
        }
        let sum = &e(0, 0) + &e(1, 1);
        assert!(sum.distance(&bs.blocks[2].projection) < 1e-10);
    }
}
