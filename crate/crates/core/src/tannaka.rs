//! Reconstruction of a Hopf *-algebra `A′ = ⊕_i End E(X_i)` from the
//! embedding functor, the unitary equivalence `u_X φ = V_X(I_0 ⊗ φ)` and the
//! round trip `ι: A → A′`.
//!
//! All maps on `E(X)` are written in Gram-orthonormal coordinates, so the
//! star of `A′` is the conjugate transpose on each block.

use std::collections::BTreeMap;

use crate::embedding::{raw_tensorator, Carrier, EmbeddingFunctorData};
use crate::error::{Error, Result};
use crate::hopf::{block_decompose, FiniteHopfStarAlgebra};
use crate::monoid::absorbing_iso;
use crate::numeric::{adjoint_wrt, rank, re, solve_least_squares, ComplexMatrix, Tolerance, C64};
use crate::rep::{decompose, Intertwiner, Representation};
use crate::report::{anchor, VerificationReport};
use crate::BlockStructure;

/// `A′` with the data used to build its comultiplication.
#[derive(Debug, Clone)]
pub struct ReconstructedHopf {
    pub algebra: FiniteHopfStarAlgebra,
    /// `dim E(X_i)` per registered irreducible.
    pub dims: Vec<usize>,
    /// Start of block `i` in the matrix-unit basis.
    pub offsets: Vec<usize>,
    /// Decomposition isometries `w: X_k → X_i ⊗ X_j` per pair, as `(k, w)`.
    pub transport: BTreeMap<(usize, usize), Vec<(usize, Intertwiner)>>,
    /// Residual of the least-squares antipode solve.
    pub antipode_residual: f64,
}

impl ReconstructedHopf {
    /// Index of the matrix unit `E^i_{ab}`.
    pub fn index(&self, i: usize, a: usize, b: usize) -> usize {
        self.offsets[i] + a * self.dims[i] + b
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// `E(s)` in Gram-orthonormal coordinates, `s: X → Y`.
fn onb_morphism(n: usize, x: &Carrier, y: &Carrier, s: &ComplexMatrix) -> ComplexMatrix {
    y.onb_coords(&(&ComplexMatrix::identity(n).kron(s) * &x.onb))
}

/// `d_{X,Y}` in Gram-orthonormal coordinates.
fn onb_tensorator(m: &ComplexMatrix, x: &Carrier, y: &Carrier, product: &Carrier) -> ComplexMatrix {
    let cols: Vec<ComplexMatrix> = (0..x.dim())
        .flat_map(|a| (0..y.dim()).map(move |b| (a, b)))
        .map(|(a, b)| product.onb_coords(&raw_tensorator(m, &x.onb.col(a), &y.onb.col(b), y.object.dim())))
        .collect();
    ComplexMatrix::hstack(&cols)
}

/// Antipode of `A′` as the convolution inverse of the identity.
fn solve_antipode(n: usize, mult: &[C64], comult: &[C64], unit: &[C64], counit: &[C64], tol: Tolerance) -> (ComplexMatrix, f64) {
    let m = |i: usize, j: usize, k: usize| mult[(i * n + j) * n + k];
    let d = |i: usize, j: usize, k: usize| comult[(i * n + j) * n + k];
    // unknown S[p][j] at column p*n + j; rows (x, r) for m(S⊗id)Δ then m(id⊗S)Δ
    let mut a = ComplexMatrix::zeros(2 * n * n, n * n);
    let mut b = ComplexMatrix::zeros(2 * n * n, 1);
    for x in 0..n {
        for r in 0..n {
            let row = x * n + r;
            b[(row, 0)] = counit[x] * unit[r];
            b[(n * n + row, 0)] = counit[x] * unit[r];
            for j in 0..n {
                for k in 0..n {
                    let c = d(x, j, k);
                    if c == re(0.0) {
                        continue;
                    }
                    for p in 0..n {
                        a[(row, p * n + j)] += c * m(p, k, r);
                        a[(n * n + row, p * n + k)] += c * m(j, p, r);
                    }
                }
            }
        }
    }
    let (s, resid) = solve_least_squares(&a, &b, tol);
    (s.reshape(n, n), resid)
}

/// Builds `A′` from `E` on the block irreducibles `objects[0..blocks.len()]`.
pub fn reconstruct(
    efd: &EmbeddingFunctorData,
    blocks: &BlockStructure,
    irreps: &[Representation],
    tol: Tolerance,
) -> Result<ReconstructedHopf> {
    let k = blocks.len();
    if efd.carriers.len() < k {
        return Err(Error::precondition("embedding functor lacks the block irreducibles"));
    }
    let dims: Vec<usize> = efd.carriers[..k].iter().map(Carrier::dim).collect();
    let total: usize = dims.iter().map(|e| e * e).sum();
    if total != efd.monoid.dim() {
        return Err(Error::precondition(format!(
            "Σ dim E(X_i)² = {total} differs from dim End(Q) = {}; the irreducible list is incomplete",
            efd.monoid.dim()
        )));
    }
    let mut offsets = Vec::with_capacity(k);
    let mut acc = 0;
    for e in &dims {
        offsets.push(acc);
        acc += e * e;
    }
    let n = total;
    let idx = |i: usize, a: usize, b: usize| offsets[i] + a * dims[i] + b;

    let mut mult = vec![re(0.0); n * n * n];
    let mut unit = vec![re(0.0); n];
    let mut counit = vec![re(0.0); n];
    let mut star = ComplexMatrix::zeros(n, n);
    let mut names = Vec::with_capacity(n);
    for i in 0..k {
        let e = dims[i];
        for a in 0..e {
            unit[idx(i, a, a)] = re(1.0);
            for b in 0..e {
                names.push(format!("E{i}[{a},{b}]"));
                star[(idx(i, b, a), idx(i, a, b))] = re(1.0);
                for c in 0..e {
                    mult[(idx(i, a, b) * n + idx(i, b, c)) * n + idx(i, a, c)] = re(1.0);
                }
            }
        }
    }
    let cu = blocks.counit_index;
    if dims[cu] != 1 {
        return Err(Error::inconsistent("E(𝟙) is not one-dimensional"));
    }
    counit[idx(cu, 0, 0)] = re(1.0);

    let qdim = efd.monoid.dim();
    let mut comult = vec![re(0.0); n * n * n];
    let mut transport = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            let (xi, xj) = (&efd.carriers[i], &efd.carriers[j]);
            let pair = &efd.pairs[&(i, j)];
            let product = &pair.product;
            let d = onb_tensorator(&efd.monoid.m, xi, xj, product);
            let d_inv = d
                .try_inverse()
                .ok_or_else(|| Error::inconsistent(format!("tensorator d_{{{i},{j}}} is singular")))?;
            let dec = decompose(&product.object, blocks, irreps, tol)?;
            let mut ws = Vec::new();
            for (kk, isos) in dec.isometries.iter().enumerate() {
                for w in isos {
                    ws.push((kk, w.clone()));
                }
            }
            let ew: Vec<ComplexMatrix> = ws
                .iter()
                .map(|(kk, w)| onb_morphism(qdim, &efd.carriers[*kk], product, w))
                .collect();
            let (ei, ej) = (dims[i], dims[j]);
            for kk in 0..k {
                let ek = dims[kk];
                for a in 0..ek {
                    for b in 0..ek {
                        let mut unit_ab = ComplexMatrix::zeros(ek, ek);
                        unit_ab[(a, b)] = re(1.0);
                        let mut acted = ComplexMatrix::zeros(product.dim(), product.dim());
                        for ((wk, _), e) in ws.iter().zip(&ew) {
                            if *wk == kk {
                                acted = &acted + &(&(e * &unit_ab) * &e.adjoint());
                            }
                        }
                        let mm = &(&d_inv * &acted) * &d;
                        let src = idx(kk, a, b);
                        for a1 in 0..ei {
                            for b1 in 0..ei {
                                for c1 in 0..ej {
                                    for d1 in 0..ej {
                                        let v = mm[(a1 * ej + c1, b1 * ej + d1)];
                                        comult[(src * n + idx(i, a1, b1)) * n + idx(j, c1, d1)] = v;
                                    }
                                }
                            }
                        }
                    }
                }
            }
            transport.insert((i, j), ws);
        }
    }
    let (antipode, antipode_residual) = solve_antipode(n, &mult, &comult, &unit, &counit, tol);
    let algebra = FiniteHopfStarAlgebra::new(names, mult, unit, comult, counit, antipode, star)?;
    Ok(ReconstructedHopf {
        algebra,
        dims,
        offsets,
        transport,
        antipode_residual,
    })
}

/// `u_X: K_X → E(X)`, `u_X v = V_X(I_0 ⊗ v)`, per registered object, in
/// Gram-orthonormal coordinates of `E(X)`.
#[derive(Debug, Clone)]
pub struct NaturalIso {
    pub u: Vec<ComplexMatrix>,
    /// Distance of `V_X(I_0 ⊗ K_X)` from `E(X)`.
    pub membership: f64,
}

fn raw_u(h: &FiniteHopfStarAlgebra, integral: &ComplexMatrix, x: &Representation) -> Result<ComplexMatrix> {
    let v = absorbing_iso(h, x)?.v;
    Ok(&v * &integral.kron(&ComplexMatrix::identity(x.dim())))
}

pub fn natural_iso_u(h: &FiniteHopfStarAlgebra, efd: &EmbeddingFunctorData) -> Result<NaturalIso> {
    let mut u = Vec::with_capacity(efd.carriers.len());
    let mut membership: f64 = 0.0;
    for c in &efd.carriers {
        let raw = raw_u(h, &efd.monoid.eta, &c.object)?;
        membership = membership.max(c.membership_residual(&raw));
        u.push(c.onb_coords(&raw));
    }
    Ok(NaturalIso { u, membership })
}

/// Checks on `u`: unitarity, naturality on the registered morphisms and
/// monoidality on the registered pairs.
pub fn verify_natural_iso(
    h: &FiniteHopfStarAlgebra,
    efd: &EmbeddingFunctorData,
    iso: &NaturalIso,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let qdim = efd.monoid.dim();
    r.residual("u-membership", anchor::UNITARY_EQUIVALENCE, iso.membership, tol);
    let mut unitary: f64 = 0.0;
    for (c, u) in efd.carriers.iter().zip(&iso.u) {
        if !u.is_square() {
            unitary = f64::INFINITY;
            continue;
        }
        let id = ComplexMatrix::identity(u.rows());
        let ustar = adjoint_wrt(u, c.object.gram(), &id)?;
        unitary = unitary.max((&ustar * u).distance(&id)).max((u * &ustar).distance(&id));
    }
    r.residual("u-unitary", anchor::UNITARY_EQUIVALENCE, unitary, tol);

    let mut natural: f64 = 0.0;
    for s in &efd.morphisms {
        let (x, y) = (&efd.carriers[s.source], &efd.carriers[s.target]);
        let es = onb_morphism(qdim, x, y, &s.matrix);
        natural = natural.max((&iso.u[s.target] * &s.matrix).distance(&(&es * &iso.u[s.source])));
    }
    r.residual("u-natural", anchor::UNITARY_EQUIVALENCE, natural, tol);

    let mut monoidal: f64 = 0.0;
    for (&(i, j), pair) in &efd.pairs {
        let (x, y) = (&efd.carriers[i], &efd.carriers[j]);
        let d = onb_tensorator(&efd.monoid.m, x, y, &pair.product);
        let u_xy = pair.product.onb_coords(&raw_u(h, &efd.monoid.eta, &pair.product.object)?);
        monoidal = monoidal.max((&d * &iso.u[i].kron(&iso.u[j])).distance(&u_xy));
    }
    r.residual("u-monoidal", anchor::UNITARY_EQUIVALENCE, monoidal, tol);
    let unit_image = (&efd.unit_carrier * &efd.unit_iso).distance(&raw_u(h, &efd.monoid.eta, &crate::rep::unit_rep(efd.monoid.object.algebra()))?);
    r.residual("u-unit", anchor::UNITARY_EQUIVALENCE, unit_image, tol);
    Ok(r)
}

/// `ι(a) = (u_i π_i(a) u_i⁻¹)_i` as a `dim A′ x dim A` matrix.
pub fn canonical_map(h: &FiniteHopfStarAlgebra, rh: &ReconstructedHopf, efd: &EmbeddingFunctorData, iso: &NaturalIso) -> Result<ComplexMatrix> {
    let n = h.dim();
    let mut iota = ComplexMatrix::zeros(rh.dim(), n);
    for (i, e) in rh.dims.iter().enumerate() {
        let u = &iso.u[i];
        let u_inv = u
            .try_inverse()
            .ok_or_else(|| Error::inconsistent(format!("u for object {i} is singular")))?;
        for x in 0..n {
            let img = &(u * efd.carriers[i].object.matrix(x)) * &u_inv;
            for a in 0..*e {
                for b in 0..*e {
                    iota[(rh.index(i, a, b), x)] = img[(a, b)];
                }
            }
        }
    }
    Ok(iota)
}

/// Round trip `A ≅ A′`.
pub fn verify_roundtrip(
    h: &FiniteHopfStarAlgebra,
    rh: &ReconstructedHopf,
    efd: &EmbeddingFunctorData,
    iso: &NaturalIso,
    blocks: &BlockStructure,
    seed: u64,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let hp = &rh.algebra;
    let axioms = hp.verify_hopf_axioms(tol);
    r.residual("reconstructed-hopf-axioms", anchor::RECONSTRUCTION, axioms.max_residual(), tol);
    r.residual("reconstructed-antipode-solve", anchor::RECONSTRUCTION, rh.antipode_residual, tol);
    r.exact("reconstructed-dim", anchor::RECONSTRUCTION, hp.dim() == h.dim());
    let mut original = blocks.dims();
    original.sort_unstable();
    let rbs = block_decompose(hp, seed, tol)?;
    let mut rebuilt = rbs.dims();
    rebuilt.sort_unstable();
    let mut stored = rh.dims.clone();
    stored.sort_unstable();
    r.exact("reconstructed-block-dims", anchor::RECONSTRUCTION, rebuilt == original && stored == original);

    let iota = canonical_map(h, rh, efd, iso)?;
    let bijective = iota.is_square() && rank(&iota, tol.for_rank()) == h.dim();
    r.exact("iota-bijective", anchor::RECONSTRUCTION, bijective);
    let mult = (&iota * h.mult_map()).distance(&(hp.mult_map() * &iota.kron(&iota)));
    r.residual("iota-multiplicative", anchor::RECONSTRUCTION, mult, tol);
    let unit = (&iota * &h.unit_vector()).distance(&hp.unit_vector());
    r.residual("iota-unital", anchor::RECONSTRUCTION, unit, tol);
    let star = (&iota * h.star_matrix()).distance(&(hp.star_matrix() * &iota.conj()));
    r.residual("iota-star", anchor::RECONSTRUCTION, star, tol);
    let comult = (hp.comult_map() * &iota).distance(&(&iota.kron(&iota) * h.comult_map()));
    r.residual("iota-comultiplicative", anchor::RECONSTRUCTION, comult, tol);
    let counit = (&hp.counit_row() * &iota).distance(&h.counit_row());
    r.residual("iota-counit", anchor::RECONSTRUCTION, counit, tol);
    let antipode = (&iota * h.antipode()).distance(&(hp.antipode() * &iota));
    r.residual("iota-antipode", anchor::RECONSTRUCTION, antipode, tol);
    Ok(r)
}

/// `End(Q) → Nat E`, `s ↦ (s ⊗ id_X)`: injective with `Σ_i (dim E(X_i))² = dim End(Q)`;
/// intrinsic-group elements act as monoidal automorphisms of `E`.
pub fn verify_nat_e(
    h: &FiniteHopfStarAlgebra,
    efd: &EmbeddingFunctorData,
    rh: &ReconstructedHopf,
    intrinsic: &[ComplexMatrix],
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let n = h.dim();
    let k = rh.dims.len();
    let cols: Vec<ComplexMatrix> = (0..n)
        .map(|j| {
            let s = h.right_mult(&h.basis_vector(j));
            let parts: Vec<ComplexMatrix> = efd.carriers[..k]
                .iter()
                .map(|c| {
                    let lift = s.kron(&ComplexMatrix::identity(c.object.dim()));
                    c.onb_coords(&(&lift * &c.onb)).vectorize()
                })
                .collect();
            ComplexMatrix::vstack(&parts)
        })
        .collect();
    let map = ComplexMatrix::hstack(&cols);
    r.exact("nat-e-dimension", anchor::NAT_E, rh.dim() == n && map.rows() == n);
    r.exact("nat-e-injective", anchor::NAT_E, rank(&map, tol.for_rank()) == n);

    let mut monoidal: f64 = 0.0;
    for t in intrinsic {
        for &(i, j) in efd.pairs.keys() {
            let (x, y) = (&efd.carriers[i], &efd.carriers[j]);
            let (dx, dy) = (x.object.dim(), y.object.dim());
            let tx = t.kron(&ComplexMatrix::identity(dx));
            let ty = t.kron(&ComplexMatrix::identity(dy));
            let txy = t.kron(&ComplexMatrix::identity(dx * dy));
            for a in 0..x.dim() {
                let phi = x.basis.col(a);
                monoidal = monoidal.max(x.membership_residual(&(&tx * &phi)));
                for b in 0..y.dim() {
                    let psi = y.basis.col(b);
                    let lhs = raw_tensorator(&efd.monoid.m, &(&tx * &phi), &(&ty * &psi), dy);
                    let rhs = &txy * &raw_tensorator(&efd.monoid.m, &phi, &psi, dy);
                    monoidal = monoidal.max(lhs.distance(&rhs));
                }
            }
        }
    }
    r.residual("nat-e-intrinsic-monoidal", anchor::NAT_E, monoidal, tol);
    Ok(r)
}

/// `E` registered on the block irreducibles followed by their direct sum.
pub fn standard_objects(irreps: &[Representation]) -> Result<Vec<Representation>> {
    let mut objects = irreps.to_vec();
    let refs: Vec<&Representation> = irreps.iter().collect();
    objects.push(crate::rep::direct_sum(&refs)?);
    Ok(objects)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::embedding::embedding_functor;
    use crate::hopf::{function_algebra, group_algebra, haar_left, FiniteGroup, Normalization, DEFAULT_SEED};
    use crate::monoid::{monoid_intrinsic_group, regular_monoid, spanning_morphisms};
    use crate::rep::block_irrep;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn run(h: FiniteHopfStarAlgebra) -> (ReconstructedHopf, VerificationReport) {
        let h = Arc::new(h);
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let irreps: Vec<Representation> = (0..bs.len()).map(|i| block_irrep(&h, &bs, i).unwrap()).collect();
        let monoid = regular_monoid(&h, &haar).unwrap();
        let objects = standard_objects(&irreps).unwrap();
        let morphisms = spanning_morphisms(&objects, tol()).unwrap();
        let efd = embedding_functor(&monoid, &objects, morphisms, tol()).unwrap();
        let rh = reconstruct(&efd, &bs, &irreps, tol()).unwrap();
        let iso = natural_iso_u(&h, &efd).unwrap();
        let mut rep = verify_natural_iso(&h, &efd, &iso, tol()).unwrap();
        rep.extend(verify_roundtrip(&h, &rh, &efd, &iso, &bs, DEFAULT_SEED, tol()).unwrap());
        let group = monoid_intrinsic_group(&h, &monoid, DEFAULT_SEED, tol()).unwrap();
        rep.extend(verify_nat_e(&h, &efd, &rh, &group, tol()).unwrap());
        (rh, rep)
    }

    #[test]
    fn function_algebra_z2_round_trip() {
        let (rh, rep) = run(function_algebra(&FiniteGroup::cyclic(2)));
        assert_eq!(rh.dims, vec![1, 1]);
        assert!(rep.pass, "{}", rep.to_text());
    }

    #[test]
    fn group_algebra_s3_round_trip() {
        let (rh, rep) = run(group_algebra(&FiniteGroup::symmetric3()));
        assert_eq!(rh.dims, vec![1, 1, 2]);
        assert_eq!(rh.dim(), 6);
        assert!(rep.pass, "{}", rep.to_text());
        // counit of the identity natural transformation
        assert!((rh.algebra.counit_of(&rh.algebra.unit_vector()) - re(1.0)).norm() < 1e-12);
    }

    #[test]
    fn function_algebra_s3_round_trip() {
        let (_, rep) = run(function_algebra(&FiniteGroup::symmetric3()));
        assert!(rep.pass, "{}", rep.to_text());
    }

    #[test]
    fn incomplete_irreducible_list_is_rejected() {
        let h = Arc::new(group_algebra(&FiniteGroup::symmetric3()));
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let irreps: Vec<Representation> = (0..bs.len()).map(|i| block_irrep(&h, &bs, i).unwrap()).collect();
        let monoid = regular_monoid(&h, &haar).unwrap();
        let efd = embedding_functor(&monoid, &irreps[..2], Vec::new(), tol()).unwrap();
        assert!(reconstruct(&efd, &bs, &irreps, tol()).is_err());
    }
}
