//! The embedding functor `E(X) = Hom(ε, Q × X)` of an absorbing monoid,
//! its tensorator `d_{X,Y}`, unit isomorphism and inner products.
//!
//! An element `φ ∈ E(X)` is stored as a column vector in the carrier `Q ⊗ X`.
//! Carrier bases are orthonormal for the entrywise inner product; the
//! categorical inner product `(φ, ψ) id = ψ* φ` is kept as a Gram matrix.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{Morphism, MonoidObject};
use crate::numeric::{adjoint_wrt, hermitian_sqrt_and_inverse, nullspace, rank, ComplexMatrix, Tolerance};
use crate::rep::{decompose, hom_space, tensor_rep, Intertwiner, Representation};
use crate::report::{anchor, VerificationReport};
use crate::BlockStructure;

/// Orthonormal basis of `Hom(ε, ρ) = {v : ρ(a)v = ε(a)v}`.
pub fn hom_from_unit(rho: &Representation, tol: Tolerance) -> Vec<ComplexMatrix> {
    let h = rho.algebra();
    let id = ComplexMatrix::identity(rho.dim());
    let rows: Vec<ComplexMatrix> = (0..h.dim())
        .map(|i| rho.matrix(i) - &id.scale(h.counit()[i]))
        .collect();
    nullspace(&ComplexMatrix::vstack(&rows), tol.for_rank())
}

/// `E(X)` for one object: basis, Gram and a Gram-orthonormal basis.
#[derive(Debug, Clone)]
pub struct Carrier {
    pub object: Representation,
    /// Columns span `E(X)` inside `Q ⊗ X`, entrywise orthonormal.
    pub basis: ComplexMatrix,
    /// `gram[b][a] = ψ_b* φ_a`.
    pub gram: ComplexMatrix,
    /// Columns orthonormal for the categorical inner product.
    pub onb: ComplexMatrix,
    /// Gram matrix of `Q ⊗ X`.
    pub ambient_gram: ComplexMatrix,
}

impl Carrier {
    fn new(q: &Representation, object: Representation, tol: Tolerance) -> Result<Self> {
        let qx = tensor_rep(q, &object)?;
        let vecs = hom_from_unit(&qx, tol);
        let ambient_gram = qx.gram().clone();
        let basis = if vecs.is_empty() {
            ComplexMatrix::zeros(qx.dim(), 0)
        } else {
            ComplexMatrix::hstack(&vecs)
        };
        let gram = &(&basis.adjoint() * &ambient_gram) * &basis;
        let onb = if vecs.is_empty() {
            basis.clone()
        } else {
            &basis * &hermitian_sqrt_and_inverse(&gram)?.1
        };
        Ok(Self {
            object,
            basis,
            gram,
            onb,
            ambient_gram,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates in `basis` of vectors lying in `E(X)`.
    pub fn coords(&self, v: &ComplexMatrix) -> ComplexMatrix {
        &self.basis.adjoint() * v
    }

    /// Coordinates in `onb`.
    pub fn onb_coords(&self, v: &ComplexMatrix) -> ComplexMatrix {
        &(&self.onb.adjoint() * &self.ambient_gram) * v
    }

    /// Distance of the columns of `v` from `E(X)`.
    pub fn membership_residual(&self, v: &ComplexMatrix) -> f64 {
        (&self.basis * &self.coords(v)).distance(v)
    }
}

/// Tensorator data for an ordered pair of registered objects.
#[derive(Debug, Clone)]
pub struct PairData {
    /// `E(X ⊗ Y)`.
    pub product: Carrier,
    /// `d_{X,Y}` in the entrywise bases.
    pub d: ComplexMatrix,
    /// Largest distance of a raw tensorator value from `E(X ⊗ Y)`.
    pub membership: f64,
}

/// `E` restricted to a finite list of registered objects.
#[derive(Debug, Clone)]
pub struct EmbeddingFunctorData {
    pub monoid: MonoidObject,
    pub carriers: Vec<Carrier>,
    pub pairs: BTreeMap<(usize, usize), PairData>,
    /// `e(1) = η̃` in the coordinates of `E(𝟙) = Hom(ε, Q)`.
    pub unit_iso: ComplexMatrix,
    /// `Hom(ε, Q)`.
    pub unit_carrier: ComplexMatrix,
    pub morphisms: Vec<Morphism>,
}

/// Raw tensorator `(m̃ ⊗ id_{X⊗Y})(id_Q ⊗ φ ⊗ id_Y) ψ`.
pub fn raw_tensorator(m: &ComplexMatrix, phi: &ComplexMatrix, psi: &ComplexMatrix, dim_y: usize) -> ComplexMatrix {
    let n = m.rows();
    let dim_x = phi.rows() / n;
    let mut out = ComplexMatrix::zeros(n * dim_x * dim_y, 1);
    for p in 0..n {
        for y in 0..dim_y {
            let w = psi[(p * dim_y + y, 0)];
            if w.norm() == 0.0 {
                continue;
            }
            for r in 0..n {
                for x in 0..dim_x {
                    let v = phi[(r * dim_x + x, 0)] * w;
                    if v.norm() == 0.0 {
                        continue;
                    }
                    for q in 0..n {
                        out[(q * dim_x * dim_y + x * dim_y + y, 0)] += m[(q, p * n + r)] * v;
                    }
                }
            }
        }
    }
    out
}

/// Builds `E` on the given objects. Tensorators are computed for every
/// ordered pair; `morphisms` index into `objects`.
pub fn embedding_functor(
    monoid: &MonoidObject,
    objects: &[Representation],
    morphisms: Vec<Morphism>,
    tol: Tolerance,
) -> Result<EmbeddingFunctorData> {
    let q = &monoid.object;
    let unit = hom_from_unit(q, tol);
    if unit.len() != 1 {
        return Err(Error::precondition(format!(
            "dim Hom(ε, Q) = {}, expected 1",
            unit.len()
        )));
    }
    let unit_carrier = unit[0].clone();
    let unit_iso = &unit_carrier.adjoint() * &monoid.eta;
    if unit_iso[(0, 0)].norm() <= tol.eps() {
        return Err(Error::precondition("η̃ does not span Hom(ε, Q)"));
    }
    for s in &morphisms {
        if s.source >= objects.len() || s.target >= objects.len() {
            return Err(Error::input("morphism", "object index out of range"));
        }
    }
    let carriers: Vec<Carrier> = objects
        .iter()
        .map(|x| Carrier::new(q, x.clone(), tol))
        .collect::<Result<_>>()?;
    let mut pairs = BTreeMap::new();
    for (i, cx) in carriers.iter().enumerate() {
        for (j, cy) in carriers.iter().enumerate() {
            let product = Carrier::new(q, tensor_rep(&cx.object, &cy.object)?, tol)?;
            let mut cols = Vec::with_capacity(cx.dim() * cy.dim());
            let mut membership: f64 = 0.0;
            for a in 0..cx.dim() {
                for b in 0..cy.dim() {
                    let t = raw_tensorator(&monoid.m, &cx.basis.col(a), &cy.basis.col(b), cy.object.dim());
                    membership = membership.max(product.membership_residual(&t));
                    cols.push(product.coords(&t));
                }
            }
            let d = if cols.is_empty() {
                ComplexMatrix::zeros(product.dim(), 0)
            } else {
                ComplexMatrix::hstack(&cols)
            };
            pairs.insert((i, j), PairData { product, d, membership });
        }
    }
    Ok(EmbeddingFunctorData {
        monoid: monoid.clone(),
        carriers,
        pairs,
        unit_iso,
        unit_carrier,
        morphisms,
    })
}

impl EmbeddingFunctorData {
    pub fn dims(&self) -> Vec<usize> {
        self.carriers.iter().map(Carrier::dim).collect()
    }

    fn object(&self, i: usize) -> Result<&Carrier> {
        self.carriers
            .get(i)
            .ok_or_else(|| Error::input("object", format!("object {i} is not registered")))
    }

    /// `E(s)φ = (id_Q ⊗ s)φ` in the entrywise bases.
    pub fn functor_on_morphism(&self, source: usize, target: usize, s: &Intertwiner) -> Result<ComplexMatrix> {
        let (cx, cy) = (self.object(source)?, self.object(target)?);
        if s.shape() != (cy.object.dim(), cx.object.dim()) {
            return Err(Error::input("morphism", "shape does not match the registered objects"));
        }
        let lift = ComplexMatrix::identity(self.monoid.dim()).kron(s);
        Ok(&cy.basis.adjoint() * &(&lift * &cx.basis))
    }

    /// Adjoint of a map `E(X) → E(Y)` for the stored Grams.
    pub fn e_adjoint(&self, source: usize, target: usize, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        adjoint_wrt(t, &self.object(source)?.gram, &self.object(target)?.gram)
    }

    /// `dim E(X) = Σ_i mult_i(X) dim H_i`.
    pub fn expected_dim(x: &Representation, blocks: &BlockStructure, irreps: &[Representation], tol: Tolerance) -> Result<usize> {
        let dec = decompose(x, blocks, irreps, tol)?;
        Ok(dec.multiplicities.iter().zip(blocks.dims()).map(|(m, d)| m * d).sum())
    }
}

/// `Q`-module maps `Q → Q ⊗ X` with the bijection `δ(s) = s η̃`.
#[derive(Debug, Clone)]
pub struct ModuleHoms {
    /// Entrywise orthonormal basis of `(n dim X) x n` matrices.
    pub basis: Vec<Intertwiner>,
    /// `δ` from module-hom coordinates to `E(X)` coordinates.
    pub delta: ComplexMatrix,
    /// `δ⁻¹(φ) = (m̃ ⊗ id)(id_Q ⊗ φ)` in the same coordinates.
    pub delta_inv: ComplexMatrix,
    /// Distance of `δ⁻¹(φ)` from the module-hom span.
    pub membership: f64,
}

/// `δ⁻¹(φ) = (m̃ ⊗ id_X)(id_Q ⊗ φ)`.
pub fn delta_inverse(m: &ComplexMatrix, phi: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let dim_x = phi.rows() / n;
    &m.kron(&ComplexMatrix::identity(dim_x)) * &ComplexMatrix::identity(n).kron(phi)
}

/// Basis of `Hom_{Q-mod}(Q, Q ⊗ X)` from the intertwiner and module constraints.
pub fn q_module_homs(monoid: &MonoidObject, carrier: &Carrier, tol: Tolerance) -> Result<ModuleHoms> {
    let q = &monoid.object;
    let x = &carrier.object;
    let n = q.dim();
    let dx = x.dim();
    let qx = tensor_rep(q, x)?;
    let rows = n * dx;
    let m = &monoid.m;
    let mx = m.kron(&ComplexMatrix::identity(dx));
    let h = q.algebra();
    let lin = crate::numeric::linear_map_matrix(rows, n, |s| {
        let mut parts: Vec<ComplexMatrix> = (0..h.dim())
            .map(|i| (&(s * q.matrix(i)) - &(qx.matrix(i) * s)).vectorize())
            .collect();
        let module = &(s * m) - &(&mx * &ComplexMatrix::identity(n).kron(s));
        parts.push(module.vectorize());
        ComplexMatrix::vstack(&parts)
    });
    let basis: Vec<ComplexMatrix> = nullspace(&lin, tol.for_rank())
        .into_iter()
        .map(|v| v.reshape(rows, n))
        .collect();
    let k = basis.len();
    let delta = ComplexMatrix::from_fn(carrier.dim(), k, |a, j| carrier.coords(&(&basis[j] * &monoid.eta))[(a, 0)]);
    let mut delta_inv = ComplexMatrix::zeros(k, carrier.dim());
    let mut membership: f64 = 0.0;
    for a in 0..carrier.dim() {
        let s = delta_inverse(m, &carrier.basis.col(a));
        let mut proj = ComplexMatrix::zeros(rows, n);
        for (j, b) in basis.iter().enumerate() {
            let c = b.inner(&s);
            delta_inv[(j, a)] = c;
            proj = &proj + &b.scale(c);
        }
        membership = membership.max(proj.distance(&s));
    }
    Ok(ModuleHoms {
        basis,
        delta,
        delta_inv,
        membership,
    })
}

impl ModuleHoms {
    /// `max(|δ δ⁻¹ − id|, |δ⁻¹ δ − id|)`.
    pub fn inverse_residual(&self) -> f64 {
        let (e, k) = self.delta.shape();
        if e != k {
            return f64::INFINITY;
        }
        (&self.delta * &self.delta_inv)
            .distance(&ComplexMatrix::identity(e))
            .max((&self.delta_inv * &self.delta).distance(&ComplexMatrix::identity(k)))
    }
}

/// `Q ⊗ X ≅ n(X) Q` as `Q`-modules: orthonormal module isometries `s_j`
/// with `s_j* s_i = δ_ij id`, `Σ s_j s_j* = id` and `s_j*` module maps.
pub fn absorbing_module_residual(monoid: &MonoidObject, carrier: &Carrier, homs: &ModuleHoms, tol: Tolerance) -> Result<(usize, f64)> {
    let q = &monoid.object;
    let g = q.gram();
    let gx = &carrier.ambient_gram;
    let n = q.dim();
    let nd = n as f64;
    let adj = |s: &ComplexMatrix| adjoint_wrt(s, g, gx);
    let mut ortho: Vec<ComplexMatrix> = Vec::new();
    for s in &homs.basis {
        let mut w = s.clone();
        for u in &ortho {
            let c = (&adj(u)? * &w).trace() / nd;
            w = &w - &u.scale(c);
        }
        let nrm = (&adj(&w)? * &w).trace().re / nd;
        if nrm > tol.for_rank().eps() {
            ortho.push(w.scale_real(1.0 / nrm.sqrt()));
        }
    }
    let id_q = ComplexMatrix::identity(n);
    let mut worst: f64 = 0.0;
    let mut sum = ComplexMatrix::zeros(gx.rows(), gx.rows());
    let dx = carrier.object.dim();
    let mx = monoid.m.kron(&ComplexMatrix::identity(dx));
    for (i, si) in ortho.iter().enumerate() {
        let si_star = adj(si)?;
        sum = &sum + &(si * &si_star);
        let module = (&si_star * &mx).distance(&(&monoid.m * &id_q.kron(&si_star)));
        worst = worst.max(module);
        for (j, sj) in ortho.iter().enumerate() {
            let target = if i == j { id_q.clone() } else { ComplexMatrix::zeros(n, n) };
            worst = worst.max((&adj(sj)? * si).distance(&target));
        }
    }
    worst = worst.max(sum.distance(&ComplexMatrix::identity(gx.rows())));
    Ok((ortho.len(), worst))
}

/// Every embedding-functor check over the registered objects and morphisms.
pub fn verify_embedding_suite(
    efd: &EmbeddingFunctorData,
    blocks: &BlockStructure,
    irreps: &[Representation],
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let m = &efd.monoid.m;
    let id_n = ComplexMatrix::identity(efd.monoid.dim());

    r.exact("embedding-unit-dim", anchor::EMBEDDING, efd.unit_iso.shape() == (1, 1));
    let eta_in_unit = (&efd.unit_carrier * &efd.unit_iso).distance(&efd.monoid.eta);
    r.residual("embedding-unit-iso", anchor::EMBEDDING, eta_in_unit, tol);

    let mut dims_ok = true;
    let mut gram_ok = true;
    let mut delta_res: f64 = 0.0;
    let mut delta_member: f64 = 0.0;
    let mut module_res: f64 = 0.0;
    let mut module_counts = true;
    let mut gamma_res: f64 = 0.0;
    for c in &efd.carriers {
        let expected = EmbeddingFunctorData::expected_dim(&c.object, blocks, irreps, tol)?;
        dims_ok &= c.dim() == expected;
        gram_ok &= c.dim() == 0 || crate::numeric::is_positive_definite(&c.gram);
        let homs = q_module_homs(&efd.monoid, c, tol)?;
        delta_res = delta_res.max(homs.inverse_residual());
        delta_member = delta_member.max(homs.membership);
        let (count, res) = absorbing_module_residual(&efd.monoid, c, &homs, tol)?;
        module_counts &= count == expected;
        module_res = module_res.max(res);
    }
    r.exact("embedding-dims", anchor::EMBEDDING, dims_ok);
    r.exact("embedding-grams-positive", anchor::EMBEDDING_STAR, gram_ok);
    r.residual("module-homs-delta-inverse", anchor::MODULE_HOMS, delta_res, tol);
    r.residual("module-homs-membership", anchor::MODULE_HOMS, delta_member, tol);
    r.exact("absorbing-module-count", anchor::ABSORBING_MODULE, module_counts);
    r.residual("absorbing-module-isometries", anchor::ABSORBING_MODULE, module_res, tol);

    let mut membership: f64 = 0.0;
    let mut invertible = true;
    let mut unitary: f64 = 0.0;
    let mut mult_ok = true;
    for (&(i, j), pair) in &efd.pairs {
        let (cx, cy) = (&efd.carriers[i], &efd.carriers[j]);
        membership = membership.max(pair.membership);
        mult_ok &= pair.product.dim() == cx.dim() * cy.dim();
        let square = pair.d.is_square();
        invertible &= square && (pair.d.cols() == 0 || pair.d.try_inverse().is_some());
        if square {
            let lhs = &(&pair.d.adjoint() * &pair.product.gram) * &pair.d;
            unitary = unitary.max(lhs.distance(&cx.gram.kron(&cy.gram)));
        } else {
            unitary = f64::INFINITY;
        }
        // γ factorization through δ⁻¹
        let dy = cy.object.dim();
        for a in 0..cx.dim() {
            let s = delta_inverse(m, &cx.basis.col(a));
            for b in 0..cy.dim() {
                let t = delta_inverse(m, &cy.basis.col(b));
                let st = &s.kron(&ComplexMatrix::identity(dy)) * &t;
                let via_gamma = &st * &efd.monoid.eta;
                let direct = raw_tensorator(m, &cx.basis.col(a), &cy.basis.col(b), dy);
                gamma_res = gamma_res.max(via_gamma.distance(&direct));
            }
        }
    }
    r.residual("tensorator-membership", anchor::EMBEDDING, membership, tol);
    r.exact("tensorator-invertible", anchor::EMBEDDING, invertible);
    r.residual("tensorator-unitary", anchor::EMBEDDING_STAR, unitary, tol);
    r.exact("embedding-dim-multiplicative", anchor::EMBEDDING, mult_ok);
    r.residual("tensorator-gamma-factorization", anchor::MODULE_HOMS, gamma_res, tol);

    // coherence d_{XY,Z}(d_{X,Y} ⊗ id) = d_{X,YZ}(id ⊗ d_{Y,Z}) on raw vectors
    let mut coherence: f64 = 0.0;
    let k = efd.carriers.len();
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (x, y, z) = (&efd.carriers[i], &efd.carriers[j], &efd.carriers[l]);
                let (dy, dz) = (y.object.dim(), z.object.dim());
                for a in 0..x.dim() {
                    for b in 0..y.dim() {
                        let xy = raw_tensorator(m, &x.basis.col(a), &y.basis.col(b), dy);
                        for c in 0..z.dim() {
                            let left = raw_tensorator(m, &xy, &z.basis.col(c), dz);
                            let yz = raw_tensorator(m, &y.basis.col(b), &z.basis.col(c), dz);
                            let right = raw_tensorator(m, &x.basis.col(a), &yz, dy * dz);
                            coherence = coherence.max(left.distance(&right));
                        }
                    }
                }
            }
        }
    }
    r.residual("tensorator-coherence", anchor::EMBEDDING, coherence, tol);

    let eta = &efd.monoid.eta;
    let mut unit_axioms: f64 = 0.0;
    for c in &efd.carriers {
        for a in 0..c.dim() {
            let phi = c.basis.col(a);
            let left = raw_tensorator(m, eta, &phi, c.object.dim());
            let right = raw_tensorator(m, &phi, eta, 1);
            unit_axioms = unit_axioms.max(left.distance(&phi)).max(right.distance(&phi));
        }
    }
    r.residual("tensorator-unit-axioms", anchor::EMBEDDING, unit_axioms, tol);

    // naturality of d in each slot, E(s*) = E(s)*, functoriality
    let mut nat: f64 = 0.0;
    let mut star: f64 = 0.0;
    let mut inner: f64 = 0.0;
    let mut func: f64 = 0.0;
    for s in &efd.morphisms {
        let (src, dst) = (&efd.carriers[s.source], &efd.carriers[s.target]);
        let es = efd.functor_on_morphism(s.source, s.target, &s.matrix)?;
        let s_star = adjoint_wrt(&s.matrix, src.object.gram(), dst.object.gram())?;
        let es_star = efd.functor_on_morphism(s.target, s.source, &s_star)?;
        star = star.max(efd.e_adjoint(s.source, s.target, &es)?.distance(&es_star));
        let lhs = &dst.gram * &es;
        let rhs = &es_star.adjoint() * &src.gram;
        inner = inner.max(lhs.distance(&rhs));
        let lift_s = id_n.kron(&s.matrix);
        for y in &efd.carriers {
            let dy = y.object.dim();
            for a in 0..src.dim() {
                for b in 0..y.dim() {
                    let lhs = raw_tensorator(m, &(&lift_s * &src.basis.col(a)), &y.basis.col(b), dy);
                    let rhs = &lift_s.kron(&ComplexMatrix::identity(dy))
                        * &raw_tensorator(m, &src.basis.col(a), &y.basis.col(b), dy);
                    nat = nat.max(lhs.distance(&rhs));
                }
            }
            let mid = id_n.kron(&ComplexMatrix::identity(y.object.dim())).kron(&s.matrix);
            for a in 0..y.dim() {
                for b in 0..src.dim() {
                    let lhs = raw_tensorator(m, &y.basis.col(a), &(&lift_s * &src.basis.col(b)), dst.object.dim());
                    let rhs = &mid * &raw_tensorator(m, &y.basis.col(a), &src.basis.col(b), src.object.dim());
                    nat = nat.max(lhs.distance(&rhs));
                }
            }
        }
        for t in efd.morphisms.iter().filter(|t| t.source == s.target) {
            let composite = &t.matrix * &s.matrix;
            let lhs = efd.functor_on_morphism(s.source, t.target, &composite)?;
            let rhs = &efd.functor_on_morphism(t.source, t.target, &t.matrix)? * &es;
            func = func.max(lhs.distance(&rhs));
        }
    }
    r.residual("tensorator-naturality", anchor::EMBEDDING, nat, tol);
    r.residual("embedding-star", anchor::EMBEDDING_STAR, star, tol);
    r.residual("embedding-inner-product", anchor::EMBEDDING_STAR, inner, tol);
    r.residual("embedding-functoriality", anchor::EMBEDDING, func, tol);

    // faithfulness: s ↦ E(s) injective on every Hom(X, Y)
    let mut faithful = true;
    for (i, x) in efd.carriers.iter().enumerate() {
        for (j, y) in efd.carriers.iter().enumerate() {
            let homs = hom_space(&x.object, &y.object, tol)?;
            if homs.is_empty() {
                continue;
            }
            let cols: Vec<ComplexMatrix> = homs
                .iter()
                .map(|s| efd.functor_on_morphism(i, j, s).map(|e| e.vectorize()))
                .collect::<Result<_>>()?;
            faithful &= rank(&ComplexMatrix::hstack(&cols), tol.for_rank()) == homs.len();
        }
    }
    r.exact("embedding-faithful", anchor::FAITHFUL, faithful);
    let mut nonzero = true;
    for c in &efd.carriers {
        if hom_space(&c.object, &c.object, tol)?.len() == 1 {
            nonzero &= c.dim() > 0;
        }
    }
    r.exact("embedding-nonzero-on-irreducibles", anchor::FAITHFUL, nonzero);
    Ok(r)
}
