//! The regular monoid `(π_l, m̃, η̃)`, the regular comonoid `(π_l, Δ, ε)`,
//! their Frobenius compatibility, the absorbing isomorphisms `U_θ`, `V_θ`
//! and the intrinsic group.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{dual, fourier, fourier_inv, group_like_unitaries, BlockStructure, FiniteHopfStarAlgebra, HaarData};
use crate::numeric::{adjoint_wrt, re, ComplexMatrix, Tolerance};
use crate::rep::{decompose, hom_space, intertwiner_residual, tensor_rep, trivial_rep, unit_rep, Representation};
use crate::report::{anchor, VerificationReport};

/// A monoid `(Q, m, η)` in the representation category.
#[derive(Debug, Clone)]
pub struct MonoidObject {
    pub object: Representation,
    /// `m: Q × Q → Q`, a `d x d²` matrix.
    pub m: ComplexMatrix,
    /// `η: ε → Q`, a `d x 1` matrix.
    pub eta: ComplexMatrix,
}

/// A comonoid `(Q, δ, ε)`.
#[derive(Debug, Clone)]
pub struct ComonoidObject {
    pub object: Representation,
    /// `δ: Q → Q × Q`, a `d² x d` matrix.
    pub delta: ComplexMatrix,
    /// `ε: Q → 1`, a `1 x d` matrix.
    pub eps: ComplexMatrix,
}

/// `K(p, i) = φ(S⁻¹(e_p) e_i)`.
fn twisted_pairing(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> Result<ComplexMatrix> {
    Ok(&h.antipode_inverse()?.transpose() * &haar.pairing)
}

/// `m̃(a⊗b) = (φ⊗ι)[((S⁻¹⊗ι)Δ(b))(a⊗1)]`.
pub fn m_tilde_left_formula(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> Result<ComplexMatrix> {
    let n = h.dim();
    let k = twisted_pairing(h, haar)?;
    let mut out = ComplexMatrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                let kp = k[(p, i)];
                if kp == re(0.0) {
                    continue;
                }
                for q in 0..n {
                    out[(q, i * n + j)] += h.d(j, p, q) * kp;
                }
            }
        }
    }
    Ok(out)
}

/// `m̃(a⊗b) = (ι⊗φ)[(1⊗S⁻¹(b))Δ(a)]`.
pub fn m_tilde_right_formula(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> Result<ComplexMatrix> {
    let n = h.dim();
    let k = twisted_pairing(h, haar)?;
    let mut out = ComplexMatrix::zeros(n, n * n);
    for i in 0..n {
        for j in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let c = h.d(i, p, q);
                    if c != re(0.0) {
                        out[(p, i * n + j)] += c * k[(j, q)];
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `F⁻¹ ∘ m̂ ∘ (F⊗F)`.
pub fn m_tilde_fourier(h: &FiniteHopfStarAlgebra, haar: &HaarData) -> Result<ComplexMatrix> {
    let f = fourier(haar);
    let finv = fourier_inv(haar)?;
    let hat = dual(h).algebra;
    Ok(&(&finv * hat.mult_map()) * &f.kron(&f))
}

/// The regular monoid with `η̃(1) = I_0`.
pub fn regular_monoid(h: &Arc<FiniteHopfStarAlgebra>, haar: &HaarData) -> Result<MonoidObject> {
    let m = m_tilde_left_formula(h, haar)?;
    let object = crate::rep::regular_rep(h, haar);
    Ok(MonoidObject {
        object,
        m,
        eta: haar.integral.clone(),
    })
}

/// The regular comonoid: `Δ ∈ Hom(π_l, π_l × π_l)`, `ε ∈ Hom(π_l, ε)`.
pub fn regular_comonoid(h: &Arc<FiniteHopfStarAlgebra>, haar: &HaarData) -> ComonoidObject {
    ComonoidObject {
        object: crate::rep::regular_rep(h, haar),
        delta: h.comult_map().clone(),
        eps: h.counit_row(),
    }
}

impl MonoidObject {
    pub fn dim(&self) -> usize {
        self.object.dim()
    }

    pub fn associativity_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim());
        (&self.m * &self.m.kron(&id)).distance(&(&self.m * &id.kron(&self.m)))
    }

    pub fn unit_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim());
        let l = &self.m * &self.eta.kron(&id);
        let r = &self.m * &id.kron(&self.eta);
        l.distance(&id).max(r.distance(&id))
    }

    /// Residual of `m ∈ Hom(Q×Q, Q)` and `η ∈ Hom(ε, Q)`.
    pub fn intertwiner_residual(&self) -> Result<f64> {
        let qq = tensor_rep(&self.object, &self.object)?;
        let unit = unit_rep(self.object.algebra());
        Ok(intertwiner_residual(&self.m, &qq, &self.object).max(intertwiner_residual(
            &self.eta,
            &unit,
            &self.object,
        )))
    }

    /// `m*` with respect to the carrier inner products.
    pub fn m_adjoint(&self) -> ComplexMatrix {
        let g = self.object.gram();
        adjoint_wrt(&self.m, &g.kron(g), g).expect("positive Gram")
    }

    /// `η*` as a `1 x d` row.
    pub fn eta_adjoint(&self) -> ComplexMatrix {
        adjoint_wrt(&self.eta, &ComplexMatrix::identity(1), self.object.gram()).expect("positive Gram")
    }
}

impl ComonoidObject {
    pub fn dim(&self) -> usize {
        self.object.dim()
    }

    pub fn coassociativity_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim());
        (&self.delta.kron(&id) * &self.delta).distance(&(&id.kron(&self.delta) * &self.delta))
    }

    pub fn counit_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim());
        let l = &self.eps.kron(&id) * &self.delta;
        let r = &id.kron(&self.eps) * &self.delta;
        l.distance(&id).max(r.distance(&id))
    }

    pub fn intertwiner_residual(&self) -> Result<f64> {
        let qq = tensor_rep(&self.object, &self.object)?;
        let unit = unit_rep(self.object.algebra());
        Ok(intertwiner_residual(&self.delta, &self.object, &qq).max(intertwiner_residual(
            &self.eps,
            &self.object,
            &unit,
        )))
    }
}

/// Regular monoid checks: associativity, unit, intertwiner property, the
/// two closed formulas against the Fourier form, and `η̃(1) = I_0`.
pub fn verify_monoid(
    h: &FiniteHopfStarAlgebra,
    haar: &HaarData,
    monoid: &MonoidObject,
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    r.residual("monoid-associativity", anchor::REGULAR_MONOID, monoid.associativity_residual(), tol);
    r.residual("monoid-unit", anchor::REGULAR_MONOID, monoid.unit_residual(), tol);
    r.residual("monoid-intertwiner", anchor::REGULAR_MONOID, monoid.intertwiner_residual()?, tol);
    let fourier_form = m_tilde_fourier(h, haar)?;
    r.residual("monoid-fourier-formula", anchor::MONOID_FORMULA, monoid.m.distance(&fourier_form), tol);
    let right = m_tilde_right_formula(h, haar)?;
    r.residual("monoid-strong-invariance", anchor::STRONG_INVARIANCE, monoid.m.distance(&right), tol);
    let eta_target = crate::hopf::left_integral(h, tol)?;
    r.residual("monoid-unit-is-integral", anchor::REGULAR_MONOID, monoid.eta.distance(&eta_target), tol);
    Ok(r)
}

pub fn verify_comonoid(comonoid: &ComonoidObject, tol: Tolerance) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    r.residual("comonoid-coassociativity", anchor::COMONOID, comonoid.coassociativity_residual(), tol);
    r.residual("comonoid-counit", anchor::COMONOID, comonoid.counit_residual(), tol);
    r.residual("comonoid-intertwiner", anchor::COMONOID, comonoid.intertwiner_residual()?, tol);
    Ok(r)
}

/// `m̃* = Δ`, `η̃* = ε` and `(ι⊗m̃)(Δ⊗ι) = Δ m̃ = (m̃⊗ι)(ι⊗Δ)`.
pub fn verify_frobenius(monoid: &MonoidObject, comonoid: &ComonoidObject, tol: Tolerance) -> VerificationReport {
    let mut r = VerificationReport::default();
    let id = ComplexMatrix::identity(monoid.dim());
    let m = &monoid.m;
    let d = &comonoid.delta;
    r.residual("frobenius-m-adjoint", anchor::FROBENIUS, monoid.m_adjoint().distance(d), tol);
    r.residual("frobenius-eta-adjoint", anchor::FROBENIUS, monoid.eta_adjoint().distance(&comonoid.eps), tol);
    let dm = d * m;
    let left = &id.kron(m) * &d.kron(&id);
    let right = &m.kron(&id) * &id.kron(d);
    r.residual("frobenius-left", anchor::FROBENIUS, left.distance(&dm), tol);
    r.residual("frobenius-right", anchor::FROBENIUS, right.distance(&dm), tol);
    r
}

/// `U_θ: I_θ × π_l → θ × π_l` and `V_θ: π_l × I_θ → π_l × θ` with their
/// closed-form inverses.
#[derive(Debug, Clone)]
pub struct AbsorbingIso {
    pub theta: Representation,
    /// On `K ⊗ A`: `U(v⊗x) = Σ θ(x_(1))v ⊗ x_(2)`.
    pub u: ComplexMatrix,
    /// `U⁻¹(v⊗x) = Σ θ(S⁻¹(x_(1)))v ⊗ x_(2)`.
    pub u_inv: ComplexMatrix,
    /// On `A ⊗ K`: `V(x⊗v) = Σ x_(1) ⊗ θ(x_(2))v`.
    pub v: ComplexMatrix,
    /// `V⁻¹(x⊗v) = Σ x_(1) ⊗ θ(S(x_(2)))v`.
    pub v_inv: ComplexMatrix,
}

fn unit_matrix(n: usize, r: usize, c: usize) -> ComplexMatrix {
    let mut e = ComplexMatrix::zeros(n, n);
    e[(r, c)] = re(1.0);
    e
}

pub fn absorbing_iso(h: &FiniteHopfStarAlgebra, theta: &Representation) -> Result<AbsorbingIso> {
    let n = h.dim();
    let k = theta.dim();
    let sinv = h.antipode_inverse()?;
    let theta_sinv: Vec<ComplexMatrix> = (0..n).map(|p| theta.action(&sinv.col(p))).collect();
    let theta_s: Vec<ComplexMatrix> = (0..n).map(|q| theta.action(&h.antipode().col(q))).collect();
    let mut u = ComplexMatrix::zeros(k * n, k * n);
    let mut u_inv = ComplexMatrix::zeros(k * n, k * n);
    let mut v = ComplexMatrix::zeros(n * k, n * k);
    let mut v_inv = ComplexMatrix::zeros(n * k, n * k);
    for j in 0..n {
        for p in 0..n {
            for q in 0..n {
                let c = h.d(j, p, q);
                if c == re(0.0) {
                    continue;
                }
                u = &u + &theta.matrix(p).kron(&unit_matrix(n, q, j)).scale(c);
                u_inv = &u_inv + &theta_sinv[p].kron(&unit_matrix(n, q, j)).scale(c);
                v = &v + &unit_matrix(n, p, j).kron(theta.matrix(q)).scale(c);
                v_inv = &v_inv + &unit_matrix(n, p, j).kron(&theta_s[q]).scale(c);
            }
        }
    }
    let id = ComplexMatrix::identity(n * k);
    if (&u_inv * &u).distance(&id) > 1e-6 || (&v_inv * &v).distance(&id) > 1e-6 {
        return Err(Error::inconsistent("absorbing isomorphism is not inverted by its closed form"));
    }
    Ok(AbsorbingIso {
        theta: theta.clone(),
        u,
        u_inv,
        v,
        v_inv,
    })
}

/// `W(x⊗a) = Δ(x)(1⊗a)` on `A ⊗ A`.
pub fn comult_right_action(h: &FiniteHopfStarAlgebra) -> ComplexMatrix {
    let n = h.dim();
    let mut w = ComplexMatrix::zeros(n * n, n * n);
    for x in 0..n {
        for a in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let c = h.d(x, p, q);
                    if c == re(0.0) {
                        continue;
                    }
                    for r in 0..n {
                        w[(p * n + r, x * n + a)] += c * h.m(q, a, r);
                    }
                }
            }
        }
    }
    w
}

/// A morphism `s: θs[source] → θs[target]` used in naturality squares.
#[derive(Debug, Clone)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub matrix: ComplexMatrix,
}

/// Intertwiner bases between every ordered pair of the given representations.
pub fn spanning_morphisms(thetas: &[Representation], tol: Tolerance) -> Result<Vec<Morphism>> {
    let mut out = Vec::new();
    for (i, a) in thetas.iter().enumerate() {
        for (j, b) in thetas.iter().enumerate() {
            for s in hom_space(a, b, tol)? {
                out.push(Morphism {
                    source: i,
                    target: j,
                    matrix: s,
                });
            }
        }
    }
    Ok(out)
}

/// The absorbing-object checks for every `θ` and every supplied morphism.
pub fn verify_absorbing_suite(
    h: &FiniteHopfStarAlgebra,
    monoid: &MonoidObject,
    blocks: &BlockStructure,
    irreps: &[Representation],
    thetas: &[Representation],
    morphisms: &[Morphism],
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let n = h.dim();
    let pi_l = &monoid.object;
    let g = pi_l.gram();
    let mt = &monoid.m;
    let isos: Vec<AbsorbingIso> = thetas.iter().map(|t| absorbing_iso(h, t)).collect::<Result<_>>()?;
    for (t, iso) in isos.iter().enumerate() {
        let theta = &iso.theta;
        let k = theta.dim();
        let i_theta = trivial_rep(pi_l.algebra(), k, theta.gram().clone());
        let src_u = tensor_rep(&i_theta, pi_l)?;
        let dst_u = tensor_rep(theta, pi_l)?;
        let src_v = tensor_rep(pi_l, &i_theta)?;
        let dst_v = tensor_rep(pi_l, theta)?;
        let tag = |s: &str| format!("absorbing[{t}]-{s}");
        let int_res = intertwiner_residual(&iso.u, &src_u, &dst_u).max(intertwiner_residual(&iso.v, &src_v, &dst_v));
        r.residual(tag("intertwiner"), anchor::ABSORPTION, int_res, tol);

        let gu = theta.gram().kron(g);
        let gv = g.kron(theta.gram());
        let ustar = adjoint_wrt(&iso.u, &gu, &gu)?;
        let vstar = adjoint_wrt(&iso.v, &gv, &gv)?;
        let id = ComplexMatrix::identity(n * k);
        let unitary = (&ustar * &iso.u)
            .distance(&id)
            .max((&iso.u * &ustar).distance(&id))
            .max((&vstar * &iso.v).distance(&id))
            .max((&iso.v * &vstar).distance(&id));
        r.residual(tag("unitary"), anchor::ABSORBING_UNITARY, unitary, tol);

        let u_num = iso.u.try_inverse().ok_or_else(|| Error::inconsistent("U_θ is singular"))?;
        let v_num = iso.v.try_inverse().ok_or_else(|| Error::inconsistent("V_θ is singular"))?;
        let inv_res = iso.u_inv.distance(&u_num).max(iso.v_inv.distance(&v_num));
        r.residual(tag("inverse-formula"), anchor::ABSORPTION, inv_res, tol);

        let dec = decompose(&dst_u, blocks, irreps, tol)?;
        let expected: Vec<usize> = blocks.dims().iter().map(|d| d * k).collect();
        r.exact(tag("multiplicities"), anchor::ABSORPTION, dec.multiplicities == expected);

        // V(m̃⊗id) = (m̃⊗id)(id⊗V) and the same for V⁻¹
        let ik = ComplexMatrix::identity(k);
        let in_ = ComplexMatrix::identity(n);
        let mk = mt.kron(&ik);
        let module = (&iso.v * &mk)
            .distance(&(&mk * &in_.kron(&iso.v)))
            .max((&iso.v_inv * &mk).distance(&(&mk * &in_.kron(&iso.v_inv))));
        r.residual(tag("module-map"), anchor::MODULE_MAP, module, tol);
    }

    let mut nat: f64 = 0.0;
    for s in morphisms {
        let (a, b) = (&isos[s.source], &isos[s.target]);
        let in_ = ComplexMatrix::identity(n);
        let vs = (&in_.kron(&s.matrix) * &a.v).distance(&(&b.v * &in_.kron(&s.matrix)));
        let us = (&s.matrix.kron(&in_) * &a.u).distance(&(&b.u * &s.matrix.kron(&in_)));
        nat = nat.max(vs).max(us);
    }
    r.residual("absorbing-naturality", anchor::NATURALITY, nat, tol);
    r.exact("absorbing-naturality-count", anchor::NATURALITY, !morphisms.is_empty());

    let w = comult_right_action(h);
    let in_ = ComplexMatrix::identity(n);
    let qf = (&mt.kron(&in_) * &in_.kron(&w)).distance(&(&w * &mt.kron(&in_)));
    r.residual("qf-identity", anchor::QF, qf, tol);
    let v_regular = absorbing_iso(h, pi_l)?.v;
    r.residual("qf-v-regular", anchor::QF, v_regular.distance(&w), tol);
    Ok(r)
}

/// Right multiplications `t_g(x) = xg` by the group-like unitaries.
pub fn monoid_intrinsic_group(
    h: &FiniteHopfStarAlgebra,
    monoid: &MonoidObject,
    seed: u64,
    tol: Tolerance,
) -> Result<Vec<ComplexMatrix>> {
    let gs = group_like_unitaries(h, seed, tol)?;
    let mut out = Vec::with_capacity(gs.len());
    for g in &gs {
        let t = h.right_mult(g);
        let res = (&monoid.m * &t.kron(&t)).distance(&(&t * &monoid.m));
        if res > tol.eps() {
            return Err(Error::inconsistent(format!(
                "group-like element fails the monoid automorphism condition (residual {res:.3e})"
            )));
        }
        out.push(t);
    }
    Ok(out)
}

/// Unitarity, monoid compatibility and closure of the intrinsic group.
pub fn verify_intrinsic_group(
    monoid: &MonoidObject,
    elements: &[ComplexMatrix],
    tol: Tolerance,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::default();
    let q = &monoid.object;
    let g = q.gram();
    let d = q.dim();
    let id = ComplexMatrix::identity(d);
    let mut unitary: f64 = 0.0;
    let mut multiplicative: f64 = 0.0;
    let mut intertwines: f64 = 0.0;
    for t in elements {
        let ts = adjoint_wrt(t, g, g)?;
        unitary = unitary.max((&ts * t).distance(&id)).max((t * &ts).distance(&id));
        multiplicative = multiplicative
            .max((&monoid.m * &t.kron(t)).distance(&(t * &monoid.m)))
            .max((t * &monoid.eta).distance(&monoid.eta));
        intertwines = intertwines.max(intertwiner_residual(t, q, q));
    }
    r.residual("intrinsic-unitary", anchor::INTRINSIC_GROUP, unitary, tol);
    r.residual("intrinsic-monoid-automorphism", anchor::INTRINSIC_GROUP, multiplicative, tol);
    r.residual("intrinsic-intertwiner", anchor::INTRINSIC_GROUP, intertwines, tol);
    let table = multiplication_table(elements, tol);
    r.exact("intrinsic-closure", anchor::INTRINSIC_GROUP, table.is_some());
    let has_identity = elements.iter().any(|t| t.distance(&id) <= tol.eps());
    r.exact("intrinsic-identity", anchor::INTRINSIC_GROUP, has_identity);
    Ok(r)
}

/// `table[a][b] = c` with `t_a t_b = t_c`, or `None` if the set is not closed.
pub fn multiplication_table(elements: &[ComplexMatrix], tol: Tolerance) -> Option<Vec<Vec<usize>>> {
    let mut table = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let p = a * b;
            row.push(elements.iter().position(|c| c.distance(&p) <= tol.eps())?);
        }
        table.push(row);
    }
    Some(table)
}

/// `true` iff `m ∘ braid = m`; the braid must intertwine `Q×Q`.
pub fn check_monoid_commutative(monoid: &MonoidObject, braid: &ComplexMatrix, tol: Tolerance) -> Result<bool> {
    let qq = tensor_rep(&monoid.object, &monoid.object)?;
    if braid.shape() != (qq.dim(), qq.dim()) {
        return Err(Error::input("braid", format!("expected a {0}x{0} matrix", qq.dim())));
    }
    let res = intertwiner_residual(braid, &qq, &qq);
    if res > tol.eps() {
        return Err(Error::input(
            "braid",
            format!("braid is not an intertwiner of Q×Q (residual {res:.3e})"),
        ));
    }
    Ok((&monoid.m * braid).distance(&monoid.m) <= tol.eps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{
        block_decompose, flip, function_algebra, group_algebra, haar_left, FiniteGroup, Normalization, DEFAULT_SEED,
    };
    use crate::rep::{block_irrep, direct_sum};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    struct Fx {
        h: Arc<FiniteHopfStarAlgebra>,
        haar: HaarData,
        bs: BlockStructure,
        irreps: Vec<Representation>,
        monoid: MonoidObject,
    }

    fn fx(h: FiniteHopfStarAlgebra) -> Fx {
        let h = Arc::new(h);
        let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let irreps = (0..bs.len()).map(|i| block_irrep(&h, &bs, i).unwrap()).collect();
        let monoid = regular_monoid(&h, &haar).unwrap();
        Fx { h, haar, bs, irreps, monoid }
    }

    #[test]
    fn function_algebra_monoid_is_group_multiplication() {
        let g = FiniteGroup::symmetric3();
        let f = fx(function_algebra(&g));
        for a in 0..6 {
            for b in 0..6 {
                let col = f.monoid.m.col(a * 6 + b);
                assert!(col.distance(&f.h.basis_vector(g.mul(a, b))) < 1e-12, "{a} {b}");
            }
        }
        assert!(f.monoid.eta.distance(&f.h.basis_vector(0)) < 1e-12);
    }

    #[test]
    fn monoid_and_frobenius_pass() {
        for h in [
            group_algebra(&FiniteGroup::cyclic(2)),
            group_algebra(&FiniteGroup::symmetric3()),
            function_algebra(&FiniteGroup::symmetric3()),
        ] {
            let f = fx(h);
            let rep = verify_monoid(&f.h, &f.haar, &f.monoid, tol()).unwrap();
            assert!(rep.pass, "{}", rep.to_text());
            let co = regular_comonoid(&f.h, &f.haar);
            assert!(verify_comonoid(&co, tol()).unwrap().pass);
            let fr = verify_frobenius(&f.monoid, &co, tol());
            assert!(fr.pass, "{}", fr.to_text());
        }
    }

    #[test]
    fn eta_adjoint_is_counit() {
        let f = fx(group_algebra(&FiniteGroup::cyclic(2)));
        assert!(f.monoid.eta_adjoint().distance(&f.h.counit_row()) < 1e-12);
    }

    #[test]
    fn absorbing_for_trivial_theta_is_identity() {
        let f = fx(function_algebra(&FiniteGroup::cyclic(2)));
        let iso = absorbing_iso(&f.h, &unit_rep(&f.h)).unwrap();
        assert!(iso.u.distance(&ComplexMatrix::identity(2)) < 1e-15);
        assert!(iso.v.distance(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn absorbing_v_for_grading_character() {
        let f = fx(function_algebra(&FiniteGroup::cyclic(2)));
        let iso = absorbing_iso(&f.h, &f.irreps[1]).unwrap();
        // θ(δ_t) = [t = g]: V(δ_x⊗v) = δ_{x g⁻¹}⊗v
        let swap = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(iso.v.distance(&swap) < 1e-15);
    }

    #[test]
    fn absorbing_suite_s3() {
        for h in [group_algebra(&FiniteGroup::symmetric3()), function_algebra(&FiniteGroup::symmetric3())] {
            let f = fx(h);
            let mut thetas = f.irreps.clone();
            let refs: Vec<&Representation> = f.irreps.iter().collect();
            thetas.push(direct_sum(&refs).unwrap());
            let morphisms = spanning_morphisms(&thetas, tol()).unwrap();
            let rep = verify_absorbing_suite(&f.h, &f.monoid, &f.bs, &f.irreps, &thetas, &morphisms, tol()).unwrap();
            assert!(rep.pass, "{}", rep.to_text());
        }
    }

    #[test]
    fn two_dim_irrep_absorbs_with_double_multiplicities() {
        let f = fx(group_algebra(&FiniteGroup::symmetric3()));
        let tl = tensor_rep(&f.irreps[2], &f.monoid.object).unwrap();
        let dec = decompose(&tl, &f.bs, &f.irreps, tol()).unwrap();
        assert_eq!(dec.multiplicities, vec![2, 2, 4]);
    }

    #[test]
    fn intrinsic_groups() {
        let s3 = FiniteGroup::symmetric3();
        for (h, order) in [(group_algebra(&s3), 6), (function_algebra(&s3), 2)] {
            let f = fx(h);
            let ts = monoid_intrinsic_group(&f.h, &f.monoid, DEFAULT_SEED, tol()).unwrap();
            assert_eq!(ts.len(), order);
            let rep = verify_intrinsic_group(&f.monoid, &ts, tol()).unwrap();
            assert!(rep.pass, "{}", rep.to_text());
        }
    }

    #[test]
    fn intrinsic_group_is_anti_isomorphic() {
        let s3 = FiniteGroup::symmetric3();
        let f = fx(group_algebra(&s3));
        let ts = monoid_intrinsic_group(&f.h, &f.monoid, DEFAULT_SEED, tol()).unwrap();
        let table = multiplication_table(&ts, tol()).unwrap();
        // group-likes of ℂ[G] come out in group order; t_g t_h = t_{hg}
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(table[a][b], s3.mul(b, a));
            }
        }
    }

    #[test]
    fn commutativity_checks() {
        let f = fx(function_algebra(&FiniteGroup::cyclic(3)));
        assert!(check_monoid_commutative(&f.monoid, &flip(3, 3), tol()).unwrap());
        let f = fx(group_algebra(&FiniteGroup::symmetric3()));
        let brute = (&f.monoid.m * &flip(6, 6)).distance(&f.monoid.m) <= 1e-9;
        assert_eq!(check_monoid_commutative(&f.monoid, &flip(6, 6), tol()).unwrap(), brute);
        assert!(brute);
        let f = fx(function_algebra(&FiniteGroup::symmetric3()));
        let err = check_monoid_commutative(&f.monoid, &flip(6, 6), tol()).unwrap_err();
        assert!(err.is_input_error());
    }
}
