//! The verification suites behind each CLI subcommand.
//!
//! Construction failures inside a suite become failing checks, so a
//! structurally broken algebra yields a report rather than an error.

use std::sync::Arc;

use crate::embedding::{embedding_functor, verify_embedding_suite, EmbeddingFunctorData};
use crate::error::Result;
use crate::fusion::{absorbing_multiplicities, fusion_from_category, verify_fusion, FusionData};
use crate::hopf::{
    block_decompose, block_residuals, dual, dual_right_invariance_residual, fourier, group_like_residual,
    group_like_unitaries, haar_left, left_invariance_residual, modular_residual, normalization_residual,
    plancherel_residual, BlockStructure, FiniteHopfStarAlgebra, HaarData, Normalization, DEFAULT_SEED,
};
use crate::monoid::{
    monoid_intrinsic_group, multiplication_table, regular_comonoid, regular_monoid, spanning_morphisms,
    verify_absorbing_suite, verify_comonoid, verify_frobenius, verify_intrinsic_group, verify_monoid, MonoidObject,
};
use crate::numeric::{ComplexMatrix, Tolerance};
use crate::rep::{block_irrep, decompose, regular_rep, Representation};
use crate::report::{anchor, VerificationReport};
use crate::tannaka::{natural_iso_u, reconstruct, standard_objects, verify_nat_e, verify_natural_iso, verify_roundtrip};

/// Tolerance and seed shared by all suites.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub tol: Tolerance,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            seed: DEFAULT_SEED,
        }
    }
}

/// Haar functional, blocks and block irreducibles.
struct Context {
    h: Arc<FiniteHopfStarAlgebra>,
    haar: HaarData,
    blocks: BlockStructure,
    irreps: Vec<Representation>,
}

/// Records a failing construction check for `Err` and passes `Ok` through.
fn stage<T>(r: &mut VerificationReport, id: &str, anchor: &str, res: Result<T>) -> Option<T> {
    match res {
        Ok(v) => Some(v),
        Err(_) => {
            r.exact(id, anchor, false);
            None
        }
    }
}

fn context(h: &FiniteHopfStarAlgebra, opts: SuiteOptions, r: &mut VerificationReport) -> Option<Context> {
    let h = Arc::new(h.clone());
    let haar = stage(r, "haar-construction", anchor::HAAR, haar_left(&h, Normalization::CounitBlock, opts.tol))?;
    let blocks = stage(r, "block-construction", anchor::BLOCKS, block_decompose(&h, opts.seed, opts.tol))?;
    let irreps = stage(
        r,
        "block-irreps",
        anchor::BLOCKS,
        (0..blocks.len()).map(|i| block_irrep(&h, &blocks, i)).collect::<Result<Vec<_>>>(),
    )?;
    Some(Context { h, haar, blocks, irreps })
}

/// Hopf axioms, Haar functional, blocks, duality, Plancherel, group-likes and
/// the decomposition of the regular representation.
pub fn run_verify(h: &FiniteHopfStarAlgebra, opts: SuiteOptions) -> VerificationReport {
    let tol = opts.tol;
    let mut r = h.verify_hopf_axioms(tol);
    let Some(cx) = context(h, opts, &mut r) else {
        return r;
    };
    let h = &*cx.h;
    r.residual("haar-left-invariance", anchor::HAAR, left_invariance_residual(h, &cx.haar), tol);
    r.residual("haar-normalization", anchor::HAAR, normalization_residual(h, &cx.haar), tol);
    let integral_res = (0..h.dim())
        .map(|i| {
            (&h.left_mult(&h.basis_vector(i)) * &cx.haar.integral).distance(&cx.haar.integral.scale(h.counit()[i]))
        })
        .fold(0.0, f64::max)
        .max((h.counit_of(&cx.haar.integral) - crate::numeric::c64(1.0, 0.0)).norm());
    r.residual("haar-left-integral", anchor::HAAR, integral_res, tol);
    r.residual("haar-modular", anchor::MODULAR, modular_residual(h, &cx.haar), tol);
    let s2 = h.antipode() * h.antipode();
    r.residual("haar-modular-is-s2", anchor::MODULAR, cx.haar.modular.distance(&s2), tol);

    let br = block_residuals(h, &cx.blocks);
    r.residual("blocks-completeness", anchor::BLOCKS, br.completeness, tol);
    r.residual("blocks-orthogonality", anchor::BLOCKS, br.orthogonality, tol);
    r.residual("blocks-self-adjoint", anchor::BLOCKS, br.self_adjoint, tol);
    r.residual("blocks-central", anchor::BLOCKS, br.central, tol);
    r.residual("blocks-irreps", anchor::BLOCKS, br.irreps, tol);
    let dims = cx.blocks.dims();
    let square_sum: usize = dims.iter().map(|d| d * d).sum();
    r.exact("blocks-dimension-count", anchor::BLOCKS, square_sum == h.dim());
    let counit_dim = cx.blocks.blocks[cx.blocks.counit_index].dim == 1;
    let integral_is_block = cx.haar.integral.distance(cx.blocks.counit_projection());
    r.exact("blocks-counit-one-dimensional", anchor::BLOCKS, counit_dim);
    r.residual("blocks-counit-projection-is-integral", anchor::BLOCKS, integral_is_block, tol);

    let d = dual(h);
    r.extend(prefixed(d.algebra.verify_hopf_axioms(tol), "dual-"));
    let fi0 = (&fourier(&cx.haar) * &cx.haar.integral).distance(&ComplexMatrix::column(h.counit()));
    r.residual("fourier-integral-to-unit", anchor::FOURIER, fi0, tol);
    if let Some(p) = stage(&mut r, "plancherel", anchor::PLANCHEREL, plancherel_residual(h, &d, &cx.haar)) {
        r.residual("plancherel", anchor::PLANCHEREL, p, tol);
    }
    if let Some(p) = stage(
        &mut r,
        "dual-right-invariance",
        anchor::PLANCHEREL,
        dual_right_invariance_residual(h, &d, &cx.haar),
    ) {
        r.residual("dual-right-invariance", anchor::PLANCHEREL, p, tol);
    }
    if let Some(gs) = stage(&mut r, "group-likes", anchor::GROUP_LIKES, group_like_unitaries(h, opts.seed, tol)) {
        let res = gs.iter().map(|g| group_like_residual(h, g)).fold(0.0, f64::max);
        r.residual("group-likes", anchor::GROUP_LIKES, res, tol);
        r.exact("group-likes-contain-unit", anchor::GROUP_LIKES, gs.iter().any(|g| g.distance(&h.unit_vector()) <= tol.eps()));
    }

    let regular = regular_rep(&cx.h, &cx.haar);
    let (hom, unital, star) = regular.residuals();
    r.residual("regular-rep-star-representation", anchor::REGULAR_REP, hom.max(unital).max(star), tol);
    if let Some(dec) = stage(
        &mut r,
        "regular-decomposition",
        anchor::REGULAR_REP,
        decompose(&regular, &cx.blocks, &cx.irreps, tol),
    ) {
        r.exact("regular-decomposition", anchor::REGULAR_REP, dec.multiplicities == dims);
        r.residual(
            "regular-decomposition-complete",
            anchor::REGULAR_REP,
            dec.completeness_residual(&regular, &cx.irreps).max(dec.isometry_residual(&regular, &cx.irreps)),
            tol,
        );
    }
    r
}

fn prefixed(mut rep: VerificationReport, prefix: &str) -> VerificationReport {
    for c in &mut rep.checks {
        c.id = format!("{prefix}{}", c.id);
    }
    rep
}

fn build_monoid(cx: &Context, r: &mut VerificationReport) -> Option<MonoidObject> {
    stage(r, "monoid-construction", anchor::REGULAR_MONOID, regular_monoid(&cx.h, &cx.haar))
}

/// Regular monoid, comonoid, Frobenius identities, absorbing isomorphisms
/// and the intrinsic group.
pub fn run_monoid(h: &FiniteHopfStarAlgebra, opts: SuiteOptions) -> VerificationReport {
    let tol = opts.tol;
    let mut r = VerificationReport::default();
    let Some(cx) = context(h, opts, &mut r) else {
        return r;
    };
    let Some(monoid) = build_monoid(&cx, &mut r) else {
        return r;
    };
    let h = &*cx.h;
    if let Some(rep) = stage(&mut r, "monoid-suite", anchor::REGULAR_MONOID, verify_monoid(h, &cx.haar, &monoid, tol)) {
        r.extend(rep);
    }
    let comonoid = regular_comonoid(&cx.h, &cx.haar);
    if let Some(rep) = stage(&mut r, "comonoid-suite", anchor::COMONOID, verify_comonoid(&comonoid, tol)) {
        r.extend(rep);
    }
    r.extend(verify_frobenius(&monoid, &comonoid, tol));

    let absorbing = standard_objects(&cx.irreps).and_then(|thetas| {
        let morphisms = spanning_morphisms(&thetas, tol)?;
        verify_absorbing_suite(h, &monoid, &cx.blocks, &cx.irreps, &thetas, &morphisms, tol)
    });
    if let Some(rep) = stage(&mut r, "absorbing-suite", anchor::ABSORPTION, absorbing) {
        r.extend(rep);
    }

    if let Some(group) = stage(
        &mut r,
        "intrinsic-group",
        anchor::INTRINSIC_GROUP,
        monoid_intrinsic_group(h, &monoid, opts.seed, tol),
    ) {
        if let Some(rep) = stage(&mut r, "intrinsic-suite", anchor::INTRINSIC_GROUP, verify_intrinsic_group(&monoid, &group, tol)) {
            r.extend(rep);
        }
        // t_a t_b = t_c  iff  g_b g_a = g_c
        let anti = group_likes_anti_isomorphic(h, &group, opts.seed, tol);
        r.exact("intrinsic-anti-isomorphism", anchor::INTRINSIC_GROUP, anti);
    }
    r
}

fn group_likes_anti_isomorphic(h: &FiniteHopfStarAlgebra, ts: &[ComplexMatrix], seed: u64, tol: Tolerance) -> bool {
    let Ok(gs) = group_like_unitaries(h, seed, tol) else {
        return false;
    };
    let Some(table) = multiplication_table(ts, tol) else {
        return false;
    };
    for a in 0..gs.len() {
        for b in 0..gs.len() {
            let prod = h.multiply(&gs[b], &gs[a]);
            if prod.distance(&gs[table[a][b]]) > tol.eps() {
                return false;
            }
        }
    }
    true
}

fn build_embedding(cx: &Context, monoid: &MonoidObject, tol: Tolerance) -> Result<EmbeddingFunctorData> {
    let objects = standard_objects(&cx.irreps)?;
    let morphisms = spanning_morphisms(&objects, tol)?;
    embedding_functor(monoid, &objects, morphisms, tol)
}

/// The embedding functor on the block irreducibles and their direct sum.
pub fn run_embed(h: &FiniteHopfStarAlgebra, opts: SuiteOptions) -> VerificationReport {
    let tol = opts.tol;
    let mut r = VerificationReport::default();
    let Some(cx) = context(h, opts, &mut r) else {
        return r;
    };
    let Some(monoid) = build_monoid(&cx, &mut r) else {
        return r;
    };
    let Some(efd) = stage(&mut r, "embedding-construction", anchor::EMBEDDING, build_embedding(&cx, &monoid, tol)) else {
        return r;
    };
    if let Some(rep) = stage(
        &mut r,
        "embedding-suite",
        anchor::EMBEDDING,
        verify_embedding_suite(&efd, &cx.blocks, &cx.irreps, tol),
    ) {
        r.extend(rep);
    }
    r
}

/// Reconstruction `A′` and the round trip through `u` and `ι`.
pub fn run_tannaka(h: &FiniteHopfStarAlgebra, opts: SuiteOptions) -> VerificationReport {
    let tol = opts.tol;
    let mut r = VerificationReport::default();
    let Some(cx) = context(h, opts, &mut r) else {
        return r;
    };
    let Some(monoid) = build_monoid(&cx, &mut r) else {
        return r;
    };
    let Some(efd) = stage(&mut r, "embedding-construction", anchor::EMBEDDING, build_embedding(&cx, &monoid, tol)) else {
        return r;
    };
    let h = &*cx.h;
    let Some(rh) = stage(&mut r, "reconstruction", anchor::RECONSTRUCTION, reconstruct(&efd, &cx.blocks, &cx.irreps, tol)) else {
        return r;
    };
    let Some(iso) = stage(&mut r, "u-construction", anchor::UNITARY_EQUIVALENCE, natural_iso_u(h, &efd)) else {
        return r;
    };
    for rep in [
        verify_natural_iso(h, &efd, &iso, tol),
        verify_roundtrip(h, &rh, &efd, &iso, &cx.blocks, opts.seed, tol),
    ] {
        if let Some(rep) = stage(&mut r, "roundtrip", anchor::RECONSTRUCTION, rep) {
            r.extend(rep);
        }
    }
    let nat = monoid_intrinsic_group(h, &monoid, opts.seed, tol).and_then(|g| verify_nat_e(h, &efd, &rh, &g, tol));
    if let Some(rep) = stage(&mut r, "nat-e", anchor::NAT_E, nat) {
        r.extend(rep);
    }
    r
}

/// Fusion ring of the representation category with PF dimensions, an
/// optional user dimension function and the absorbing-object multiplicities.
pub fn run_fusion_algebra(h: &FiniteHopfStarAlgebra, dims: Option<&[u64]>, opts: SuiteOptions) -> (VerificationReport, Option<FusionData>) {
    let tol = opts.tol;
    let mut r = VerificationReport::default();
    let Some(cx) = context(h, opts, &mut r) else {
        return (r, None);
    };
    let Some(fd) = stage(&mut r, "fusion-extraction", anchor::FUSION, fusion_from_category(&cx.blocks, &cx.irreps, tol)) else {
        return (r, None);
    };
    let block_dims = cx.blocks.dims();
    r.extend(verify_fusion(&fd, dims, Some(&block_dims), tol));
    // Q = ⊕ n_ī X_i against the regular representation
    let n: Vec<u64> = block_dims.iter().map(|&d| d as u64).collect();
    let regular = regular_rep(&cx.h, &cx.haar);
    let consistent = match (absorbing_multiplicities(&fd, &n), decompose(&regular, &cx.blocks, &cx.irreps, tol)) {
        (Ok(q), Ok(dec)) => q.iter().zip(&dec.multiplicities).all(|(a, b)| *a == *b as u64),
        _ => false,
    };
    r.exact("absorbing-object-is-regular", anchor::ABSORBING_OBJECT, consistent);
    (r, Some(fd))
}

/// Fusion checks on standalone fusion data.
pub fn run_fusion_data(fd: &FusionData, dims: Option<&[u64]>, opts: SuiteOptions) -> VerificationReport {
    verify_fusion(fd, dims, None, opts.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{function_algebra, group_algebra, FiniteGroup};

    #[test]
    fn all_suites_pass_on_s3() {
        let opts = SuiteOptions::default();
        for h in [
            group_algebra(&FiniteGroup::symmetric3()),
            function_algebra(&FiniteGroup::symmetric3()),
        ] {
            for rep in [
                run_verify(&h, opts),
                run_monoid(&h, opts),
                run_embed(&h, opts),
                run_tannaka(&h, opts),
                run_fusion_algebra(&h, Some(&[]), opts).0,
            ] {
                let failures: Vec<_> = rep.failures().map(|c| c.id.clone()).collect();
                // an empty dimension list fails its shape check only
                assert!(
                    failures.is_empty() || failures == ["dimension-function-shape", "absorbing-identity"],
                    "{}",
                    rep.to_text()
                );
            }
        }
    }

    #[test]
    fn broken_antipode_fails_axiom() {
        let h = group_algebra(&FiniteGroup::cyclic(3));
        let mut s = h.antipode().clone();
        s[(1, 1)] = crate::numeric::c64(1.0, 0.0);
        let broken = FiniteHopfStarAlgebra::new(
            h.basis_names().to_vec(),
            (0..27).map(|x| h.m(x / 9, (x / 3) % 3, x % 3)).collect(),
            h.unit().to_vec(),
            (0..27).map(|x| h.d(x / 9, (x / 3) % 3, x % 3)).collect(),
            h.counit().to_vec(),
            s,
            h.star_matrix().clone(),
        )
        .unwrap();
        let rep = run_verify(&broken, SuiteOptions::default());
        assert!(!rep.pass);
        assert!(!rep.get("antipode-axiom").unwrap().pass);
    }
}
