use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use qgv_core::fusion::fusion_from_category;
use qgv_core::hopf::{
    block_decompose, dual, dual_right_haar, fourier, function_algebra, group_algebra, haar_left, DualAlgebra,
    Normalization, DEFAULT_SEED,
};
use qgv_core::numeric::{nullspace, rank};
use qgv_core::rep::{block_irrep, regular_rep};
use qgv_core::{c64, ComplexMatrix, FiniteGroup, FiniteHopfStarAlgebra, HaarData, Representation, Tolerance};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), rows * cols).prop_map(move |v| {
        ComplexMatrix::from_row_major(rows, cols, v.into_iter().map(|(a, b)| c64(a, b)).collect())
    })
}

fn shaped() -> impl Strategy<Value = ComplexMatrix> {
    (1..4usize, 1..4usize).prop_flat_map(|(r, c)| matrix(r, c))
}

struct Fixture {
    h: Arc<FiniteHopfStarAlgebra>,
    haar: HaarData,
    dual: DualAlgebra,
    regular: Representation,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s3 = FiniteGroup::symmetric3();
        [group_algebra(&s3), function_algebra(&s3), group_algebra(&FiniteGroup::cyclic(4))]
            .into_iter()
            .map(|h| {
                let h = Arc::new(h);
                let haar = haar_left(&h, Normalization::CounitBlock, tol()).unwrap();
                let regular = regular_rep(&h, &haar);
                Fixture { dual: dual(&h), h, haar, regular }
            })
            .collect()
    })
}

fn element(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n, 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_is_associative(a in shaped(), b in shaped(), c in shaped()) {
        let l = a.kron(&b).kron(&c);
        let r = a.kron(&b.kron(&c));
        prop_assert!(l.distance(&r) < 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(3, 2), c in matrix(3, 2), d in matrix(2, 3)) {
        let l = &a.kron(&b) * &c.kron(&d);
        let r = (&a * &c).kron(&(&b * &d));
        prop_assert!(l.distance(&r) < 1e-12);
    }

    #[test]
    fn adjoint_is_an_involutive_antihomomorphism(a in matrix(3, 2), b in matrix(2, 4)) {
        prop_assert_eq!(a.adjoint().adjoint(), a.clone());
        let l = (&a * &b).adjoint();
        let r = &b.adjoint() * &a.adjoint();
        prop_assert!(l.distance(&r) < 1e-12);
    }

    #[test]
    fn nullspace_is_orthonormal_and_complementary(a in matrix(2, 4), b in matrix(4, 5)) {
        // rank ≤ 2 product with a guaranteed kernel
        let m = &a * &b;
        let k = ComplexMatrix::hstack(&nullspace(&m, tol()));
        prop_assert_eq!(k.cols() + rank(&m, tol()), 5);
        prop_assert!((&m * &k).max_abs() < 1e-9);
        prop_assert!((&k.adjoint() * &k).distance(&ComplexMatrix::identity(k.cols())) < 1e-9);
    }

    #[test]
    fn plancherel_on_random_elements(idx in 0..3usize, a in element(6), b in element(6)) {
        let fx = &fixtures()[idx];
        let n = fx.h.dim();
        let (a, b) = (a.submatrix(0, 0, n, 1), b.submatrix(0, 0, n, 1));
        let f = fourier(&fx.haar);
        let psi = dual_right_haar(&fx.h, &fx.haar).unwrap();
        let hat = &fx.dual.algebra;
        let lhs = (&psi * &hat.multiply(&hat.star(&(&f * &a)), &(&f * &b)))[(0, 0)];
        let rhs = fx.haar.value(&fx.h.multiply(&fx.h.star(&a), &b));
        prop_assert!((lhs - rhs).norm() < 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn structure_maps_respect_products(idx in 0..3usize, a in element(6), b in element(6)) {
        let fx = &fixtures()[idx];
        let n = fx.h.dim();
        let (a, b) = (a.submatrix(0, 0, n, 1), b.submatrix(0, 0, n, 1));
        let h = &fx.h;
        let ab = h.multiply(&a, &b);
        // Δ(ab) = Δ(a)Δ(b) in A⊗A
        let hh = |x: &ComplexMatrix, y: &ComplexMatrix| {
            let mut out = ComplexMatrix::zeros(n * n, 1);
            for i in 0..n { for j in 0..n { for k in 0..n { for l in 0..n {
                let c = x[(i * n + j, 0)] * y[(k * n + l, 0)];
                if c.norm() == 0.0 { continue; }
                for p in 0..n { for q in 0..n {
                    out[(p * n + q, 0)] += c * h.m(i, k, p) * h.m(j, l, q);
                }}
            }}}}
            out
        };
        prop_assert!(h.comultiply(&ab).distance(&hh(&h.comultiply(&a), &h.comultiply(&b))) < 1e-9);
        // S(ab) = S(b)S(a), (ab)* = b*a*
        let s = h.antipode();
        prop_assert!((s * &ab).distance(&h.multiply(&(s * &b), &(s * &a))) < 1e-9);
        prop_assert!(h.star(&ab).distance(&h.multiply(&h.star(&b), &h.star(&a))) < 1e-9);
        // π_l(ab) = π_l(a)π_l(b)
        let pa = fx.regular.action(&a);
        let pb = fx.regular.action(&b);
        prop_assert!(fx.regular.action(&ab).distance(&(&pa * &pb)) < 1e-9);
    }

    #[test]
    fn dimension_function_is_multiplicative_on_rep_s3(x in prop::collection::vec(0u64..5, 3), y in prop::collection::vec(0u64..5, 3)) {
        let (fd, n) = rep_s3();
        let k = fd.size;
        let dim = |v: &[u64]| -> u64 { v.iter().zip(n).map(|(a, b)| a * b).sum() };
        let prod: Vec<u64> = (0..k)
            .map(|l| (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| x[i] * y[j] * fd.get(i, j, l)).sum())
            .collect();
        prop_assert_eq!(dim(&prod), dim(&x) * dim(&y));
    }
}

fn rep_s3() -> &'static (qgv_core::FusionData, Vec<u64>) {
    static CELL: OnceLock<(qgv_core::FusionData, Vec<u64>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let h = Arc::new(group_algebra(&FiniteGroup::symmetric3()));
        let blocks = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let irreps: Vec<_> = (0..blocks.len()).map(|i| block_irrep(&h, &blocks, i).unwrap()).collect();
        let fd = fusion_from_category(&blocks, &irreps, tol()).unwrap();
        (fd, blocks.dims().iter().map(|&d| d as u64).collect())
    })
}
