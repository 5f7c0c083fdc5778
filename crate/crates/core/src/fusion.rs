//! Fusion rings, dimension functions, absorbing-object multiplicities and
//! Perron–Frobenius dimensions. Everything after extraction is exact integer
//! arithmetic.

use crate::error::{Error, Result};
use crate::hopf::BlockStructure;
use crate::numeric::{re, singular_values, ComplexMatrix, Tolerance};
use crate::rep::{conjugate_rep, decompose, hom_space, tensor_rep, Representation};
use crate::report::{anchor, VerificationReport};

/// `N[i][j][k]` = multiplicity of `X_k` in `X_i ⊗ X_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionData {
    pub size: usize,
    pub unit: usize,
    pub bar: Vec<usize>,
    pub n: Vec<Vec<Vec<u64>>>,
}

impl FusionData {
    /// Checks shapes and index ranges; the ring axioms are left to [`FusionData::axioms_report`].
    pub fn new(size: usize, unit: usize, bar: Vec<usize>, n: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("size", "fusion ring must have at least one simple object"));
        }
        if unit >= size {
            return Err(Error::input("unit", format!("index {unit} out of range for size {size}")));
        }
        if bar.len() != size || bar.iter().any(|&b| b >= size) {
            return Err(Error::input("bar", format!("expected {size} indices below {size}")));
        }
        if n.len() != size || n.iter().any(|r| r.len() != size || r.iter().any(|c| c.len() != size)) {
            return Err(Error::input("N", format!("expected a {size}x{size}x{size} tensor")));
        }
        Ok(Self { size, unit, bar, n })
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    /// Unit laws, duality, associativity and `bar` being an involution.
    pub fn axioms_report(&self) -> VerificationReport {
        let mut r = VerificationReport::default();
        let s = self.size;
        let u = self.unit;
        let delta = |a: usize, b: usize| u64::from(a == b);
        let mut unit_ok = true;
        let mut dual_ok = true;
        for j in 0..s {
            for k in 0..s {
                unit_ok &= self.get(u, j, k) == delta(j, k) && self.get(j, u, k) == delta(j, k);
                dual_ok &= self.get(j, k, u) == delta(k, self.bar[j]);
            }
        }
        r.exact("fusion-unit", anchor::FUSION, unit_ok);
        r.exact("fusion-duality", anchor::FUSION, dual_ok);
        let involution = (0..s).all(|i| self.bar[self.bar[i]] == i) && self.bar[u] == u;
        r.exact("fusion-bar-involution", anchor::FUSION, involution);
        let mut assoc = true;
        for i in 0..s {
            for j in 0..s {
                for l in 0..s {
                    for m in 0..s {
                        let lhs: u64 = (0..s).map(|k| self.get(i, j, k) * self.get(k, l, m)).sum();
                        let rhs: u64 = (0..s).map(|k| self.get(j, l, k) * self.get(i, k, m)).sum();
                        assoc &= lhs == rhs;
                    }
                }
            }
        }
        r.exact("fusion-associativity", anchor::FUSION, assoc);
        let mut frob = true;
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    frob &= self.get(i, j, k) == self.get(self.bar[j], self.bar[i], self.bar[k]);
                }
            }
        }
        r.exact("fusion-conjugation-symmetry", anchor::FUSION, frob);
        r
    }
}

/// `N[i][j][k] = dim Hom(p_k, p_i × p_j)`, cross-checked against the rank formula.
pub fn fusion_from_category(blocks: &BlockStructure, irreps: &[Representation], tol: Tolerance) -> Result<FusionData> {
    let s = irreps.len();
    if s != blocks.len() {
        return Err(Error::input("irreps", "one irreducible per block is required"));
    }
    let mut n = vec![vec![vec![0u64; s]; s]; s];
    for i in 0..s {
        for j in 0..s {
            let prod = tensor_rep(&irreps[i], &irreps[j])?;
            let dec = decompose(&prod, blocks, irreps, tol)?;
            for k in 0..s {
                let homs = hom_space(&irreps[k], &prod, tol.for_rank())?.len();
                if homs != dec.multiplicities[k] {
                    return Err(Error::inconsistent(format!(
                        "N[{i}][{j}][{k}]: intertwiner count {homs} differs from rank count {}",
                        dec.multiplicities[k]
                    )));
                }
                n[i][j][k] = homs as u64;
            }
        }
    }
    let unit = blocks.counit_index;
    let mut bar = Vec::with_capacity(s);
    for i in 0..s {
        let b = match conjugate_rep(&irreps[i], tol) {
            Ok(conj) => {
                let mut found = None;
                for (j, p) in irreps.iter().enumerate() {
                    if hom_space(p, &conj, tol.for_rank())?.len() == 1 {
                        found = Some(j);
                    }
                }
                found
            }
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        let b = match b {
            Some(b) => b,
            None => (0..s)
                .find(|&j| n[i][j][unit] == 1)
                .ok_or_else(|| Error::inconsistent(format!("object {i} has no conjugate")))?,
        };
        bar.push(b);
    }
    FusionData::new(s, unit, bar, n)
}

/// Exact checks of a dimension function.
pub fn verify_dimension_function(fd: &FusionData, n: &[u64]) -> VerificationReport {
    let mut r = VerificationReport::default();
    let shape = n.len() == fd.size;
    r.exact("dimension-function-shape", anchor::DIMENSION_FUNCTION, shape);
    if !shape {
        return r;
    }
    r.exact("dimension-function-positive", anchor::DIMENSION_FUNCTION, n.iter().all(|&x| x > 0));
    r.exact("dimension-function-unit", anchor::DIMENSION_FUNCTION, n[fd.unit] == 1);
    let conj = (0..fd.size).all(|i| n[fd.bar[i]] == n[i]);
    r.exact("dimension-function-conjugation", anchor::DIMENSION_FUNCTION, conj);
    let mut mult = true;
    for i in 0..fd.size {
        for j in 0..fd.size {
            let lhs: u64 = (0..fd.size).map(|k| fd.get(i, j, k) * n[k]).sum();
            mult &= lhs == n[i] * n[j];
        }
    }
    r.exact("dimension-function-multiplicative", anchor::DIMENSION_FUNCTION, mult);
    r
}

/// `q[i] = n[bar(i)]`, the multiplicity of `X_i` in the absorbing object,
/// after checking `Σ_i N[i][j][k] n[bar(i)] = n[j] n[bar(k)]` for all `j, k`.
pub fn absorbing_multiplicities(fd: &FusionData, n: &[u64]) -> Result<Vec<u64>> {
    if !verify_dimension_function(fd, n).pass {
        return Err(Error::precondition("not a dimension function"));
    }
    let q: Vec<u64> = (0..fd.size).map(|i| n[fd.bar[i]]).collect();
    for j in 0..fd.size {
        for k in 0..fd.size {
            let lhs: u64 = (0..fd.size).map(|i| fd.get(i, j, k) * q[i]).sum();
            if lhs != n[j] * n[fd.bar[k]] {
                return Err(Error::inconsistent(format!(
                    "absorption identity fails at (j, k) = ({j}, {k}): {lhs} ≠ {}",
                    n[j] * n[fd.bar[k]]
                )));
            }
        }
    }
    Ok(q)
}

/// Perron–Frobenius dimensions with integrality flags.
#[derive(Debug, Clone, PartialEq)]
pub struct PfDims {
    pub dims: Vec<f64>,
    pub integral: Vec<bool>,
    /// Whether `Σ_i L_i` is an irreducible non-negative matrix.
    pub irreducible: bool,
}

impl PfDims {
    pub fn rounded(&self) -> Option<Vec<u64>> {
        if self.integral.iter().all(|&b| b) {
            Some(self.dims.iter().map(|d| d.round() as u64).collect())
        } else {
            None
        }
    }
}

/// `L_i[j][k] = N[i][j][k]`.
pub fn fusion_matrix(fd: &FusionData, i: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(fd.size, fd.size, |j, k| re(fd.get(i, j, k) as f64))
}

pub fn perron_frobenius_dims(fd: &FusionData, tol: Tolerance) -> PfDims {
    let dims: Vec<f64> = (0..fd.size)
        .map(|i| {
            // L_i is normal (L_iᵀ = L_ī commutes with L_i), so its spectral
            // radius is its largest singular value.
            singular_values(&fusion_matrix(fd, i)).into_iter().fold(0.0, f64::max)
        })
        .collect();
    let integral = dims.iter().map(|d| (d - d.round()).abs() <= tol.eps()).collect();
    PfDims {
        dims,
        integral,
        irreducible: is_irreducible(fd),
    }
}

/// Strong connectivity of the graph `j → k` iff `Σ_i N[i][j][k] > 0`.
fn is_irreducible(fd: &FusionData) -> bool {
    let s = fd.size;
    (0..s).all(|start| {
        let mut seen = vec![false; s];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(j) = stack.pop() {
            for k in 0..s {
                if !seen[k] && (0..s).any(|i| fd.get(i, j, k) > 0) {
                    seen[k] = true;
                    stack.push(k);
                }
            }
        }
        seen.into_iter().all(|b| b)
    })
}

/// Ring axioms, optional user dimension function with absorption, and
/// Perron–Frobenius dimensions (compared with the user function and with
/// `expected`, e.g. block dimensions, when given).
pub fn verify_fusion(
    fd: &FusionData,
    dims: Option<&[u64]>,
    expected: Option<&[usize]>,
    tol: Tolerance,
) -> VerificationReport {
    let mut r = fd.axioms_report();
    let pf = perron_frobenius_dims(fd, tol);
    r.exact("pf-unit", anchor::PERRON_FROBENIUS, (pf.dims[fd.unit] - 1.0).abs() <= tol.eps());
    r.exact("pf-irreducible", anchor::PERRON_FROBENIUS, pf.irreducible);
    let pf_int = pf.rounded();
    r.exact("pf-integral", anchor::PERRON_FROBENIUS, pf_int.is_some());
    if let Some(int) = &pf_int {
        r.extend(prefixed(verify_dimension_function(fd, int), "pf-"));
        r.exact(
            "pf-absorbing-object",
            anchor::ABSORBING_OBJECT,
            absorbing_multiplicities(fd, int).is_ok(),
        );
    }
    if let Some(expected) = expected {
        let worst = pf
            .dims
            .iter()
            .zip(expected)
            .map(|(d, e)| (d - *e as f64).abs())
            .fold(if expected.len() == pf.dims.len() { 0.0 } else { f64::INFINITY }, f64::max);
        r.residual("pf-equals-block-dims", anchor::PERRON_FROBENIUS, worst, tol);
    }
    if let Some(n) = dims {
        let rep = verify_dimension_function(fd, n);
        let valid = rep.pass;
        r.extend(rep);
        r.exact("absorbing-identity", anchor::ABSORBING_OBJECT, absorbing_multiplicities(fd, n).is_ok());
        if valid {
            r.exact(
                "dimension-function-equals-pf",
                anchor::PERRON_FROBENIUS,
                pf_int.as_deref() == Some(n),
            );
        }
    }
    r
}

fn prefixed(mut rep: VerificationReport, prefix: &str) -> VerificationReport {
    for c in &mut rep.checks {
        c.id = format!("{prefix}{}", c.id);
    }
    rep
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hopf::{block_decompose, function_algebra, group_algebra, FiniteGroup, DEFAULT_SEED};
    use crate::rep::block_irrep;
    use crate::FiniteHopfStarAlgebra;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn extract(h: FiniteHopfStarAlgebra) -> (FusionData, Vec<usize>) {
        let h = Arc::new(h);
        let bs = block_decompose(&h, DEFAULT_SEED, tol()).unwrap();
        let irreps: Vec<Representation> = (0..bs.len()).map(|i| block_irrep(&h, &bs, i).unwrap()).collect();
        (fusion_from_category(&bs, &irreps, tol()).unwrap(), bs.dims())
    }

    /// Rep(S3) by character theory: 1, sign, standard.
    fn rep_s3_by_characters() -> Vec<Vec<Vec<u64>>> {
        // characters on classes (e, transpositions, 3-cycles) with sizes (1, 3, 2)
        let chi = [[1i64, 1, 1], [1, -1, 1], [2, 0, -1]];
        let sizes = [1i64, 3, 2];
        let mut n = vec![vec![vec![0u64; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let s: i64 = (0..3).map(|c| sizes[c] * chi[i][c] * chi[j][c] * chi[k][c]).sum();
                    n[i][j][k] = (s / 6) as u64;
                }
            }
        }
        n
    }

    #[test]
    fn rep_s3_matches_characters() {
        let (fd, dims) = extract(group_algebra(&FiniteGroup::symmetric3()));
        assert_eq!(dims, vec![1, 1, 2]);
        assert_eq!(fd.n, rep_s3_by_characters());
        assert_eq!(fd.n[2][2], vec![1, 1, 1]);
        assert_eq!(fd.bar, vec![0, 1, 2]);
        assert!(fd.axioms_report().pass);
    }

    #[test]
    fn function_algebra_gives_group_ring() {
        let g = FiniteGroup::symmetric3();
        let (fd, _) = extract(function_algebra(&g));
        for a in 0..6 {
            assert_eq!(fd.bar[a], g.inv(a));
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(fd.get(a, b, c), u64::from(g.mul(a, b) == c));
                }
            }
        }
        assert!(fd.axioms_report().pass);
    }

    #[test]
    fn dimension_functions() {
        let (fd, _) = extract(group_algebra(&FiniteGroup::symmetric3()));
        assert!(verify_dimension_function(&fd, &[1, 1, 2]).pass);
        let bad = verify_dimension_function(&fd, &[1, 1, 1]);
        assert!(!bad.get("dimension-function-multiplicative").unwrap().pass);
        assert_eq!(absorbing_multiplicities(&fd, &[1, 1, 2]).unwrap(), vec![1, 1, 2]);
        let (z3, _) = extract(function_algebra(&FiniteGroup::cyclic(3)));
        assert!(verify_dimension_function(&z3, &[1, 1, 1]).pass);
        assert_eq!(absorbing_multiplicities(&z3, &[1, 1, 1]).unwrap(), vec![1, 1, 1]);
    }

    #[test]
    fn perron_frobenius() {
        let (fd, dims) = extract(group_algebra(&FiniteGroup::symmetric3()));
        let pf = perron_frobenius_dims(&fd, tol());
        assert_eq!(pf.rounded(), Some(vec![1, 1, 2]));
        assert!(pf.irreducible);
        let rep = verify_fusion(&fd, Some(&[1, 1, 2]), Some(&dims), tol());
        assert!(rep.pass, "{}", rep.to_text());
        let (z3, _) = extract(function_algebra(&FiniteGroup::cyclic(3)));
        assert_eq!(perron_frobenius_dims(&z3, tol()).rounded(), Some(vec![1, 1, 1]));
    }

    #[test]
    fn non_integral_pf_is_flagged() {
        // Fibonacci: τ⊗τ = 1 ⊕ τ
        let n = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]];
        let fd = FusionData::new(2, 0, vec![0, 1], n).unwrap();
        assert!(fd.axioms_report().pass);
        let pf = perron_frobenius_dims(&fd, tol());
        assert!((pf.dims[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert_eq!(pf.integral, vec![true, false]);
        assert!(!verify_fusion(&fd, None, None, tol()).pass);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(FusionData::new(2, 2, vec![0, 1], vec![]).is_err());
        assert!(FusionData::new(1, 0, vec![0], vec![vec![vec![1, 0]]]).is_err());
    }
}
