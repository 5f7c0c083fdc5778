use crate::error::{Error, Result};
use crate::numeric::{re, ComplexMatrix, Tolerance, C64};
use crate::report::VerificationReport;

/// A unital Hopf *-algebra presented by structure constants in a basis `e_0..e_{n-1}`.
///
/// * `e_i e_j = Σ_k mult[i][j][k] e_k`
/// * `Δ(e_i) = Σ_{j,k} comult[i][j][k] e_j ⊗ e_k`
/// * `antipode` and `star` are `n x n` matrices whose column `i` holds the
///   coordinates of `S(e_i)` and `e_i*`; the star extends antilinearly:
///   `(Σ a_i e_i)* = Σ_{i,j} conj(a_i) star[j][i] e_j`.
///
/// Tensor coordinates use the row-major Kronecker layout: `e_j ⊗ e_k` sits at
/// index `j * n + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteHopfStarAlgebra {
    dim: usize,
    basis: Vec<String>,
    mult: Vec<C64>,
    unit: Vec<C64>,
    comult: Vec<C64>,
    counit: Vec<C64>,
    antipode: ComplexMatrix,
    star: ComplexMatrix,
    mult_map: ComplexMatrix,
    comult_map: ComplexMatrix,
}

impl FiniteHopfStarAlgebra {
    /// Builds an algebra from dense structure tensors (row-major `[i][j][k]`).
    ///
    /// Only shapes and finiteness are validated here; the Hopf axioms are
    /// checked by [`verify_hopf_axioms`](Self::verify_hopf_axioms).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        basis: Vec<String>,
        mult: Vec<C64>,
        unit: Vec<C64>,
        comult: Vec<C64>,
        counit: Vec<C64>,
        antipode: ComplexMatrix,
        star: ComplexMatrix,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::input("dim", "algebra must have positive dimension"));
        }
        let cube = n * n * n;
        if mult.len() != cube {
            return Err(Error::input("mult", format!("expected {cube} entries, got {}", mult.len())));
        }
        if comult.len() != cube {
            return Err(Error::input("comult", format!("expected {cube} entries, got {}", comult.len())));
        }
        if unit.len() != n {
            return Err(Error::input("unit", format!("expected {n} entries, got {}", unit.len())));
        }
        if counit.len() != n {
            return Err(Error::input("counit", format!("expected {n} entries, got {}", counit.len())));
        }
        if antipode.shape() != (n, n) {
            return Err(Error::input("antipode", format!("expected {n}x{n}, got {:?}", antipode.shape())));
        }
        if star.shape() != (n, n) {
            return Err(Error::input("star", format!("expected {n}x{n}, got {:?}", star.shape())));
        }
        let finite = |v: &[C64]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        for (field, ok) in [
            ("mult", finite(&mult)),
            ("comult", finite(&comult)),
            ("unit", finite(&unit)),
            ("counit", finite(&counit)),
            ("antipode", antipode.is_finite()),
            ("star", star.is_finite()),
        ] {
            if !ok {
                return Err(Error::input(field, "entries must be finite"));
            }
        }
        let mult_map = ComplexMatrix::from_fn(n, n * n, |k, ij| mult[ij * n + k]);
        let comult_map = ComplexMatrix::from_fn(n * n, n, |jk, i| comult[i * n * n + jk]);
        Ok(Self {
            dim: n,
            basis,
            mult,
            unit,
            comult,
            counit,
            antipode,
            star,
            mult_map,
            comult_map,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    #[inline]
    pub fn m(&self, i: usize, j: usize, k: usize) -> C64 {
        self.mult[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize, k: usize) -> C64 {
        self.comult[(i * self.dim + j) * self.dim + k]
    }

    pub fn unit(&self) -> &[C64] {
        &self.unit
    }

    pub fn counit(&self) -> &[C64] {
        &self.counit
    }

    pub fn antipode(&self) -> &ComplexMatrix {
        &self.antipode
    }

    pub fn star_matrix(&self) -> &ComplexMatrix {
        &self.star
    }

    /// Multiplication `A ⊗ A -> A` as an `n x n²` matrix.
    pub fn mult_map(&self) -> &ComplexMatrix {
        &self.mult_map
    }

    /// Comultiplication `A -> A ⊗ A` as an `n² x n` matrix.
    pub fn comult_map(&self) -> &ComplexMatrix {
        &self.comult_map
    }

    /// The unit element as a column vector.
    pub fn unit_vector(&self) -> ComplexMatrix {
        ComplexMatrix::column(&self.unit)
    }

    /// The counit as a `1 x n` row.
    pub fn counit_row(&self) -> ComplexMatrix {
        ComplexMatrix::row(&self.counit)
    }

    /// Basis vector `e_i` as a column.
    pub fn basis_vector(&self, i: usize) -> ComplexMatrix {
        let mut v = ComplexMatrix::zeros(self.dim, 1);
        v[(i, 0)] = re(1.0);
        v
    }

    /// Matrix of `x ↦ a x`.
    pub fn left_mult(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            let ai = a[(i, 0)];
            if ai == re(0.0) {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    out[(k, j)] += ai * self.m(i, j, k);
                }
            }
        }
        out
    }

    /// Matrix of `x ↦ x b`.
    pub fn right_mult(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let bj = b[(j, 0)];
            if bj == re(0.0) {
                continue;
            }
            for i in 0..n {
                for k in 0..n {
                    out[(k, i)] += bj * self.m(i, j, k);
                }
            }
        }
        out
    }

    pub fn multiply(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        &self.left_mult(a) * b
    }

    /// `a*` for a coordinate column `a`.
    pub fn star(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &self.star * &a.conj()
    }

    pub fn comultiply(&self, a: &ComplexMatrix) -> ComplexMatrix {
        &self.comult_map * a
    }

    pub fn counit_of(&self, a: &ComplexMatrix) -> C64 {
        (0..self.dim).map(|i| self.counit[i] * a[(i, 0)]).sum()
    }

    pub fn antipode_inverse(&self) -> Result<ComplexMatrix> {
        self.antipode
            .try_inverse()
            .ok_or_else(|| Error::inconsistent("antipode is not invertible"))
    }

    /// Star on the tensor square, as the matrix `St ⊗ St` (to be applied to conjugated coordinates).
    pub fn star_matrix_squared(&self) -> ComplexMatrix {
        self.star.kron(&self.star)
    }

    /// True when `S² = id` within tolerance (Kac type).
    pub fn is_kac(&self, tol: Tolerance) -> bool {
        (&self.antipode * &self.antipode).distance(&ComplexMatrix::identity(self.dim)) <= tol.eps()
    }

    /// Is `Δ` cocommutative (`flip ∘ Δ = Δ`)?
    pub fn is_cocommutative(&self, tol: Tolerance) -> bool {
        (&flip(self.dim, self.dim) * &self.comult_map).distance(&self.comult_map) <= tol.eps()
    }

    pub fn is_commutative(&self, tol: Tolerance) -> bool {
        (&self.mult_map * &flip(self.dim, self.dim)).distance(&self.mult_map) <= tol.eps()
    }

    /// Checks every structural axiom and reports the maximum residual of each.
    pub fn verify_hopf_axioms(&self, tol: Tolerance) -> VerificationReport {
        let n = self.dim;
        let id = ComplexMatrix::identity(n);
        let m = &self.mult_map;
        let d = &self.comult_map;
        let u = self.unit_vector();
        let eps = self.counit_row();
        let s = &self.antipode;
        let st = &self.star;
        let mut r = VerificationReport::default();
        const A: &str = crate::report::anchor::HOPF_AXIOMS;

        r.residual("mult-associativity", A, (m * &m.kron(&id)).distance(&(m * &id.kron(m))), tol);
        let left_unit = m * &u.kron(&id);
        let right_unit = m * &id.kron(&u);
        r.residual("mult-unit", A, left_unit.distance(&id).max(right_unit.distance(&id)), tol);
        r.residual(
            "comult-coassociativity",
            A,
            (&d.kron(&id) * d).distance(&(&id.kron(d) * d)),
            tol,
        );
        let lc = &eps.kron(&id) * d;
        let rc = &id.kron(&eps) * d;
        r.residual("comult-counit", A, lc.distance(&id).max(rc.distance(&id)), tol);

        // Δ(ab) = Δ(a)Δ(b): D m = (m ⊗ m) P23 (D ⊗ D)
        let p23 = middle_swap(n);
        let lhs = d * m;
        let rhs = &(&m.kron(m) * &p23) * &d.kron(d);
        let unital = (d * &u).distance(&u.kron(&u));
        r.residual("comult-homomorphism", A, lhs.distance(&rhs).max(unital), tol);
        let eps_mult = (&eps * m).distance(&eps.kron(&eps));
        let eps_unit = (self.counit_of(&u) - re(1.0)).norm();
        r.residual("counit-homomorphism", A, eps_mult.max(eps_unit), tol);

        // m (S ⊗ id) Δ = u ε = m (id ⊗ S) Δ
        let ue = &u * &eps;
        let a1 = &(m * &s.kron(&id)) * d;
        let a2 = &(m * &id.kron(s)) * d;
        r.residual("antipode-axiom", A, a1.distance(&ue).max(a2.distance(&ue)), tol);

        r.residual("star-involution", A, (st * &st.conj()).distance(&id), tol);
        // (ab)* = b* a*: St conj(m) = m (St ⊗ St) flip
        let anti = (st * &m.conj()).distance(&(&(m * &st.kron(st)) * &flip(n, n)));
        r.residual("star-antimultiplicative", A, anti, tol);
        // Δ(a*) = Δ(a)*: D St = (St ⊗ St) conj(D)
        let dstar = (d * st).distance(&(&st.kron(st) * &d.conj()));
        r.residual("comult-star", A, dstar, tol);
        // S(S(a)*)* = a: S St conj(S) conj(St) = id
        let sst = &(&(s * st) * &s.conj()) * &st.conj();
        r.residual("antipode-star", A, sst.distance(&id), tol);
        r
    }
}

/// Flip `x ⊗ y ↦ y ⊗ x` from `ℂ^p ⊗ ℂ^q` to `ℂ^q ⊗ ℂ^p`.
pub fn flip(p: usize, q: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            f[(j * p + i, i * q + j)] = re(1.0);
        }
    }
    f
}

/// `a1 ⊗ a2 ⊗ b1 ⊗ b2 ↦ a1 ⊗ b1 ⊗ a2 ⊗ b2` on `(ℂ^n)^{⊗4}`.
pub fn middle_swap(n: usize) -> ComplexMatrix {
    ComplexMatrix::identity(n)
        .kron(&flip(n, n))
        .kron(&ComplexMatrix::identity(n))
}
