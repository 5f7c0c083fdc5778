//! Verification reports shared by every suite and the CLI.

use std::fmt::Write as _;

use serde::Serialize;

use crate::numeric::Tolerance;

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    /// Short citation of the statement being tested.
    pub anchor: String,
    /// Maximum residual; `None` for checks decided in exact integer arithmetic.
    pub residual: Option<f64>,
    pub pass: bool,
}

/// Ordered list of checks; passes iff every check passes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub input: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Default for VerificationReport {
    fn default() -> Self {
        Self::new("")
    }
}

impl VerificationReport {
    pub fn new(input: impl Into<String>) -> Self {
        Self {
            tool: tool_version(),
            input: input.into(),
            checks: Vec::new(),
            pass: true,
        }
    }

    /// Records a residual check; non-finite residuals fail.
    pub fn residual(&mut self, id: impl Into<String>, anchor: &str, residual: f64, tol: Tolerance) -> bool {
        let pass = residual.is_finite() && tol.accepts(residual);
        self.push(Check {
            id: id.into(),
            anchor: anchor.to_string(),
            residual: Some(if residual.is_finite() { residual } else { f64::MAX }),
            pass,
        });
        pass
    }

    /// Records an exact (integer or boolean) check.
    pub fn exact(&mut self, id: impl Into<String>, anchor: &str, pass: bool) -> bool {
        self.push(Check {
            id: id.into(),
            anchor: anchor.to_string(),
            residual: None,
            pass,
        });
        pass
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    /// Appends all checks of `other`, prefixing nothing.
    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Largest residual over all residual checks.
    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter_map(|c| c.residual)
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  input {}", self.tool, self.input);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let resid = match c.residual {
                Some(r) => format!("{r:.3e}"),
                None => "exact".to_string(),
            };
            let _ = writeln!(out, "{status}  {:<48} {:>10}  [{}]", c.id, resid, c.anchor);
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed: {}",
            self.checks.len(),
            self.failures().count(),
            if self.pass { "PASS" } else { "FAIL" }
        );
        out
    }
}

/// Short citations of the statements behind each check.
pub mod anchor {
    pub const HOPF_AXIOMS: &str = "Hopf *-algebra axioms";
    pub const HAAR: &str = "left invariant Haar functional, φ(I_0) = 1";
    pub const MODULAR: &str = "modular map ρ = S²";
    pub const BLOCKS: &str = "block decomposition A = ⊕ End(H_i)";
    pub const DUAL: &str = "dual Hopf *-algebra Â";
    pub const FOURIER: &str = "Fourier transform F(a) = φ(·a), F(I_0) = 1_Â";
    pub const PLANCHEREL: &str = "Plancherel formula ψ̂(F(a)*F(b)) = φ(a*b)";
    pub const GROUP_LIKES: &str = "group-like unitaries Δg = g⊗g, g*g = gg* = 1";
    pub const REGULAR_REP: &str = "π_l ≅ ⊕ dim H_i p_i";
    pub const REGULAR_MONOID: &str = "regular monoid (π_l, m̃, η̃)";
    pub const MONOID_FORMULA: &str = "m̃ = F⁻¹ m̂ (F⊗F)";
    pub const STRONG_INVARIANCE: &str = "strong left invariance of φ";
    pub const COMONOID: &str = "regular comonoid (π_l, Δ, ε)";
    pub const FROBENIUS: &str = "regular Frobenius algebra, m̃* = Δ";
    pub const ABSORPTION: &str = "absorption θ × π_l ≅ dim K · π_l";
    pub const ABSORBING_UNITARY: &str = "U_θ, V_θ are unitary";
    pub const NATURALITY: &str = "U_θ, V_θ natural in θ";
    pub const MODULE_MAP: &str = "V_θ, V_θ* are π_l-module maps";
    pub const QF: &str = "(m̃⊗ι)(y⊗Δ(x)(1⊗a)) = Δ(m̃(y⊗x))(1⊗a)";
    pub const INTRINSIC_GROUP: &str = "intrinsic group G ≅ G_{π_l}";
    pub const COMMUTATIVE: &str = "m̃ ∘ c = m̃";
    pub const EMBEDDING: &str = "E(X) = Hom(1, Q⊗X) is a faithful tensor functor";
    pub const EMBEDDING_STAR: &str = "d_{X,Y} unitary, E(s*) = E(s)*";
    pub const MODULE_HOMS: &str = "Hom_Q-mod(Q, Q⊗X) ≅ Hom(1, Q⊗X)";
    pub const ABSORBING_MODULE: &str = "Q⊗X ≅ n(X) Q as Q-modules";
    pub const FAITHFUL: &str = "faithfulness: E(X) ≠ 0 on irreducibles";
    pub const NAT_E: &str = "Nat E ≅ ⊕ End E(X_i), Aut Q → Aut E";
    pub const UNITARY_EQUIVALENCE: &str = "unitary monoidal equivalence u: K → E";
    pub const RECONSTRUCTION: &str = "(A, Δ) ≅ (A′, Δ′)";
    pub const FUSION: &str = "fusion coefficients N_ij^k";
    pub const DIMENSION_FUNCTION: &str = "dimension function";
    pub const ABSORBING_OBJECT: &str = "Σ_i N_ij^k n_ī = n_j n_k̄";
    pub const PERRON_FROBENIUS: &str = "intrinsic (Perron–Frobenius) dimensions";
}

pub fn tool_version() -> String {
    format!("qgv {}", env!("CARGO_PKG_VERSION"))
}
