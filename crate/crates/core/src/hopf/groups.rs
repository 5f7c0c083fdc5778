//! Finite groups by Cayley table and the two Hopf algebras they generate.

use crate::error::{Error, Result};
use crate::numeric::{re, ComplexMatrix, C64};

use super::FiniteHopfStarAlgebra;

/// A finite group given by its multiplication table.
///
/// Elements are `0..order`; element 0 is the identity and
/// `table[g][h]` is the index of `gh`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: closure, identity in row/column 0, inverses, associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let names = (0..table.len()).map(|g| format!("g{g}")).collect();
        Self::with_names(names, table)
    }

    pub fn with_names(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::input("order", "group must have at least one element"));
        }
        if names.len() != n {
            return Err(Error::input("names", "one name per element required"));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input("table", format!("row {g} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::input("table", format!("row {g} contains out-of-range element {bad}")));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return Err(Error::input("table", "element 0 must be the identity"));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == 0) {
                Some(h) if table[h][g] == 0 => inverse[g] = h,
                _ => return Err(Error::input("table", format!("element {g} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::input(
                            "table",
                            format!("multiplication is not associative at ({a},{b},{c})"),
                        ));
                    }
                }
            }
        }
        Ok(Self { names, table, inverse })
    }

    /// Cyclic group of order `n` with generator powers `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n).map(|k| if k == 0 { "e".into() } else { format!("r{k}") }).collect();
        Self::with_names(names, table).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters, elements listed as permutations
    /// in the order `e, (01), (12), (02), (012), (021)`.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let names = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let r = compose(p, q);
                        perms.iter().position(|x| *x == r).expect("closed")
                    })
                    .collect()
            })
            .collect();
        Self::with_names(names.iter().map(|s| s.to_string()).collect(), table).expect("S3 table is a group")
    }

    /// Built-in groups by name: `Z2`, `Z3`, `Z4`, `S3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "Z2" => Some(Self::cyclic(2)),
            "Z3" => Some(Self::cyclic(3)),
            "Z4" => Some(Self::cyclic(4)),
            "S3" => Some(Self::symmetric3()),
            _ => None,
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn tensor(n: usize) -> Vec<C64> {
    vec![re(0.0); n * n * n]
}

fn inversion_matrix(g: &FiniteGroup) -> ComplexMatrix {
    let n = g.order();
    let mut s = ComplexMatrix::zeros(n, n);
    for a in 0..n {
        s[(g.inv(a), a)] = re(1.0);
    }
    s
}

/// The group algebra `ℂ[G]`: `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g* = g⁻¹`.
pub fn group_algebra(g: &FiniteGroup) -> FiniteHopfStarAlgebra {
    let n = g.order();
    let mut mult = tensor(n);
    let mut comult = tensor(n);
    for a in 0..n {
        for b in 0..n {
            mult[(a * n + b) * n + g.mul(a, b)] = re(1.0);
        }
        comult[(a * n + a) * n + a] = re(1.0);
    }
    let mut unit = vec![re(0.0); n];
    unit[0] = re(1.0);
    let counit = vec![re(1.0); n];
    let s = inversion_matrix(g);
    FiniteHopfStarAlgebra::new(g.names().to_vec(), mult, unit, comult, counit, s.clone(), s)
        .expect("group algebra is well formed")
}

/// The function algebra `ℂ^G` on the basis of point masses `δ_g`:
/// pointwise product, `Δδ_g = Σ_{st=g} δ_s⊗δ_t`, `ε(δ_g) = [g = e]`,
/// `S(δ_g) = δ_{g⁻¹}`, `δ_g* = δ_g`.
pub fn function_algebra(g: &FiniteGroup) -> FiniteHopfStarAlgebra {
    let n = g.order();
    let mut mult = tensor(n);
    let mut comult = tensor(n);
    for a in 0..n {
        mult[(a * n + a) * n + a] = re(1.0);
        for s in 0..n {
            let t = g.mul(g.inv(s), a);
            comult[(a * n + s) * n + t] = re(1.0);
        }
    }
    let unit = vec![re(1.0); n];
    let mut counit = vec![re(0.0); n];
    counit[0] = re(1.0);
    let names = g.names().iter().map(|x| format!("d[{x}]")).collect();
    FiniteHopfStarAlgebra::new(
        names,
        mult,
        unit,
        comult,
        counit,
        inversion_matrix(g),
        ComplexMatrix::identity(n),
    )
    .expect("function algebra is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_groups() {
        for (name, order, abelian) in [("Z2", 2, true), ("Z3", 3, true), ("Z4", 4, true), ("S3", 6, false)] {
            let g = FiniteGroup::builtin(name).unwrap();
            assert_eq!(g.order(), order);
            assert_eq!(g.is_abelian(), abelian);
        }
        assert!(FiniteGroup::builtin("A5").is_none());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        // a Latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
    }

    #[test]
    fn s3_inverses() {
        let g = FiniteGroup::symmetric3();
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert_eq!(g.inv(4), 5);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn function_algebra_z2_comultiplication() {
        // Δδ_g = δ_e⊗δ_g + δ_g⊗δ_e
        let h = function_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(h.d(1, 0, 1), re(1.0));
        assert_eq!(h.d(1, 1, 0), re(1.0));
        assert_eq!(h.d(1, 0, 0), re(0.0));
        assert_eq!(h.d(1, 1, 1), re(0.0));
        assert_eq!(h.d(0, 0, 0), re(1.0));
        assert_eq!(h.d(0, 1, 1), re(1.0));
    }

    #[test]
    fn group_algebra_z2_antipode_is_identity() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(*h.antipode(), ComplexMatrix::identity(2));
    }
}
