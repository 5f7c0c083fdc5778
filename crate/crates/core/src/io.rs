//! JSON formats for algebras, groups and fusion rings, and input digests.
//!
//! Algebra files:
//!
//! ```json
//! { "dim": 2, "basis": ["e", "g"],
//!   "mult":   [[i, j, k, re, im], ...],
//!   "comult": [[i, j, k, re, im], ...],
//!   "unit": [[1, 0], [0, 0]], "counit": [[1, 0], [1, 0]],
//!   "antipode": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
//!   "star":     [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] }
//! ```
//!
//! Sparse entries may omit the imaginary part and complex scalars may be
//! plain numbers. Dense matrices are row-major.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fusion::FusionData;
use crate::hopf::{FiniteGroup, FiniteHopfStarAlgebra};
use crate::numeric::{c64, ComplexMatrix, C64};

/// Counts above this are rejected to keep integer arithmetic exact.
const MAX_FUSION_COUNT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Real(f64),
    Pair([f64; 2]),
}

impl From<Scalar> for C64 {
    fn from(s: Scalar) -> Self {
        match s {
            Scalar::Real(r) => c64(r, 0.0),
            Scalar::Pair([r, i]) => c64(r, i),
        }
    }
}

#[derive(Debug, Deserialize)]
struct AlgebraIn {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    mult: Vec<Vec<f64>>,
    comult: Vec<Vec<f64>>,
    unit: Vec<Scalar>,
    counit: Vec<Scalar>,
    antipode: Vec<Vec<Scalar>>,
    star: Vec<Vec<Scalar>>,
}

#[derive(Debug, Serialize)]
struct AlgebraOut<'a> {
    dim: usize,
    basis: &'a [String],
    mult: Vec<[f64; 5]>,
    comult: Vec<[f64; 5]>,
    unit: Vec<[f64; 2]>,
    counit: Vec<[f64; 2]>,
    antipode: Vec<Vec<[f64; 2]>>,
    star: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct FusionFile {
    size: usize,
    unit: usize,
    bar: Vec<usize>,
    #[serde(rename = "N")]
    n: Vec<[u64; 4]>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "document".to_string() } else { path };
        Error::input(field, e.into_inner().to_string())
    })
}

fn sparse(field: &str, entries: &[Vec<f64>], n: usize) -> Result<Vec<C64>> {
    let mut out = vec![c64(0.0, 0.0); n * n * n];
    for (pos, e) in entries.iter().enumerate() {
        let here = || format!("{field}[{pos}]");
        if e.len() != 4 && e.len() != 5 {
            return Err(Error::input(here(), "expected [i, j, k, re] or [i, j, k, re, im]"));
        }
        let mut idx = [0usize; 3];
        for (slot, v) in idx.iter_mut().zip(e) {
            if v.fract() != 0.0 || *v < 0.0 || *v >= n as f64 {
                return Err(Error::input(here(), format!("index {v} is not an integer in 0..{n}")));
            }
            *slot = *v as usize;
        }
        let z = c64(e[3], e.get(4).copied().unwrap_or(0.0));
        out[(idx[0] * n + idx[1]) * n + idx[2]] += z;
    }
    Ok(out)
}

fn dense(field: &str, rows: Vec<Vec<Scalar>>, n: usize) -> Result<ComplexMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(field, format!("expected a {n}x{n} matrix")));
    }
    let data = rows.into_iter().flatten().map(C64::from).collect();
    Ok(ComplexMatrix::from_row_major(n, n, data))
}

fn vector(field: &str, v: Vec<Scalar>, n: usize) -> Result<Vec<C64>> {
    if v.len() != n {
        return Err(Error::input(field, format!("expected {n} entries, got {}", v.len())));
    }
    Ok(v.into_iter().map(C64::from).collect())
}

pub fn algebra_from_json(text: &str) -> Result<FiniteHopfStarAlgebra> {
    let a: AlgebraIn = parse(text)?;
    let n = a.dim;
    if n == 0 {
        return Err(Error::input("dim", "must be positive"));
    }
    let basis = match a.basis {
        Some(b) if b.len() != n => return Err(Error::input("basis", format!("expected {n} names"))),
        Some(b) => b,
        None => (0..n).map(|i| format!("e{i}")).collect(),
    };
    FiniteHopfStarAlgebra::new(
        basis,
        sparse("mult", &a.mult, n)?,
        vector("unit", a.unit, n)?,
        sparse("comult", &a.comult, n)?,
        vector("counit", a.counit, n)?,
        dense("antipode", a.antipode, n)?,
        dense("star", a.star, n)?,
    )
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn nonzero_entries(n: usize, f: impl Fn(usize, usize, usize) -> C64) -> Vec<[f64; 5]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let z = f(i, j, k);
                if z.re != 0.0 || z.im != 0.0 {
                    out.push([i as f64, j as f64, k as f64, z.re, z.im]);
                }
            }
        }
    }
    out
}

fn dense_out(m: &ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| pair(m[(r, c)])).collect()).collect()
}

pub fn algebra_to_json(h: &FiniteHopfStarAlgebra) -> String {
    let n = h.dim();
    let out = AlgebraOut {
        dim: n,
        basis: h.basis_names(),
        mult: nonzero_entries(n, |i, j, k| h.m(i, j, k)),
        comult: nonzero_entries(n, |i, j, k| h.d(i, j, k)),
        unit: h.unit().iter().copied().map(pair).collect(),
        counit: h.counit().iter().copied().map(pair).collect(),
        antipode: dense_out(h.antipode()),
        star: dense_out(h.star_matrix()),
    };
    let mut s = serde_json::to_string_pretty(&out).expect("algebra serialises");
    s.push('\n');
    s
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    let g: GroupFile = parse(text)?;
    if g.table.len() != g.order {
        return Err(Error::input("table", format!("expected {} rows", g.order)));
    }
    match g.names {
        Some(names) => FiniteGroup::with_names(names, g.table),
        None => FiniteGroup::from_table(g.table),
    }
}

pub fn group_to_json(g: &FiniteGroup) -> String {
    let out = GroupFile {
        order: g.order(),
        table: g.table().to_vec(),
        names: Some(g.names().to_vec()),
    };
    serde_json::to_string_pretty(&out).expect("group serialises") + "\n"
}

pub fn fusion_from_json(text: &str) -> Result<FusionData> {
    let f: FusionFile = parse(text)?;
    let s = f.size;
    let mut n = vec![vec![vec![0u64; s]; s]; s];
    for (pos, &[i, j, k, count]) in f.n.iter().enumerate() {
        let [i, j, k] = [i, j, k].map(|x| x as usize);
        if i >= s || j >= s || k >= s {
            return Err(Error::input(format!("N[{pos}]"), format!("index out of range for size {s}")));
        }
        if count > MAX_FUSION_COUNT {
            return Err(Error::input(format!("N[{pos}]"), format!("count exceeds {MAX_FUSION_COUNT}")));
        }
        if n[i][j][k] != 0 {
            return Err(Error::input(format!("N[{pos}]"), "duplicate entry"));
        }
        n[i][j][k] = count;
    }
    FusionData::new(s, f.unit, f.bar, n)
}

pub fn fusion_to_json(fd: &FusionData) -> String {
    let mut entries = Vec::new();
    for i in 0..fd.size {
        for j in 0..fd.size {
            for k in 0..fd.size {
                let c = fd.get(i, j, k);
                if c != 0 {
                    entries.push([i as u64, j as u64, k as u64, c]);
                }
            }
        }
    }
    let out = FusionFile {
        size: fd.size,
        unit: fd.unit,
        bar: fd.bar.clone(),
        n: entries,
    };
    serde_json::to_string_pretty(&out).expect("fusion data serialises") + "\n"
}

/// Either kind of file accepted by the fusion command.
#[derive(Debug, Clone)]
pub enum FusionInput {
    Algebra(Box<FiniteHopfStarAlgebra>),
    Fusion(FusionData),
}

/// Distinguishes the two formats by their top-level keys.
pub fn fusion_input_from_json(text: &str) -> Result<FusionInput> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::input("document", e.to_string()))?;
    if v.get("N").is_some() || v.get("size").is_some() {
        fusion_from_json(text).map(FusionInput::Fusion)
    } else {
        algebra_from_json(text).map(|h| FusionInput::Algebra(Box::new(h)))
    }
}

/// Hex SHA-256 of the input bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_file(path: &Path) -> Result<(String, String)> {
    let bytes = std::fs::read(path)?;
    let dig = digest(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::input("document", "file is not UTF-8"))?;
    Ok((text, dig))
}
