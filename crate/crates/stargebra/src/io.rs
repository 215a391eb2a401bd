//! JSON wire formats. One convention everywhere: complex scalars are
//! [re, im] pairs, matrices are row-major lists of rows.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::FiniteGroup;
use crate::cmat::{c, CMat, CVec};
use crate::error::{Error, Result};
use crate::spectral::RationalFn;
use crate::states::Functional;

pub type JsonComplex = [f64; 2];
pub type JsonMatrix = Vec<Vec<JsonComplex>>;
pub type JsonVector = Vec<JsonComplex>;

pub fn complex_to_json(z: Complex64) -> JsonComplex {
    [z.re, z.im]
}

pub fn complex_from_json(p: JsonComplex) -> Complex64 {
    c(p[0], p[1])
}

pub fn matrix_to_json(m: &CMat) -> JsonMatrix {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_to_json(m[(i, j)])).collect())
        .collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> Result<CMat> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(Error::Json("matrix with zero rows".into()));
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Json("ragged or empty matrix rows".into()));
    }
    let m = CMat::from_fn(nrows, ncols, |i, j| complex_from_json(rows[i][j]));
    if !crate::cmat::is_finite_mat(&m) {
        return Err(Error::NonFinite("JSON matrix".into()));
    }
    Ok(m)
}

pub fn vector_to_json(v: &CVec) -> JsonVector {
    v.iter().map(|z| complex_to_json(*z)).collect()
}

pub fn vector_from_json(entries: &JsonVector) -> Result<CVec> {
    if entries.is_empty() {
        return Err(Error::Json("empty vector".into()));
    }
    let v = CVec::from_iterator(entries.len(), entries.iter().map(|p| complex_from_json(*p)));
    if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("JSON vector".into()));
    }
    Ok(v)
}

/// `{"ambient_dim": n, "generators": [[[re,im],...],...]}`
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub ambient_dim: usize,
    pub generators: Vec<JsonMatrix>,
}

impl AlgebraSpec {
    pub fn generators(&self) -> Result<Vec<CMat>> {
        self.generators.iter().map(matrix_from_json).collect()
    }
}

/// `{"group": {"cyclic": N}}` or `{"group": {"table": [[...]]}}` with a
/// 0-indexed Cayley table.
#[derive(Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub group: GroupDesc,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GroupDesc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match (&self.group.cyclic, &self.group.table) {
            (Some(n), None) => FiniteGroup::cyclic(*n),
            (None, Some(t)) => FiniteGroup::from_table(t.clone()),
            _ => Err(Error::InvalidGroup(
                "exactly one of \"cyclic\" or \"table\" must be given".into(),
            )),
        }
    }
}

/// `{"num": [[re,im],...], "den": [[re,im],...]}`, ascending degree.
#[derive(Debug, Serialize, Deserialize)]
pub struct RationalSpec {
    pub num: JsonVector,
    pub den: JsonVector,
}

impl RationalSpec {
    pub fn build(&self) -> Result<RationalFn> {
        RationalFn::new(
            self.num.iter().map(|p| complex_from_json(*p)).collect(),
            self.den.iter().map(|p| complex_from_json(*p)).collect(),
        )
    }
}

/// `{"F": [[[re,im],...]]}` — the trace-pairing matrix of a functional.
#[derive(Debug, Serialize, Deserialize)]
pub struct FunctionalSpec {
    #[serde(rename = "F")]
    pub f: JsonMatrix,
}

impl FunctionalSpec {
    pub fn build(&self) -> Result<Functional> {
        Functional::new(matrix_from_json(&self.f)?)
    }
}

/// Parse with position information preserved in the error.
pub fn from_json_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        Error::Json(format!("{e} (line {}, column {})", e.line(), e.column()))
    })
}
