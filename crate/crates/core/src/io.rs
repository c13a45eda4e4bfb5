//! JSON text forms of scalars, matrices, filtrations, bigradings and the
//! file objects read and written by the command line.
//!
//! Scalars are `"a"` or `"a/b"` when real and `{"re": .., "im": ..}`
//! otherwise; matrices are row-major arrays; filtrations map indices to
//! lists of basis vectors.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::asymptotic::{Ivi, Monomial, NilpotentOrbit, PolyMap};
use crate::error::{Error, Result};
use crate::filtration::{Bigrading, DecFiltration, HodgeStructure, IncFiltration};
use crate::forms::BilForm;
use crate::matrix::{Mat, Vector};
use crate::mixed::{MixedHodge, PmhsData};
use crate::scalar::{format_rational, parse_rational, Scalar};
use crate::subspace::Subspace;

fn bad(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    if x.is_real() {
        Value::String(format_rational(x.re()))
    } else {
        json!({"re": format_rational(x.re()), "im": format_rational(x.im())})
    }
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => Ok(Scalar::from_real(parse_rational(s)?)),
        Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(n.as_i64().unwrap())),
        Value::Object(m) => {
            let part = |key: &str| -> Result<_> {
                match m.get(key) {
                    None => Ok(num_rational::BigRational::from_integer(0.into())),
                    Some(Value::String(s)) => parse_rational(s),
                    Some(Value::Number(n)) if n.is_i64() => Ok(num_rational::BigRational::from_integer(n.as_i64().unwrap().into())),
                    Some(other) => Err(bad(format!("invalid scalar part {other}"))),
                }
            };
            if m.keys().any(|k| k != "re" && k != "im") {
                return Err(bad("scalar object may only have keys re and im"));
            }
            Ok(Scalar::new(part("re")?, part("im")?))
        }
        other => Err(bad(format!("invalid scalar {other}"))),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vector> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of scalars"))?
        .iter()
        .map(scalar_from_json)
        .collect()
}

pub fn matrix_to_json(m: &Mat) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Mat> {
    let rows = v.as_array().ok_or_else(|| bad("expected a matrix"))?;
    let rows: Vec<Vector> = rows.iter().map(vector_from_json).collect::<Result<_>>()?;
    Mat::from_rows(rows)
}

fn square_from_json(v: &Value, n: usize, what: &str) -> Result<Mat> {
    let m = matrix_from_json(v)?;
    if m.rows() != n || m.cols() != n {
        return Err(bad(format!("{what} must be {n}x{n}")));
    }
    Ok(m)
}

pub fn subspace_to_json(s: &Subspace) -> Value {
    Value::Array(s.basis_vectors().iter().map(|v| vector_to_json(v)).collect())
}

pub fn subspace_from_json(v: &Value, n: usize) -> Result<Subspace> {
    let vs = v.as_array().ok_or_else(|| bad("expected a list of vectors"))?;
    let mut out = Subspace::zero(n);
    for x in vs {
        let x = vector_from_json(x)?;
        if x.len() != n {
            return Err(bad(format!("vector of length {} in C^{n}", x.len())));
        }
        out.insert(&x);
    }
    Ok(out)
}

pub fn dec_filtration_to_json(f: &DecFiltration) -> Value {
    let mut m = Map::new();
    for a in f.lo() - 1..=f.hi() {
        m.insert(a.to_string(), subspace_to_json(&f.get(a)));
    }
    Value::Object(m)
}

pub fn inc_filtration_to_json(w: &IncFiltration) -> Value {
    let mut m = Map::new();
    for l in w.lo() - 1..=w.hi() {
        m.insert(l.to_string(), subspace_to_json(&w.get(l)));
    }
    Value::Object(m)
}

fn indexed(v: &Value, n: usize) -> Result<BTreeMap<i32, Subspace>> {
    let m = v.as_object().ok_or_else(|| bad("expected a filtration object"))?;
    let mut out = BTreeMap::new();
    for (k, s) in m {
        let i: i32 = k.trim().parse().map_err(|_| bad(format!("invalid filtration index {k:?}")))?;
        out.insert(i, subspace_from_json(s, n)?);
    }
    Ok(out)
}

pub fn dec_filtration_from_json(v: &Value, n: usize) -> Result<DecFiltration> {
    DecFiltration::new(n, indexed(v, n)?)
}

pub fn inc_filtration_from_json(v: &Value, n: usize) -> Result<IncFiltration> {
    IncFiltration::new(n, indexed(v, n)?)
}

pub fn bigrading_to_json(b: &Bigrading) -> Value {
    let mut m = Map::new();
    for ((p, q), s) in b.parts() {
        m.insert(format!("{p},{q}"), subspace_to_json(s));
    }
    Value::Object(m)
}

pub fn bigrading_from_json(v: &Value, n: usize) -> Result<Bigrading> {
    let m = v.as_object().ok_or_else(|| bad("expected a bigrading object"))?;
    let mut parts = BTreeMap::new();
    for (k, s) in m {
        let (p, q) = k.split_once(',').ok_or_else(|| bad(format!("invalid bidegree {k:?}")))?;
        let p: i32 = p.trim().parse().map_err(|_| bad(format!("invalid bidegree {k:?}")))?;
        let q: i32 = q.trim().parse().map_err(|_| bad(format!("invalid bidegree {k:?}")))?;
        parts.insert((p, q), subspace_from_json(s, n)?);
    }
    Bigrading::new(n, parts)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn weight_of(v: &Value) -> Result<i32> {
    field(v, "weight")?
        .as_i64()
        .and_then(|w| i32::try_from(w).ok())
        .ok_or_else(|| bad("weight must be an integer"))
}

fn form_of(v: &Value, weight: i32) -> Result<BilForm> {
    let m = matrix_from_json(field(v, "form")?)?;
    BilForm::new(m, weight)
}

fn matrices(v: &Value, n: usize, what: &str) -> Result<Vec<Mat>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be a list of matrices")))?
        .iter()
        .map(|m| square_from_json(m, n, what))
        .collect()
}

/// Ambient dimension of a filtration object: the longest vector it lists.
fn dim_of_filtration(v: &Value) -> Result<usize> {
    let m = v.as_object().ok_or_else(|| bad("expected a filtration object"))?;
    let mut n = 0;
    for s in m.values() {
        for x in s.as_array().ok_or_else(|| bad("expected a list of vectors"))? {
            n = n.max(x.as_array().map_or(0, Vec::len));
        }
    }
    Ok(n)
}

/// `{"weight", "form", "F"}`: a pure structure given by its Hodge filtration.
pub fn hs_from_json(v: &Value) -> Result<(HodgeStructure, BilForm)> {
    let k = weight_of(v)?;
    let q = form_of(v, k)?;
    let f = dec_filtration_from_json(field(v, "F")?, q.dim())?;
    Ok((crate::filtration::hs_from_filtration(&f, k)?, q))
}

pub fn hs_to_json(h: &HodgeStructure, q: &BilForm) -> Value {
    json!({
        "weight": h.weight(),
        "form": matrix_to_json(q.matrix()),
        "F": dec_filtration_to_json(&h.filtration()),
    })
}

/// `{"W", "F"}`.
pub fn mhs_from_json(v: &Value) -> Result<MixedHodge> {
    let n = dim_of_filtration(field(v, "W")?)?;
    let w = inc_filtration_from_json(field(v, "W")?, n)?;
    let f = dec_filtration_from_json(field(v, "F")?, n)?;
    MixedHodge::new(w, f)
}

pub fn mhs_to_json(m: &MixedHodge) -> Value {
    json!({"W": inc_filtration_to_json(m.w()), "F": dec_filtration_to_json(m.f())})
}

/// `{"weight", "form", "F", "W", "N"}`.
pub fn pmhs_from_json(v: &Value) -> Result<PmhsData> {
    let weight = weight_of(v)?;
    let q = form_of(v, weight)?;
    let n = q.dim();
    Ok(PmhsData {
        weight,
        w: inc_filtration_from_json(field(v, "W")?, n)?,
        f: dec_filtration_from_json(field(v, "F")?, n)?,
        n: square_from_json(field(v, "N")?, n, "N")?,
        q,
    })
}

pub fn pmhs_to_json(d: &PmhsData) -> Value {
    json!({
        "weight": d.weight,
        "form": matrix_to_json(d.q.matrix()),
        "F": dec_filtration_to_json(&d.f),
        "W": inc_filtration_to_json(&d.w),
        "N": matrix_to_json(&d.n),
    })
}

/// `{"weight", "form", "F", "nilpotents"}`.
pub fn orbit_from_json(v: &Value) -> Result<NilpotentOrbit> {
    let weight = weight_of(v)?;
    let q = form_of(v, weight)?;
    let n = q.dim();
    let f = dec_filtration_from_json(field(v, "F")?, n)?;
    let gens = matrices(field(v, "nilpotents")?, n, "nilpotents")?;
    NilpotentOrbit::new(gens, f, weight, q)
}

pub fn orbit_to_json(o: &NilpotentOrbit) -> Value {
    json!({
        "weight": o.weight,
        "form": matrix_to_json(o.q.matrix()),
        "F": dec_filtration_to_json(&o.f),
        "nilpotents": o.cone.generators().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// The orbit fields plus `"abelian_basis"`, kept in the given order so a
/// non-commuting pair can be reported by position.
pub fn ivi_from_json(v: &Value) -> Result<(Ivi, Vec<Mat>)> {
    let orbit = orbit_from_json(v)?;
    let basis = matrices(field(v, "abelian_basis")?, orbit.dim_v(), "abelian_basis")?;
    Ok((Ivi::new(orbit, &basis)?, basis))
}

pub fn ivi_to_json(v: &Ivi) -> Value {
    let mut out = orbit_to_json(&v.orbit);
    out["abelian_basis"] = Value::Array(v.basis().iter().map(matrix_to_json).collect());
    out
}

pub fn polymap_to_json(x: &PolyMap) -> Value {
    let higher: Vec<Value> = x
        .higher()
        .iter()
        .map(|(mono, m)| json!({"monomial": {"s": mono.s, "t": mono.t}, "matrix": matrix_to_json(m)}))
        .collect();
    json!({
        "z_part": x.z_part().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "t_linear": x.t_linear().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "higher": higher,
    })
}

pub fn polymap_from_json(v: &Value) -> Result<PolyMap> {
    let z = field(v, "z_part")?.as_array().ok_or_else(|| bad("z_part must be a list"))?;
    let t = field(v, "t_linear")?.as_array().ok_or_else(|| bad("t_linear must be a list"))?;
    let first = z.first().or(t.first()).ok_or_else(|| bad("map has no linear part"))?;
    let n = matrix_from_json(first)?.rows();
    let z_part = matrices(field(v, "z_part")?, n, "z_part")?;
    let t_linear = matrices(field(v, "t_linear")?, n, "t_linear")?;
    let exps = |x: &Value, key: &str| -> Result<Vec<u32>> {
        x.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(format!("monomial needs {key:?}")))?
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("invalid exponent")))
            .collect()
    };
    let mut higher = Vec::new();
    for h in field(v, "higher")?.as_array().ok_or_else(|| bad("higher must be a list"))? {
        let mono = field(h, "monomial")?;
        higher.push((
            Monomial {
                s: exps(mono, "s")?,
                t: exps(mono, "t")?,
            },
            square_from_json(field(h, "matrix")?, n, "higher term")?,
        ));
    }
    PolyMap::new(n, z_part, t_linear, higher)
}
