//! JSON input and output for instances, flags, polyhedra, and verdicts.
//!
//! Exact values never go through floating point: anything possibly
//! non-integral is serialized as a canonical rational string (`"p/q"` or
//! `"p"`), and prime-field residues as plain integers. Object keys are
//! emitted in sorted order (serde_json's default map), so equal data
//! produces byte-identical output.

use serde_json::{json, Value};

use num::rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{format_rational, Field, PrimeField, Rationals};
use crate::flags::Flag;
use crate::matrix::MatrixExact;
use crate::polyhedra::CornerPolyhedron;
use crate::profiles::{ControlMatrix, Orientation, PivotalEntry, Profile};
use crate::stability::{
    MarkedMap, Mode, ProjectiveMatrix, Sheaf, StabilityVerdict, Status, Witness,
};
use crate::subspace::Subspace;

/// An instance over one specific field, ready to check.
#[derive(Clone, Debug)]
pub struct InstanceOver<F: Field> {
    pub mm: MarkedMap<F>,
    pub sheaf: Sheaf,
    pub mode: Mode,
}

/// A parsed instance over either supported base field.
#[derive(Clone, Debug)]
pub enum Instance {
    Rational(InstanceOver<Rationals>),
    Prime(InstanceOver<PrimeField>),
}

fn get<'a>(root: &'a Value, key: &str) -> Result<&'a Value> {
    root.get(key)
        .ok_or_else(|| Error::input(format!("missing {key:?} in JSON input")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::input(format!("{what} must be a nonnegative integer")))
}

/// Parse a matrix from a JSON array of rows of field elements.
pub fn matrix_from_json<F: Field>(
    field: &F,
    v: &Value,
    rows: usize,
    cols: usize,
) -> Result<MatrixExact<F>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(Error::input(format!(
            "matrix must have {rows} rows, found {}",
            arr.len()
        )));
    }
    let parsed: Result<Vec<Vec<F::Elem>>> = arr
        .iter()
        .map(|row| vector_from_json(field, row, cols))
        .collect();
    MatrixExact::from_rows(field.clone(), cols, parsed?)
}

/// Parse a vector from a JSON array of field elements.
pub fn vector_from_json<F: Field>(field: &F, v: &Value, len: usize) -> Result<Vec<F::Elem>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("vector must be an array of field elements"))?;
    if arr.len() != len {
        return Err(Error::input(format!(
            "vector must have length {len}, found {}",
            arr.len()
        )));
    }
    arr.iter().map(|x| field.elem_from_json(x)).collect()
}

/// Parse a flag from its JSON form: a list of subspace basis matrices,
/// each an array of basis row vectors of length `ambient`.
pub fn flag_from_json<F: Field>(field: &F, ambient: usize, v: &Value) -> Result<Flag<F>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("flag must be an array of basis matrices"))?;
    let mut spaces = Vec::with_capacity(arr.len());
    for basis in arr {
        let rows = basis
            .as_array()
            .ok_or_else(|| Error::input("flag subspace must be an array of basis vectors"))?;
        let vecs: Result<Vec<Vec<F::Elem>>> = rows
            .iter()
            .map(|r| vector_from_json(field, r, ambient))
            .collect();
        let vecs = vecs?;
        let span = Subspace::span(field.clone(), ambient, &vecs)?;
        if span.dim() != vecs.len() {
            return Err(Error::input(
                "flag subspace basis vectors must be linearly independent",
            ));
        }
        spaces.push(span);
    }
    Flag::new(spaces)
}

fn mode_from_json(v: &Value) -> Result<Mode> {
    match v.as_str() {
        Some("exact") => Ok(Mode::Exact),
        Some("search") => Ok(Mode::Search),
        _ => Err(Error::input("mode must be \"exact\" or \"search\"")),
    }
}

fn sheaf_from_json(v: &Value) -> Result<Sheaf> {
    let q = get(v, "q")?
        .as_u64()
        .ok_or_else(|| Error::input("sheaf q must be a positive integer"))?;
    let m = get(v, "m")?
        .as_array()
        .ok_or_else(|| Error::input("sheaf m must be an array of positive integers"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .ok_or_else(|| Error::input("sheaf weights must be positive integers"))
        })
        .collect::<Result<Vec<u64>>>()?;
    Sheaf::new(q, m)
}

fn instance_with_field<F: Field>(field: F, root: &Value, n_dim: usize) -> Result<InstanceOver<F>> {
    let t = matrix_from_json(&field, get(root, "T")?, n_dim + 1, n_dim + 1)?;
    let pts_json = get(root, "points")?
        .as_array()
        .ok_or_else(|| Error::input("points must be an array of vectors"))?;
    let points: Result<Vec<Vec<F::Elem>>> = pts_json
        .iter()
        .map(|p| vector_from_json(&field, p, n_dim + 1))
        .collect();
    let mm = MarkedMap::new(ProjectiveMatrix::new(t)?, points?)?;
    let sheaf = sheaf_from_json(get(root, "sheaf")?)?;
    if sheaf.m().len() != mm.n_points() {
        return Err(Error::input(
            "the sheaf needs exactly one weight per marked point",
        ));
    }
    let mode = match root.get("mode") {
        Some(m) => mode_from_json(m)?,
        None => Mode::Exact,
    };
    Ok(InstanceOver { mm, sheaf, mode })
}

/// Parse a complete instance:
/// `{"N":…, "field":{"kind":"Q"}|{"kind":"gfp","p":…}, "T":[[…]],
///   "points":[[…]], "sheaf":{"q":…,"m":[…]}, "mode":"exact"|"search"}`
/// (`mode` is optional and defaults to exact).
pub fn parse_instance(text: &str) -> Result<Instance> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("malformed JSON: {e}")))?;
    let n_dim = as_usize(get(&root, "N")?, "N")?;
    let field_obj = get(&root, "field")?;
    match get(field_obj, "kind")?.as_str() {
        Some("Q") => Ok(Instance::Rational(instance_with_field(
            Rationals, &root, n_dim,
        )?)),
        Some("gfp") => {
            let p = get(field_obj, "p")?
                .as_u64()
                .ok_or_else(|| Error::input("field p must be a positive integer"))?;
            let field = PrimeField::new(p)?;
            Ok(Instance::Prime(instance_with_field(field, &root, n_dim)?))
        }
        _ => Err(Error::input(
            "field kind must be \"Q\" or \"gfp\" (with \"p\")",
        )),
    }
}

/// JSON form of a vector of field elements.
pub fn vector_json<F: Field>(field: &F, v: &[F::Elem]) -> Value {
    Value::Array(v.iter().map(|x| field.elem_json(x)).collect())
}

/// JSON form of a matrix: array of rows.
pub fn matrix_json<F: Field>(m: &MatrixExact<F>) -> Value {
    let field = m.field();
    Value::Array(
        (0..m.rows())
            .map(|r| vector_json(field, &m.row(r)))
            .collect(),
    )
}

/// JSON form of a flag: the list of subspace basis matrices.
pub fn flag_json<F: Field>(flag: &Flag<F>) -> Value {
    Value::Array(flag.spaces().iter().map(|s| matrix_json(s.basis())).collect())
}

/// JSON form of an exact rational: its canonical string.
pub fn rational_json(x: &BigRational) -> Value {
    Value::String(format_rational(x))
}

/// JSON form of a profile: `{"word":"DRRD…","orientation":"lower"|"upper"}`.
pub fn profile_json(p: &Profile) -> Value {
    json!({
        "word": p.word_string(),
        "orientation": match p.orientation() {
            Orientation::Lower => "lower",
            Orientation::Upper => "upper",
        },
    })
}

/// JSON form of the pivotal entries: array of `[row, col]` pairs.
pub fn pivotal_entries_json(entries: &[PivotalEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!([e.row, e.col]))
            .collect(),
    )
}

/// JSON form of a control matrix: its weight-vector columns.
pub fn control_matrix_json(c: &ControlMatrix) -> Value {
    json!({
        "rows": c.n_rows(),
        "columns": c.columns(),
    })
}

/// JSON form of a corner polyhedron:
/// `{"N":…, "vertices":[[…]], "facets":[{"I":[…],"c":…,"kind":"F-1B"}]}`.
pub fn polyhedron_json(p: &CornerPolyhedron) -> Value {
    json!({
        "N": p.dim(),
        "vertices": p.vertices().iter()
            .map(|v| Value::Array(v.iter().map(rational_json).collect()))
            .collect::<Vec<_>>(),
        "facets": p.facets().iter().map(|f| json!({
            "I": f.index_set,
            "c": rational_json(&f.constant),
            "kind": f.kind.label(),
        })).collect::<Vec<_>>(),
    })
}

/// JSON form of a verdict, witness included. Search-mode "no violation"
/// verdicts carry an explicit note that they certify nothing, because no
/// decision procedure exists over infinite fields.
pub fn verdict_json<F: Field>(v: &StabilityVerdict<F>) -> Value {
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Flag(w)) => json!({
            "kind": "flag",
            "flag": flag_json(&w.flag),
            "flag_type": w.flag_type.label(),
            "omega": rational_json(&w.omega),
            "bound": rational_json(&w.bound),
        }),
        Some(Witness::Basis(c)) => json!({
            "kind": "basis",
            "basis": matrix_json(&c.basis),
            "value": rational_json(&c.value),
            "direction": c.direction.iter().map(rational_json).collect::<Vec<_>>(),
        }),
    };
    let mut out = json!({
        "status": v.status.label(),
        "mode": v.mode.label(),
        "witness": witness,
    });
    if v.status == Status::NoViolationInFamily {
        out["note"] = Value::String(
            "search exhausted its candidate family without a violation; this does not \
             certify stability"
                .into(),
        );
    }
    out
}

fn instance_json_with<F: Field>(inst: &InstanceOver<F>, field_tag: Value) -> Value {
    let field = inst.mm.field();
    json!({
        "N": inst.mm.n_dim(),
        "field": field_tag,
        "T": matrix_json(inst.mm.t().matrix()),
        "points": inst.mm.points().iter()
            .map(|p| vector_json(field, p))
            .collect::<Vec<_>>(),
        "sheaf": {"q": inst.sheaf.q(), "m": inst.sheaf.m()},
        "mode": inst.mode.label(),
    })
}

/// JSON form of an instance ([`parse_instance`] round-trips it).
pub fn instance_json(inst: &Instance) -> Value {
    match inst {
        Instance::Rational(i) => instance_json_with(i, json!({"kind": "Q"})),
        Instance::Prime(i) => {
            let p = i.mm.field().modulus();
            instance_json_with(i, json!({"kind": "gfp", "p": p}))
        }
    }
}

/// Render a JSON value deterministically (sorted keys, no trailing newline).
pub fn to_string_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON serialization cannot fail")
}
