//! JSON wire formats: number-field descriptors, exact and float scalars,
//! matrices, groups, tetrahedron complexes and arithmetic pairs.
//!
//! Exact values never travel as floats: rationals are `"p/q"` strings (or
//! JSON integers) and field elements are coordinate arrays over the power
//! basis. Parse errors carry a JSON pointer to the offending node.

use num_complex::Complex64;
use serde_json::Value;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hermitian::{BoundaryPoint, HermitianForm};
use crate::matrix::Matrix;
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::scalar::Scalar;
use crate::tetrahedron::IdealTetrahedron;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

fn err(ptr: &str, msg: impl Into<String>) -> Error {
    Error::schema(ptr, msg.into())
}

pub fn get<'v>(v: &'v Value, key: &str, ptr: &str) -> Result<&'v Value> {
    v.get(key)
        .ok_or_else(|| err(&format!("{ptr}/{key}"), "missing field"))
}

pub fn opt<'v>(v: &'v Value, key: &str) -> Option<&'v Value> {
    v.get(key)
}

pub fn as_array<'v>(v: &'v Value, ptr: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| err(ptr, "expected an array"))
}

pub fn as_f64(v: &Value, ptr: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| err(ptr, "expected a number"))
}

pub fn as_usize(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| err(ptr, "expected a nonnegative integer"))
}

pub fn as_bool(v: &Value, ptr: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| err(ptr, "expected a boolean"))
}

/// A rational from a JSON string ("p/q") or integer.
pub fn parse_rational_value(v: &Value, ptr: &str) -> Result<Rational> {
    match v {
        Value::String(s) => {
            parse_rational(s).map_err(|_| err(ptr, format!("cannot parse rational {s:?}")))
        }
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Err(err(
                    ptr,
                    "exact values must be integers or \"p/q\" strings, not floats",
                ))
            }
        }
        _ => Err(err(ptr, "expected a rational")),
    }
}

pub fn mode_of(input: &Value, ptr: &str) -> Result<Mode> {
    match opt(input, "mode").and_then(|m| m.as_str()) {
        None | Some("exact") => Ok(Mode::Exact),
        Some("float") => Ok(Mode::Float),
        Some(other) => Err(err(
            &format!("{ptr}/mode"),
            format!("unknown mode {other:?}, expected \"exact\" or \"float\""),
        )),
    }
}

/// Number-field descriptor:
/// { "minpoly": [c0, c1, ..., 1], "root_hint": [re, im],
///   "conjugation": [coords...]? }.
pub fn parse_field(v: &Value, ptr: &str) -> Result<Arc<NumberField>> {
    let coeffs_v = get(v, "minpoly", ptr)?;
    let coeffs_arr = as_array(coeffs_v, &format!("{ptr}/minpoly"))?;
    let mut coeffs = vec![];
    for (i, c) in coeffs_arr.iter().enumerate() {
        coeffs.push(parse_rational_value(c, &format!("{ptr}/minpoly/{i}"))?);
    }
    let minpoly = Poly::new(coeffs);
    let hint_v = get(v, "root_hint", ptr)?;
    let hint_arr = as_array(hint_v, &format!("{ptr}/root_hint"))?;
    if hint_arr.len() != 2 {
        return Err(err(&format!("{ptr}/root_hint"), "expected [re, im]"));
    }
    let hint = Complex64::new(
        as_f64(&hint_arr[0], &format!("{ptr}/root_hint/0"))?,
        as_f64(&hint_arr[1], &format!("{ptr}/root_hint/1"))?,
    );
    let conj = match opt(v, "conjugation") {
        None => None,
        Some(cv) => {
            let arr = as_array(cv, &format!("{ptr}/conjugation"))?;
            let mut coords = vec![];
            for (i, c) in arr.iter().enumerate() {
                coords.push(parse_rational_value(c, &format!("{ptr}/conjugation/{i}"))?);
            }
            Some(coords)
        }
    };
    NumberField::new(minpoly, hint, conj)
}

pub fn field_to_json(f: &Arc<NumberField>) -> Value {
    let root = f.approx_root();
    serde_json::json!({
        "minpoly": f.minpoly().coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        "root_hint": [root.re, root.im],
        "conjugation": f.conjugation_coords().iter().map(format_rational).collect::<Vec<_>>(),
        "degree": f.degree(),
        "irreducibility_unverified": f.warn_unchecked,
    })
}

/// Exact scalar: coordinate array over the power basis.
pub fn parse_exact_scalar(
    v: &Value,
    field: &Arc<NumberField>,
    ptr: &str,
) -> Result<FieldElement> {
    match v {
        Value::Array(arr) => {
            let mut coords = vec![];
            for (i, c) in arr.iter().enumerate() {
                coords.push(parse_rational_value(c, &format!("{ptr}/{i}"))?);
            }
            if coords.len() != field.degree() {
                return Err(err(
                    ptr,
                    format!(
                        "coordinate array has length {}, field degree is {}",
                        coords.len(),
                        field.degree()
                    ),
                ));
            }
            field.element(coords)
        }
        Value::String(_) | Value::Number(_) => {
            let r = parse_rational_value(v, ptr)?;
            Ok(field.from_rational(r))
        }
        _ => Err(err(ptr, "expected a coordinate array or a rational")),
    }
}

pub fn parse_float_scalar(v: &Value, ptr: &str) -> Result<Complex64> {
    match v {
        Value::Array(arr) if arr.len() == 2 => Ok(Complex64::new(
            as_f64(&arr[0], &format!("{ptr}/0"))?,
            as_f64(&arr[1], &format!("{ptr}/1"))?,
        )),
        Value::Number(_) => Ok(Complex64::new(as_f64(v, ptr)?, 0.0)),
        _ => Err(err(ptr, "expected [re, im] or a number")),
    }
}

pub fn exact_scalar_to_json(x: &FieldElement) -> Value {
    Value::Array(
        x.coords()
            .iter()
            .map(|c| Value::String(format_rational(c)))
            .collect(),
    )
}

pub fn float_scalar_to_json(x: &Complex64) -> Value {
    serde_json::json!([x.re, x.im])
}

pub fn parse_exact_matrix(
    v: &Value,
    field: &Arc<NumberField>,
    ptr: &str,
) -> Result<Matrix<FieldElement>> {
    let rows_v = match v {
        Value::Object(_) => get(v, "entries", ptr)?,
        _ => v,
    };
    let rows = as_array(rows_v, ptr)?;
    let n = rows.len();
    let mut out = vec![];
    for (i, row_v) in rows.iter().enumerate() {
        let row = as_array(row_v, &format!("{ptr}/{i}"))?;
        if row.len() != n {
            return Err(err(&format!("{ptr}/{i}"), "matrix must be square"));
        }
        let mut r = vec![];
        for (j, cell) in row.iter().enumerate() {
            r.push(parse_exact_scalar(cell, field, &format!("{ptr}/{i}/{j}"))?);
        }
        out.push(r);
    }
    if out.is_empty() {
        return Err(err(ptr, "matrix must be nonempty"));
    }
    Ok(Matrix::from_rows(out))
}

pub fn parse_float_matrix(v: &Value, ptr: &str) -> Result<Matrix<Complex64>> {
    let rows_v = match v {
        Value::Object(_) => get(v, "entries", ptr)?,
        _ => v,
    };
    let rows = as_array(rows_v, ptr)?;
    let n = rows.len();
    let mut out = vec![];
    for (i, row_v) in rows.iter().enumerate() {
        let row = as_array(row_v, &format!("{ptr}/{i}"))?;
        if row.len() != n {
            return Err(err(&format!("{ptr}/{i}"), "matrix must be square"));
        }
        let mut r = vec![];
        for (j, cell) in row.iter().enumerate() {
            r.push(parse_float_scalar(cell, &format!("{ptr}/{i}/{j}"))?);
        }
        out.push(r);
    }
    if out.is_empty() {
        return Err(err(ptr, "matrix must be nonempty"));
    }
    Ok(Matrix::from_rows(out))
}

pub fn exact_matrix_to_json(m: &Matrix<FieldElement>) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(exact_scalar_to_json).collect()))
            .collect(),
    )
}

pub fn float_matrix_to_json(m: &Matrix<Complex64>) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(float_scalar_to_json).collect()))
            .collect(),
    )
}

/// Form selector: "J" (default), "ball", or an explicit matrix.
pub fn parse_form<T: Scalar>(
    v: Option<&Value>,
    sample: &T,
    parse_scalar: impl Fn(&Value, &str) -> Result<T>,
    ptr: &str,
    tol: f64,
) -> Result<HermitianForm<T>> {
    match v {
        None => Ok(HermitianForm::siegel(sample)),
        Some(Value::String(s)) if s == "J" => Ok(HermitianForm::siegel(sample)),
        Some(Value::String(s)) if s == "ball" => Ok(HermitianForm::ball(sample)),
        Some(Value::String(s)) => Err(err(ptr, format!("unknown form {s:?}"))),
        Some(m) => {
            let rows_v = match m {
                Value::Object(_) => get(m, "entries", ptr)?,
                _ => m,
            };
            let rows = as_array(rows_v, ptr)?;
            let n = rows.len();
            let mut out = vec![];
            for (i, row_v) in rows.iter().enumerate() {
                let row = as_array(row_v, &format!("{ptr}/{i}"))?;
                if row.len() != n {
                    return Err(err(&format!("{ptr}/{i}"), "form must be square"));
                }
                let mut r = vec![];
                for (j, cell) in row.iter().enumerate() {
                    r.push(parse_scalar(cell, &format!("{ptr}/{i}/{j}"))?);
                }
                out.push(r);
            }
            HermitianForm::new(Matrix::from_rows(out), tol)
        }
    }
}

/// A boundary point: "infinity", {"lift": [s,s,s]}, or {"z": s, "it": s}
/// (exact) / {"z": [re,im], "t": t} (float).
pub fn parse_exact_boundary_point(
    v: &Value,
    field: &Arc<NumberField>,
    ptr: &str,
) -> Result<BoundaryPoint<FieldElement>> {
    if let Value::String(s) = v {
        if s == "infinity" || s == "inf" {
            return Ok(BoundaryPoint::Infinity);
        }
        return Err(err(ptr, format!("unknown boundary point {s:?}")));
    }
    if let Some(lift_v) = opt(v, "lift") {
        let arr = as_array(lift_v, &format!("{ptr}/lift"))?;
        if arr.len() != 3 {
            return Err(err(&format!("{ptr}/lift"), "lift must have 3 entries"));
        }
        let mut entries = vec![];
        for (i, cell) in arr.iter().enumerate() {
            entries.push(parse_exact_scalar(cell, field, &format!("{ptr}/lift/{i}"))?);
        }
        return BoundaryPoint::from_lift(&crate::matrix::Vector::new(entries), 0.0)
            .map_err(|_| err(&format!("{ptr}/lift"), "lift is not a null vector"));
    }
    let z = parse_exact_scalar(get(v, "z", ptr)?, field, &format!("{ptr}/z"))?;
    let it = parse_exact_scalar(get(v, "it", ptr)?, field, &format!("{ptr}/it"))?;
    BoundaryPoint::finite(z, it, 0.0)
        .map_err(|_| err(&format!("{ptr}/it"), "it must be purely imaginary"))
}

pub fn parse_float_boundary_point(v: &Value, ptr: &str) -> Result<BoundaryPoint<Complex64>> {
    if let Value::String(s) = v {
        if s == "infinity" || s == "inf" {
            return Ok(BoundaryPoint::Infinity);
        }
        return Err(err(ptr, format!("unknown boundary point {s:?}")));
    }
    if let Some(lift_v) = opt(v, "lift") {
        let arr = as_array(lift_v, &format!("{ptr}/lift"))?;
        if arr.len() != 3 {
            return Err(err(&format!("{ptr}/lift"), "lift must have 3 entries"));
        }
        let mut entries = vec![];
        for (i, cell) in arr.iter().enumerate() {
            entries.push(parse_float_scalar(cell, &format!("{ptr}/lift/{i}"))?);
        }
        return BoundaryPoint::from_lift(&crate::matrix::Vector::new(entries), 1e-9)
            .map_err(|_| err(&format!("{ptr}/lift"), "lift is not a null vector"));
    }
    let z = parse_float_scalar(get(v, "z", ptr)?, &format!("{ptr}/z"))?;
    let t = as_f64(get(v, "t", ptr)?, &format!("{ptr}/t"))?;
    BoundaryPoint::finite(z, Complex64::new(0.0, t), 1e-9)
        .map_err(|_| err(&format!("{ptr}/t"), "invalid boundary point"))
}

pub fn exact_boundary_point_to_json(p: &BoundaryPoint<FieldElement>) -> Value {
    match p {
        BoundaryPoint::Infinity => Value::String("infinity".into()),
        BoundaryPoint::Finite { z, it } => serde_json::json!({
            "z": exact_scalar_to_json(z),
            "it": exact_scalar_to_json(it),
        }),
    }
}

pub fn float_boundary_point_to_json(p: &BoundaryPoint<Complex64>) -> Value {
    match p {
        BoundaryPoint::Infinity => Value::String("infinity".into()),
        BoundaryPoint::Finite { z, it } => serde_json::json!({
            "z": [z.re, z.im],
            "t": it.im,
        }),
    }
}

pub fn parse_exact_tetrahedra(
    v: &Value,
    field: &Arc<NumberField>,
    ptr: &str,
) -> Result<Vec<IdealTetrahedron<FieldElement>>> {
    let arr = as_array(get(v, "tetrahedra", ptr)?, &format!("{ptr}/tetrahedra"))?;
    let mut out = vec![];
    for (k, tv) in arr.iter().enumerate() {
        let tptr = format!("{ptr}/tetrahedra/{k}");
        let verts = as_array(get(tv, "vertices", &tptr)?, &format!("{tptr}/vertices"))?;
        if verts.len() != 4 {
            return Err(err(&format!("{tptr}/vertices"), "expected 4 vertices"));
        }
        let mut vs = vec![];
        for (i, vv) in verts.iter().enumerate() {
            vs.push(parse_exact_boundary_point(
                vv,
                field,
                &format!("{tptr}/vertices/{i}"),
            )?);
        }
        out.push(
            IdealTetrahedron::new([vs[0].clone(), vs[1].clone(), vs[2].clone(), vs[3].clone()], 0.0)
                .map_err(|e| err(&tptr, format!("{e}")))?,
        );
    }
    Ok(out)
}

pub fn parse_float_tetrahedra(v: &Value, ptr: &str) -> Result<Vec<IdealTetrahedron<Complex64>>> {
    let arr = as_array(get(v, "tetrahedra", ptr)?, &format!("{ptr}/tetrahedra"))?;
    let mut out = vec![];
    for (k, tv) in arr.iter().enumerate() {
        let tptr = format!("{ptr}/tetrahedra/{k}");
        let verts = as_array(get(tv, "vertices", &tptr)?, &format!("{tptr}/vertices"))?;
        if verts.len() != 4 {
            return Err(err(&format!("{tptr}/vertices"), "expected 4 vertices"));
        }
        let mut vs = vec![];
        for (i, vv) in verts.iter().enumerate() {
            vs.push(parse_float_boundary_point(vv, &format!("{tptr}/vertices/{i}"))?);
        }
        out.push(
            IdealTetrahedron::new(
                [vs[0].clone(), vs[1].clone(), vs[2].clone(), vs[3].clone()],
                1e-9,
            )
            .map_err(|e| err(&tptr, format!("{e}")))?,
        );
    }
    Ok(out)
}

pub fn word_to_json(w: &crate::words::Word) -> Value {
    serde_json::json!({
        "letters": w.letters().iter().map(|&(g, e)| serde_json::json!([g, e])).collect::<Vec<_>>(),
        "display": w.to_string(),
    })
}
