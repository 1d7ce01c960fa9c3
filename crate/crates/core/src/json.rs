//! JSON encodings of the public value types.
//!
//! Complex numbers are `[re, im]` pairs and angles are radians in `[0, π)`.
//! Decoding reports failures with the path of the offending field.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::angles::{reduce_mod_pi, AngleModPi};
use crate::error::{Error, Result};
use crate::families::{ModelPoint, PonceletConfig, SeparationReport};
use crate::projections::{SpherePoint, TorusPoint};
use crate::shape::{BlowupCoord, ProjTripleC, ShapeClass};
use crate::triangle::{DirectionTriple, Slot, TriangleVariable};

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn angles(a: &[AngleModPi]) -> Value {
    Value::Array(a.iter().map(|x| json!(x.value())).collect())
}

pub fn triangle_to_json(t: &TriangleVariable) -> Value {
    json!({
        "basepoint": complex(t.basepoint),
        "sides": t.sides.0.map(complex).to_vec(),
        "directions": t.directions.coords().to_vec(),
        "arguments": t.arguments.0.map(|a| a.map(|x| x.value())).to_vec(),
    })
}

pub fn class_to_json(c: &ShapeClass) -> Value {
    json!({
        "sides": c.sides.coords().map(complex).to_vec(),
        "angles": angles(&c.angles),
    })
}

pub fn blowup_to_json(b: &BlowupCoord) -> Value {
    json!({
        "sides": b.sides.coords().map(complex).to_vec(),
        "xi": angles(&b.xi),
        "gauge": "largest-side-zero",
    })
}

pub fn sphere_to_json(s: &SpherePoint) -> Value {
    json!({ "x": s.x, "y": s.y, "z": s.z })
}

pub fn torus_to_json(t: &TorusPoint) -> Value {
    json!({ "p": t.p.value(), "q": t.q.value(), "r": t.r.value() })
}

pub fn config_to_json(c: &PonceletConfig) -> Value {
    json!({ "r": c.r, "R": c.big_r, "d": c.d })
}

pub fn model_point_to_json(p: &ModelPoint) -> Value {
    match p {
        ModelPoint::Dyck(c) => class_to_json(c),
        ModelPoint::Sphere(s) => sphere_to_json(s),
        ModelPoint::Torus(t) => torus_to_json(t),
    }
}

pub fn report_to_json(r: &SeparationReport) -> Value {
    json!({
        "model": r.model,
        "limit1": model_point_to_json(&r.limit1),
        "limit2": model_point_to_json(&r.limit2),
        "distance": r.distance,
        "verdict": r.verdict,
    })
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::field(path_or_root(path), "expected an object"))
}

fn path_or_root(path: &str) -> String {
    if path.is_empty() {
        "$".into()
    } else {
        path.into()
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.into()
    } else {
        format!("{path}.{key}")
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::field(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::field(path, "expected a finite number"));
    }
    Ok(x)
}

fn array<'a>(v: &'a Value, path: &str, len: usize) -> Result<&'a Vec<Value>> {
    match v.as_array() {
        Some(a) if a.len() == len => Ok(a),
        Some(a) => Err(Error::field(path, format!("expected {len} entries, found {}", a.len()))),
        None => Err(Error::field(path, format!("expected an array of {len}"))),
    }
}

fn complex_from(v: &Value, path: &str) -> Result<Complex64> {
    let a = array(v, path, 2)?;
    Ok(Complex64::new(
        number(&a[0], &format!("{path}[0]"))?,
        number(&a[1], &format!("{path}[1]"))?,
    ))
}

fn required<'a>(m: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::field(join(path, key), "missing field"))
}

fn optional<'a>(m: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    m.get(key).filter(|v| !v.is_null())
}

/// Decodes `{basepoint, sides, directions?, arguments?}`. Directions and
/// forced arguments are derived from nonzero sides when omitted, and
/// checked against them when present. A triple point needs `directions`.
pub fn triangle_from_json(v: &Value, tol: f64) -> Result<TriangleVariable> {
    triangle_at(v, "", tol)
}

fn triangle_at(v: &Value, path: &str, tol: f64) -> Result<TriangleVariable> {
    let m = object(v, path)?;
    let bp_path = join(path, "basepoint");
    let basepoint = complex_from(required(m, path, "basepoint")?, &bp_path)?;
    let sides_path = join(path, "sides");
    let raw = array(required(m, path, "sides")?, &sides_path, 3)?;
    let mut sides = [Complex64::new(0.0, 0.0); 3];
    for (i, z) in raw.iter().enumerate() {
        sides[i] = complex_from(z, &format!("{sides_path}[{i}]"))?;
    }
    let closure = crate::triangle::SideTriple::new(sides[0], sides[1], sides[2], tol)
        .map_err(|e| Error::field(&sides_path, e.to_string()))?;

    let dir_path = join(path, "directions");
    let directions = match optional(m, "directions") {
        Some(d) => {
            let a = array(d, &dir_path, 6)?;
            let mut coords = [0.0; 6];
            for (i, x) in a.iter().enumerate() {
                coords[i] = number(x, &format!("{dir_path}[{i}]"))?;
            }
            Some(
                DirectionTriple::new(coords, tol)
                    .map_err(|e| Error::field(&dir_path, e.to_string()))?,
            )
        }
        None => None,
    };

    let mut t = if closure.is_zero() {
        let d = directions.ok_or_else(|| {
            Error::field(&dir_path, "required when all side-vectors are zero")
        })?;
        TriangleVariable::triple_point(basepoint, d)
    } else {
        let t = TriangleVariable::from_sides(basepoint, closure.0[0], closure.0[1])?;
        if let Some(d) = directions {
            if !t.directions.approx_eq(&d, tol) {
                return Err(Error::field(&dir_path, "does not match the side-vectors"));
            }
        }
        t
    };

    let arg_path = join(path, "arguments");
    if let Some(a) = optional(m, "arguments") {
        let a = array(a, &arg_path, 3)?;
        for s in Slot::ALL {
            let p = format!("{arg_path}[{}]", s.index());
            let value = &a[s.index()];
            if value.is_null() {
                continue;
            }
            let xi = reduce_mod_pi(number(value, &p)?).map_err(|e| Error::field(&p, e.to_string()))?;
            match t.arguments.get(s) {
                Some(forced) if t.directions.argument(s).is_some() => {
                    if !forced.approx_eq(xi, tol) {
                        return Err(Error::field(&p, format!("inconsistent with direction (forced {forced})")));
                    }
                }
                _ => t = t.with_free_argument(s, xi)?,
            }
        }
    }
    Ok(t)
}

/// Decodes `{sides, angles}`, checking closure and angle consistency.
pub fn class_from_json(v: &Value, tol: f64) -> Result<ShapeClass> {
    let m = object(v, "")?;
    let raw = array(required(m, "", "sides")?, "sides", 3)?;
    let mut sides = [Complex64::new(0.0, 0.0); 3];
    for (i, z) in raw.iter().enumerate() {
        sides[i] = complex_from(z, &format!("sides[{i}]"))?;
    }
    let sides = ProjTripleC::new(sides, tol).map_err(|e| Error::field("sides", e.to_string()))?;
    let a = array(required(m, "", "angles")?, "angles", 3)?;
    let mut ang = [AngleModPi::ZERO; 3];
    for i in 0..3 {
        let p = format!("angles[{i}]");
        ang[i] = reduce_mod_pi(number(&a[i], &p)?).map_err(|e| Error::field(&p, e.to_string()))?;
    }
    ShapeClass::new(sides, ang, tol).map_err(|e| Error::field("angles", e.to_string()))
}
