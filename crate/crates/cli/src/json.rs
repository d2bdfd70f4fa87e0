//! Exact numbers as JSON: integers as numbers, other rationals as
//! `[num, den]`.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use toricdef_core::linalg::{IntVector, RatVector, Rational};
use toricdef_core::polyhedral::{Face, LatticePolytope};

pub fn rational(x: &Rational) -> Value {
    let n = x.numer().to_i64().expect("numerator fits in i64");
    if x.is_integer() {
        json!(n)
    } else {
        json!([n, x.denom().to_i64().expect("denominator fits in i64")])
    }
}

pub fn rat_vector(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational).collect())
}

pub fn rat_vectors(vs: &[RatVector]) -> Value {
    Value::Array(vs.iter().map(|v| rat_vector(v)).collect())
}

pub fn int_vectors(vs: &[IntVector]) -> Value {
    json!(vs)
}

pub fn vertices(p: &LatticePolytope) -> Value {
    rat_vectors(p.vertices())
}

pub fn face(f: &Face) -> Value {
    json!({ "dim": f.dim, "rays": f.indices })
}

pub fn negated(v: &[i64]) -> IntVector {
    v.iter().map(|x| -x).collect()
}

/// Pretty printing with sorted keys and arrays of scalars on one line.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs
            .iter()
            .all(|x| !x.is_object() && (!x.is_array() || is_scalar_array(x))),
        _ => true,
    }
}

fn is_scalar_array(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(xs) if xs.is_empty() => out.push_str("[]"),
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Array(xs) if is_scalar_array(v) || (is_flat(v) && xs.len() <= 8) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, indent, out);
            }
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, indent + 1, out);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
