//! JSON rendering of library values. Keys keep insertion order.

use serde_json::{json, Map, Value};
use torimult::exact::{format_rational, Int, LatticeVector, Rational, RationalVector};
use torimult::ideal::{monomial, NewtonPolyhedron};

pub fn int(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vector(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

pub fn vectors(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn rational(q: &Rational) -> Value {
    json!(format_rational(q))
}

pub fn rational_vector(v: &RationalVector) -> Value {
    Value::Array(v.coords().iter().map(rational).collect())
}

pub fn monomials(vs: &[LatticeVector]) -> Value {
    Value::Array(vs.iter().map(|v| json!(monomial(v))).collect())
}

/// `{"exponents": [...], "monomials": [...]}`.
pub fn generators(vs: &[LatticeVector]) -> Value {
    json!({ "exponents": vectors(vs), "monomials": monomials(vs) })
}

pub fn facets(np: &NewtonPolyhedron) -> Value {
    Value::Array(
        np.facets
            .iter()
            .map(|(n, b)| json!({ "normal": vector(n), "rhs": int(b) }))
            .collect(),
    )
}

/// A document with the fixed top-level order used by every command.
pub struct Document {
    map: Map<String, Value>,
}

impl Document {
    pub fn new(operation: &str, input: Value) -> Self {
        let mut map = Map::new();
        map.insert("operation".into(), json!(operation));
        map.insert("input".into(), input);
        Document { map }
    }

    pub fn set(mut self, key: &str, value: Value) -> Self {
        self.map.insert(key.into(), value);
        self
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.map).expect("json values always serialize")
    }
}
