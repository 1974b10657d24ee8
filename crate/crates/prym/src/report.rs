//! JSON encodings of field elements, polynomials and results.

use prym_core::counting::CountRecord;
use prym_core::poly::{BinaryForm, Matrix3, UniPoly};
use prym_core::prym::{SplitResult, TernaryQuadratic, ValidationReport};
use prym_core::zeta::WeilPolynomial;
use prym_core::{Field, GaloisField, Rationals};
use serde_json::{json, Map, Value};

/// Report schema identifier.
pub const SCHEMA: &str = "prym-report/1";

/// Fields whose elements have a JSON form: integers mod `p`, coordinate
/// lists over `F_{p^k}`, `"n/d"` strings over `Q`.
pub trait JsonField: Field {
    fn elem_json(&self, e: &Self::Elem) -> Value;
}

impl JsonField for GaloisField {
    fn elem_json(&self, e: &Self::Elem) -> Value {
        let c = self.coefficients(*e);
        if self.degree() == 1 { json!(c[0]) } else { json!(c) }
    }
}

impl JsonField for Rationals {
    fn elem_json(&self, e: &Self::Elem) -> Value {
        Value::String(self.render(e))
    }
}

pub fn field_json<F: Field>(field: &F) -> Value {
    match field.descriptor() {
        prym_core::FieldDescriptor::Rationals => json!({"kind": "Q"}),
        prym_core::FieldDescriptor::Finite(d) => json!({"kind": "finite", "p": d.p, "k": d.k, "modulus": d.modulus}),
    }
}

/// Constant term first.
pub fn uni_json<F: JsonField>(p: &UniPoly<F::Elem>, field: &F) -> Value {
    Value::Array(p.coeffs().iter().map(|c| field.elem_json(c)).collect())
}

/// Highest power of `x` first.
pub fn binary_json<F: JsonField>(p: &BinaryForm<F::Elem>, field: &F) -> Value {
    Value::Array(p.coeffs().iter().map(|c| field.elem_json(c)).collect())
}

pub fn matrix_json<F: JsonField>(m: &Matrix3<F::Elem>, field: &F) -> Value {
    Value::Array((0..3).map(|i| Value::Array((0..3).map(|j| field.elem_json(m.get(i, j))).collect())).collect())
}

pub fn quadrics_json<F: JsonField>(qs: &[TernaryQuadratic<F::Elem>; 3], field: &F) -> Value {
    Value::Array(qs.iter().map(|t| matrix_json(t.gram(), field)).collect())
}

fn monomial(v: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => v.into(),
        _ => format!("{v}^{e}"),
    }
}

/// Joins `(coefficient, monomial)` terms, dropping unit coefficients and
/// bracketing anything that is not a plain number.
fn join_terms(terms: Vec<(String, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (neg, c) = match c.strip_prefix('-') {
            Some(rest) if !rest.starts_with('[') => (true, rest.to_string()),
            _ => (false, c),
        };
        let coeff = if c.chars().all(|ch| ch.is_ascii_digit()) { c } else { format!("({c})") };
        let term = match (coeff.as_str(), mono.is_empty()) {
            (_, true) => coeff,
            ("1", false) => mono,
            (_, false) => format!("{coeff}*{mono}"),
        };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&term);
    }
    if out.is_empty() { "0".into() } else { out }
}

/// Highest degree first, zero terms dropped.
pub fn uni_text<F: Field>(p: &UniPoly<F::Elem>, field: &F, var: &str) -> String {
    let terms = p.coeffs().iter().enumerate().rev().filter(|(_, c)| !field.is_zero(c)).map(|(i, c)| (field.render(c), monomial(var, i))).collect();
    join_terms(terms)
}

pub fn binary_text<F: Field>(p: &BinaryForm<F::Elem>, field: &F) -> String {
    let n = p.degree();
    let terms = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !field.is_zero(c))
        .map(|(i, c)| {
            let mono = [monomial("x", n - i), monomial("z", i)].into_iter().filter(|m| !m.is_empty()).collect::<Vec<_>>().join("*");
            (field.render(c), mono)
        })
        .collect();
    join_terms(terms)
}

pub fn weil_json(l: &WeilPolynomial) -> Value {
    let coeffs: Vec<Value> = l.coeffs().iter().map(|&c| i64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::String(c.to_string()))).collect();
    json!({"genus": l.genus(), "q": l.q(), "coeffs": coeffs})
}

pub fn records_json(records: &[CountRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                json!({
                    "q": r.q,
                    "m": r.m,
                    "count": r.count,
                    "model": r.model.name(),
                    "elapsed_ms": r.elapsed.map(|d| d.as_secs_f64() * 1e3),
                })
            })
            .collect(),
    )
}

pub fn validation_json<F: JsonField>(r: &ValidationReport<F::Elem>, field: &F) -> Value {
    json!({
        "det_a": field.elem_json(&r.det_a),
        "invertible": r.invertible,
        "fg_squarefree": r.fg_squarefree,
        "s_squarefree": r.s_squarefree,
        "quartic_discriminant": r.quartic_discriminant.as_ref().map(|d| field.elem_json(d)),
        "discriminant_agrees": r.discriminant_agrees,
        "failed_checks": r.failed_checks().iter().map(|c| c.name()).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

pub fn split_json<F: JsonField>(s: &SplitResult<F::Elem>, field: &F) -> Value {
    json!({
        "A": matrix_json(&s.a_matrix, field),
        "det_A": field.elem_json(&s.det_a),
        "A_inv": matrix_json(&s.a_inverse, field),
        "a": uni_json(&s.a, field),
        "b": uni_json(&s.b, field),
        "c": uni_json(&s.c, field),
        "F": uni_json(&s.sextic, field),
        "F_degree": s.sextic.degree(),
        "X": format!("y^2 = {}", uni_text(&s.sextic, field, "x")),
        "s": binary_json(&s.genus_one.s, field),
        "D": format!("Y^2 = {}", binary_text(&s.genus_one.s, field)),
        "x_squarefree": s.x_squarefree,
        "validated": s.validated,
    })
}

/// Drops every `elapsed_ms` entry, for comparisons that must ignore timing.
pub fn strip_timings(v: &Value) -> Value {
    match v {
        Value::Object(map) => {
            let kept: Map<String, Value> = map.iter().filter(|(k, _)| k.as_str() != "elapsed_ms").map(|(k, v)| (k.clone(), strip_timings(v))).collect();
            Value::Object(kept)
        }
        Value::Array(items) => Value::Array(items.iter().map(strip_timings).collect()),
        other => other.clone(),
    }
}
