//! Curve documents: `{"p": 7, "k": 1, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}`.
//!
//! Coefficient triples are ordered `(x^2, xz, z^2)`. Without `"p"` the curve
//! lives over `Q` and coefficients may be integers or `"num/den"` strings.
//! Over `F_{p^k}` with `k > 1` a coefficient may also be a list
//! `[c0, c1, ...]` of coordinates in the polynomial basis. An optional
//! `"epsilon"` fixes the deformation parameter for `bruin`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use prym_core::poly::BinaryForm;
use prym_core::prym::BiellipticQuartic;
use prym_core::{Field, GaloisField, Gf, Rationals};
use serde_json::Value;

const KEYS: [&str; 6] = ["p", "k", "f", "g", "h", "epsilon"];

/// A malformed document; the message names the offending key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn err<T>(msg: impl Into<String>) -> Result<T, InputError> {
    Err(InputError(msg.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Rational(BigRational),
    Coordinates(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveDoc {
    pub p: Option<u32>,
    pub k: u32,
    pub f: [Coeff; 3],
    pub g: [Coeff; 3],
    pub h: [Coeff; 3],
    pub epsilon: Option<Coeff>,
    /// The document as parsed, embedded verbatim in reports.
    pub raw: Value,
}

fn parse_coeff(key: &str, v: &Value) -> Result<Coeff, InputError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Coeff::Rational(BigRational::from_integer(i.into()))),
            None => err(format!("key `{key}`: {n} is not an integer; write rationals as \"num/den\"")),
        },
        Value::String(s) => {
            let r = BigRational::from_str(s.trim()).map_err(|_| InputError(format!("key `{key}`: cannot parse {s:?} as a rational")))?;
            Ok(Coeff::Rational(r))
        }
        Value::Array(items) => {
            let coords = items
                .iter()
                .map(|c| c.as_i64().ok_or_else(|| InputError(format!("key `{key}`: coordinates must be integers"))))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Coeff::Coordinates(coords))
        }
        other => err(format!("key `{key}`: unexpected value {other}")),
    }
}

fn parse_triple(obj: &serde_json::Map<String, Value>, key: &str) -> Result<[Coeff; 3], InputError> {
    let Some(v) = obj.get(key) else { return err(format!("missing key `{key}`")) };
    let Value::Array(items) = v else { return err(format!("key `{key}`: expected a list of three coefficients")) };
    if items.len() != 3 {
        return err(format!("key `{key}`: expected three coefficients (x^2, xz, z^2), got {}", items.len()));
    }
    Ok([parse_coeff(key, &items[0])?, parse_coeff(key, &items[1])?, parse_coeff(key, &items[2])?])
}

fn parse_small(obj: &serde_json::Map<String, Value>, key: &str) -> Result<Option<u32>, InputError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .map(Some)
            .ok_or_else(|| InputError(format!("key `{key}`: expected a positive integer"))),
    }
}

pub fn parse_curve_doc(text: &str) -> Result<CurveDoc, InputError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| InputError(format!("not a JSON document: {e}")))?;
    let Value::Object(obj) = &raw else { return err("expected a JSON object") };
    if let Some(key) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return err(format!("unknown key `{key}` (allowed: {})", KEYS.join(", ")));
    }
    let p = parse_small(obj, "p")?;
    let k = parse_small(obj, "k")?.unwrap_or(1);
    if p.is_none() && k != 1 {
        return err("key `k`: an extension degree needs `p`");
    }
    let epsilon = obj.get("epsilon").map(|v| parse_coeff("epsilon", v)).transpose()?;
    Ok(CurveDoc { p, k, f: parse_triple(obj, "f")?, g: parse_triple(obj, "g")?, h: parse_triple(obj, "h")?, epsilon, raw })
}

/// `r mod p`, or `None` when `p` divides the denominator.
pub fn reduce_rational(r: &BigRational, p: u32) -> Option<u32> {
    let pb = BigInt::from(p);
    let modp = |n: &BigInt| -> u64 { (((n % &pb) + &pb) % &pb).to_u64().expect("residue fits") };
    let num = modp(r.numer());
    let den = modp(r.denom());
    if den == 0 {
        return None;
    }
    let inv = pow_mod(den, p as u64 - 2, p as u64);
    Some((num * inv % p as u64) as u32)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn finite_elem(c: &Coeff, field: &GaloisField, key: &str) -> Result<Gf, InputError> {
    let p = field.p();
    match c {
        Coeff::Rational(r) => {
            let v = reduce_rational(r, p).ok_or_else(|| InputError(format!("key `{key}`: denominator of {r} vanishes mod {p}")))?;
            Ok(field.from_i64(v as i64))
        }
        Coeff::Coordinates(cs) => {
            if cs.len() > field.degree() as usize {
                return err(format!("key `{key}`: {} coordinates for a degree-{} extension", cs.len(), field.degree()));
            }
            let reduced: Vec<u32> = cs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
            Ok(field.from_coefficients(&reduced))
        }
    }
}

fn rational_elem(c: &Coeff, key: &str) -> Result<BigRational, InputError> {
    match c {
        Coeff::Rational(r) => Ok(r.clone()),
        Coeff::Coordinates(_) => err(format!("key `{key}`: coordinate lists need a finite field")),
    }
}

/// A curve over whichever field its document names.
#[derive(Clone, Debug)]
pub enum AnyCurve {
    Finite(BiellipticQuartic<GaloisField>),
    Rational(BiellipticQuartic<Rationals>),
}

impl CurveDoc {
    /// The prime to work over: the document's, or `p_flag` for rational
    /// documents (which are then reduced).
    pub fn effective_p(&self, p_flag: Option<u32>) -> Result<Option<u32>, InputError> {
        match (self.p, p_flag) {
            (Some(a), Some(b)) if a != b => err(format!("key `p`: document says {a} but --p says {b}")),
            (Some(a), _) => Ok(Some(a)),
            (None, b) => Ok(b),
        }
    }

    pub fn curve(&self, p_flag: Option<u32>) -> Result<AnyCurve, InputError> {
        match self.effective_p(p_flag)? {
            Some(p) => {
                let field = GaloisField::extension(p, self.k).map_err(|e| InputError(format!("key `p`: {e}")))?;
                Ok(AnyCurve::Finite(self.over_finite(&field)?))
            }
            None => {
                let q = Rationals;
                let form = |key: &str, t: &[Coeff; 3]| -> Result<BinaryForm<BigRational>, InputError> {
                    Ok(BinaryForm::new(t.iter().map(|c| rational_elem(c, key)).collect::<Result<_, _>>()?))
                };
                let c = BiellipticQuartic::new(q, form("f", &self.f)?, form("g", &self.g)?, form("h", &self.h)?)
                    .map_err(|e| InputError(e.to_string()))?;
                Ok(AnyCurve::Rational(c))
            }
        }
    }

    pub fn over_finite(&self, field: &GaloisField) -> Result<BiellipticQuartic<GaloisField>, InputError> {
        let form = |key: &str, t: &[Coeff; 3]| -> Result<BinaryForm<Gf>, InputError> {
            Ok(BinaryForm::new(t.iter().map(|c| finite_elem(c, field, key)).collect::<Result<_, _>>()?))
        };
        BiellipticQuartic::new(field.clone(), form("f", &self.f)?, form("g", &self.g)?, form("h", &self.h)?)
            .map_err(|e| InputError(e.to_string()))
    }

    pub fn epsilon_in(&self, field: &GaloisField) -> Result<Option<Gf>, InputError> {
        self.epsilon.as_ref().map(|c| finite_elem(c, field, "epsilon")).transpose()
    }
}

/// Reduction of a rational curve mod `p`; `None` if a denominator vanishes.
pub fn reduce_curve(c: &BiellipticQuartic<Rationals>, field: &GaloisField) -> Option<BiellipticQuartic<GaloisField>> {
    let p = field.p();
    let map = |form: &BinaryForm<BigRational>| -> Option<BinaryForm<Gf>> {
        let coeffs = form.coeffs().iter().map(|r| reduce_rational(r, p).map(|v| field.from_i64(v as i64))).collect::<Option<Vec<_>>>()?;
        Some(BinaryForm::new(coeffs))
    };
    Some(BiellipticQuartic { field: field.clone(), f: map(&c.f)?, g: map(&c.g)?, h: map(&c.h)? })
}

/// Document for a curve over a prime field or `Q`, the inverse of [`CurveDoc::curve`].
pub fn doc_for_prime_curve(p: u32, f: [i64; 3], g: [i64; 3], h: [i64; 3]) -> String {
    serde_json::json!({"p": p, "f": f, "g": g, "h": h}).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_reference_document() {
        let d = parse_curve_doc(r#"{"p": 7, "k": 1, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}"#).unwrap();
        assert_eq!(d.p, Some(7));
        let AnyCurve::Finite(c) = d.curve(None).unwrap() else { panic!() };
        let k = &c.field;
        assert_eq!(c.h.coeffs()[2], k.from_i64(6));
    }

    #[test]
    fn unknown_keys_are_named() {
        let e = parse_curve_doc(r#"{"p": 7, "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1], "hh": 1}"#).unwrap_err();
        assert!(e.0.contains("`hh`"), "{e}");
        let e = parse_curve_doc(r#"{"p": 7, "f": [0,1], "g": [1,1,1], "h": [1,0,-1]}"#).unwrap_err();
        assert!(e.0.contains("`f`"), "{e}");
        let e = parse_curve_doc(r#"{"f": [0,1,0], "g": [1,"x",1], "h": [1,0,-1]}"#).unwrap_err();
        assert!(e.0.contains("`g`"), "{e}");
        let e = parse_curve_doc(r#"{"p": "seven", "f": [0,1,0], "g": [1,1,1], "h": [1,0,-1]}"#).unwrap_err();
        assert!(e.0.contains("`p`"), "{e}");
    }

    #[test]
    fn rationals_and_reduction() {
        let d = parse_curve_doc(r#"{"f": ["1/2",1,0], "g": [1,1,1], "h": [1,0,"-3/4"]}"#).unwrap();
        let AnyCurve::Rational(c) = d.curve(None).unwrap() else { panic!() };
        assert_eq!(c.f.coeffs()[0], BigRational::new(1.into(), 2.into()));
        // 1/2 = 4 mod 7
        let AnyCurve::Finite(r) = d.curve(Some(7)).unwrap() else { panic!() };
        assert_eq!(r.f.coeffs()[0], r.field.from_i64(4));
        assert!(d.curve(Some(2)).is_err());
        assert_eq!(reduce_rational(&BigRational::new((-3).into(), 4.into()), 5), Some(3));
        assert_eq!(reduce_rational(&BigRational::new(1.into(), 5.into()), 5), None);
    }

    #[test]
    fn extension_coordinates() {
        let d = parse_curve_doc(r#"{"p": 5, "k": 2, "f": [[0,1],1,0], "g": [1,1,1], "h": [1,0,-1]}"#).unwrap();
        let AnyCurve::Finite(c) = d.curve(None).unwrap() else { panic!() };
        assert_eq!(c.field.coefficients(c.f.coeffs()[0]), vec![0, 1]);
        assert!(parse_curve_doc(r#"{"p": 5, "f": [[0,1],1,0], "g": [1,1,1], "h": [1,0,-1]}"#).unwrap().curve(None).is_err());
    }
}
