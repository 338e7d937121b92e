//! JSON W-data files: catalog references or explicit rational data.
//!
//! ```json
//! {"schema": 1, "space": "R3", "family": "new-surface", "params": {"a": "0", "b": "2"}}
//! {"schema": 1, "space": "R3",
//!  "g": {"num": [{"re": "0", "im": "0"}, {"re": "1", "im": "0"}], "den": [{"re": "1", "im": "0"}]},
//!  "h": {"num": ["1"], "den": ["0", "0", "1"]},
//!  "punctures": ["0", "inf"]}
//! ```
//!
//! Coefficients are listed from the constant term up. Each is an exact string
//! (`"p/q"`, `"3/2i"`, `"1-2i"`), an object `{"re", "im"}` of exact strings or
//! numbers, or a bare number. Numbers are converted exactly to dyadic
//! rationals and mark the data inexact; one polynomial may not mix both kinds.

use rug::Rational;
use serde_json::{json, Map, Value};

use crate::algebra::exact::parse_rational;
use crate::algebra::{ExactComplex, Polynomial, RationalMap, SpherePoint};
use crate::catalog::{instantiate, ParamValue, Params, Space, Surface};
use crate::error::{Error, Result};
use crate::r3::WData3;
use crate::r4::WData4;
use crate::ramification::PuncturedSphere;

pub const SCHEMA_VERSION: u64 = 1;

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), message: message.into() }
}

/// A parsed scalar and whether it came from a JSON number.
fn parse_scalar(v: &Value, path: &str) -> Result<(ExactComplex, bool)> {
    match v {
        Value::String(s) => s.parse::<ExactComplex>().map(|z| (z, false)).map_err(|e| schema(path, e.to_string())),
        Value::Number(n) => {
            let x = n.as_f64().ok_or_else(|| schema(path, "number out of range"))?;
            Ok((ExactComplex::from_f64(x, 0.0).map_err(|_| schema(path, "non-finite number"))?, true))
        }
        Value::Object(m) => {
            for k in m.keys() {
                if k != "re" && k != "im" {
                    return Err(schema(&format!("{path}.{k}"), "unexpected field"));
                }
            }
            let part = |key: &str| -> Result<(Rational, Option<bool>)> {
                let p = format!("{path}.{key}");
                match m.get(key) {
                    None => Ok((Rational::new(), None)),
                    Some(Value::String(s)) => Ok((parse_rational(s).map_err(|e| schema(&p, e.to_string()))?, Some(false))),
                    Some(Value::Number(n)) => {
                        let x = n.as_f64().ok_or_else(|| schema(&p, "number out of range"))?;
                        Ok((Rational::from_f64(x).ok_or_else(|| schema(&p, "non-finite number"))?, Some(true)))
                    }
                    Some(_) => Err(schema(&p, "expected a string or a number")),
                }
            };
            let (re, a) = part("re")?;
            let (im, b) = part("im")?;
            if a.is_some() && b.is_some() && a != b {
                return Err(schema(path, "exact strings and floats mixed in one coefficient"));
            }
            Ok((ExactComplex::new(re, im), a.or(b).unwrap_or(false)))
        }
        _ => Err(schema(path, "expected a coefficient")),
    }
}

fn parse_poly(v: &Value, path: &str) -> Result<(Polynomial, bool)> {
    let arr = v.as_array().ok_or_else(|| schema(path, "expected an array of coefficients"))?;
    let mut coeffs = Vec::new();
    let mut kind = None;
    for (i, c) in arr.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let (z, float) = parse_scalar(c, &p)?;
        if kind.is_some_and(|k| k != float) {
            return Err(schema(&p, "exact strings and floats mixed in one polynomial"));
        }
        kind = Some(float);
        coeffs.push(z);
    }
    Ok((Polynomial::new(coeffs), kind == Some(true)))
}

fn parse_map(root: &Map<String, Value>, key: &str) -> Result<(RationalMap, bool)> {
    let v = root.get(key).ok_or_else(|| schema(key, "missing field"))?;
    let m = v.as_object().ok_or_else(|| schema(key, "expected {\"num\": [...], \"den\": [...]}"))?;
    for k in m.keys() {
        if k != "num" && k != "den" {
            return Err(schema(&format!("{key}.{k}"), "unexpected field"));
        }
    }
    let (num, a) = parse_poly(m.get("num").ok_or_else(|| schema(&format!("{key}.num"), "missing field"))?, &format!("{key}.num"))?;
    let (den, b) = match m.get("den") {
        Some(d) => parse_poly(d, &format!("{key}.den"))?,
        None => (Polynomial::one(), false),
    };
    let f = RationalMap::new(num, den).map_err(|e| schema(&format!("{key}.den"), e.to_string()))?;
    Ok((f, a || b))
}

fn parse_punctures(root: &Map<String, Value>) -> Result<(PuncturedSphere, bool)> {
    let arr = root
        .get("punctures")
        .ok_or_else(|| schema("punctures", "missing field"))?
        .as_array()
        .ok_or_else(|| schema("punctures", "expected an array"))?;
    let mut pts = Vec::new();
    let mut inexact = false;
    for (i, p) in arr.iter().enumerate() {
        let path = format!("punctures[{i}]");
        if p.as_str() == Some("inf") {
            pts.push(SpherePoint::Infinity);
        } else {
            let (z, f) = parse_scalar(p, &path)?;
            inexact |= f;
            pts.push(SpherePoint::exact(z));
        }
    }
    let dom = PuncturedSphere::new(pts).map_err(|e| schema("punctures", e.to_string()))?;
    Ok((dom, inexact))
}

fn parse_params(v: Option<&Value>) -> Result<Params> {
    let mut out = Params::new();
    let Some(v) = v else { return Ok(out) };
    let m = v.as_object().ok_or_else(|| schema("params", "expected an object"))?;
    for (k, x) in m {
        let (value, inexact) = parse_scalar(x, &format!("params.{k}"))?;
        out.insert(k.clone(), ParamValue { value, inexact });
    }
    Ok(out)
}

fn space_of(root: &Map<String, Value>) -> Result<Space> {
    match root.get("space").and_then(Value::as_str) {
        Some("R3") => Ok(Space::R3),
        Some("R4") => Ok(Space::R4),
        Some(other) => Err(schema("space", format!("unknown space {other:?}, expected \"R3\" or \"R4\""))),
        None => Err(schema("space", "missing field")),
    }
}

fn sigma_sq(root: &Map<String, Value>) -> Result<Option<Rational>> {
    match root.get("sigma_sq") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => parse_rational(s).map(Some).map_err(|e| schema("sigma_sq", e.to_string())),
        Some(_) => Err(schema("sigma_sq", "expected an exact string \"p/q\"")),
    }
}

const KNOWN_FIELDS: [&str; 12] =
    ["schema", "space", "family", "params", "g", "g1", "g2", "h", "punctures", "sigma_sq", "sigma_scales", "inexact"];

/// Parses a W-data document.
pub fn from_json_str(text: &str) -> Result<Surface> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| schema(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> Result<Surface> {
    let root = value.as_object().ok_or_else(|| schema("$", "expected a JSON object"))?;
    match root.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(schema("schema", format!("unsupported schema version {v}"))),
        None => return Err(schema("schema", "missing or non-integer field")),
    }
    for k in root.keys() {
        if !KNOWN_FIELDS.contains(&k.as_str()) {
            return Err(schema(k, "unexpected field"));
        }
    }
    let space = space_of(root)?;
    if let Some(f) = root.get("family") {
        let name = f.as_str().ok_or_else(|| schema("family", "expected a string"))?;
        for k in ["g", "g1", "g2", "h", "punctures", "sigma_sq"] {
            if root.contains_key(k) {
                return Err(schema(k, "explicit data cannot be combined with \"family\""));
            }
        }
        let s = instantiate(name, &parse_params(root.get("params"))?)?;
        if s.space() != space {
            return Err(schema("space", format!("family {name} lives in {:?}", s.space())));
        }
        return Ok(s);
    }
    let (h, hf) = parse_map(root, "h")?;
    let (domain, pf) = parse_punctures(root)?;
    let flagged = match root.get("inexact") {
        None => false,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(schema("inexact", "expected a boolean")),
    };
    let q = sigma_sq(root)?;
    match space {
        Space::R3 => {
            for k in ["g1", "g2", "sigma_scales"] {
                if root.contains_key(k) {
                    return Err(schema(k, "not an R3 field"));
                }
            }
            let (g, gf) = parse_map(root, "g")?;
            let w = match q {
                Some(q) => WData3::with_sigma_sq(g, q, h, domain),
                None => WData3::new(g, h, domain),
            }
            .map_err(|e| schema("h", e.to_string()))?;
            Ok(Surface::R3(w.with_inexact(flagged || hf || pf || gf)))
        }
        Space::R4 => {
            if root.contains_key("g") {
                return Err(schema("g", "R4 data uses g1 and g2"));
            }
            let (g1, f1) = parse_map(root, "g1")?;
            let (g2, f2) = parse_map(root, "g2")?;
            let scales = match root.get("sigma_scales") {
                None => [true, true],
                Some(v) => {
                    let arr = v.as_array().ok_or_else(|| schema("sigma_scales", "expected a subset of [\"g1\", \"g2\"]"))?;
                    let mut s = [false, false];
                    for (i, x) in arr.iter().enumerate() {
                        match x.as_str() {
                            Some("g1") => s[0] = true,
                            Some("g2") => s[1] = true,
                            _ => return Err(schema(&format!("sigma_scales[{i}]"), "expected \"g1\" or \"g2\"")),
                        }
                    }
                    s
                }
            };
            let w = match q {
                Some(q) => WData4::with_sigma_sq(g1, g2, scales, q, h, domain),
                None => WData4::new(g1, g2, h, domain),
            }
            .map_err(|e| schema("g1", e.to_string()))?;
            Ok(Surface::R4(w.with_inexact(flagged || hf || pf || f1 || f2)))
        }
    }
}

pub fn exact_json(z: &ExactComplex) -> Value {
    json!({"re": z.re().to_string(), "im": z.im().to_string()})
}

fn poly_json(p: &Polynomial) -> Value {
    Value::Array(p.coeffs().iter().map(exact_json).collect())
}

pub fn map_json(f: &RationalMap) -> Value {
    json!({"num": poly_json(f.num()), "den": poly_json(f.den())})
}

pub fn point_json(p: &SpherePoint) -> Value {
    match p {
        SpherePoint::Infinity => Value::String("inf".into()),
        SpherePoint::Finite(v) => match v.as_exact() {
            Some(z) => exact_json(z),
            None => {
                let c = v.to_c64();
                json!({"re": c.re, "im": c.im, "exact": false})
            }
        },
    }
}

/// Explicit W-data document; parsing it yields an identical value.
pub fn to_value(s: &Surface) -> Value {
    let mut root = Map::new();
    root.insert("schema".into(), json!(SCHEMA_VERSION));
    let (domain, inexact) = match s {
        Surface::R3(w) => {
            root.insert("space".into(), json!("R3"));
            root.insert("g".into(), map_json(w.g()));
            root.insert("h".into(), map_json(w.h()));
            if let Some(q) = w.sigma_sq() {
                root.insert("sigma_sq".into(), json!(q.to_string()));
            }
            (w.domain(), w.is_inexact())
        }
        Surface::R4(w) => {
            root.insert("space".into(), json!("R4"));
            root.insert("g1".into(), map_json(w.g1()));
            root.insert("g2".into(), map_json(w.g2()));
            root.insert("h".into(), map_json(w.h()));
            if let Some(sym) = w.symbol() {
                root.insert("sigma_sq".into(), json!(sym.square().to_string()));
                let [a, b] = w.gauss();
                let names: Vec<&str> = [(a.scaled, "g1"), (b.scaled, "g2")].iter().filter(|x| x.0).map(|x| x.1).collect();
                root.insert("sigma_scales".into(), json!(names));
            }
            (w.domain(), w.is_inexact())
        }
    };
    root.insert("punctures".into(), Value::Array(domain.punctures().iter().map(point_json).collect()));
    if inexact {
        root.insert("inexact".into(), json!(true));
    }
    Value::Object(root)
}

pub fn to_json_string(s: &Surface) -> String {
    serde_json::to_string_pretty(&to_value(s)).expect("JSON values serialize") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate_default, list_families};

    #[test]
    fn catalog_round_trip() {
        for f in list_families() {
            let s = instantiate_default(f.name).unwrap();
            let text = to_json_string(&s);
            assert_eq!(from_json_str(&text).unwrap(), s, "{}", f.name);
        }
    }

    #[test]
    fn family_reference() {
        let s = from_json_str(r#"{"schema": 1, "space": "R3", "family": "new-surface", "params": {"a": "0", "b": 2}}"#).unwrap();
        let Surface::R3(w) = s else { panic!() };
        assert!(w.is_inexact());
        assert_eq!(w.sigma_sq().unwrap(), &Rational::from((-3, 5)));
    }

    #[test]
    fn schema_errors_name_the_field() {
        let e = from_json_str(r#"{"schema": 1, "space": "R3", "g": {"num": ["1", 2.0]}, "h": {"num": ["1"]}, "punctures": ["inf"]}"#);
        assert!(matches!(e, Err(Error::Schema { path, .. }) if path == "g.num[1]"));
        let e = from_json_str("{\"schema\": 1,\n \"space\": }");
        assert!(matches!(e, Err(Error::Schema { path, .. }) if path.starts_with("line 2")));
        let e = from_json_str(r#"{"schema": 2, "space": "R3"}"#);
        assert!(matches!(e, Err(Error::Schema { path, .. }) if path == "schema"));
        let e = from_json_str(r#"{"schema": 1, "space": "R5"}"#);
        assert!(matches!(e, Err(Error::Schema { path, .. }) if path == "space"));
    }
}
