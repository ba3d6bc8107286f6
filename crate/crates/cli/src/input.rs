//! Parsing of command-line values into library types.

use real_gersten::gersten::{Bundle, DualizingData, SchemeSpec};
use real_gersten::spectrum::{Base, BasisToken, FieldDesc, StepFunction};
use real_gersten::witt::{QuadForm, TwistedForm};
use real_gersten::{Error, Result};
use serde_json::Value;

use crate::SchemeArgs;

pub fn base(src: &str) -> Result<Base> {
    match src.trim().to_ascii_lowercase().as_str() {
        "q" | "rational" | "rationals" => Ok(Base::Q),
        "r" | "ralg" | "realclosure" | "real_closure" => Ok(Base::RealClosure),
        other => Err(Error::Parse(format!("unknown base {other:?}; use q or realclosure"))),
    }
}

pub fn json(src: &str, what: &str) -> Result<Value> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn entry_string(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Parse(format!("form entries are strings or integers, got {other}"))),
    }
}

/// A form written as a bare array of entries over `field`, or as the object
/// `{"field", "entries", "basis"}` printed by the other subcommands.
pub fn form(src: &str, given: Option<FieldDesc>) -> Result<TwistedForm> {
    let v = json(src, "form")?;
    let (field, entries, basis) = match &v {
        Value::Array(a) => (given.unwrap_or(FieldDesc::Q), a.clone(), None),
        Value::Object(o) => {
            let f = match o.get("field") {
                Some(Value::String(s)) => FieldDesc::parse(s)?,
                Some(other) => return Err(Error::Parse(format!("form field must be a string, got {other}"))),
                None => given.clone().unwrap_or(FieldDesc::Q),
            };
            if let Some(g) = &given {
                if g != &f {
                    return Err(Error::FieldMismatch(format!("--field {g} but the form is over {f}")));
                }
            }
            let entries = match o.get("entries") {
                Some(Value::Array(a)) => a.clone(),
                _ => return Err(Error::Parse("form object needs an \"entries\" array".into())),
            };
            let basis = match o.get("basis") {
                None => None,
                Some(Value::String(s)) => Some(BasisToken::parse(s, f.base())?),
                Some(other) => return Err(Error::Parse(format!("basis must be a string, got {other}"))),
            };
            (f, entries, basis)
        }
        other => return Err(Error::Parse(format!("form must be an array or an object, got {other}"))),
    };
    let entries = entries.iter().map(entry_string).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&str> = entries.iter().map(String::as_str).collect();
    let q = QuadForm::parse(&field, &refs)?;
    Ok(TwistedForm::new(q, basis.unwrap_or_else(BasisToken::unit)))
}

pub fn int_vector(src: &str, what: &str) -> Result<Vec<i64>> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("{what} must be an array of integers: {e}")))
}

pub fn string_vector(src: &str, what: &str) -> Result<Vec<String>> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("{what} must be an array of strings: {e}")))
}

pub fn step(src: &str) -> Result<StepFunction> {
    serde_json::from_str(src).map_err(|e| Error::Parse(format!("step: {e}")))
}

pub fn scheme(a: &SchemeArgs) -> Result<(SchemeSpec, DualizingData)> {
    let b = base(&a.base)?;
    let x = SchemeSpec::parse(&a.scheme, b, a.ext.as_deref())?;
    let d = DualizingData { bundle: Bundle::parse(&a.bundle, b)?, shift: a.shift };
    Ok((x, d))
}
