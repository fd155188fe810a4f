//! Parsing of command-line JSON documents and shorthands.

use std::fs;
use std::path::Path;

use orlicz::funcspace::char_function;
use orlicz::{Ball, Function, OrliczError, RadialPowerFunction, SimpleFunction, YoungFunction};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// An input that could not be turned into a typed value.
#[derive(Debug, Serialize)]
pub struct InputError {
    pub error: String,
    /// The flag the document came from.
    pub argument: String,
    /// Path of the offending field inside the document, if known.
    pub field: Option<String>,
}

impl InputError {
    pub fn new(argument: &str, error: impl Into<String>, field: Option<String>) -> Self {
        InputError {
            error: error.into(),
            argument: argument.to_string(),
            field,
        }
    }
}

/// Reads `@path` arguments from disk; anything else is the document itself.
fn document(argument: &str, raw: &str) -> Result<String, InputError> {
    match raw.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| InputError::new(argument, format!("cannot read {path}: {e}"), None)),
        None => Ok(raw.to_string()),
    }
}

/// Our own validation errors name the field inside backticks.
fn field_from_message(msg: &str) -> Option<String> {
    let start = msg.find('`')? + 1;
    let len = msg[start..].find('`')?;
    Some(msg[start..start + len].trim_start_matches("$.").trim_start_matches('$').to_string())
}

fn join(outer: &str, inner: Option<String>) -> Option<String> {
    let outer = if outer == "." { "" } else { outer };
    match (outer.is_empty(), inner) {
        (true, inner) => inner,
        (false, None) => Some(outer.to_string()),
        (false, Some(i)) if i.starts_with('[') => Some(format!("{outer}{i}")),
        (false, Some(i)) => Some(format!("{outer}.{i}")),
    }
}

/// Deserializes JSON text, reporting the path of the first bad field.
pub fn from_json<T: DeserializeOwned>(argument: &str, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let msg = e.inner().to_string();
        let field = join(&path, field_from_message(&msg));
        InputError::new(argument, msg, field)
    })
}

/// A bad field found while walking a parsed document.
struct Located {
    field: String,
    error: String,
}

impl Located {
    fn at(field: &str, error: impl Into<String>) -> Self {
        Located {
            field: field.to_string(),
            error: error.into(),
        }
    }

    fn into_input(self, argument: &str) -> InputError {
        let field = if self.field.is_empty() { None } else { Some(self.field) };
        InputError::new(argument, self.error, field)
    }
}

fn child(path: &str, name: &str) -> String {
    match (path.is_empty(), name.starts_with('[')) {
        (true, _) => name.to_string(),
        (false, true) => format!("{path}{name}"),
        (false, false) => format!("{path}.{name}"),
    }
}

/// Serde's internally tagged enums buffer their content and lose field
/// positions, so tagged documents are split on `kind` here and each payload
/// is deserialized on its own.
fn untag<'a>(v: &'a Value, path: &str, kinds: &[&str]) -> Result<(&'a str, Value), Located> {
    let Value::Object(map) = v else {
        return Err(Located::at(path, format!("expected an object, got {v}")));
    };
    let kind_path = child(path, "kind");
    let kind = match map.get("kind") {
        Some(Value::String(k)) if kinds.contains(&k.as_str()) => k.as_str(),
        Some(Value::String(k)) => {
            return Err(Located::at(&kind_path, format!("unknown kind `{k}`, expected one of {}", kinds.join(", "))))
        }
        Some(other) => return Err(Located::at(&kind_path, format!("kind must be a string, got {other}"))),
        None => return Err(Located::at(&kind_path, "missing field `kind`")),
    };
    let mut rest = map.clone();
    rest.remove("kind");
    Ok((kind, Value::Object(rest)))
}

/// Deserializes a payload, reporting failures relative to `path`.
fn payload<T: DeserializeOwned>(v: Value, path: &str) -> Result<T, Located> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let msg = e.inner().to_string();
        let local = join(&inner, field_from_message(&msg)).unwrap_or_default();
        let field = if local.is_empty() {
            path.to_string()
        } else if path.is_empty() {
            local
        } else if local.starts_with('[') {
            format!("{path}{local}")
        } else {
            format!("{path}.{local}")
        };
        Located { field, error: msg }
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Exponent {
    p: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Empty {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Exponents {
    p: f64,
    q: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Breakpoints {
    points: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArgScaled {
    k: f64,
    inner: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ValScaled {
    c: f64,
    inner: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Terms {
    terms: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallDoc {
    center: Vec<f64>,
    radius: f64,
}

const YOUNG_KINDS: &[&str] = &[
    "power",
    "exp_minus_one",
    "power_log",
    "pwl",
    "arg_scale",
    "val_scale",
    "sum",
    "max",
];

fn young_value(v: &Value, path: &str) -> Result<YoungFunction, Located> {
    let (kind, rest) = untag(v, path, YOUNG_KINDS)?;
    let terms = |rest: Value| -> Result<Vec<YoungFunction>, Located> {
        let t: Terms = payload(rest, path)?;
        t.terms
            .iter()
            .enumerate()
            .map(|(i, term)| young_value(term, &child(path, &format!("terms[{i}]"))))
            .collect()
    };
    Ok(match kind {
        "power" => YoungFunction::power(payload::<Exponent>(rest, path)?.p),
        "exp_minus_one" => {
            payload::<Empty>(rest, path)?;
            YoungFunction::exp_minus_one()
        }
        "power_log" => {
            let e: Exponents = payload(rest, path)?;
            YoungFunction::power_log(e.p, e.q)
        }
        "pwl" => YoungFunction::Pwl {
            points: payload::<Breakpoints>(rest, path)?.points,
        },
        "arg_scale" => {
            let a: ArgScaled = payload(rest, path)?;
            young_value(&a.inner, &child(path, "inner"))?.arg_scale(a.k)
        }
        "val_scale" => {
            let a: ValScaled = payload(rest, path)?;
            young_value(&a.inner, &child(path, "inner"))?.val_scale(a.c)
        }
        "sum" => YoungFunction::Sum { terms: terms(rest)? },
        "max" => YoungFunction::Max { terms: terms(rest)? },
        _ => unreachable!("kind checked by untag"),
    })
}

fn parse_value(argument: &str, text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::new(argument, format!("invalid JSON: {e}"), None))
}

fn shorthand(argument: &str, raw: &str) -> Result<YoungFunction, InputError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let num = |i: usize, name: &str| -> Result<f64, InputError> {
        parts
            .get(i)
            .ok_or_else(|| InputError::new(argument, format!("`{raw}` is missing parameter {name}"), Some(name.into())))?
            .parse::<f64>()
            .map_err(|e| InputError::new(argument, format!("parameter {name} of `{raw}`: {e}"), Some(name.into())))
    };
    let arity = |n: usize| -> Result<(), InputError> {
        if parts.len() == n + 1 {
            Ok(())
        } else {
            Err(InputError::new(
                argument,
                format!("`{}` takes {n} parameter(s), got {}", parts[0], parts.len() - 1),
                None,
            ))
        }
    };
    match parts[0] {
        "power" => {
            arity(1)?;
            Ok(YoungFunction::power(num(1, "p")?))
        }
        "exp_minus_one" => {
            arity(0)?;
            Ok(YoungFunction::exp_minus_one())
        }
        "power_log" => {
            arity(2)?;
            Ok(YoungFunction::power_log(num(1, "p")?, num(2, "q")?))
        }
        other => Err(InputError::new(
            argument,
            format!("unknown shorthand `{other}`; expected power:P, exp_minus_one or power_log:P:Q, or a JSON document"),
            None,
        )),
    }
}

fn structure_error(argument: &str, e: OrliczError) -> InputError {
    let msg = e.to_string();
    let field = field_from_message(&msg);
    InputError::new(argument, msg, field)
}

/// A Young function from JSON, `@file`, or a shorthand such as `power:2`.
pub fn young(argument: &str, raw: &str) -> Result<YoungFunction, InputError> {
    let text = document(argument, raw)?;
    let phi = if text.trim_start().starts_with('{') {
        let v = parse_value(argument, &text)?;
        young_value(&v, "").map_err(|e| e.into_input(argument))?
    } else {
        shorthand(argument, text.trim())?
    };
    phi.check_structure().map_err(|e| structure_error(argument, e))?;
    Ok(phi)
}

/// A function document; a ball stands for its indicator.
pub fn function(argument: &str, raw: &str) -> Result<Function, InputError> {
    let text = document(argument, raw)?;
    let v = parse_value(argument, &text)?;
    let (kind, rest) = untag(&v, "", &["simple", "radial_power", "ball"]).map_err(|e| e.into_input(argument))?;
    let parsed = match kind {
        "simple" => payload::<SimpleFunction>(rest, "").map(Function::Simple),
        "radial_power" => payload::<RadialPowerFunction>(rest, "").map(Function::RadialPower),
        _ => payload::<BallDoc>(rest, "").and_then(|b| {
            Ball::new(b.center, b.radius)
                .map(|ball| Function::Simple(char_function(&ball)))
                .map_err(|e| {
                    let msg = e.to_string();
                    Located {
                        field: field_from_message(&msg).unwrap_or_else(|| "radius".into()),
                        error: msg,
                    }
                })
        }),
    };
    parsed.map_err(|e| e.into_input(argument))
}

pub fn simple(argument: &str, raw: &str) -> Result<SimpleFunction, InputError> {
    match function(argument, raw)? {
        Function::Simple(f) => Ok(f),
        Function::RadialPower(_) => Err(InputError::new(
            argument,
            "a simple function (or ball) is required here",
            Some("kind".into()),
        )),
    }
}

pub fn read_config<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError::new("--config", format!("cannot read {}: {e}", path.display()), None))?;
    from_json("--config", &text)
}
