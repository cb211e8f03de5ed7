//! Environment spec files.
//!
//! A spec is a JSON object in one of three shapes:
//!
//! ```text
//! {"n": 4, "omega": [0.6, "9/10", 0.6]}
//! {"n": 4, "q": 0.6, "p": 0.9, "positions": [2]}
//! {"n": 7, "q": "2/3", "p": 0.8, "k": 3, "layout": "equally_spaced"}
//! ```
//!
//! Probabilities may be JSON numbers or strings holding a decimal or an
//! exact fraction `"a/b"`.

use driftwalk::placement::equally_spaced;
use driftwalk::{DriftParams, DriftPlacement, Environment, Error};
use serde_json::{json, Map, Value};
use thiserror::Error;

/// A spec that failed to parse or validate, naming the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("field `{field}`: {message}")]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl SpecError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError {
            field: field.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum EnvironmentSpec {
    Explicit { n: usize, omega: Vec<f64> },
    Positions { n: usize, q: f64, p: f64, positions: Vec<usize> },
    EquallySpaced { n: usize, q: f64, p: f64, k: usize },
}

/// Parses `"0.6"`, `"2/3"` or `" 1 "`.
pub fn parse_probability(text: &str) -> Result<f64, String> {
    let text = text.trim();
    let value = match text.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in {text:?}"));
            }
            num / den
        }
        None => text.parse().map_err(|_| format!("not a number: {text:?}"))?,
    };
    if !value.is_finite() {
        return Err(format!("not finite: {text:?}"));
    }
    Ok(value)
}

fn probability(value: &Value, field: &str) -> Result<f64, SpecError> {
    match value {
        Value::Number(num) => num
            .as_f64()
            .ok_or_else(|| SpecError::new(field, "not representable as f64")),
        Value::String(s) => parse_probability(s).map_err(|m| SpecError::new(field, m)),
        _ => Err(SpecError::new(field, "expected a number or a string such as \"2/3\"")),
    }
}

fn count(value: &Value, field: &str) -> Result<usize, SpecError> {
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| SpecError::new(field, "expected a nonnegative integer"))
}

fn required<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Value, SpecError> {
    obj.get(field)
        .ok_or_else(|| SpecError::new(field, "missing"))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), SpecError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(key) => Err(SpecError::new(
            key.as_str(),
            format!("not allowed here (expected only {})", allowed.join(", ")),
        )),
        None => Ok(()),
    }
}

impl EnvironmentSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| SpecError::new("<document>", e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, SpecError> {
        let obj = value
            .as_object()
            .ok_or_else(|| SpecError::new("<document>", "expected a JSON object"))?;
        let n = count(required(obj, "n")?, "n")?;
        let spec = if obj.contains_key("omega") {
            only_keys(obj, &["n", "omega"])?;
            let omega = obj["omega"]
                .as_array()
                .ok_or_else(|| SpecError::new("omega", "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, v)| probability(v, &format!("omega[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            EnvironmentSpec::Explicit { n, omega }
        } else if obj.contains_key("positions") {
            only_keys(obj, &["n", "q", "p", "positions"])?;
            let positions = obj["positions"]
                .as_array()
                .ok_or_else(|| SpecError::new("positions", "expected an array"))?
                .iter()
                .enumerate()
                .map(|(i, v)| count(v, &format!("positions[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            EnvironmentSpec::Positions {
                n,
                q: probability(required(obj, "q")?, "q")?,
                p: probability(required(obj, "p")?, "p")?,
                positions,
            }
        } else if obj.contains_key("layout") || obj.contains_key("k") {
            only_keys(obj, &["n", "q", "p", "k", "layout"])?;
            match required(obj, "layout")?.as_str() {
                Some("equally_spaced") => {}
                _ => return Err(SpecError::new("layout", "expected \"equally_spaced\"")),
            }
            EnvironmentSpec::EquallySpaced {
                n,
                q: probability(required(obj, "q")?, "q")?,
                p: probability(required(obj, "p")?, "p")?,
                k: count(required(obj, "k")?, "k")?,
            }
        } else {
            return Err(SpecError::new(
                "<document>",
                "expected one of `omega`, `positions` or `layout`",
            ));
        };
        // Surface constraint violations at load time.
        spec.environment()?;
        Ok(spec)
    }

    /// Canonical JSON form; parsing it gives back an equal spec.
    pub fn to_value(&self) -> Value {
        match self {
            EnvironmentSpec::Explicit { n, omega } => json!({ "n": n, "omega": omega }),
            EnvironmentSpec::Positions { n, q, p, positions } => {
                json!({ "n": n, "q": q, "p": p, "positions": positions })
            }
            EnvironmentSpec::EquallySpaced { n, q, p, k } => {
                json!({ "n": n, "q": q, "p": p, "k": k, "layout": "equally_spaced" })
            }
        }
    }

    pub fn n(&self) -> usize {
        match self {
            EnvironmentSpec::Explicit { n, .. }
            | EnvironmentSpec::Positions { n, .. }
            | EnvironmentSpec::EquallySpaced { n, .. } => *n,
        }
    }

    /// The two-drift placement, for the parametric shapes.
    pub fn placement(&self) -> Result<Option<DriftPlacement>, SpecError> {
        let placement = match self {
            EnvironmentSpec::Explicit { .. } => return Ok(None),
            EnvironmentSpec::Positions { n, q, p, positions } => {
                let params = DriftParams::new(*q, *p).map_err(field_error)?;
                DriftPlacement::new(*n, positions.clone(), params).map_err(field_error)?
            }
            EnvironmentSpec::EquallySpaced { n, q, p, k } => {
                let params = DriftParams::new(*q, *p).map_err(field_error)?;
                equally_spaced(*n, *k, params).map_err(field_error)?
            }
        };
        Ok(Some(placement))
    }

    pub fn environment(&self) -> Result<Environment, SpecError> {
        match self {
            EnvironmentSpec::Explicit { n, omega } => {
                Environment::new(*n, omega.clone()).map_err(field_error)
            }
            _ => Ok(self.placement()?.expect("parametric spec").to_environment()),
        }
    }
}

fn field_error(err: Error) -> SpecError {
    let field = match &err {
        Error::EmptyInterval => "n".to_string(),
        Error::OmegaLength { .. } => "omega".to_string(),
        Error::InvalidProbability { site, .. } => format!("omega[{}]", site - 1),
        Error::DriftOrdering { q, .. } if !(*q > 0.5) => "q".to_string(),
        Error::DriftOrdering { .. } => "p".to_string(),
        Error::PositionOutOfRange { .. } | Error::DuplicatePosition { .. } => "positions".to_string(),
        Error::Domain { what, .. } => what.to_string(),
        _ => "<document>".to_string(),
    };
    SpecError::new(field, err.to_string())
}
