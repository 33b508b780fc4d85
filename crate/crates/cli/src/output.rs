//! Result envelope and number formatting.

use serde::Serialize;
use serde_json::{json, Map, Value};

pub const JSON_DIGITS: usize = 12;
pub const HUMAN_DIGITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub human_summary: Vec<String>,
    /// Empty for `Status::Ok`.
    pub message: String,
}

impl CommandResult {
    /// Ok result whose human summary is the flattened payload.
    pub fn ok(payload: Value) -> Self {
        let human_summary = flatten(&payload);
        CommandResult {
            status: Status::Ok,
            payload,
            human_summary,
            message: String::new(),
        }
    }

    pub fn with_summary(mut self, lines: Vec<String>) -> Self {
        self.human_summary = lines;
        self
    }

    pub fn fail(mut self, message: impl Into<String>) -> Self {
        self.status = Status::Error;
        self.message = message.into();
        self
    }

    pub fn to_json(&self, command: &str) -> String {
        let mut v = json!({ "status": self.status, "command": command, "payload": self.payload });
        if self.status == Status::Error {
            v["message"] = Value::String(self.message.clone());
        }
        serde_json::to_string_pretty(&v).expect("JSON values serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = self.human_summary.join("\n");
        if self.status == Status::Error {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("error: {}", self.message));
        }
        out
    }
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    format!("{:.*e}", digits - 1, x).parse::<f64>().expect("formatted float parses") + 0.0
}

/// JSON number at 12 significant digits; non-finite values become `"inf"`, `"-inf"` or `"nan"`.
pub fn num(x: f64) -> Value {
    if x.is_nan() {
        Value::String("nan".into())
    } else if x.is_infinite() {
        Value::String(if x > 0.0 { "inf" } else { "-inf" }.into())
    } else {
        serde_json::Number::from_f64(round_sig(x, JSON_DIGITS))
            .map(Value::Number)
            .expect("finite")
    }
}

/// Serializes `t` and rounds every float in it.
///
/// Non-finite floats serialize as `null`; payloads that can hold them are built with [`num`].
pub fn payload<T: Serialize>(t: &T) -> Value {
    round_all(serde_json::to_value(t).expect("library types serialize"))
}

pub fn round_all(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64")),
        Value::Array(a) => Value::Array(a.into_iter().map(round_all).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_all(v))).collect()),
        other => other,
    }
}

/// `%g`-style rendering at `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let x = round_sig(x, digits);
    let exp = x.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{e}")
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig(n.as_f64().expect("f64"), HUMAN_DIGITS),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!(
            "{{{}}}",
            m.iter()
                .map(|(k, v)| format!("{k}: {}", inline(v)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        other => other.to_string(),
    }
}

fn collect(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                collect(&key(k), v, rows);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, v) in a.iter().enumerate() {
                collect(&key(&i.to_string()), v, rows);
            }
        }
        other => rows.push((prefix.to_string(), inline(other))),
    }
}

/// Two-column `key  value` table with dotted keys for nested objects.
pub fn flatten(v: &Value) -> Vec<String> {
    let mut rows = Vec::new();
    collect("", v, &mut rows);
    table(&rows)
}

pub fn table(rows: &[(String, String)]) -> Vec<String> {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect()
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(2.0 * 2f64.sqrt(), 6), "2.82843");
        assert_eq!(sig(5.0 / 6.0, 6), "0.833333");
        assert_eq!(sig(1e-12, 6), "1e-12");
        assert_eq!(sig(123456789.0, 6), "1.23457e8");
        assert_eq!(sig(-0.5, 6), "-0.5");
        assert_eq!(sig(100.0, 6), "100");
        assert_eq!(round_sig(1.0 / 3.0, 12), 0.333333333333);
        assert_eq!(num(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(num(-0.0).to_string(), "0.0");
    }

    #[test]
    fn flatten_nests() {
        let v = json!({"a": {"b": 1.0, "c": [1.0, 2.5]}, "d": [{"e": "x"}]});
        assert_eq!(flatten(&v), vec!["a.b    1", "a.c    [1, 2.5]", "d.0.e  x"]);
    }
}
