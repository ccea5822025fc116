use std::fmt::Write as _;

use indexmap::IndexMap;
use serde::Serialize;

/// A report value. Non-finite reals are carried as strings so the JSON
/// stays valid; finite reals serialize in shortest round-trip form.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Null,
    Bool(bool),
    Int(u64),
    Real(f64),
    Text(String),
    Map(IndexMap<String, Value>),
}

impl Value {
    pub fn real(x: f64) -> Value {
        if x.is_finite() {
            Value::Real(x)
        } else if x.is_nan() {
            Value::Text("nan".into())
        } else if x > 0.0 {
            Value::Text("inf".into())
        } else {
            Value::Text("-inf".into())
        }
    }
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::real(x)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}

impl From<u64> for Value {
    fn from(n: u64) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(o: Option<T>) -> Self {
        o.map_or(Value::Null, Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// A containment or property check failed.
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: IndexMap<String, Value>,
    pub outputs: IndexMap<String, Value>,
    pub citations: Vec<&'static str>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: IndexMap::new(),
            outputs: IndexMap::new(),
            citations: Vec::new(),
            status: Status::Ok,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    pub fn output(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), v.into());
        self
    }

    pub fn cite(&mut self, tags: &[&'static str]) -> &mut Self {
        self.citations.extend_from_slice(tags);
        self
    }

    /// Mark the report failed unless `ok`.
    pub fn require(&mut self, ok: bool) -> &mut Self {
        if !ok && self.status == Status::Ok {
            self.status = Status::Failed;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_table(&self) -> String {
        let mut rows = vec![("command".to_string(), self.command.clone())];
        flatten("input", &self.inputs, &mut rows);
        flatten("output", &self.outputs, &mut rows);
        rows.push(("citations".to_string(), self.citations.join(", ")));
        rows.push(("status".to_string(), status_name(self.status).to_string()));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Failed => "failed",
        Status::Error => "error",
    }
}

fn flatten(prefix: &str, map: &IndexMap<String, Value>, rows: &mut Vec<(String, String)>) {
    for (k, v) in map {
        let key = format!("{prefix}.{k}");
        match v {
            Value::Map(inner) => flatten(&key, inner, rows),
            other => rows.push((key, cell(other))),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Int(n) => n.to_string(),
        Value::Real(x) => significant(*x, 9),
        Value::Text(s) => s.clone(),
        Value::Map(m) => m.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(" "),
    }
}

/// `x` to `digits` significant digits, trailing zeros dropped, switching to
/// exponent form outside `[1e-5, 1e9)`.
pub fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..9).contains(&exp) {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        return format!("{}e{e}", trim_zeros(mantissa));
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(significant(1.718281828459045, 9), "1.71828183");
        assert_eq!(significant(0.0356493, 9), "0.0356493");
        assert_eq!(significant(-2.5, 9), "-2.5");
        assert_eq!(significant(1234567890123.0, 9), "1.23456789e12");
        assert_eq!(significant(1.5e-7, 9), "1.5e-7");
        assert_eq!(significant(100.0, 9), "100");
    }

    #[test]
    fn non_finite_reals_are_text() {
        assert_eq!(Value::real(f64::INFINITY), Value::Text("inf".into()));
        assert_eq!(Value::real(f64::NAN), Value::Text("nan".into()));
        assert_eq!(serde_json::to_string(&Value::real(0.1)).unwrap(), "0.1");
    }

    #[test]
    fn status_codes() {
        let mut r = Report::new("x");
        r.require(true);
        assert_eq!(r.status.exit_code(), 0);
        r.require(false);
        assert_eq!(r.status.exit_code(), 1);
    }
}
