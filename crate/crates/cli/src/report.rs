//! Reports and their JSON and text renderings.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use fsummand::Ideal;

/// Outcome class, mapped onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Inconclusive => 4,
        }
    }

    /// The worse of two statuses.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Violation, _) | (_, Status::Violation) => Status::Violation,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Ok,
        }
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub certificates: Value,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, inputs: Value) -> Report {
        Report {
            command: command.to_string(),
            inputs,
            result: Value::Null,
            certificates: json!({}),
            status: Status::Ok,
        }
    }

    pub fn to_json(&self, timings: Option<Value>) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "certificates": self.certificates,
            "timings": timings.unwrap_or(Value::Null),
        })
    }

    pub fn to_text(&self, timings: Option<Value>) -> String {
        let mut out = format!("command: {}\n", self.command);
        for (title, v) in [
            ("inputs", &self.inputs),
            ("result", &self.result),
            ("certificates", &self.certificates),
        ] {
            out.push_str(&format!("{title}:\n"));
            flatten(v, "", &mut out);
        }
        if let Some(t) = timings {
            out.push_str("timings:\n");
            flatten(&t, "", &mut out);
        }
        out
    }
}

/// Rationals always print as `num/den`.
pub fn rat(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn gens(ideal: &Ideal) -> Value {
    Value::Array(ideal.gens().iter().map(|g| Value::String(g.to_string())).collect())
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    let line = |out: &mut String, key: &str, val: String| {
        out.push_str(&format!("  {key}: {val}\n"));
    };
    match v {
        Value::Object(map) => flatten_map(map, prefix, out),
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let body: Vec<String> = items.iter().filter_map(scalar).collect();
            line(out, prefix, format!("[{}]", body.join(", ")));
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        other => line(out, if prefix.is_empty() { "value" } else { prefix }, scalar(other).unwrap()),
    }
}

fn flatten_map(map: &Map<String, Value>, prefix: &str, out: &mut String) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        flatten(v, &key, out);
    }
}
