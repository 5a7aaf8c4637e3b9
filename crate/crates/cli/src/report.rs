use std::fmt::Display;

use serde_json::{json, Map, Value};

/// One pass/fail line of a command's output.
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

/// Everything a command produces. Text and JSON are two views of it.
pub struct Report {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub result: Value,
    /// Lines printed before the checks in text mode.
    pub lines: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &'static str, params: Map<String, Value>) -> Self {
        Report { command, params, result: Value::Null, lines: Vec::new(), checks: Vec::new() }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> =
            self.checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect();
        json!({
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "checks": checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        for c in &self.checks {
            let tag = if c.pass { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("{tag} {}\n", c.name));
            } else {
                out.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

/// An exact number as a JSON number of arbitrary size.
pub fn number<T: Display>(x: &T) -> Value {
    let s = x.to_string();
    s.parse::<serde_json::Number>().map(Value::Number).unwrap_or(Value::String(s))
}

pub fn numbers<T: Display>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(number).collect())
}

pub fn join<T: Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}
