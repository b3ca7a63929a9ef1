//! Structured experiment output: parameters, results and checks.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A value printed in the source text.
    Printed,
    /// A value derived independently (closed form or second route).
    Oracle,
    /// An identity that holds by construction.
    Identity,
}

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub got: Value,
    pub tolerance: Option<f64>,
    pub provenance: Provenance,
    pub pass: bool,
}

impl Check {
    /// Relative comparison `|got − expected| ≤ tol · max(1, |expected|)`.
    pub fn close(name: &str, got: f64, expected: f64, tol: f64, provenance: Provenance) -> Self {
        let pass = got.is_finite() && (got - expected).abs() <= tol * expected.abs().max(1.0);
        Self {
            name: name.into(),
            expected: num(expected),
            got: num(got),
            tolerance: Some(tol),
            provenance,
            pass,
        }
    }

    /// Absolute comparison `|got − expected| ≤ tol`.
    pub fn abs(name: &str, got: f64, expected: f64, tol: f64, provenance: Provenance) -> Self {
        let pass = got.is_finite() && (got - expected).abs() <= tol;
        Self {
            name: name.into(),
            expected: num(expected),
            got: num(got),
            tolerance: Some(tol),
            provenance,
            pass,
        }
    }

    /// `got ≤ bound`.
    pub fn at_most(name: &str, got: f64, bound: f64, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: Value::String(format!("<= {bound:e}")),
            got: num(got),
            tolerance: None,
            provenance,
            pass: got.is_finite() && got <= bound,
        }
    }

    /// A boolean condition with a description of what was expected.
    pub fn holds(name: &str, pass: bool, expected: &str, got: Value, provenance: Provenance) -> Self {
        Self {
            name: name.into(),
            expected: Value::String(expected.into()),
            got,
            tolerance: None,
            provenance,
            pass,
        }
    }
}

/// JSON number, or a string for non-finite values.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or_else(|| Value::String(x.to_string()))
}

/// Output of one CLI experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl ExperimentResult {
    pub fn new(name: &str) -> Self {
        Self { name: name.into(), params: BTreeMap::new(), results: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), v.into());
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("experiment results serialize")
    }

    /// One CSV row per check, preceded by one row per scalar result.
    pub fn write_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["experiment", "kind", "name", "value", "expected", "tolerance", "provenance", "pass"])?;
        for (k, v) in &self.params {
            out.write_record([self.name.as_str(), "param", k, &flat(v), "", "", "", ""])?;
        }
        for (k, v) in &self.results {
            out.write_record([self.name.as_str(), "result", k, &flat(v), "", "", "", ""])?;
        }
        for c in &self.checks {
            let tol = c.tolerance.map(|t| format!("{t:e}")).unwrap_or_default();
            let prov = serde_json::to_value(c.provenance).expect("provenance serializes");
            out.write_record([
                self.name.as_str(),
                "check",
                &c.name,
                &flat(&c.got),
                &flat(&c.expected),
                &tol,
                &flat(&prov),
                if c.pass { "true" } else { "false" },
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
