//! Structured reports. `serde_json` maps keep keys sorted, so equal inputs
//! serialize to identical bytes.

use serde_json::{json, Value};
use wf_core::{tol, HermitianOperator, PVector, ProductState};

#[derive(Debug, Clone)]
pub struct Check {
    pub item: String,
    pub expected: Value,
    pub actual: Value,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn scalar(item: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        Self {
            item: item.into(),
            expected: json!(expected),
            actual: json!(actual),
            tolerance: Some(tolerance),
            pass: (expected - actual).abs() <= tolerance,
        }
    }

    pub fn vector(item: impl Into<String>, expected: &[f64], actual: &[f64], tolerance: f64) -> Self {
        let pass = expected.len() == actual.len()
            && expected.iter().zip(actual).all(|(e, a)| (e - a).abs() <= tolerance);
        Self {
            item: item.into(),
            expected: json!(expected),
            actual: json!(actual),
            tolerance: Some(tolerance),
            pass,
        }
    }

    pub fn exact(item: impl Into<String>, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        Self {
            item: item.into(),
            expected,
            actual,
            tolerance: None,
            pass,
        }
    }

    /// A check whose comparison was done by the caller.
    pub fn judged(item: impl Into<String>, expected: Value, actual: Value, tolerance: Option<f64>, pass: bool) -> Self {
        Self {
            item: item.into(),
            expected,
            actual,
            tolerance,
            pass,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "item": self.item,
            "expected": self.expected,
            "actual": self.actual,
            "tolerance": self.tolerance,
            "pass": self.pass,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub restarts: usize,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: String, seed: u64, restarts: usize) -> Self {
        Self {
            command,
            seed,
            restarts,
            result: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        json!({
            "command": self.command,
            "seed": self.seed,
            "restarts": self.restarts,
            "tolerances": {
                "algebra": tol::ALGEBRA,
                "eigen": tol::EIGEN,
                "detection": tol::DETECTION,
                "certify": tol::CERTIFY,
                "certify_strict": tol::CERTIFY_STRICT,
                "face_pool": tol::FACE_POOL,
                "affine_rank": tol::AFFINE_RANK,
                "alpha_threshold": tol::ALPHA_THRESHOLD,
                "seesaw_step": tol::SEESAW_STEP,
            },
            "result": self.result,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "summary": {
                "checks": self.checks.len(),
                "failed": failed,
                "status": if failed == 0 { "ok" } else { "golden_mismatch" },
            },
        })
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

pub fn pvec(p: &PVector) -> Value {
    json!(p.as_slice())
}

fn amplitudes(v: impl Iterator<Item = wf_core::C64>) -> Value {
    Value::Array(v.map(|z| json!([z.re + 0.0, z.im + 0.0])).collect())
}

pub fn product_state(s: &ProductState) -> Value {
    json!({
        "a": amplitudes(s.a().amplitudes().iter().copied()),
        "b": amplitudes(s.b().amplitudes().iter().copied()),
    })
}

/// Row-major `[re, im]` pairs.
pub fn matrix(h: &HermitianOperator) -> Value {
    let d = h.dim();
    Value::Array((0..d).map(|i| amplitudes((0..d).map(|j| h.get(i, j)))).collect())
}
