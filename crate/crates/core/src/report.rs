//! One record per checked identity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    /// `pass` iff residual <= tol, `fail` iff residual > 100 tol, otherwise
    /// (including NaN) `info`.
    pub fn classify(normalized: f64, tol: f64) -> Verdict {
        if normalized <= tol {
            Verdict::Pass
        } else if normalized > 100.0 * tol {
            Verdict::Fail
        } else {
            Verdict::Info
        }
    }
}

/// What the suite expects of an entry. `Any` marks informational entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    #[default]
    Pass,
    Fail,
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEcho {
    pub max_index: usize,
    pub guard: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub dims: Vec<usize>,
    pub window: Option<WindowEcho>,
    #[serde(with = "finite_or_null")]
    pub raw_residual: f64,
    #[serde(with = "finite_or_null")]
    pub normalized_residual: f64,
    pub verdict: Verdict,
    pub wall_time: f64,
    #[serde(default)]
    pub expect: Expect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, raw: f64, normalized: f64, tol: f64) -> Self {
        let mut params = BTreeMap::new();
        params.insert("tol".to_string(), format!("{tol:e}"));
        Self {
            identity: identity.into(),
            params,
            dims: Vec::new(),
            window: None,
            raw_residual: raw,
            normalized_residual: normalized,
            verdict: Verdict::classify(normalized, tol),
            wall_time: 0.0,
            expect: Expect::Pass,
            error: None,
        }
    }

    /// Entry for a check that could not be evaluated.
    pub fn errored(identity: impl Into<String>, error: impl ToString) -> Self {
        Self {
            identity: identity.into(),
            params: BTreeMap::new(),
            dims: Vec::new(),
            window: None,
            raw_residual: f64::NAN,
            normalized_residual: f64::NAN,
            verdict: Verdict::Info,
            wall_time: 0.0,
            expect: Expect::Any,
            error: Some(error.to_string()),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn dims(mut self, dims: &[usize]) -> Self {
        self.dims = dims.to_vec();
        self
    }

    pub fn window(mut self, max_index: usize, guard: usize) -> Self {
        self.window = Some(WindowEcho { max_index, guard });
        self
    }

    pub fn expect(mut self, expect: Expect) -> Self {
        self.expect = expect;
        self
    }

    pub fn renamed(mut self, identity: impl Into<String>) -> Self {
        self.identity = identity.into();
        self
    }

    pub fn meets_expectation(&self) -> bool {
        match self.expect {
            Expect::Pass => self.verdict == Verdict::Pass,
            Expect::Fail => self.verdict == Verdict::Fail,
            Expect::Any => true,
        }
    }
}

mod finite_or_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}
