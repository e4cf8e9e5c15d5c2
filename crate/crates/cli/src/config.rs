//! Suite configuration, read from TOML.
//!
//! ```toml
//! q = "0.7+0.2i"          # required; number or complex literal
//! kappa = 0
//! tol = 1e-9
//! window = 4              # pairwise window W (guard W + 1)
//! triple_window = 2       # Yang-Baxter / fusion window (guard 2W)
//! seed = 7                # random-word sampling
//! random_words = 8
//! branch = "fixed_kappa"  # or "reflected"
//! timing = false
//! rspecs = ["quantum_double", "yan_claimed", "general(1, 0, upper)"]
//!
//! [[reps]]
//! dim = 12
//! c = "0.5"
//!
//! [[families]]
//! m = 1.5
//! k = 2
//! sign = "lower"
//!
//! [caps]
//! max_dim = 24
//! pair_dim = 12
//! triple_dim = 8
//! triple_cap = 4096
//!
//! [output]
//! report = "report.json"
//! dump_dir = "dumps"
//!
//! [expect]
//! "yan_claimed.counit_left" = "fail"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use qdouble::hopfops::QbarBranch;
use qdouble::qscalars::{format_complex, parse_complex, DEFAULT_TOL};
use qdouble::{DeformParams, Expect, HopfFamily, RSpec, Sign, C64};
use serde::Deserialize;
use serde_json::{json, Value};
use toml::Spanned;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }

    fn at(src: &str, offset: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line_of(src, offset)),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {line}: {}", self.message),
            None => write!(f, "config: {}", self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Scalar {
    fn complex(&self) -> Result<C64, String> {
        match self {
            Scalar::Int(v) => Ok(C64::new(*v as f64, 0.0)),
            Scalar::Float(v) => Ok(C64::new(*v, 0.0)),
            Scalar::Text(s) => parse_complex(s),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    dim: usize,
    c: Spanned<Scalar>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    m: Spanned<f64>,
    k: i64,
    sign: Spanned<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    pub max_dim: usize,
    pub pair_dim: usize,
    pub triple_dim: usize,
    pub triple_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_dim: 24,
            pair_dim: 12,
            triple_dim: 8,
            triple_cap: 4096,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    pub report: Option<PathBuf>,
    pub dump_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    q: Spanned<Scalar>,
    #[serde(default)]
    kappa: i64,
    tol: Option<Spanned<f64>>,
    window: Option<usize>,
    triple_window: Option<usize>,
    #[serde(default)]
    seed: u64,
    random_words: Option<usize>,
    branch: Option<Spanned<String>>,
    #[serde(default)]
    timing: bool,
    reps: Option<Spanned<Vec<RawRep>>>,
    #[serde(default)]
    families: Vec<RawFamily>,
    rspecs: Option<Vec<Spanned<String>>>,
    #[serde(default)]
    caps: Caps,
    #[serde(default)]
    output: OutputPaths,
    #[serde(default)]
    expect: BTreeMap<String, Spanned<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepSpec {
    pub dim: usize,
    pub c: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub params: DeformParams,
    pub reps: Vec<RepSpec>,
    pub families: Vec<HopfFamily>,
    pub rspecs: Vec<RSpec>,
    pub window: usize,
    pub triple_window: usize,
    pub caps: Caps,
    pub seed: u64,
    pub random_words: usize,
    pub branch: QbarBranch,
    pub timing: bool,
    /// Overrides keyed by `identity` or `rspec.identity`.
    pub expect: BTreeMap<String, Expect>,
    pub output: OutputPaths,
}

pub const MAX_RANDOM_WORDS: usize = 64;

pub fn parse_rspec(text: &str) -> Result<RSpec, String> {
    let t = text.trim();
    match t {
        "quantum_double" => return Ok(RSpec::QuantumDouble),
        "yan_claimed" => return Ok(RSpec::YanClaimed),
        _ => {}
    }
    let body = t
        .strip_prefix("general(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| {
            format!("unknown rspec `{t}` (quantum_double, yan_claimed or general(m, K, sign))")
        })?;
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    let [m, k, sign] = parts[..] else {
        return Err(format!("general rspec needs three arguments, got `{body}`"));
    };
    let m: f64 = m.parse().map_err(|_| format!("bad m `{m}`"))?;
    let k: i64 = k.parse().map_err(|_| format!("bad K `{k}`"))?;
    let sign = Sign::parse(sign).ok_or_else(|| format!("bad sign `{sign}`"))?;
    RSpec::general(m, k, sign).map_err(|e| e.to_string())
}

pub fn rspec_key(spec: &RSpec) -> String {
    match spec {
        RSpec::QuantumDouble => "quantum_double".into(),
        RSpec::YanClaimed => "yan_claimed".into(),
        RSpec::GeneralFamily(f) => format!("general({}, {}, {})", f.m(), f.k(), f.sign().name()),
    }
}

fn parse_expect(text: &str) -> Option<Expect> {
    match text {
        "pass" => Some(Expect::Pass),
        "fail" => Some(Expect::Fail),
        "any" => Some(Expect::Any),
        _ => None,
    }
}

fn expect_name(e: Expect) -> &'static str {
    match e {
        Expect::Pass => "pass",
        Expect::Fail => "fail",
        Expect::Any => "any",
    }
}

impl SuiteConfig {
    pub fn from_toml_str(src: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(src).map_err(|e| match e.span() {
            Some(span) => ConfigError::at(src, span.start, e.message()),
            None => ConfigError::new(e.message()),
        })?;
        let at = |span: std::ops::Range<usize>, msg: String| ConfigError::at(src, span.start, msg);

        let q = raw.q.get_ref().complex().map_err(|e| at(raw.q.span(), e))?;
        let tol = match &raw.tol {
            Some(t) if t.get_ref().is_nan() || *t.get_ref() <= 0.0 => {
                return Err(at(
                    t.span(),
                    format!("tol must be positive, got {}", t.get_ref()),
                ))
            }
            Some(t) => *t.get_ref(),
            None => DEFAULT_TOL,
        };
        let params = DeformParams::with_tol(q, raw.kappa, tol)
            .map_err(|e| at(raw.q.span(), e.to_string()))?;

        let reps = match &raw.reps {
            None => vec![
                RepSpec {
                    dim: raw.caps.pair_dim,
                    c: C64::new(0.0, 0.0),
                },
                RepSpec {
                    dim: raw.caps.pair_dim,
                    c: C64::new(0.5, 0.0),
                },
            ],
            Some(list) => {
                if list.get_ref().is_empty() {
                    return Err(at(list.span(), "at least one rep is required".into()));
                }
                list.get_ref()
                    .iter()
                    .map(|r| {
                        let c = r.c.get_ref().complex().map_err(|e| at(r.c.span(), e))?;
                        Ok(RepSpec { dim: r.dim, c })
                    })
                    .collect::<Result<_, ConfigError>>()?
            }
        };

        let families = raw
            .families
            .iter()
            .map(|f| {
                let sign = Sign::parse(f.sign.get_ref())
                    .ok_or_else(|| at(f.sign.span(), format!("bad sign `{}`", f.sign.get_ref())))?;
                HopfFamily::new(*f.m.get_ref(), f.k, sign)
                    .map_err(|e| at(f.m.span(), e.to_string()))
            })
            .collect::<Result<_, ConfigError>>()?;

        let rspecs = match &raw.rspecs {
            None => vec![RSpec::QuantumDouble, RSpec::YanClaimed],
            Some(list) => list
                .iter()
                .map(|s| parse_rspec(s.get_ref()).map_err(|e| at(s.span(), e)))
                .collect::<Result<_, ConfigError>>()?,
        };

        let branch = match raw.branch.as_ref() {
            None => QbarBranch::FixedKappa,
            Some(b) => match b.get_ref().as_str() {
                "fixed_kappa" => QbarBranch::FixedKappa,
                "reflected" => QbarBranch::Reflected,
                other => return Err(at(b.span(), format!("unknown branch `{other}`"))),
            },
        };

        let expect = raw
            .expect
            .iter()
            .map(|(k, v)| {
                parse_expect(v.get_ref())
                    .map(|e| (k.clone(), e))
                    .ok_or_else(|| {
                        at(
                            v.span(),
                            format!(
                                "expectation must be pass, fail or any, got `{}`",
                                v.get_ref()
                            ),
                        )
                    })
            })
            .collect::<Result<_, ConfigError>>()?;

        let cfg = Self {
            params,
            reps,
            families,
            rspecs,
            window: raw.window.unwrap_or(4),
            triple_window: raw.triple_window.unwrap_or(2),
            caps: raw.caps,
            seed: raw.seed,
            random_words: raw.random_words.unwrap_or(8),
            branch,
            timing: raw.timing,
            expect,
            output: raw.output,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::new(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&src)
    }

    /// Defaults with only `q` given.
    pub fn with_q(q: &str) -> Result<Self, ConfigError> {
        Self::from_toml_str(&format!("q = {}", Value::String(q.to_string())))
    }

    /// Checks every size against the caps before anything is computed.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let caps = &self.caps;
        if self.reps.is_empty() {
            return Err(ConfigError::new("at least one rep is required"));
        }
        for r in &self.reps {
            if r.dim < 2 || r.dim > caps.max_dim {
                return Err(ConfigError::new(format!(
                    "rep dim {} outside [2, max_dim = {}]",
                    r.dim, caps.max_dim
                )));
            }
        }
        if caps.pair_dim < 2 || caps.pair_dim > caps.max_dim {
            return Err(ConfigError::new(format!(
                "pair_dim {} outside [2, max_dim = {}]",
                caps.pair_dim, caps.max_dim
            )));
        }
        let triple = caps.triple_dim.checked_pow(3).unwrap_or(usize::MAX);
        if caps.triple_dim < 2 || triple > caps.triple_cap {
            return Err(ConfigError::new(format!(
                "triple_dim {} gives a {triple}-dimensional triple tensor, cap is {}",
                caps.triple_dim, caps.triple_cap
            )));
        }
        if self.window == 0 || 2 * self.window + 2 > caps.pair_dim {
            return Err(ConfigError::new(format!(
                "window {} needs pair_dim >= {}",
                self.window,
                2 * self.window + 2
            )));
        }
        if self.triple_window == 0 || 3 * self.triple_window + 1 > caps.triple_dim {
            return Err(ConfigError::new(format!(
                "triple_window {} needs triple_dim >= {}",
                self.triple_window,
                3 * self.triple_window + 1
            )));
        }
        if self.random_words > MAX_RANDOM_WORDS {
            return Err(ConfigError::new(format!(
                "random_words {} exceeds {MAX_RANDOM_WORDS}",
                self.random_words
            )));
        }
        Ok(())
    }

    /// JSON echo written at the top of every report.
    pub fn echo(&self) -> Value {
        let p = &self.params;
        json!({
            "q": format_complex(p.q),
            "kappa": p.kappa,
            "alpha": p.alpha,
            "tol": p.tol,
            "reps": self.reps.iter().map(|r| json!({"dim": r.dim, "c": format_complex(r.c)})).collect::<Vec<_>>(),
            "families": self.families.iter().map(|f| f.label()).collect::<Vec<_>>(),
            "rspecs": self.rspecs.iter().map(rspec_key).collect::<Vec<_>>(),
            "window": self.window,
            "triple_window": self.triple_window,
            "caps": {
                "max_dim": self.caps.max_dim,
                "pair_dim": self.caps.pair_dim,
                "triple_dim": self.caps.triple_dim,
                "triple_cap": self.caps.triple_cap,
            },
            "seed": self.seed,
            "random_words": self.random_words,
            "branch": self.branch.name(),
            "expect": self.expect.iter().map(|(k, v)| (k.clone(), json!(expect_name(*v)))).collect::<serde_json::Map<_, _>>(),
        })
    }
}
