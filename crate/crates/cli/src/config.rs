//! JSON run configuration.

use serde::Deserialize;
use serde_json::Value;

use klab_core::modular::reduce;
use klab_core::{PrimePower, WeightSeq, DEFAULT_BRUTE_FORCE_CAP, DEFAULT_WORK_CAP};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Eval,
    Consecutive,
    Bilinear,
    Hyperbolic,
    PrimeSum,
    LambdaSum,
    Vaughan,
    Scan,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Eval => "eval",
            Mode::Consecutive => "consecutive",
            Mode::Bilinear => "bilinear",
            Mode::Hyperbolic => "hyperbolic",
            Mode::PrimeSum => "prime-sum",
            Mode::LambdaSum => "lambda-sum",
            Mode::Vaughan => "vaughan",
            Mode::Scan => "scan",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    ConstantOne,
    Rademacher { seed: u64 },
    Moebius,
    Custom { values: Vec<f64> },
}

impl WeightSpec {
    pub fn seed(&self) -> Option<u64> {
        match self {
            WeightSpec::Rademacher { seed } => Some(*seed),
            _ => None,
        }
    }

    pub fn to_weights(&self) -> Result<WeightSeq, CliError> {
        Ok(match self {
            WeightSpec::ConstantOne => WeightSeq::ConstantOne,
            WeightSpec::Rademacher { seed } => WeightSeq::Rademacher { seed: *seed },
            WeightSpec::Moebius => WeightSeq::Moebius,
            WeightSpec::Custom { values } => WeightSeq::custom(values.clone())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Mode,
    p: u64,
    k: u32,
    a: Option<i64>,
    m: Option<i64>,
    n: Option<i64>,
    #[serde(rename = "X")]
    x: Option<u64>,
    #[serde(rename = "M")]
    big_m: Option<u64>,
    #[serde(rename = "N")]
    big_n: Option<u64>,
    #[serde(rename = "U")]
    big_u: Option<u64>,
    #[serde(rename = "V")]
    big_v: Option<u64>,
    weights_a: Option<WeightSpec>,
    weights_b: Option<WeightSpec>,
    s_override: Option<u32>,
    eta: Option<f64>,
    workers: Option<usize>,
    out: Option<String>,
    brute_force_cap: Option<u64>,
    work_cap: Option<u64>,
    scan_of: Option<Mode>,
    scan_points: Option<usize>,
    scan_min: Option<u64>,
    timing: Option<bool>,
}

/// A validated run configuration with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub pp: PrimePower,
    pub a: Option<i64>,
    /// `(m, n)` of `K(m, n; q)` in eval mode.
    pub eval_args: Option<(i64, i64)>,
    pub x: Option<u64>,
    pub big_m: Option<u64>,
    pub big_n: Option<u64>,
    pub big_u: Option<u64>,
    pub big_v: Option<u64>,
    pub weights_a: WeightSpec,
    pub weights_b: WeightSpec,
    pub s_override: Option<u32>,
    pub eta: f64,
    pub workers: usize,
    pub out: Option<String>,
    pub brute_force_cap: u64,
    pub work_cap: u64,
    pub scan_of: Mode,
    pub scan_points: Option<usize>,
    pub scan_min: u64,
    pub timing: bool,
}

impl RunConfig {
    /// The mode whose harness computation actually runs (the scanned mode in scan mode).
    pub fn target_mode(&self) -> Mode {
        if self.mode == Mode::Scan {
            self.scan_of
        } else {
            self.mode
        }
    }
}

/// Parses and validates a JSON configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    config_from_value(value)
}

pub fn config_from_value(value: Value) -> Result<RunConfig, CliError> {
    let raw: RawConfig = serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
    validate(raw)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn require<T: Copy>(field: Option<T>, name: &str, mode: Mode) -> Result<T, CliError> {
    field.ok_or_else(|| invalid(format!("mode {} requires {name}", mode.name())))
}

fn validate(raw: RawConfig) -> Result<RunConfig, CliError> {
    if !klab_core::modular::is_prime(raw.p) || raw.p < 3 {
        return Err(invalid("p must be an odd prime"));
    }
    let pp = PrimePower::new(raw.p, raw.k).map_err(|e| invalid(e.to_string()))?;
    let mode = raw.mode;
    let scan_of = raw.scan_of.unwrap_or(Mode::PrimeSum);
    let target = if mode == Mode::Scan { scan_of } else { mode };

    if mode == Mode::Scan
        && !matches!(
            scan_of,
            Mode::Consecutive | Mode::Bilinear | Mode::Hyperbolic | Mode::PrimeSum | Mode::LambdaSum
        )
    {
        return Err(invalid(format!("scan_of must be a sum mode, got {}", scan_of.name())));
    }

    let eval_args = if target == Mode::Eval {
        if pp.q() < 2 {
            return Err(invalid("q must be at least 2"));
        }
        Some((require(raw.m, "m", mode)?, require(raw.n, "n", mode)?))
    } else {
        if pp.k() < 2 {
            return Err(invalid("k must be at least 2 for explicit-formula modes"));
        }
        let a = require(raw.a, "a", mode)?;
        if reduce(a, pp.p()) == 0 {
            return Err(invalid("gcd(a, p) must be 1"));
        }
        None
    };

    match target {
        Mode::Consecutive => {
            require(raw.big_n, "N", mode)?;
        }
        Mode::Bilinear => {
            require(raw.big_m, "M", mode)?;
            require(raw.big_n, "N", mode)?;
        }
        Mode::Hyperbolic => {
            let (u, v) = (require(raw.big_u, "U", mode)?, require(raw.big_v, "V", mode)?);
            require(raw.x, "X", mode)?;
            if u == 0 || v == 0 {
                return Err(invalid("U and V must be at least 1"));
            }
        }
        Mode::PrimeSum | Mode::LambdaSum => {
            require(raw.x, "X", mode)?;
        }
        Mode::Vaughan => {
            let x = require(raw.x, "X", mode)?;
            let (u, v) = (require(raw.big_u, "U", mode)?, require(raw.big_v, "V", mode)?);
            if u <= 1 || v <= 1 || u > x || v > x {
                return Err(invalid("vaughan needs 1 < U, V <= X"));
            }
        }
        Mode::Eval | Mode::Scan => {}
    }

    if let Some(s) = raw.s_override {
        if s == 0 || s > pp.k() {
            return Err(invalid(format!("s_override must lie in [1, {}]", pp.k())));
        }
    }
    let eta = raw.eta.unwrap_or(1.0);
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(invalid("eta must lie in (0, 1]"));
    }
    let workers = raw.workers.unwrap_or(1);
    if workers == 0 {
        return Err(invalid("workers must be positive"));
    }
    if raw.scan_points == Some(0) {
        return Err(invalid("scan_points must be positive"));
    }

    Ok(RunConfig {
        mode,
        pp,
        a: raw.a,
        eval_args,
        x: raw.x,
        big_m: raw.big_m,
        big_n: raw.big_n,
        big_u: raw.big_u,
        big_v: raw.big_v,
        weights_a: raw.weights_a.unwrap_or(WeightSpec::ConstantOne),
        weights_b: raw.weights_b.unwrap_or(WeightSpec::ConstantOne),
        s_override: raw.s_override,
        eta,
        workers,
        out: raw.out,
        brute_force_cap: raw.brute_force_cap.unwrap_or(DEFAULT_BRUTE_FORCE_CAP),
        work_cap: raw.work_cap.unwrap_or(DEFAULT_WORK_CAP),
        scan_of,
        scan_points: raw.scan_points,
        scan_min: raw.scan_min.unwrap_or(1).max(1),
        timing: raw.timing.unwrap_or(false),
    })
}
