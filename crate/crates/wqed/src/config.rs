// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: a JSON document describing the system, the drive, an
//! optional one- or two-axis sweep and the requested observables.
//!
//! Angles and sweep bounds accept either numbers or expressions in `pi`
//! such as `"2pi/3"`, `"-pi/2"` or `"0.5*pi"`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;
use wqed_core::{Drive, Port, SystemParams};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad override {0:?}: expected key=value")]
    BadOverride(String),
    #[error("override path {0:?} does not name a config table")]
    BadOverridePath(String),
    #[error("invalid angle expression {0:?}")]
    BadAngle(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] wqed_core::Error),
}

/// Parses `"3pi/4"`, `"-pi"`, `"0.5*pi"`, `"1/3"` or a plain number.
pub fn parse_angle(s: &str) -> Result<f64, ConfigError> {
    let bad = || ConfigError::BadAngle(s.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.to_ascii_lowercase();
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().map_err(|_| bad())?)),
        None => (t.as_str(), None),
    };
    let value = match num.find("pi") {
        Some(i) => {
            if i + 2 != num.len() {
                return Err(bad());
            }
            let coef = num[..i].trim_end_matches('*');
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * std::f64::consts::PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let value = match den {
        Some(d) if d != 0.0 => value / d,
        Some(_) => return Err(bad()),
        None => value,
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

/// A real number that may be written as an angle expression.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Real(pub f64);

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Expr(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Real(x)),
            Raw::Expr(s) => parse_angle(&s).map(Real).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsConfig {
    pub gamma: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub theta: Real,
    pub phi: Real,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            gamma_a: 0.0,
            gamma_b: 0.0,
            delta_a: 0.0,
            delta_b: 0.0,
            j: 0.0,
            theta: Real(0.0),
            phi: Real(0.0),
        }
    }
}

impl ParamsConfig {
    pub fn build(&self) -> Result<SystemParams, wqed_core::Error> {
        SystemParams::builder()
            .gamma_wg(self.gamma)
            .losses(self.gamma_a, self.gamma_b)
            .detunings(self.delta_a, self.delta_b)
            .exchange(self.j, self.theta.0)
            .phi(self.phi.0)
            .build()
    }
}

/// Drive strength, given as power `p = α²` or amplitude `alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriveConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self {
            p: Some(1.0),
            alpha: None,
        }
    }
}

impl DriveConfig {
    pub fn power(&self) -> Result<f64, ConfigError> {
        match (self.p, self.alpha) {
            (Some(p), None) => Ok(p),
            (None, Some(a)) => Ok(a * a),
            (None, None) => Ok(1.0),
            (Some(_), Some(_)) => Err(ConfigError::Invalid(
                "drive: give either p or alpha, not both".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variable {
    #[serde(rename = "p")]
    Power,
    #[serde(rename = "J")]
    Exchange,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "phi")]
    Phi,
    /// `Δₐ = Δ_b = value`
    #[serde(rename = "delta")]
    Delta,
    /// `Δₐ = −Δ_b = value`
    #[serde(rename = "delta_antisym")]
    DeltaAntisym,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::Power => "p",
            Variable::Exchange => "J",
            Variable::Theta => "theta",
            Variable::Phi => "phi",
            Variable::Delta => "delta",
            Variable::DeltaAntisym => "delta_antisym",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// One sweep axis: either an explicit list of `values`, or `points` samples
/// between `from` and `to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub variable: Variable,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<Real>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default)]
    pub scale: Scale,
    /// Whether `to` itself is sampled; off for periodic ranges like `[0, 2π)`.
    #[serde(default = "yes")]
    pub endpoint: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Real>>,
}

fn yes() -> bool {
    true
}

/// Power sweeps start at the plotting floor when photon correlations are
/// requested, since reflection is empty at vanishing drive.
pub const G2_POWER_FLOOR: f64 = 0.02;
pub const POWER_FLOOR: f64 = 1e-3;

impl AxisConfig {
    pub fn range(variable: Variable, from: f64, to: f64, points: usize, scale: Scale) -> Self {
        Self {
            variable,
            from: Some(Real(from)),
            to: Some(Real(to)),
            points: Some(points),
            scale,
            endpoint: true,
            values: None,
        }
    }

    pub fn list(variable: Variable, values: &[f64]) -> Self {
        Self {
            variable,
            from: None,
            to: None,
            points: None,
            scale: Scale::Linear,
            endpoint: true,
            values: Some(values.iter().copied().map(Real).collect()),
        }
    }

    pub fn periodic(variable: Variable, points: usize) -> Self {
        Self {
            endpoint: false,
            ..Self::range(variable, 0.0, std::f64::consts::TAU, points, Scale::Linear)
        }
    }

    /// Sample values in sweep order.
    pub fn samples(&self, wants_g2: bool) -> Result<Vec<f64>, ConfigError> {
        let name = self.variable.name();
        let invalid = |msg: String| Err(ConfigError::Invalid(format!("sweep over {name}: {msg}")));
        if let Some(values) = &self.values {
            if self.from.is_some() || self.to.is_some() || self.points.is_some() {
                return invalid("give either values or from/to/points".into());
            }
            if values.is_empty() {
                return invalid("values must not be empty".into());
            }
            if values.iter().any(|v| !v.0.is_finite()) {
                return invalid("values must be finite".into());
            }
            return Ok(values.iter().map(|v| v.0).collect());
        }
        let from = match (self.from, self.variable) {
            (Some(f), _) => f.0,
            (None, Variable::Power) if wants_g2 => G2_POWER_FLOOR,
            (None, Variable::Power) => POWER_FLOOR,
            (None, _) => return invalid("missing from".into()),
        };
        let Some(Real(to)) = self.to else {
            return invalid("missing to".into());
        };
        let Some(points) = self.points else {
            return invalid("missing points".into());
        };
        if !from.is_finite() || !to.is_finite() {
            return invalid("range must be finite".into());
        }
        if points < 2 {
            return invalid(format!("points must be at least 2, got {points}"));
        }
        let n = if self.endpoint { points - 1 } else { points } as f64;
        let at = |i: usize| -> f64 {
            let f = i as f64 / n;
            match self.scale {
                Scale::Linear => from + (to - from) * f,
                Scale::Log => (from.ln() + (to.ln() - from.ln()) * f).exp(),
            }
        };
        if self.scale == Scale::Log && !(from > 0.0 && to > 0.0) {
            return invalid("log scale requires positive bounds".into());
        }
        let mut out: Vec<f64> = (0..points).map(at).collect();
        // hit the bounds exactly
        out[0] = from;
        if self.endpoint {
            out[points - 1] = to;
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    T,
    #[serde(rename = "T_c")]
    Tc,
    #[serde(rename = "T_inc")]
    Tinc,
    R,
    #[serde(rename = "R_c")]
    Rc,
    #[serde(rename = "R_inc")]
    Rinc,
    #[serde(rename = "purity")]
    Purity,
    #[serde(rename = "concurrence")]
    Concurrence,
    #[serde(rename = "g2_T")]
    G2T,
    #[serde(rename = "g2_R")]
    G2R,
}

impl Observable {
    pub const ALL: [Observable; 10] = [
        Observable::T,
        Observable::Tc,
        Observable::Tinc,
        Observable::R,
        Observable::Rc,
        Observable::Rinc,
        Observable::Purity,
        Observable::Concurrence,
        Observable::G2T,
        Observable::G2R,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Observable::T => "T",
            Observable::Tc => "T_c",
            Observable::Tinc => "T_inc",
            Observable::R => "R",
            Observable::Rc => "R_c",
            Observable::Rinc => "R_inc",
            Observable::Purity => "purity",
            Observable::Concurrence => "concurrence",
            Observable::G2T => "g2_T",
            Observable::G2R => "g2_R",
        }
    }

    pub fn is_intensity(self) -> bool {
        matches!(
            self,
            Observable::T
                | Observable::Tc
                | Observable::Tinc
                | Observable::R
                | Observable::Rc
                | Observable::Rinc
        )
    }

    pub fn is_g2(self) -> bool {
        matches!(self, Observable::G2T | Observable::G2R)
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Observable {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Observable::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown observable {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[default]
    Forward,
    Backward,
    Both,
}

impl Direction {
    pub fn ports(self) -> &'static [Port] {
        match self {
            Direction::Forward => &[Port::Forward],
            Direction::Backward => &[Port::Backward],
            Direction::Both => &[Port::Forward, Port::Backward],
        }
    }
}

fn default_outputs() -> Vec<Observable> {
    Observable::ALL[..6].to_vec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default)]
    pub drive: DriveConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<AxisConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<AxisConfig>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<Observable>,
    #[serde(default)]
    pub direction: Direction,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ParamsConfig::default(),
            drive: DriveConfig::default(),
            sweep: None,
            grid: None,
            outputs: default_outputs(),
            direction: Direction::Forward,
        }
    }
}

/// Parses an override value: JSON if it parses, otherwise a bare string.
fn override_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

/// Sets `path` (dot separated, e.g. `params.J`) in a JSON document.
fn set_path(doc: &mut Value, path: &str, value: Value) -> Result<(), ConfigError> {
    let mut node = doc;
    let mut keys = path.split('.').peekable();
    while let Some(key) = keys.next() {
        if key.is_empty() {
            return Err(ConfigError::BadOverridePath(path.to_string()));
        }
        if node.is_null() {
            *node = Value::Object(Default::default());
        }
        let Some(map) = node.as_object_mut() else {
            return Err(ConfigError::BadOverridePath(path.to_string()));
        };
        if keys.peek().is_none() {
            map.insert(key.to_string(), value);
            return Ok(());
        }
        node = map.entry(key.to_string()).or_insert(Value::Null);
    }
    Ok(())
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Self::from_json_with(text, &[])
    }

    /// Parses a config document after applying `key=value` overrides.
    pub fn from_json_with(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut doc: Value = serde_json::from_str(text)?;
        for o in overrides {
            let (k, v) = o
                .split_once('=')
                .ok_or_else(|| ConfigError::BadOverride(o.clone()))?;
            set_path(&mut doc, k.trim(), override_value(v.trim()))?;
        }
        let cfg: RunConfig = serde_json::from_value(doc)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_with(&text, overrides)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn wants_g2(&self) -> bool {
        self.outputs.iter().any(|o| o.is_g2())
    }

    /// Checks everything that does not depend on the sweep point.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.outputs.is_empty() {
            return Err(ConfigError::Invalid("outputs must not be empty".into()));
        }
        for (i, o) in self.outputs.iter().enumerate() {
            if self.outputs[..i].contains(o) {
                return Err(ConfigError::Invalid(format!("observable {o} requested twice")));
            }
        }
        self.drive.power()?;
        if self.grid.is_some() && self.sweep.is_none() {
            return Err(ConfigError::Invalid("grid requires a sweep".into()));
        }
        if let (Some(s), Some(g)) = (&self.sweep, &self.grid) {
            if s.variable == g.variable {
                return Err(ConfigError::Invalid(format!(
                    "sweep and grid both vary {}",
                    s.variable.name()
                )));
            }
        }
        for axis in self.sweep.iter().chain(self.grid.iter()) {
            axis.samples(self.wants_g2())?;
        }
        Ok(())
    }

    /// The base point with sweep values substituted.
    pub fn point(&self, assignments: &[(Variable, f64)]) -> Result<(SystemParams, f64), ConfigError> {
        let mut prm = self.params.clone();
        let mut power = self.drive.power()?;
        for &(var, v) in assignments {
            match var {
                Variable::Power => power = v,
                Variable::Exchange => prm.j = v,
                Variable::Theta => prm.theta = Real(v),
                Variable::Phi => prm.phi = Real(v),
                Variable::Delta => (prm.delta_a, prm.delta_b) = (v, v),
                Variable::DeltaAntisym => (prm.delta_a, prm.delta_b) = (v, -v),
            }
        }
        Ok((prm.build()?, power))
    }

    pub fn drive(port: Port, power: f64) -> Result<Drive, ConfigError> {
        Ok(Drive::from_power(port, power)?)
    }
}
