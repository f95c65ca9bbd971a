//! Flat `key = value` experiment configuration.
//!
//! Every study starts from its own defaults; a config file and `--set`
//! overrides are applied on top in that order. Lists are comma separated.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::flux::FluxKind;
use crate::operators::{c_hu, c_plus_default, BasisKind};
use crate::scheme::{SchemeVariant, VolumeRule};
use crate::time::TimeLoopConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Study {
    Energy,
    Ooa,
    SbpCheck,
}

impl Study {
    pub fn name(self) -> &'static str {
        match self {
            Study::Energy => "energy",
            Study::Ooa => "ooa",
            Study::SbpCheck => "sbp-check",
        }
    }
}

impl fmt::Display for Study {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Study {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "energy" => Ok(Study::Energy),
            "ooa" => Ok(Study::Ooa),
            "sbp-check" | "sbp_check" | "sbp" => Ok(Study::SbpCheck),
            _ => Err(invalid("study", s)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialCondition {
    /// `sin(πx) + 0.01`
    SineOffset,
    /// `cos(πx)`
    Cosine,
}

impl InitialCondition {
    pub fn name(self) -> &'static str {
        match self {
            InitialCondition::SineOffset => "sine_offset",
            InitialCondition::Cosine => "cosine",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        use std::f64::consts::PI;
        match self {
            InitialCondition::SineOffset => (PI * x).sin() + 0.01,
            InitialCondition::Cosine => (PI * x).cos(),
        }
    }
}

impl FromStr for InitialCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sine_offset" | "sine-offset" => Ok(InitialCondition::SineOffset),
            "cosine" => Ok(InitialCondition::Cosine),
            _ => Err(invalid("initial_condition", s)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    None,
    Manufactured,
}

impl SourceKind {
    pub fn name(self) -> &'static str {
        match self {
            SourceKind::None => "none",
            SourceKind::Manufactured => "manufactured",
        }
    }
}

impl FromStr for SourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(SourceKind::None),
            "manufactured" => Ok(SourceKind::Manufactured),
            _ => Err(invalid("source", s)),
        }
    }
}

/// How the correction parameter of a case is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CChoice {
    /// `c = 0`.
    Dg,
    /// The degree's `c+` (configured or default).
    Plus,
    /// Huynh's `c_HU`.
    Hu,
    Value(f64),
}

impl CChoice {
    pub fn label(&self) -> String {
        match self {
            CChoice::Dg => "c_dg".into(),
            CChoice::Plus => "c_plus".into(),
            CChoice::Hu => "c_hu".into(),
            CChoice::Value(v) => super::output::fmt_f64(*v),
        }
    }
}

impl FromStr for CChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dg" | "c_dg" => Ok(CChoice::Dg),
            "plus" | "c_plus" | "c+" => Ok(CChoice::Plus),
            "hu" | "c_hu" => Ok(CChoice::Hu),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(CChoice::Value)
                .ok_or_else(|| invalid("c", s)),
        }
    }
}

/// One scheme and correction parameter, written `variant[:c]` in configs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case {
    pub variant: SchemeVariant,
    pub c: CChoice,
}

impl Case {
    pub fn new(variant: SchemeVariant, c: CChoice) -> Self {
        Self { variant, c }
    }

    /// Whether the case makes sense on `rule`; lumped-Lobatto needs GLL.
    pub fn runs_on(&self, rule: VolumeRule) -> bool {
        self.variant != SchemeVariant::LumpedLobatto || rule == VolumeRule::CollocatedGll
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.variant, self.c.label())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (v, c) = match s.split_once(':') {
            Some((v, c)) => (v, c.trim().parse()?),
            None => (s, CChoice::Dg),
        };
        let variant = v.trim().parse().map_err(|_| invalid("cases", s))?;
        Ok(Case { variant, c })
    }
}

/// Fully resolved experiment description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub study: Study,
    pub degrees: Vec<usize>,
    pub cases: Vec<Case>,
    pub fluxes: Vec<FluxKind>,
    pub quadratures: Vec<VolumeRule>,
    pub basis: BasisKind,
    pub alpha: f64,
    pub x_left: f64,
    pub x_right: f64,
    /// Element counts; the energy study uses every entry as its own mesh,
    /// the ooa study treats the list as a refinement sequence.
    pub elements: Vec<usize>,
    pub dt: f64,
    pub t_final: f64,
    pub record_every: usize,
    pub initial_condition: InitialCondition,
    pub source: SourceKind,
    /// Per-degree `c+` overrides.
    pub c_plus: BTreeMap<usize, f64>,
    /// Extra `c` values for the sbp-check study.
    pub sbp_c: Vec<CChoice>,
    pub write_series: bool,
    pub write_dat: bool,
}

const KEYS: &[&str] = &[
    "study",
    "degrees",
    "cases",
    "fluxes",
    "quadratures",
    "basis",
    "alpha",
    "x_left",
    "x_right",
    "elements",
    "dt",
    "t_final",
    "record_every",
    "initial_condition",
    "source",
    "c_plus",
    "sbp_c",
    "write_series",
    "write_dat",
];

impl ExperimentConfig {
    /// Defaults reproducing the published setup of each study.
    pub fn defaults(study: Study) -> Self {
        use CChoice::*;
        use SchemeVariant::*;
        let mut cfg = Self {
            study,
            degrees: vec![4, 5],
            cases: Vec::new(),
            fluxes: vec![FluxKind::Econ, FluxKind::Llf],
            quadratures: VolumeRule::ALL.to_vec(),
            basis: BasisKind::Legendre,
            alpha: 2.0 / 3.0,
            x_left: 0.0,
            x_right: 2.0,
            elements: vec![8],
            dt: 1e-4,
            t_final: 3.0,
            record_every: 10,
            initial_condition: InitialCondition::SineOffset,
            source: SourceKind::None,
            c_plus: BTreeMap::new(),
            sbp_c: vec![Dg, Plus, Hu, Value(1e4)],
            write_series: true,
            write_dat: false,
        };
        match study {
            Study::Energy => {
                cfg.cases = vec![
                    Case::new(ConsDgStrong, Dg),
                    Case::new(SplitStrong, Dg),
                    Case::new(SplitStrong, Plus),
                    Case::new(SplitStrong, Value(1e4)),
                    Case::new(ClassicalSplit, Plus),
                    Case::new(ClassicalSplit, Hu),
                    Case::new(LumpedLobatto, Dg),
                ];
            }
            Study::Ooa => {
                cfg.cases = vec![
                    Case::new(ConsDgStrong, Dg),
                    Case::new(SplitStrong, Dg),
                    Case::new(SplitStrong, Plus),
                    Case::new(ClassicalSplit, Plus),
                ];
                cfg.fluxes = vec![FluxKind::Llf];
                cfg.quadratures = vec![VolumeRule::Gl, VolumeRule::GlOverintegrated];
                cfg.elements = vec![8, 16, 32, 64, 128];
                cfg.t_final = 1.0;
                cfg.initial_condition = InitialCondition::Cosine;
                cfg.source = SourceKind::Manufactured;
            }
            Study::SbpCheck => {
                cfg.degrees = (1..=6).collect();
            }
        }
        cfg
    }

    /// Defaults for `study`, then the config file at `path` (if any), then
    /// `overrides` given as `key=value` strings.
    pub fn load(study: Study, path: Option<&Path>, overrides: &[String]) -> Result<Self> {
        let mut cfg = Self::defaults(study);
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            cfg.apply_text(&text)?;
        }
        for o in overrides {
            let (k, v) = split_pair(o).ok_or_else(|| Error::ConfigParse {
                line: 0,
                message: format!("override `{o}` is not key=value"),
            })?;
            cfg.set(k, v)?;
        }
        if cfg.study != study {
            return Err(Error::InvalidValue {
                key: "study".into(),
                value: cfg.study.to_string(),
            });
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies a whole config text. `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = split_pair(line).ok_or_else(|| Error::ConfigParse {
                line: i + 1,
                message: format!("expected key = value, got `{line}`"),
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Sets one key. `c_plus.<p>` sets the `c+` override of degree `p`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim();
        let value = value.trim();
        if let Some(p) = key.strip_prefix("c_plus.") {
            let p: usize = p.parse().map_err(|_| Error::UnknownKey(key.into()))?;
            self.c_plus.insert(p, parse_num(key, value)?);
            return Ok(());
        }
        match key {
            "study" => self.study = value.parse()?,
            "degrees" => self.degrees = parse_list(key, value, |s| s.parse().ok())?,
            "cases" => self.cases = parse_list(key, value, |s| s.parse().ok())?,
            "fluxes" => self.fluxes = parse_list(key, value, |s| s.parse().ok())?,
            "quadratures" => self.quadratures = parse_list(key, value, |s| s.parse().ok())?,
            "basis" => self.basis = value.parse().map_err(|_| invalid(key, value))?,
            "alpha" => self.alpha = parse_num(key, value)?,
            "x_left" => self.x_left = parse_num(key, value)?,
            "x_right" => self.x_right = parse_num(key, value)?,
            "elements" => self.elements = parse_list(key, value, |s| s.parse().ok())?,
            "dt" => self.dt = parse_num(key, value)?,
            "t_final" => self.t_final = parse_num(key, value)?,
            "record_every" => self.record_every = value.parse().map_err(|_| invalid(key, value))?,
            "initial_condition" => self.initial_condition = value.parse()?,
            "source" => self.source = value.parse()?,
            "c_plus" => {
                let v = parse_num(key, value)?;
                for &p in &self.degrees {
                    self.c_plus.insert(p, v);
                }
            }
            "sbp_c" => self.sbp_c = parse_list(key, value, |s| s.parse().ok())?,
            "write_series" => self.write_series = parse_bool(key, value)?,
            "write_dat" => self.write_dat = parse_bool(key, value)?,
            _ => return Err(Error::UnknownKey(key.into())),
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if self.degrees.is_empty() || self.degrees.contains(&0) {
            return bad("degrees must be a non-empty list of positive integers");
        }
        if self.elements.is_empty() || self.elements.contains(&0) {
            return bad("elements must be a non-empty list of positive integers");
        }
        if !(self.x_right > self.x_left) {
            return bad("x_right must exceed x_left");
        }
        if !self.alpha.is_finite() {
            return bad("alpha must be finite");
        }
        if self.study != Study::SbpCheck && (self.cases.is_empty() || self.fluxes.is_empty()) {
            return bad("cases and fluxes must be non-empty");
        }
        if self.quadratures.is_empty() {
            return bad("quadratures must be non-empty");
        }
        self.time_loop().map(|_| ())
    }

    pub fn time_loop(&self) -> Result<TimeLoopConfig> {
        TimeLoopConfig::new(self.dt, self.t_final, self.record_every)
    }

    /// Numeric `c` of a choice at degree `p`.
    pub fn resolve_c(&self, choice: CChoice, p: usize) -> Result<f64> {
        match choice {
            CChoice::Dg => Ok(0.0),
            CChoice::Hu => Ok(c_hu(p)),
            CChoice::Value(v) => Ok(v),
            CChoice::Plus => self
                .c_plus
                .get(&p)
                .copied()
                .or_else(|| c_plus_default(p))
                .ok_or_else(|| Error::InvalidParameter(format!("no c_plus for p = {p}; set c_plus.{p}"))),
        }
    }

    /// Keys recognised by [`ExperimentConfig::set`], excluding `c_plus.<p>`.
    pub fn keys() -> &'static [&'static str] {
        KEYS
    }
}

fn split_pair(s: &str) -> Option<(&str, &str)> {
    let (k, v) = s.split_once('=')?;
    let k = k.trim();
    (!k.is_empty()).then_some((k, v.trim()))
}

fn invalid(key: &str, value: &str) -> Error {
    Error::InvalidValue {
        key: key.into(),
        value: value.into(),
    }
}

fn parse_num(key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| invalid(key, value))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(invalid(key, value)),
    }
}

fn parse_list<T>(key: &str, value: &str, item: impl Fn(&str) -> Option<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(s).ok_or_else(|| invalid(key, s)))
        .collect()
}
