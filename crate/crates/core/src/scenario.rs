//! Run configurations: flat `key=value` files, named figure presets, and
//! resolution into concrete parameters and initial states.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::model::{critical_detuning_single, critical_detuning_two, SingleModeParams, TwoModeParams};
use crate::states::{FockVector, PairedFockVector, StateFamily, DEFAULT_TAIL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Single,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Coherent,
    SqueezedVacuum,
    PairCoherent,
    TwoModeSqueezed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaSpec {
    Value(f64),
    /// Detuning at which the Rabi frequency is minimal at the state's mean
    /// photon number.
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NMax {
    Auto,
    Fixed(usize),
}

impl FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Self::Single),
            "two" => Ok(Self::Two),
            _ => Err(Error::Config(format!("unknown model '{s}' (expected single or two)"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Single => "single",
            Self::Two => "two",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coherent" | "cs" => Ok(Self::Coherent),
            "squeezed-vacuum" | "sv" => Ok(Self::SqueezedVacuum),
            "pair-coherent" | "pc" => Ok(Self::PairCoherent),
            "two-mode-squeezed" | "tsv" => Ok(Self::TwoModeSqueezed),
            _ => Err(Error::Config(format!(
                "unknown state '{s}' (expected coherent, squeezed-vacuum, pair-coherent or two-mode-squeezed)"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Coherent => "coherent",
            Self::SqueezedVacuum => "squeezed-vacuum",
            Self::PairCoherent => "pair-coherent",
            Self::TwoModeSqueezed => "two-mode-squeezed",
        })
    }
}

impl Family {
    pub fn is_paired(self) -> bool {
        matches!(self, Self::PairCoherent | Self::TwoModeSqueezed)
    }

    /// `amp` is α, r, ζ or r respectively (real, phase zero).
    pub fn state(self, amp: f64) -> StateFamily {
        match self {
            Self::Coherent => StateFamily::Coherent { alpha: C64::new(amp, 0.0) },
            Self::SqueezedVacuum => StateFamily::SqueezedVacuum { r: amp, theta: 0.0 },
            Self::PairCoherent => StateFamily::PairCoherent { zeta: C64::new(amp, 0.0) },
            Self::TwoModeSqueezed => StateFamily::TwoModeSqueezed { r: amp },
        }
    }
}

impl FromStr for DeltaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "critical" {
            return Ok(Self::Critical);
        }
        parse_f64("delta", s).map(Self::Value)
    }
}

impl fmt::Display for DeltaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Value(v) => write!(f, "{v}"),
            Self::Critical => f.write_str("critical"),
        }
    }
}

impl FromStr for NMax {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Self::Auto);
        }
        s.parse().map(Self::Fixed).map_err(|_| Error::Config(format!("nmax: expected 'auto' or an integer, got '{s}'")))
    }
}

impl fmt::Display for NMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Auto => f.write_str("auto"),
            Self::Fixed(n) => write!(f, "{n}"),
        }
    }
}

fn parse_f64(key: &str, s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Config(format!("{key}: expected a number, got '{s}'")))
}

fn parse_omega(key: &str, s: &str) -> Result<Option<f64>> {
    if s == "auto" {
        return Ok(None);
    }
    parse_f64(key, s).map(Some)
}

fn fmt_omega(w: Option<f64>) -> String {
    w.map_or_else(|| "auto".into(), |w| w.to_string())
}

/// One run. Times are in units of `1/λ` (`tmax`, `dt` are values of `λt`).
/// `omega1`/`omega2` are the mode frequencies; the single-mode model uses
/// `omega1` as its field frequency. `None` (`auto`) picks the model default:
/// 1 for a single mode, [`two_mode_omegas`] for two.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelKind,
    pub state: Family,
    pub amp: f64,
    pub k: f64,
    pub delta: DeltaSpec,
    pub lambda: f64,
    pub omega1: Option<f64>,
    pub omega2: Option<f64>,
    pub t_max: f64,
    pub dt: f64,
    pub n_max: NMax,
    pub out: Option<PathBuf>,
}

/// Keys accepted in config files and by [`ScenarioConfig::set`].
pub const CONFIG_KEYS: [&str; 12] =
    ["model", "state", "amp", "k", "delta", "lambda", "omega1", "omega2", "tmax", "dt", "nmax", "out"];

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::Single,
            state: Family::Coherent,
            amp: 30f64.sqrt(),
            k: 0.0,
            delta: DeltaSpec::Value(0.0),
            lambda: 1e-3,
            omega1: None,
            omega2: None,
            t_max: 100.0,
            dt: 0.01,
            n_max: NMax::Auto,
            out: None,
        }
    }
}

impl ScenarioConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "model" => self.model = value.parse()?,
            "state" => self.state = value.parse()?,
            "amp" => self.amp = parse_f64(key, value)?,
            "k" => self.k = parse_f64(key, value)?,
            "delta" => self.delta = value.parse()?,
            "lambda" => self.lambda = parse_f64(key, value)?,
            "omega1" => self.omega1 = parse_omega(key, value)?,
            "omega2" => self.omega2 = parse_omega(key, value)?,
            "tmax" => self.t_max = parse_f64(key, value)?,
            "dt" => self.dt = parse_f64(key, value)?,
            "nmax" => self.n_max = value.parse()?,
            "out" => self.out = if value.is_empty() || value == "-" { None } else { Some(PathBuf::from(value)) },
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines on top of `self`; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got '{raw}'", i + 1)))?;
            self.set(key.trim(), value).map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = Self::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Canonical `key=value` form; parsing it back gives the same config.
    pub fn to_text(&self) -> String {
        let out = self.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        format!(
            "model={}\nstate={}\namp={}\nk={}\ndelta={}\nlambda={}\nomega1={}\nomega2={}\ntmax={}\ndt={}\nnmax={}\nout={}\n",
            self.model,
            self.state,
            self.amp,
            self.k,
            self.delta,
            self.lambda,
            fmt_omega(self.omega1),
            fmt_omega(self.omega2),
            self.t_max,
            self.dt,
            self.n_max,
            out
        )
    }

    /// Grid in units of `λt`.
    pub fn scaled_grid(&self) -> Result<TimeGrid> {
        TimeGrid::new(self.t_max, self.dt)
    }

    /// Validates everything and builds the parameters and initial state.
    pub fn resolve(&self) -> Result<Scenario> {
        let family = self.state.state(self.amp);
        if family.is_paired() != (self.model == ModelKind::Two) {
            return Err(Error::Config(format!("state {} cannot be used with the {} model", self.state, self.model)));
        }
        let grid = self.scaled_grid()?;
        let mean = family.exact_mean();
        let n_max = match self.n_max {
            NMax::Auto => family.auto_truncation(DEFAULT_TAIL_TOL),
            NMax::Fixed(n) => n,
        };
        let kind = match self.model {
            ModelKind::Single => {
                let base = SingleModeParams::new(self.omega1.unwrap_or(1.0), self.lambda, self.k, 0.0)?;
                let delta = match self.delta {
                    DeltaSpec::Value(d) => d,
                    DeltaSpec::Critical => critical_detuning_single(mean, &base)?,
                };
                ScenarioKind::Single { params: base.with_delta(delta)?, field: family.single(n_max, DEFAULT_TAIL_TOL)? }
            }
            ModelKind::Two => {
                let (w1, w2) = two_mode_omegas(self.state);
                let base =
                    TwoModeParams::new(self.omega1.unwrap_or(w1), self.omega2.unwrap_or(w2), self.lambda, self.k, 0.0)?;
                let delta = match self.delta {
                    DeltaSpec::Value(d) => d,
                    DeltaSpec::Critical => critical_detuning_two(mean, &base)?,
                };
                ScenarioKind::Two { params: base.with_delta(delta)?, field: family.paired(n_max, DEFAULT_TAIL_TOL)? }
            }
        };
        Ok(Scenario { kind, scaled_grid: grid, mean, n_max })
    }
}

#[derive(Debug, Clone)]
pub enum ScenarioKind {
    Single { params: SingleModeParams, field: FockVector },
    Two { params: TwoModeParams, field: PairedFockVector },
}

/// A resolved configuration, ready to run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: ScenarioKind,
    /// Sample points in units of `λt`.
    pub scaled_grid: TimeGrid,
    pub mean: f64,
    pub n_max: usize,
}

impl Scenario {
    pub fn lambda(&self) -> f64 {
        match &self.kind {
            ScenarioKind::Single { params, .. } => params.lambda,
            ScenarioKind::Two { params, .. } => params.lambda,
        }
    }

    pub fn delta(&self) -> f64 {
        match &self.kind {
            ScenarioKind::Single { params, .. } => params.delta,
            ScenarioKind::Two { params, .. } => params.delta,
        }
    }

    /// Sample points in physical time.
    pub fn time_grid(&self) -> TimeGrid {
        self.scaled_grid.scaled(1.0 / self.lambda())
    }
}

/// Single-mode detunings per figure column, `k ∈ {0, 1e-4, 1e-3}`.
const SINGLE_COLUMNS: [(f64, [f64; 3]); 3] =
    [(0.0, [0.0, 0.01, 0.016061]), (1e-4, [0.0, 0.01, 0.016061]), (1e-3, [0.0, 0.05, 0.061061])];
const TWO_COLUMNS: [(f64, [f64; 3]); 2] = [(0.0, [0.0, 0.01, 0.0161]), (2e-3, [0.0, 0.01, 0.0161])];
const PANEL_LETTERS: &str = "abcdefghi";

/// Mode frequencies for the two-mode figure presets.
pub fn two_mode_omegas(family: Family) -> (f64, f64) {
    match family {
        Family::PairCoherent => (1.0, 1.0),
        _ => (0.5, 0.5),
    }
}

/// All preset names in order (`fig1a` … `fig9f`).
pub fn preset_names() -> Vec<String> {
    let mut names = Vec::new();
    for (fig, panels) in [(1, 9), (2, 9), (3, 2), (4, 9), (5, 9), (6, 6), (7, 6), (8, 6), (9, 6)] {
        for letter in PANEL_LETTERS.chars().take(panels) {
            names.push(format!("fig{fig}{letter}"));
        }
    }
    names
}

/// Figure panels, lettered down each column then across (column = `k`,
/// row = detuning). Figures 3a/3b are the `|α|² = 1` and `30` panels.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let unknown = || Error::Config(format!("unknown preset '{name}'"));
    let rest = name.strip_prefix("fig").ok_or_else(unknown)?;
    let (fig, letter) = rest.split_at(rest.len().saturating_sub(1));
    let fig: u32 = fig.parse().map_err(|_| unknown())?;
    let idx = PANEL_LETTERS.find(letter).ok_or_else(unknown)?;
    let mut c = ScenarioConfig::default();
    match fig {
        1 | 2 | 4 | 5 => {
            let (k, deltas) = SINGLE_COLUMNS.get(idx / 3).ok_or_else(unknown)?;
            c.k = *k;
            c.delta = DeltaSpec::Value(deltas[idx % 3]);
            if fig == 2 || fig == 5 {
                c.state = Family::SqueezedVacuum;
                c.amp = 2.402;
            }
        }
        3 => {
            c.k = 1e-2;
            c.amp = match idx {
                0 => 1.0,
                1 => 30f64.sqrt(),
                _ => return Err(unknown()),
            };
        }
        6..=9 => {
            let (k, deltas) = TWO_COLUMNS.get(idx / 3).ok_or_else(unknown)?;
            c.model = ModelKind::Two;
            c.state = if fig.is_multiple_of(2) { Family::PairCoherent } else { Family::TwoModeSqueezed };
            c.amp = if c.state == Family::PairCoherent { 1.778 } else { 1.032 };
            let (w1, w2) = two_mode_omegas(c.state);
            (c.omega1, c.omega2) = (Some(w1), Some(w2));
            c.k = *k;
            c.delta = DeltaSpec::Value(deltas[idx % 3]);
            c.lambda = 2e-3;
            c.t_max = 20.0;
            c.dt = 0.005;
        }
        _ => return Err(unknown()),
    }
    Ok(c)
}
