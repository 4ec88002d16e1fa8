//! Run configuration: defaults, flat key=value config files, and CLI
//! overrides.

use crate::error::LabError;
use crate::examples::{example_spec, ExampleSpec};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use swlab_core::combined::InternalKind;
use swlab_core::time_march::SchemeKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeChoice {
    Cu,
    Rbm,
    Aweno,
    RbmCu,
    RbmAweno,
}

impl SchemeChoice {
    pub fn is_combined(&self) -> bool {
        matches!(self, SchemeChoice::RbmCu | SchemeChoice::RbmAweno)
    }

    pub fn internal(&self) -> Option<InternalKind> {
        match self {
            SchemeChoice::RbmCu => Some(InternalKind::Cu),
            SchemeChoice::RbmAweno => Some(InternalKind::Aweno),
            _ => None,
        }
    }

    /// Scheme kind driving the run (combined schemes evolve RBM point
    /// values as their basic solution).
    pub fn marching_kind(&self) -> SchemeKind {
        match self {
            SchemeChoice::Cu => SchemeKind::Cu,
            SchemeChoice::Rbm | SchemeChoice::RbmCu | SchemeChoice::RbmAweno => SchemeKind::Rbm,
            SchemeChoice::Aweno => SchemeKind::Aweno,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SchemeChoice::Cu => "cu",
            SchemeChoice::Rbm => "rbm",
            SchemeChoice::Aweno => "aweno",
            SchemeChoice::RbmCu => "rbm-cu",
            SchemeChoice::RbmAweno => "rbm-aweno",
        }
    }
}

impl FromStr for SchemeChoice {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s.to_ascii_lowercase().as_str() {
            "cu" => Ok(SchemeChoice::Cu),
            "rbm" => Ok(SchemeChoice::Rbm),
            "aweno" | "a-weno" => Ok(SchemeChoice::Aweno),
            "rbm-cu" | "rbm_cu" => Ok(SchemeChoice::RbmCu),
            "rbm-aweno" | "rbm_aweno" | "rbm-a-weno" => Ok(SchemeChoice::RbmAweno),
            other => Err(LabError::config(format!("unknown scheme '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DtMode {
    Adaptive,
    Fixed,
    FixedPow,
}

impl FromStr for DtMode {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s.to_ascii_lowercase().as_str() {
            "adaptive" => Ok(DtMode::Adaptive),
            "fixed" => Ok(DtMode::Fixed),
            "fixed_pow" | "fixed-pow" => Ok(DtMode::FixedPow),
            other => Err(LabError::config(format!("unknown dt_mode '{other}'"))),
        }
    }
}

/// Fully resolved configuration of one run or convergence study.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub example: u8,
    pub scheme: SchemeChoice,
    /// Grid cells for `run`; base (coarsest) N for `converge`.
    pub cells: usize,
    pub t_final: f64,
    pub snapshots: Vec<f64>,
    pub dt_mode: DtMode,
    /// CFL ratio: adaptive stepping for `run`, the fixed-step target for
    /// `converge` and combined runs. `None` takes the context default.
    pub cfl: Option<f64>,
    pub dt: Option<f64>,
    pub kappa: f64,
    pub exponent: f64,
    pub g: f64,
    pub c_visc: f64,
    pub mu: Option<f64>,
    pub weno_p: i32,
    pub weno_eps: f64,
    pub out_dir: PathBuf,
    pub reference_multiplier: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            example: 1,
            scheme: SchemeChoice::Cu,
            cells: 400,
            t_final: f64::NAN, // resolved from the example when unset
            snapshots: Vec::new(),
            dt_mode: DtMode::Adaptive,
            cfl: None,
            dt: None,
            kappa: 1.0,
            exponent: 5.0 / 3.0,
            g: 10.0,
            c_visc: 2.8,
            mu: None,
            weno_p: 2,
            weno_eps: 1e-12,
            out_dir: PathBuf::from("out"),
            reference_multiplier: None,
        }
    }
}

impl RunConfig {
    pub fn spec(&self) -> Result<ExampleSpec, LabError> {
        example_spec(self.example)
    }

    /// Fills unset fields from the example defaults and validates bounds.
    pub fn resolve(mut self) -> Result<Self, LabError> {
        let spec = example_spec(self.example)?;
        if self.t_final.is_nan() {
            self.t_final = *spec
                .default_times
                .last()
                .expect("examples define default times");
        }
        if self.snapshots.is_empty() {
            self.snapshots = spec
                .default_times
                .iter()
                .copied()
                .filter(|&t| t <= self.t_final * (1.0 + 1e-12))
                .collect();
            if self.snapshots.is_empty() {
                self.snapshots.push(self.t_final);
            }
        }
        if self.mu.is_none() {
            self.mu = spec.default_mu;
        }
        if self.scheme.is_combined() && self.mu.is_none() {
            return Err(LabError::config(
                "combined schemes need a detector threshold mu (flag --mu or a combined example 4-6)",
            ));
        }
        if self.cells < 2 {
            return Err(LabError::config(format!("cells must be >= 2 (got {})", self.cells)));
        }
        if !(self.t_final >= 0.0) {
            return Err(LabError::config(format!("t_final must be >= 0 (got {})", self.t_final)));
        }
        if !(self.g > 0.0) {
            return Err(LabError::config(format!("g must be positive (got {})", self.g)));
        }
        if let Some(cfl) = self.cfl {
            if !(cfl > 0.0 && cfl <= 1.0) {
                return Err(LabError::config(format!("cfl must be in (0, 1] (got {cfl})")));
            }
        }
        if let Some(mult) = self.reference_multiplier {
            if mult != 1 && (mult < 2 || !mult.is_power_of_two()) {
                return Err(LabError::config(format!(
                    "reference multiplier must be a power of two >= 2 (got {mult})"
                )));
            }
        }
        if self.weno_p < 1 || !(self.weno_eps > 0.0) {
            return Err(LabError::config("weno_p must be >= 1 and weno_eps positive"));
        }
        Ok(self)
    }

    /// Applies one `key=value` pair (config-file key names).
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), LabError> {
        let bad = |what: &str| LabError::config(format!("bad value '{value}' for {what}"));
        match key {
            "scheme" => self.scheme = value.parse()?,
            "example" => self.example = value.parse().map_err(|_| bad("example"))?,
            "cells" => self.cells = value.parse().map_err(|_| bad("cells"))?,
            "t_final" => self.t_final = value.parse().map_err(|_| bad("t_final"))?,
            "snapshots" => {
                self.snapshots = parse_time_list(value)?;
            }
            "dt_mode" => self.dt_mode = value.parse()?,
            "cfl" => self.cfl = Some(value.parse().map_err(|_| bad("cfl"))?),
            "dt" => self.dt = Some(value.parse().map_err(|_| bad("dt"))?),
            "kappa" => self.kappa = value.parse().map_err(|_| bad("kappa"))?,
            "exponent" => self.exponent = value.parse().map_err(|_| bad("exponent"))?,
            "g" => self.g = value.parse().map_err(|_| bad("g"))?,
            "C" => self.c_visc = value.parse().map_err(|_| bad("C"))?,
            "mu" => self.mu = Some(value.parse().map_err(|_| bad("mu"))?),
            "weno_p" => self.weno_p = value.parse().map_err(|_| bad("weno_p"))?,
            "weno_eps" => self.weno_eps = value.parse().map_err(|_| bad("weno_eps"))?,
            "out_dir" => self.out_dir = PathBuf::from(value),
            "reference_multiplier" => {
                self.reference_multiplier = Some(value.parse().map_err(|_| bad("reference_multiplier"))?)
            }
            other => return Err(LabError::config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Output directory with the `SWLAB_OUT` environment root applied.
    pub fn effective_out_dir(&self) -> PathBuf {
        match std::env::var_os("SWLAB_OUT") {
            Some(root) if self.out_dir.is_relative() => PathBuf::from(root).join(&self.out_dir),
            _ => self.out_dir.clone(),
        }
    }
}

pub fn parse_time_list(s: &str) -> Result<Vec<f64>, LabError> {
    s.split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| LabError::config(format!("bad time '{p}'")))
        })
        .collect()
}

/// Parses a flat `key=value` config file ('#' starts a comment).
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, LabError> {
    let text = std::fs::read_to_string(path)?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(LabError::config(format!(
                "{}:{}: expected key=value, got '{raw}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_roundtrip_and_defaults() {
        let mut cfg = RunConfig::default();
        for (k, v) in [
            ("scheme", "rbm-aweno"),
            ("example", "5"),
            ("cells", "250"),
            ("t_final", "1.0"),
            ("dt_mode", "fixed_pow"),
            ("cfl", "0.4"),
            ("kappa", "0.8"),
            ("g", "10"),
            ("C", "2.5"),
            ("weno_p", "2"),
            ("weno_eps", "1e-12"),
            ("out_dir", "results/ex5"),
        ] {
            cfg.apply_kv(k, v).unwrap();
        }
        let cfg = cfg.resolve().unwrap();
        assert_eq!(cfg.scheme, SchemeChoice::RbmAweno);
        assert_eq!(cfg.mu, Some(0.1)); // example 5 default
        assert_eq!(cfg.snapshots, vec![0.5, 1.0]);
        assert_eq!(cfg.c_visc, 2.5);
    }

    #[test]
    fn rejects_unknown_key_and_bad_values() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_kv("colour", "blue").is_err());
        assert!(cfg.apply_kv("cells", "many").is_err());
        assert!("hllc".parse::<SchemeChoice>().is_err());
    }

    #[test]
    fn rejects_bad_reference_multiplier() {
        let mut cfg = RunConfig::default();
        cfg.apply_kv("reference_multiplier", "3").unwrap();
        assert!(cfg.resolve().is_err());
        let mut cfg = RunConfig::default();
        cfg.apply_kv("reference_multiplier", "8").unwrap();
        assert!(cfg.resolve().is_ok());
    }

    #[test]
    fn combined_needs_mu() {
        let mut cfg = RunConfig::default();
        cfg.apply_kv("scheme", "rbm-cu").unwrap();
        cfg.apply_kv("example", "1").unwrap();
        assert!(cfg.clone().resolve().is_err());
        cfg.apply_kv("mu", "0.2").unwrap();
        assert!(cfg.resolve().is_ok());
    }
}
