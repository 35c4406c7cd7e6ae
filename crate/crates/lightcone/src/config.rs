//! `key = value` run configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! dipole_strength = 5e-3
//! nu_max = 50
//! points = 400
//! curves = 5, 10, 15
//! ```
//!
//! `nu_max` also moves `z_max_factor` unless that key is given explicitly,
//! so one knob sets the cutoff of both channels.

use std::path::Path;

use lightcone_core::ModelParams;
use thiserror::Error;

use crate::sweep::SweepSpec;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: cannot parse `{value}` for `{key}`")]
    BadValue { line: usize, key: String, value: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub dipole_strength: Option<f64>,
    pub alpha: Option<f64>,
    pub nu_max: Option<f64>,
    pub z_max_factor: Option<f64>,
    pub mode_prefactor: Option<f64>,
    pub points: Option<usize>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub curves: Option<Vec<f64>>,
    pub threads: Option<usize>,
    pub sensitivity: Option<bool>,
    pub cone_refinement: Option<bool>,
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue {
        line,
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn parse_bool(line: usize, key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(ConfigError::BadValue { line, key: key.to_string(), value: value.to_string() }),
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "dipole_strength" => cfg.dipole_strength = Some(parse_num(line, key, value)?),
                "alpha" => cfg.alpha = Some(parse_num(line, key, value)?),
                "nu_max" => cfg.nu_max = Some(parse_num(line, key, value)?),
                "z_max_factor" => cfg.z_max_factor = Some(parse_num(line, key, value)?),
                "mode_prefactor" => cfg.mode_prefactor = Some(parse_num(line, key, value)?),
                "points" => cfg.points = Some(parse_num(line, key, value)?),
                "lo" => cfg.lo = Some(parse_num(line, key, value)?),
                "hi" => cfg.hi = Some(parse_num(line, key, value)?),
                "threads" => cfg.threads = Some(parse_num(line, key, value)?),
                "sensitivity" => cfg.sensitivity = Some(parse_bool(line, key, value)?),
                "cone_refinement" => cfg.cone_refinement = Some(parse_bool(line, key, value)?),
                "curves" => {
                    let list = value
                        .split(',')
                        .map(|v| parse_num(line, key, v.trim()))
                        .collect::<Result<Vec<f64>, _>>()?;
                    cfg.curves = Some(list);
                }
                other => return Err(ConfigError::UnknownKey { line, key: other.to_string() }),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    /// Later values win: `other` overrides `self` field by field.
    pub fn merged(self, other: Config) -> Config {
        Config {
            dipole_strength: other.dipole_strength.or(self.dipole_strength),
            alpha: other.alpha.or(self.alpha),
            nu_max: other.nu_max.or(self.nu_max),
            z_max_factor: other.z_max_factor.or(self.z_max_factor),
            mode_prefactor: other.mode_prefactor.or(self.mode_prefactor),
            points: other.points.or(self.points),
            lo: other.lo.or(self.lo),
            hi: other.hi.or(self.hi),
            curves: other.curves.or(self.curves),
            threads: other.threads.or(self.threads),
            sensitivity: other.sensitivity.or(self.sensitivity),
            cone_refinement: other.cone_refinement.or(self.cone_refinement),
        }
    }

    pub fn params(&self) -> ModelParams {
        let defaults = ModelParams::default();
        let nu_max = self.nu_max.unwrap_or(defaults.nu_max);
        ModelParams {
            dipole_strength: self.dipole_strength.unwrap_or(defaults.dipole_strength),
            alpha: self.alpha.unwrap_or(defaults.alpha),
            nu_max,
            z_max_factor: self.z_max_factor.unwrap_or(nu_max),
            mode_prefactor: self.mode_prefactor.unwrap_or(defaults.mode_prefactor),
        }
    }

    /// Override a preset with whatever this configuration sets.
    pub fn apply(&self, mut spec: SweepSpec) -> SweepSpec {
        spec.params = self.params();
        if let Some(v) = &self.curves {
            spec.fixed_values = v.clone();
        }
        spec.range.0 = self.lo.unwrap_or(spec.range.0);
        spec.range.1 = self.hi.unwrap_or(spec.range.1);
        spec.range.2 = self.points.unwrap_or(spec.range.2);
        spec.sensitivity = self.sensitivity.unwrap_or(spec.sensitivity);
        spec.cone_refinement = self.cone_refinement.unwrap_or(spec.cone_refinement);
        spec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_comments_and_lists() {
        let cfg = Config::parse(
            "# run\n\ndipole_strength = 1e-3\nnu_max=80 # cutoff\ncurves = 5, 10,15\nsensitivity = off\n",
        )
        .unwrap();
        assert_eq!(cfg.dipole_strength, Some(1e-3));
        assert_eq!(cfg.curves, Some(vec![5.0, 10.0, 15.0]));
        assert_eq!(cfg.sensitivity, Some(false));
        let p = cfg.params();
        assert_eq!((p.nu_max, p.z_max_factor), (80.0, 80.0));
    }

    #[test]
    fn explicit_z_max_factor_is_kept() {
        let p = Config::parse("nu_max = 80\nz_max_factor = 30").unwrap().params();
        assert_eq!((p.nu_max, p.z_max_factor), (80.0, 30.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(Config::parse("nu_max 50"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(Config::parse("\nfoo = 1"), Err(ConfigError::UnknownKey { line: 2, .. })));
        assert!(matches!(Config::parse("points = many"), Err(ConfigError::BadValue { .. })));
    }

    #[test]
    fn defaults_reproduce_model_defaults() {
        assert_eq!(Config::default().params(), ModelParams::default());
    }

    #[test]
    fn merge_prefers_the_override() {
        let base = Config::parse("nu_max = 20\npoints = 10").unwrap();
        let over = Config { points: Some(99), ..Config::default() };
        let m = base.merged(over);
        assert_eq!((m.nu_max, m.points), (Some(20.0), Some(99)));
    }
}
