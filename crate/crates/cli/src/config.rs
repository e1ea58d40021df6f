//! `key = value` configuration files. Flags given on the command line take
//! precedence over the file, which takes precedence over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use hecke_core::special::KernelConfig;
use hecke_core::survey::{ScanConfig, SurveyConfig};

use crate::CliError;

pub const KEYS: &[&str] = &[
    "scan.grid_points",
    "scan.refine_tol",
    "scan.suspect_rel",
    "survey.checkpoint_every",
    "survey.norm_ceiling",
    "kernel.contour_offset",
    "kernel.truncation_height",
    "kernel.quadrature_step",
    "kernel.target_abs_error",
    "constant.rel_tol",
    "constant.u_max",
];

#[derive(Clone, Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Resource(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {}: expected key = value",
                    k + 1
                )));
            };
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key {key:?}",
                    k + 1
                )));
            }
            if values
                .insert(key.to_string(), value.trim().to_string())
                .is_some()
            {
                return Err(CliError::Usage(format!(
                    "config line {}: duplicate key {key:?}",
                    k + 1
                )));
            }
        }
        Ok(ConfigFile { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        debug_assert!(KEYS.contains(&key));
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::Usage(format!("config key {key}: cannot parse {v:?}")))
            })
            .transpose()
    }

    /// `flag`, else the file's value for `key`, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    pub fn scan(&self, grid_points: Option<usize>) -> Result<ScanConfig, CliError> {
        let d = ScanConfig::default();
        Ok(ScanConfig {
            grid_points: self.pick(grid_points, "scan.grid_points", d.grid_points)?,
            refine_tol: self.pick(None, "scan.refine_tol", d.refine_tol)?,
            suspect_rel: self.pick(None, "scan.suspect_rel", d.suspect_rel)?,
        })
    }

    pub fn survey(&self, scan: ScanConfig) -> Result<SurveyConfig, CliError> {
        let d = SurveyConfig::default();
        Ok(SurveyConfig {
            scan,
            checkpoint_every: self.pick(None, "survey.checkpoint_every", d.checkpoint_every)?,
            norm_ceiling: self.pick(None, "survey.norm_ceiling", d.norm_ceiling)?,
            ..d
        })
    }

    pub fn kernel(&self) -> Result<KernelConfig, CliError> {
        let d = KernelConfig::default();
        Ok(KernelConfig {
            contour_offset: self.pick(None, "kernel.contour_offset", d.contour_offset)?,
            truncation_height: self.pick(None, "kernel.truncation_height", d.truncation_height)?,
            quadrature_step: self.pick(None, "kernel.quadrature_step", d.quadrature_step)?,
            target_abs_error: self.pick(None, "kernel.target_abs_error", d.target_abs_error)?,
        })
    }
}
