//! Real-zero scans of `L(σ, χ_{(1+i)^5 d})` on `(0, 1]`, the argument-principle
//! box counter, and the resumable family survey.

mod boxcount;
mod scan;

pub use boxcount::{selberg_box_count, BoxCount, BoxSpec};
pub use scan::{scan_real_zeros, ScanConfig, ScanStatus, SurveyRecord};

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gaussian::{enumerate_odd_squarefree, EnumerationMode, GaussInt};
use crate::special::zeta_k;

pub const CSV_HEADER: &str = "d_re,d_im,norm,num_real_zeros,min_abs_xi,status";

impl SurveyRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6e},{}",
            self.d.re, self.d.im, self.norm, self.num_real_zeros, self.min_abs_xi, self.status
        )
    }
}

/// Norm of the `d` in a CSV row, if the row is well formed.
fn row_norm(row: &str) -> Option<u64> {
    let fields: Vec<&str> = row.split(',').collect();
    if fields.len() != 6 {
        return None;
    }
    fields[2].parse().ok()
}

/// Write `bytes` to a sibling temporary file and rename it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialCounts {
    pub total: u64,
    pub nonvanishing: u64,
    pub suspect: u64,
    pub failed: u64,
}

impl PartialCounts {
    pub fn add(&mut self, r: &SurveyRecord) {
        self.total += 1;
        if r.is_nonvanishing() {
            self.nonvanishing += 1;
        }
        match r.status {
            ScanStatus::Suspect => self.suspect += 1,
            ScanStatus::Failed => self.failed += 1,
            ScanStatus::Clean => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Every `d` with `N(d) <= last_norm` has been processed.
    pub last_norm: u64,
    pub partial_counts: PartialCounts,
    pub config_hash: String,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Io(format!("bad checkpoint {}: {e}", path.display())))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        write_atomic(path, text.as_bytes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub scan: ScanConfig,
    pub mode: EnumerationMode,
    /// A checkpoint is written after at least this many records.
    pub checkpoint_every: usize,
    /// Count `d = 1` (or its associates) in the summary. Unit records are
    /// written to the CSV either way.
    pub include_units: bool,
    /// Largest `max_norm` a survey may be started with.
    pub norm_ceiling: u64,
    #[serde(skip)]
    pub exec: Exec,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            scan: ScanConfig::default(),
            mode: EnumerationMode::Primary,
            checkpoint_every: 100,
            include_units: false,
            norm_ceiling: 20_000,
            exec: Exec::default(),
        }
    }
}

impl SurveyConfig {
    /// SHA-256 of the settings that affect record contents.
    pub fn config_hash(&self) -> String {
        let key = serde_json::json!({
            "scan": self.scan,
            "mode": self.mode,
            "include_units": self.include_units,
        });
        format!("{:x}", Sha256::digest(key.to_string().as_bytes()))
    }
}

/// `2π/(3ζ_K(2))`, the density of odd square-free elements per unit norm
/// counted with all associates; a quarter of it for primary elements.
pub fn expected_density(mode: EnumerationMode) -> Result<f64> {
    let all = 2.0 * PI / (3.0 * zeta_k(Complex64::new(2.0, 0.0))?.re);
    Ok(match mode {
        EnumerationMode::AllAssociates => all,
        EnumerationMode::Primary => all / 4.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub max_norm: u64,
    pub mode: EnumerationMode,
    pub total: u64,
    pub nonvanishing_count: u64,
    pub suspect_count: u64,
    pub failed_count: u64,
    /// `nonvanishing_count / total`.
    pub proportion: f64,
    /// `total / max_norm`.
    pub density_ratio: f64,
    pub expected_density: f64,
}

impl SurveySummary {
    fn from_counts(max_norm: u64, mode: EnumerationMode, c: PartialCounts) -> Result<Self> {
        Ok(SurveySummary {
            max_norm,
            mode,
            total: c.total,
            nonvanishing_count: c.nonvanishing,
            suspect_count: c.suspect,
            failed_count: c.failed,
            proportion: if c.total == 0 {
                0.0
            } else {
                c.nonvanishing as f64 / c.total as f64
            },
            density_ratio: c.total as f64 / max_norm.max(1) as f64,
            expected_density: expected_density(mode)?,
        })
    }
}

/// Count the family without scanning any `L`-function.
pub fn density_report(max_norm: u64, mode: EnumerationMode) -> Result<SurveySummary> {
    let total = enumerate_odd_squarefree(max_norm, mode).len() as u64;
    let counts = PartialCounts {
        total,
        ..Default::default()
    };
    let mut s = SurveySummary::from_counts(max_norm, mode, counts)?;
    s.proportion = f64::NAN;
    Ok(s)
}

/// Scan every odd square-free `d` with `N(d) <= max_norm`.
///
/// With a checkpoint path, an existing checkpoint for the same configuration
/// is resumed: `d` with `N(d) <= last_norm` are skipped and CSV rows beyond
/// `last_norm` are discarded before appending. Records are processed in
/// norm-aligned chunks; after each chunk the CSV is flushed first and the
/// checkpoint replaced second. `on_record` sees the new records in
/// enumeration order.
pub fn run_survey(
    max_norm: u64,
    cfg: &SurveyConfig,
    out: Option<&Path>,
    checkpoint: Option<&Path>,
    mut on_record: impl FnMut(&SurveyRecord),
) -> Result<SurveySummary> {
    if max_norm > cfg.norm_ceiling {
        return Err(Error::InvalidParameter(format!(
            "max norm {max_norm} exceeds the configured ceiling {}",
            cfg.norm_ceiling
        )));
    }
    if cfg.checkpoint_every == 0 {
        return Err(Error::InvalidParameter(
            "checkpoint interval must be positive".into(),
        ));
    }
    let hash = cfg.config_hash();
    let mut state = Checkpoint {
        last_norm: 0,
        partial_counts: PartialCounts::default(),
        config_hash: hash.clone(),
    };
    if let Some(cp) = checkpoint.filter(|p| p.exists()) {
        let loaded = Checkpoint::load(cp)?;
        if loaded.config_hash != hash {
            return Err(Error::InvalidParameter(format!(
                "checkpoint {} was written by a different configuration",
                cp.display()
            )));
        }
        state = loaded;
    }

    if let Some(path) = out {
        let mut text = String::from(CSV_HEADER);
        text.push('\n');
        if state.last_norm > 0 && path.exists() {
            for row in fs::read_to_string(path)?.lines().skip(1) {
                if row_norm(row).is_some_and(|n| n <= state.last_norm) {
                    text.push_str(row);
                    text.push('\n');
                }
            }
        }
        write_atomic(path, text.as_bytes())?;
    }

    let todo: Vec<GaussInt> = enumerate_odd_squarefree(max_norm, cfg.mode)
        .into_iter()
        .filter(|d| d.norm() > state.last_norm)
        .collect();
    let mut start = 0;
    while start < todo.len() {
        let mut end = (start + cfg.checkpoint_every).min(todo.len());
        while end < todo.len() && todo[end].norm() == todo[end - 1].norm() {
            end += 1;
        }
        let chunk = &todo[start..end];
        let records = cfg.exec.map(chunk, |&d| {
            CharacterSpec::new(d).and_then(|s| scan_real_zeros(&s, &cfg.scan))
        });
        let mut rows = String::new();
        for r in records {
            let r = r?;
            if cfg.include_units || r.norm != 1 {
                state.partial_counts.add(&r);
            }
            rows.push_str(&r.csv_row());
            rows.push('\n');
            on_record(&r);
        }
        if let Some(path) = out {
            let mut f = fs::OpenOptions::new().append(true).open(path)?;
            f.write_all(rows.as_bytes())?;
            f.sync_all()?;
        }
        state.last_norm = chunk[chunk.len() - 1].norm();
        if let Some(cp) = checkpoint {
            state.save(cp)?;
        }
        start = end;
    }
    if let Some(cp) = checkpoint {
        state.last_norm = state.last_norm.max(max_norm);
        state.save(cp)?;
    }
    SurveySummary::from_counts(max_norm, cfg.mode, state.partial_counts)
}
