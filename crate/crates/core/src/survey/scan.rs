use std::fmt;

use serde::{Deserialize, Serialize};

use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::gaussian::GaussInt;
use crate::hecke::{AfeConfig, LFunction, XiProfile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Points of the uniform grid over `[0, 1]`.
    pub grid_points: usize,
    /// Final bracket width of a refined zero.
    pub refine_tol: f64,
    /// `|ξ|` below this multiple of `max |ξ|` at a local minimum without a
    /// sign change marks a record as suspect.
    pub suspect_rel: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            grid_points: 512,
            refine_tol: 1e-10,
            suspect_rel: 1e-6,
        }
    }
}

/// Points of the local grid used to re-examine a suspect minimum.
const LOCAL_GRID: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Clean,
    Suspect,
    Failed,
}

impl fmt::Display for ScanStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanStatus::Clean => "clean",
            ScanStatus::Suspect => "suspect",
            ScanStatus::Failed => "failed",
        })
    }
}

impl std::str::FromStr for ScanStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clean" => Ok(ScanStatus::Clean),
            "suspect" => Ok(ScanStatus::Suspect),
            "failed" => Ok(ScanStatus::Failed),
            _ => Err(Error::InvalidParameter(format!(
                "unknown scan status {s:?}"
            ))),
        }
    }
}

/// Outcome of scanning `ξ(σ, χ_{(1+i)^5 d})` for real zeros in `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub d: GaussInt,
    pub norm: u64,
    pub num_real_zeros: usize,
    pub min_abs_xi: f64,
    pub suspect_flag: bool,
    /// `(σ, bracket width)` of each refined sign change.
    pub zero_locations: Vec<(f64, f64)>,
    pub status: ScanStatus,
}

impl SurveyRecord {
    /// No real zero in `(0, 1]` and nothing suspicious.
    pub fn is_nonvanishing(&self) -> bool {
        self.status == ScanStatus::Clean && self.num_real_zeros == 0
    }

    fn failed(d: GaussInt) -> Self {
        SurveyRecord {
            d,
            norm: d.norm(),
            num_real_zeros: 0,
            min_abs_xi: f64::NAN,
            suspect_flag: false,
            zero_locations: Vec::new(),
            status: ScanStatus::Failed,
        }
    }
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> (f64, f64) {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return (mid, 0.0);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi), hi - lo)
}

/// Sign changes of `f` between consecutive samples, refined by bisection.
/// An exact zero at a sample is reported with width 0.
fn sign_changes(
    f: &impl Fn(f64) -> f64,
    xs: &[f64],
    vs: &[f64],
    tol: f64,
    out: &mut Vec<(f64, f64)>,
) {
    for k in 0..xs.len() {
        if vs[k] == 0.0 && xs[k] > 0.0 {
            out.push((xs[k], 0.0));
        }
        if k + 1 < xs.len()
            && vs[k] != 0.0
            && vs[k + 1] != 0.0
            && (vs[k] > 0.0) != (vs[k + 1] > 0.0)
        {
            out.push(bisect(f, xs[k], xs[k + 1], vs[k], tol));
        }
    }
}

/// Scan `ξ(σ)` on a uniform grid over `[0, 1]` (with `ξ(0) = ξ(1)`), refine
/// every sign change by bisection and re-examine near-zero local minima on a
/// denser local grid.
pub fn scan_real_zeros(spec: &CharacterSpec, cfg: &ScanConfig) -> Result<SurveyRecord> {
    if cfg.grid_points < 64 {
        return Err(Error::InvalidParameter(format!(
            "scan needs at least 64 grid points, got {}",
            cfg.grid_points
        )));
    }
    if !(cfg.refine_tol > 0.0 && cfg.suspect_rel > 0.0) {
        return Err(Error::InvalidParameter(
            "scan tolerances must be positive".into(),
        ));
    }
    let lf = match LFunction::new(spec, AfeConfig::default()) {
        Ok(lf) => lf,
        Err(Error::MemoryGuard(_))
        | Err(Error::FactorizationLimit(_))
        | Err(Error::Overflow(_)) => return Ok(SurveyRecord::failed(spec.d)),
        Err(e) => return Err(e),
    };
    let prof = XiProfile::new(&lf);
    let xi = |s: f64| if s == 0.0 { prof.xi(1.0) } else { prof.xi(s) };
    let g = cfg.grid_points;
    let xs: Vec<f64> = (0..g).map(|k| k as f64 / (g - 1) as f64).collect();
    let vs: Vec<f64> = xs.iter().map(|&s| xi(s)).collect();
    if vs.iter().any(|v| !v.is_finite()) {
        return Ok(SurveyRecord::failed(spec.d));
    }
    let scale = vs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut min_abs = vs.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let mut zeros = Vec::new();
    sign_changes(&xi, &xs, &vs, cfg.refine_tol, &mut zeros);

    let threshold = cfg.suspect_rel * scale;
    let mut suspect = false;
    for k in 1..g - 1 {
        let (a, b, c) = (vs[k - 1], vs[k], vs[k + 1]);
        let local_min = b.abs() <= a.abs() && b.abs() <= c.abs();
        let same_sign = (a > 0.0) == (b > 0.0) && (b > 0.0) == (c > 0.0) && b != 0.0;
        if !(local_min && same_sign && b.abs() < threshold) {
            continue;
        }
        let (lo, hi) = (xs[k - 1], xs[k + 1]);
        let lx: Vec<f64> = (0..LOCAL_GRID)
            .map(|j| lo + (hi - lo) * j as f64 / (LOCAL_GRID - 1) as f64)
            .collect();
        let lv: Vec<f64> = lx.iter().map(|&s| xi(s)).collect();
        let before = zeros.len();
        sign_changes(&xi, &lx, &lv, cfg.refine_tol, &mut zeros);
        let local = lv.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        min_abs = min_abs.min(local);
        if zeros.len() == before && local < threshold {
            suspect = true;
        }
    }
    zeros.sort_by(|a, b| a.0.total_cmp(&b.0));
    zeros.dedup_by(|a, b| (a.0 - b.0).abs() <= cfg.refine_tol);
    Ok(SurveyRecord {
        d: spec.d,
        norm: spec.d.norm(),
        num_real_zeros: zeros.len(),
        min_abs_xi: min_abs,
        suspect_flag: suspect,
        zero_locations: zeros,
        status: if suspect {
            ScanStatus::Suspect
        } else {
            ScanStatus::Clean
        },
    })
}
