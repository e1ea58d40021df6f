use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::gauss_legendre;
use crate::error::{Error, Result};

/// Discretisation of an integral along the vertical line `Re s = c`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub contour_offset: f64,
    /// The integral is taken over `|Im s| <= truncation_height`.
    pub truncation_height: f64,
    /// Width of each Gauss–Legendre panel.
    pub quadrature_step: f64,
    pub target_abs_error: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            contour_offset: 1.0,
            truncation_height: 40.0,
            quadrature_step: 0.25,
            target_abs_error: 1e-10,
        }
    }
}

impl KernelConfig {
    /// The default configuration with the offset moved right of `|Re τ|`.
    pub fn for_tau(tau: Complex64) -> Self {
        KernelConfig {
            contour_offset: (tau.re.abs() + 0.25).max(1.0),
            ..Default::default()
        }
    }

    pub fn with_offset(mut self, c: f64) -> Self {
        self.contour_offset = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.truncation_height > 0.0
            && self.quadrature_step > 0.0
            && self.quadrature_step <= self.truncation_height
            && self.target_abs_error > 0.0
            && self.contour_offset.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "invalid kernel config {self:?}"
            )))
        }
    }
}

pub const PANEL_POINTS: usize = 16;

/// Heights `t_j` and weights `w_j` of the composite rule on `[−T, T]`.
pub fn line_nodes(truncation_height: f64, step: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(PANEL_POINTS);
    let panels = (2.0 * truncation_height / step).ceil() as usize;
    let h = 2.0 * truncation_height / panels as f64;
    let mut out = Vec::with_capacity(panels * PANEL_POINTS);
    for p in 0..panels {
        let mid = -truncation_height + (p as f64 + 0.5) * h;
        for (xi, wi) in x.iter().zip(&w) {
            out.push((mid + 0.5 * h * xi, 0.5 * h * wi));
        }
    }
    out
}

/// A contour integral with its error estimate.
#[derive(Clone, Copy, Debug)]
pub struct ContourResult {
    pub value: Complex64,
    pub error: f64,
}

fn composite(f: &impl Fn(Complex64) -> Complex64, c: f64, t: f64, step: f64) -> Complex64 {
    line_nodes(t, step)
        .into_iter()
        .map(|(tj, wj)| f(Complex64::new(c, tj)) * wj)
        .sum::<Complex64>()
        / (2.0 * std::f64::consts::PI)
}

/// `(1/2πi) ∫_{(c)} f(s) ds`, truncated at `|Im s| = T`.
///
/// The panel width is halved until two successive rules agree to the
/// target; the tail beyond `T` is estimated from `|f(c ± iT)|`.
pub fn vertical_line_integral(
    f: impl Fn(Complex64) -> Complex64,
    cfg: &KernelConfig,
) -> Result<ContourResult> {
    cfg.validate()?;
    let c = cfg.contour_offset;
    let t = cfg.truncation_height;
    let tail = (f(Complex64::new(c, t)).norm() + f(Complex64::new(c, -t)).norm())
        / (2.0 * std::f64::consts::PI);
    let mut step = cfg.quadrature_step;
    let mut coarse = composite(&f, c, t, step);
    for _ in 0..6 {
        step /= 2.0;
        let fine = composite(&f, c, t, step);
        let diff = (fine - coarse).norm();
        if diff <= cfg.target_abs_error {
            return Ok(ContourResult {
                value: fine,
                error: diff + tail,
            });
        }
        coarse = fine;
    }
    Err(Error::Quadrature(format!(
        "vertical line integral at c = {c} did not settle"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;

    #[test]
    fn inverse_mellin_of_gamma_is_exponential() {
        let x: f64 = 1.0;
        let f = |s: Complex64| gamma(s).unwrap() * (-s * x.ln()).exp();
        let cfg = KernelConfig::default().with_offset(2.0);
        let r = vertical_line_integral(f, &cfg).unwrap();
        assert!((r.value.re - (-1.0f64).exp()).abs() < 1e-10);
        assert!(r.value.im.abs() < 1e-12);
        let r1 = vertical_line_integral(f, &cfg.with_offset(1.0)).unwrap();
        let r3 = vertical_line_integral(f, &cfg.with_offset(3.0)).unwrap();
        assert!((r1.value - r3.value).norm() < 1e-10);
    }
}
