//! The weight `W_{δ,τ}(x) = (1/2πi) ∫_{(c)} Γ_δ(s) x^{−s} 2s/(s² − τ²) ds`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::contour::{line_nodes, KernelConfig};
use super::gamma::gamma_delta;
use crate::error::{Error, Result};

/// Precomputed `w_j · Γ_δ(s_j) · 2s_j/(s_j² − τ²)` on one vertical line.
#[derive(Clone, Debug)]
struct LineRule {
    c: f64,
    nodes: Vec<(f64, Complex64)>,
}

impl LineRule {
    fn new(delta: Complex64, tau: Complex64, c: f64, cfg: &KernelConfig) -> Result<Self> {
        let nodes = line_nodes(cfg.truncation_height, cfg.quadrature_step)
            .into_iter()
            .map(|(t, w)| {
                let s = Complex64::new(c, t);
                let g = gamma_delta(s, delta)? * (2.0 * s) / (s * s - tau * tau);
                Ok((t, g * (w / (2.0 * PI))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LineRule { c, nodes })
    }

    fn eval(&self, x: f64) -> Complex64 {
        let lx = x.ln();
        let scale = (-self.c * lx).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, g) in &self.nodes {
            let (sin, cos) = (t * lx).sin_cos();
            acc += g * Complex64::new(cos, -sin);
        }
        acc * scale
    }
}

/// Direct evaluation of `W_{δ,τ}` by a fixed quadrature rule.
///
/// Two contours are kept: one just right of `|Re τ|` for `x < 1`, where a
/// large offset would amplify rounding by `x^{−c}`, and the configured
/// offset for `x >= 1`. Their disagreement at `x = 1` is recorded as a
/// quadrature error estimate.
#[derive(Clone, Debug)]
pub struct WKernel {
    pub delta: Complex64,
    pub tau: Complex64,
    near: LineRule,
    far: LineRule,
    consistency: f64,
}

impl WKernel {
    pub fn new(delta: Complex64, tau: Complex64, cfg: &KernelConfig) -> Result<Self> {
        cfg.validate()?;
        if cfg.contour_offset <= tau.re.abs() {
            return Err(Error::InvalidParameter(format!(
                "contour offset {} must exceed |Re τ| = {}",
                cfg.contour_offset,
                tau.re.abs()
            )));
        }
        let near_c = (tau.re.abs() + 0.25).min(cfg.contour_offset);
        let near = LineRule::new(delta, tau, near_c, cfg)?;
        let far = LineRule::new(delta, tau, cfg.contour_offset, cfg)?;
        let consistency = (near.eval(1.0) - far.eval(1.0)).norm();
        Ok(WKernel {
            delta,
            tau,
            near,
            far,
            consistency,
        })
    }

    /// `W_{0,0}` with the default configuration.
    pub fn central() -> Self {
        WKernel::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            &KernelConfig::default(),
        )
        .expect("default kernel parameters are valid")
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if x < 1.0 {
            self.near.eval(x)
        } else {
            self.far.eval(x)
        }
    }

    /// Evaluate on an explicit offset, bypassing the automatic choice.
    pub fn eval_on_offset(&self, x: f64, c: f64, cfg: &KernelConfig) -> Result<Complex64> {
        Ok(LineRule::new(self.delta, self.tau, c, cfg)?.eval(x))
    }

    /// Disagreement of the two contours at `x = 1`.
    pub fn consistency_error(&self) -> f64 {
        self.consistency
    }

    /// Leading small-`x` behaviour `Γ_δ(τ)x^{−τ} + Γ_δ(−τ)x^{τ}`; at `τ = 0`
    /// this is the limit `2Γ_δ(0)`.
    pub fn small_x_leading(&self, x: f64) -> Result<Complex64> {
        let lx = x.ln();
        let a = gamma_delta(self.tau, self.delta)? * (-self.tau * lx).exp();
        let b = gamma_delta(-self.tau, self.delta)? * (self.tau * lx).exp();
        Ok(a + b)
    }
}

/// `W_{δ,τ}` tabulated on a geometric grid with six-point Lagrange
/// interpolation in `ln x`; direct evaluation outside the grid.
#[derive(Clone, Debug)]
pub struct WKernelGrid {
    kernel: WKernel,
    ln_lo: f64,
    h: f64,
    values: Vec<Complex64>,
}

pub const GRID_NODES: usize = 4096;
pub const GRID_LO: f64 = 1e-8;
pub const GRID_HI: f64 = 2e3;

impl WKernelGrid {
    pub fn new(kernel: WKernel) -> Self {
        let ln_lo = GRID_LO.ln();
        let h = (GRID_HI.ln() - ln_lo) / (GRID_NODES - 1) as f64;
        let values = (0..GRID_NODES)
            .map(|k| kernel.eval((ln_lo + k as f64 * h).exp()))
            .collect();
        WKernelGrid {
            kernel,
            ln_lo,
            h,
            values,
        }
    }

    pub fn kernel(&self) -> &WKernel {
        &self.kernel
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if !(GRID_LO..=GRID_HI).contains(&x) {
            return self.kernel.eval(x);
        }
        let u = (x.ln() - self.ln_lo) / self.h;
        let base = (u.floor() as isize - 2).clamp(0, GRID_NODES as isize - 6) as usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..6 {
            let mut lj = 1.0;
            for m in 0..6 {
                if m != j {
                    lj *= (u - (base + m) as f64) / (j as f64 - m as f64);
                }
            }
            acc += self.values[base + j] * lj;
        }
        acc
    }
}
