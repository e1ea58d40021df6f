use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::quadrature::{gauss_legendre, integrate, Tolerance};

/// The rectangle with vertices `W0 ± iH`, `W1 ± iH`, and an abscissa `W`
/// right of which the function is known not to vanish.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxSpec {
    pub w0: f64,
    pub w1: f64,
    pub h: f64,
    pub w: f64,
}

impl BoxSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "box height must be positive, got {}",
                self.h
            )));
        }
        if !(self.w0 < self.w && self.w < self.w1) {
            return Err(Error::InvalidParameter(format!(
                "box needs W0 < W < W1, got {} < {} < {}",
                self.w0, self.w, self.w1
            )));
        }
        Ok(())
    }

    /// `4H cos(πγ/2H) sinh(π(β−W0)/2H)`, the weight of a zero `β + iγ`.
    pub fn zero_weight(&self, z: Complex64) -> f64 {
        let k = PI / (2.0 * self.h);
        4.0 * self.h * (k * z.im).cos() * (k * (z.re - self.w0)).sinh()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxCount {
    /// `4H Σ cos(πγ/2H) sinh(π(β−W0)/2H)` over zeros in the box, as implied
    /// by the boundary integrals.
    pub weighted_zero_sum: f64,
    /// Left edge, horizontal edges, right edge.
    pub breakdown: [f64; 3],
}

/// Most panels the right-edge rule may use before giving up on tracking.
const MAX_EDGE_PANELS: usize = 1 << 14;

/// `−Re ∫_{−H}^{H} cos(π(W1−W0+it)/(2iH)) log f(W1+it) dt` on `n` equal
/// Gauss–Legendre panels, with `arg f` continued from node to node. `None`
/// when some step moves the argument by `π/2` or more.
fn right_edge(
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    bx: &BoxSpec,
    panels: usize,
    rule: &(Vec<f64>, Vec<f64>),
) -> Result<Option<f64>> {
    let (gx, gw) = rule;
    let step = 2.0 * bx.h / panels as f64;
    let mut prev: Option<f64> = None;
    let mut acc = Complex64::new(0.0, 0.0);
    let denom = Complex64::new(0.0, 2.0 * bx.h);
    for p in 0..panels {
        let mid = -bx.h + (p as f64 + 0.5) * step;
        for (x, w) in gx.iter().zip(gw) {
            let t = mid + 0.5 * step * x;
            let v = f(Complex64::new(bx.w1, t))?;
            if v == Complex64::new(0.0, 0.0) || !v.is_finite() {
                return Err(Error::BranchTracking(t));
            }
            let mut arg = v.arg();
            if let Some(q) = prev {
                arg += 2.0 * PI * ((q - arg) / (2.0 * PI)).round();
                if (arg - q).abs() >= FRAC_PI_2 {
                    return Ok(None);
                }
            }
            prev = Some(arg);
            let log = Complex64::new(v.norm().ln(), arg);
            let weight = (Complex64::new(bx.w1 - bx.w0, t) / denom * PI).cos();
            acc += weight * log * (0.5 * step * w);
        }
    }
    Ok(Some(-acc.re))
}

/// Evaluate the three boundary integrals of the argument-principle identity
///
/// ```text
/// 4H Σ cos(πγ/2H) sinh(π(β−W0)/2H) = ∫ cos(πt/2H) log|f(W0+it)| dt
///     + ∫ sinh(π(α−W0)/2H) log|f(α+iH) f(α−iH)| dα
///     − Re ∫ cos(π(W1−W0+it)/(2iH)) log f(W1+it) dt
/// ```
pub fn selberg_box_count(
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    bx: &BoxSpec,
    quad_tol: f64,
) -> Result<BoxCount> {
    bx.validate()?;
    if !(quad_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {quad_tol}"
        )));
    }
    let k = PI / (2.0 * bx.h);
    let mut failure: Option<Error> = None;
    let mut log_abs = |z: Complex64| -> f64 {
        match f(z) {
            Ok(v) => v.norm().ln(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let tol = Tolerance {
        abs: quad_tol,
        rel: 0.0,
        max_panels: 20_000,
        initial_panels: 8,
    };
    let left = integrate(
        |t| (k * t).cos() * log_abs(Complex64::new(bx.w0, t)),
        -bx.h,
        bx.h,
        tol,
    );
    let sides = integrate(
        |a| {
            let top = log_abs(Complex64::new(a, bx.h));
            let bottom = log_abs(Complex64::new(a, -bx.h));
            (k * (a - bx.w0)).sinh() * (top + bottom)
        },
        bx.w0,
        bx.w1,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let left = left.require("left edge")?.value;
    let sides = sides.require("horizontal edges")?.value;

    let rule = gauss_legendre(16);
    let mut panels = 4;
    let mut last: Option<f64> = None;
    let right = loop {
        if panels > MAX_EDGE_PANELS {
            return Err(Error::Quadrature(format!(
                "right edge did not settle to {quad_tol}"
            )));
        }
        match right_edge(f, bx, panels, &rule)? {
            None => {}
            Some(v) => {
                if let Some(prev) = last {
                    if (v - prev).abs() <= quad_tol {
                        break v;
                    }
                }
                last = Some(v);
            }
        }
        panels *= 2;
    };
    Ok(BoxCount {
        weighted_zero_sum: left + sides + right,
        breakdown: [left, sides, right],
    })
}
