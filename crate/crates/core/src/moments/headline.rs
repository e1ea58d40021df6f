use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mollifier::MollifierSpec;
use crate::error::{Error, Result};
use crate::special::quadrature::{integrate, Tolerance};

/// Coefficient in front of the `u,v`-dependent part of `V`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefactor {
    /// `e^{−u}/ρ`, what the `δ1 = (u+iv)/log X` substitution gives.
    #[default]
    MainTerm,
    /// `e^{−u} log X/(2 log M) = e^{−u}/(2ρ)`.
    Halved,
}

/// Denominator of the `Q″` term.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientDenominator {
    /// `2ρ(u+iv)`.
    #[default]
    UPlusIv,
    /// `2ρ(x+iv)` with `x` the integration variable; diverges at `v = 0`.
    XPlusIv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VConvention {
    pub prefactor: Prefactor,
    pub gradient: GradientDenominator,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VValue {
    pub value: f64,
    /// `V − 1`, kept separately for `log V` near 1.
    pub minus_one: f64,
    /// Quadrature error of `V − 1`.
    pub error: f64,
}

/// `e^{−u}(sinh u/u − sin v/v)/(u² + v²)`. Below `|z| = 1` the bracket is
/// summed as `Σ_k (a^k − b^k)/((a − b)(2k+1)!)` with `a = u²`, `b = −v²`.
fn sinc_gap_over_modulus(u: f64, v: f64) -> f64 {
    let r2 = u * u + v * v;
    if r2 >= 1.0 {
        // e^{−u} sinh u/u = (1 − e^{−2u})/(2u) stays finite for large u
        let sh = if u == 0.0 {
            1.0
        } else {
            -(-2.0 * u).exp_m1() / (2.0 * u)
        };
        let sn = if v == 0.0 { 1.0 } else { v.sin() / v };
        return (sh - (-u).exp() * sn) / r2;
    }
    let (a, b) = (u * u, -v * v);
    let mut acc = 0.0;
    // h_k = Σ_{j<k} a^j b^{k−1−j}, via h_{k+1} = a h_k + b^k
    let (mut h, mut bk, mut fact) = (1.0, b, 6.0);
    for k in 1..20 {
        acc += h / fact;
        h = a * h + bk;
        bk *= b;
        fact *= ((2 * k + 2) * (2 * k + 3)) as f64;
    }
    (-u).exp() * acc
}

/// `V(u,v) = 1 + c e^{−u} (sinh u/u − sin v/v) ∫_0^b e^{−2uρ(1−x)} |Q′(x) + Q″(x)/(2ρ z)|² dx`,
/// with `c` and `z` selected by the convention. Removable singularities at
/// `u = 0`, `v = 0` are handled by expanding the squared modulus.
/// The `e^{−u}` factor is folded into the `sinh` term.
pub fn v_formula(
    u: f64,
    v: f64,
    rho: f64,
    mollifier: &MollifierSpec,
    conv: VConvention,
) -> Result<VValue> {
    if !(rho > 0.0 && rho <= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "rho must lie in (0, 1/2], got {rho}"
        )));
    }
    let pref = match conv.prefactor {
        Prefactor::MainTerm => 1.0 / rho,
        Prefactor::Halved => 0.5 / rho,
    };
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-13,
        max_panels: 20_000,
        initial_panels: 4,
    };
    let integral = match conv.gradient {
        GradientDenominator::UPlusIv => {
            // D|Q′ + Q″/(2ρz)|² = D Q′² + E u Q′Q″/ρ + E Q″²/(4ρ²), E = D/|z|²
            let e = sinc_gap_over_modulus(u, v);
            let d = e * (u * u + v * v);
            integrate(
                |x| {
                    let (q1, q2) = (mollifier.q1(x), mollifier.q2(x));
                    let body =
                        d * q1 * q1 + e * u * q1 * q2 / rho + e * q2 * q2 / (4.0 * rho * rho);
                    (-2.0 * u * rho * (1.0 - x)).exp() * body
                },
                0.0,
                mollifier.b,
                tol,
            )
        }
        GradientDenominator::XPlusIv => {
            if v == 0.0 {
                return Err(Error::InvalidParameter(
                    "the (x+iv) reading of V diverges at v = 0".into(),
                ));
            }
            let d = sinc_gap_over_modulus(u, v) * (u * u + v * v);
            integrate(
                |x| {
                    let g = Complex64::new(mollifier.q1(x), 0.0)
                        + mollifier.q2(x) / (2.0 * rho * Complex64::new(x, v));
                    (-2.0 * u * rho * (1.0 - x)).exp() * d * g.norm_sqr()
                },
                0.0,
                mollifier.b,
                tol,
            )
        }
    };
    let integral = integral.require("V integral")?;
    let minus_one = pref * integral.value;
    Ok(VValue {
        value: 1.0 + minus_one,
        minus_one,
        error: pref * integral.error,
    })
}

/// `S = π/(2(1−b)(1−20κ))`.
pub fn default_s(b: f64, kappa: f64) -> f64 {
    PI / (2.0 * (1.0 - b) * (1.0 - 20.0 * kappa))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeadlineConfig {
    pub b: f64,
    pub r: f64,
    /// `None` selects [`default_s`].
    pub s: Option<f64>,
    pub kappa: f64,
    /// Upper limit of the second integral.
    pub u_max: f64,
    /// Relative tolerance of the outer integrals.
    pub rel_tol: f64,
    pub convention: VConvention,
}

impl Default for HeadlineConfig {
    fn default() -> Self {
        HeadlineConfig {
            b: 0.64,
            r: 6.8,
            s: None,
            kappa: 1e-10,
            u_max: 100.0,
            rel_tol: 1e-11,
            convention: VConvention::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeadlineResult {
    /// `(J1 + J2)/(8S sinh(πR/2S))` with `J2` cut at `u_max`.
    pub c: f64,
    pub j1: f64,
    pub j2: f64,
    pub s: f64,
    pub rho: f64,
    /// Extrapolated `∫_{u_max}^∞` of the `J2` integrand, in units of `C`.
    pub tail_estimate: f64,
    /// Quadrature error plus the tail estimate, in units of `C`.
    pub error: f64,
    /// Whether the tail past `u_max` is below `1e-4` in units of `C`.
    pub truncation_ok: bool,
}

/// Largest tail (in units of `C`) accepted as a sufficient truncation.
pub const TAIL_LIMIT: f64 = 1e-4;

/// `C = (∫_0^S cos(πt/2S) log V(−R,t) dt + ∫_0^{u_max} sinh(πu/2S) log V(u−R,S) du) / (8S sinh(πR/2S))`
/// with `ρ = 1/2 − 5κ` and `P(x) = 3(x/b)² − 2(x/b)³`.
pub fn headline_constant(cfg: &HeadlineConfig) -> Result<HeadlineResult> {
    if !(cfg.r > 0.0 && cfg.u_max > 0.0 && cfg.rel_tol > 0.0) {
        return Err(Error::InvalidParameter(
            "R, u_max and the tolerance must be positive".into(),
        ));
    }
    let s = cfg.s.unwrap_or_else(|| default_s(cfg.b, cfg.kappa));
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "S must be positive, got {s}"
        )));
    }
    let rho = 0.5 - 5.0 * cfg.kappa;
    let mollifier = MollifierSpec::cubic(f64::MAX, cfg.b)?;
    let w = PI / (2.0 * s);
    let mut inner_err = 0.0f64;
    let mut failure = None;
    let mut log_v = |u: f64, v: f64| -> f64 {
        match v_formula(u, v, rho, &mollifier, cfg.convention) {
            Ok(val) => {
                inner_err = inner_err.max(val.error / val.value);
                val.minus_one.ln_1p()
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let tol = Tolerance {
        abs: 1e-300,
        rel: cfg.rel_tol,
        max_panels: 10_000,
        initial_panels: 8,
    };
    let j1 = integrate(|t| (w * t).cos() * log_v(-cfg.r, t), 0.0, s, tol);
    let g = |log_v: &mut dyn FnMut(f64, f64) -> f64, u: f64| (w * u).sinh() * log_v(u - cfg.r, s);
    let j2 = integrate(
        |u| g(&mut log_v, u),
        0.0,
        cfg.u_max,
        tol.with_initial_panels(32),
    );
    let g_end = g(&mut log_v, cfg.u_max);
    let g_half = g(&mut log_v, cfg.u_max / 2.0);
    if let Some(e) = failure {
        return Err(e);
    }
    let (j1, j2) = (
        j1.require("first integral")?,
        j2.require("second integral")?,
    );
    let denom = 8.0 * s * (w * cfg.r).sinh();
    // the integrand decays like a power of u; extrapolate it past u_max
    let power = (g_half / g_end).ln() / std::f64::consts::LN_2;
    let tail = if power > 1.5 && g_end.is_finite() {
        g_end.abs() * cfg.u_max / (power - 1.0) / denom
    } else {
        f64::INFINITY
    };
    let quad = (j1.error + j2.error + inner_err * (j1.value.abs() + j2.value.abs())) / denom;
    Ok(HeadlineResult {
        c: (j1.value + j2.value) / denom,
        j1: j1.value,
        j2: j2.value,
        s,
        rho,
        tail_estimate: tail,
        error: quad + tail,
        truncation_ok: tail <= TAIL_LIMIT,
    })
}
