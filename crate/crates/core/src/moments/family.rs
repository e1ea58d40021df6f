use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mollifier::{mollifier_value, MollifierSpec};
use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::exec::{Exec, KahanSum};
use crate::gaussian::{
    enumerate_odd_squarefree_window, enumerate_odd_window, EnumerationMode, Factorization,
    Factorizer, GaussInt,
};
use crate::hecke::{AfeConfig, LFunction};
use crate::special::quadrature::{integrate, Tolerance};
use crate::special::{expm1, zeta_k, SmoothBump};

/// Parameters of the weighted family average over odd square-free `d` with
/// `X <= N(d) <= 2X`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentConfig {
    pub x: f64,
    /// Cutoff splitting `μ²(d) = M_Y(d) + R_Y(d)`; `1 < Y <= √(2X)`.
    pub y: f64,
    pub phi: SmoothBump,
    pub kappa: f64,
    pub r: f64,
    pub s: f64,
}

impl MomentConfig {
    pub fn new(x: f64) -> Result<Self> {
        let kappa = 1e-10;
        let cfg = MomentConfig {
            x,
            y: (2.0 * x).sqrt(),
            phi: SmoothBump::default(),
            kappa,
            r: 6.8,
            s: super::default_s(0.64, kappa),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "X must be at least 1, got {}",
                self.x
            )));
        }
        if !(self.y > 1.0 && self.y <= (2.0 * self.x).sqrt() * (1.0 + 1e-12)) {
            return Err(Error::InvalidParameter(format!(
                "Y must satisfy 1 < Y <= sqrt(2X), got {}",
                self.y
            )));
        }
        if !(self.r > 0.0 && self.s > 0.0) {
            return Err(Error::InvalidParameter("R and S must be positive".into()));
        }
        if !(self.kappa > 0.0 && self.kappa <= 0.01) {
            return Err(Error::InvalidParameter(format!(
                "kappa must lie in (0, 1/100], got {}",
                self.kappa
            )));
        }
        Ok(())
    }

    /// `M = X^{1/2 − 5κ}`.
    pub fn m_length(&self) -> f64 {
        self.x.powf(0.5 - 5.0 * self.kappa)
    }

    /// `σ₀ = 1 + 3 log log M / log M`.
    pub fn sigma0(&self) -> f64 {
        let lm = self.m_length().ln();
        1.0 + 3.0 * lm.ln() / lm
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyVariant {
    /// Weight `μ²(d)`.
    Full,
    /// Weight `M_Y(d)`.
    MPart,
    /// Weight `|R_Y(d)|`, with `|a_d|`.
    RPart,
}

/// `(M_Y(d), R_Y(d)) = (Σ_{ℓ²|d, N(ℓ)<=Y} μ(ℓ), Σ_{ℓ²|d, N(ℓ)>Y} μ(ℓ))` over
/// primary `ℓ`, for odd `d`.
pub fn sieve_weights(d: &Factorization, y: f64) -> (i64, i64) {
    let sq: Vec<u64> = d
        .odd_factors
        .iter()
        .filter(|&&(_, e)| e >= 2)
        .map(|&(p, _)| p.norm())
        .collect();
    let (mut m, mut r) = (0i64, 0i64);
    for mask in 0u32..(1 << sq.len()) {
        let mut norm = 1f64;
        for (j, &p) in sq.iter().enumerate() {
            if mask >> j & 1 == 1 {
                norm *= p as f64;
            }
        }
        let mu = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        if norm <= y {
            m += mu;
        } else {
            r += mu;
        }
    }
    (m, r)
}

fn window(x: f64) -> (u64, u64) {
    (
        (x.ceil() as u64).saturating_sub(1),
        (2.0 * x).floor() as u64,
    )
}

/// `(1/X) Σ_{d odd} w(d) a(d) Φ(N(d)/X)` with `w` selected by the variant,
/// for an arbitrary weight function `Φ` supported in `[1, 2]`.
pub fn family_sum_weighted(
    a: &(dyn Fn(GaussInt) -> f64 + Sync),
    phi: &(dyn Fn(f64) -> f64 + Sync),
    x: f64,
    y: f64,
    variant: FamilyVariant,
    exec: Exec,
) -> Result<f64> {
    let (lo, hi) = window(x);
    let terms: Vec<Result<f64>> = match variant {
        FamilyVariant::Full => {
            let ds = enumerate_odd_squarefree_window(lo, hi, EnumerationMode::AllAssociates);
            exec.map(&ds, |&d| {
                let w = phi(d.norm() as f64 / x);
                Ok(if w == 0.0 { 0.0 } else { a(d) * w })
            })
        }
        FamilyVariant::MPart | FamilyVariant::RPart => {
            let fz = Factorizer::new(hi);
            let ds = enumerate_odd_window(lo, hi, EnumerationMode::AllAssociates);
            exec.map(&ds, |&d| {
                let w = phi(d.norm() as f64 / x);
                if w == 0.0 {
                    return Ok(0.0);
                }
                let (m, r) = sieve_weights(&fz.factor(d)?, y);
                Ok(match variant {
                    FamilyVariant::MPart if m != 0 => m as f64 * a(d) * w,
                    FamilyVariant::RPart if r != 0 => (r as f64 * a(d) * w).abs(),
                    _ => 0.0,
                })
            })
        }
    };
    let mut acc = KahanSum::default();
    for t in terms {
        acc.add(t?);
    }
    Ok(acc.value() / x)
}

/// `S(a; Φ)` and its split parts.
pub fn family_sum(
    a: &(dyn Fn(GaussInt) -> f64 + Sync),
    cfg: &MomentConfig,
    variant: FamilyVariant,
    exec: Exec,
) -> Result<f64> {
    cfg.validate()?;
    let phi = cfg.phi;
    family_sum_weighted(a, &|t| phi.value(t), cfg.x, cfg.y, variant, exec)
}

/// `2π Φ̂(1) / (3 ζ_K(2))`, the limit of `S(1; Φ)` as `X → ∞`.
pub fn s1_main_term(phi: &SmoothBump) -> Result<f64> {
    let area = integrate(
        |t| phi.value(t),
        1.0,
        2.0,
        Tolerance::default().with_initial_panels(8),
    )
    .require("bump integral")?
    .value;
    Ok(2.0 * PI * area / (3.0 * zeta_k(Complex64::new(2.0, 0.0))?.re))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MollifiedRatio {
    pub delta1: Complex64,
    /// `S(|L(½+δ1) M(½+δ1)|²; Φ)`.
    pub numerator: f64,
    /// `S(1; Φ)`.
    pub s1: f64,
    pub ratio: f64,
    pub family_size: usize,
}

/// `S(|L(½+δ1,χ_d) M(½+δ1,d)|²; Φ) / S(1; Φ)`, each `L`-value computed
/// from its own approximate functional equation. `χ_d` depends on `d` only
/// up to sign, since `−1` is a square modulo every odd prime.
pub fn mollified_ratio(
    delta1: Complex64,
    cfg: &MomentConfig,
    mollifier: &MollifierSpec,
    exec: Exec,
) -> Result<MollifiedRatio> {
    cfg.validate()?;
    let (lo, hi) = window(cfg.x);
    let ds: Vec<GaussInt> = enumerate_odd_squarefree_window(lo, hi, EnumerationMode::AllAssociates)
        .into_iter()
        .filter(|d| cfg.phi.value(d.norm() as f64 / cfg.x) != 0.0)
        .collect();
    let reps: Vec<GaussInt> = ds
        .iter()
        .copied()
        .filter(|d| d.re > 0 || (d.re == 0 && d.im > 0))
        .collect();
    let s = delta1 + 0.5;
    let values = exec.map(&reps, |&d| -> Result<(f64, f64)> {
        let spec = CharacterSpec::new(d)?;
        let l = LFunction::new(&spec, AfeConfig::default())?.eval(s)?.l;
        let m = mollifier_value(mollifier, &spec, s)?;
        let w = cfg.phi.value(d.norm() as f64 / cfg.x);
        Ok(((l * m).norm_sqr() * w, w))
    });
    let (mut num, mut den) = (KahanSum::default(), KahanSum::default());
    for v in values {
        let (n, w) = v?;
        // the representative stands for d and −d
        num.add(2.0 * n);
        den.add(2.0 * w);
    }
    let numerator = num.value() / cfg.x;
    let s1 = den.value() / cfg.x;
    Ok(MollifiedRatio {
        delta1,
        numerator,
        s1,
        ratio: numerator / s1,
        family_size: ds.len(),
    })
}

/// Main term of the mollified second moment for `δ2 = δ̄1`:
/// `1 + ((1 − A^{−2τ})/(2τ log M) − A^{−τ}(A^δ − A^{−δ})/(2δ log M)) ∫_0^b M^{−2τ(1−x)} |Q′ + Q″/(2δ1 log M)|² dx`
/// with `A = 2^5 X/π²`, `τ = Re δ1`, `δ = i Im δ1`.
pub fn main_term_prediction(delta1: Complex64, x: f64, mollifier: &MollifierSpec) -> Result<f64> {
    if delta1.norm() == 0.0 {
        return Err(Error::InvalidParameter("the main term needs δ1 ≠ 0".into()));
    }
    let la = (32.0 * x / (PI * PI)).ln();
    let lm = mollifier.m_length.ln();
    let (tau, v) = (delta1.re, delta1.im);
    let first = if tau == 0.0 {
        la / lm
    } else {
        -expm1(Complex64::new(-2.0 * tau * la, 0.0)).re / (2.0 * tau * lm)
    };
    let sinc = if v == 0.0 { la } else { (v * la).sin() / v };
    let second = (-tau * la).exp() * sinc / lm;
    let grad = 2.0 * delta1 * lm;
    let tol = Tolerance {
        abs: 1e-14,
        rel: 1e-13,
        ..Default::default()
    };
    let integral = integrate(
        |t| {
            let g = Complex64::new(mollifier.q1(t), 0.0) + mollifier.q2(t) / grad;
            (-2.0 * tau * lm * (1.0 - t)).exp() * g.norm_sqr()
        },
        0.0,
        mollifier.b,
        tol,
    )
    .require("main-term integral")?;
    Ok(1.0 + (first - second) * integral.value)
}
