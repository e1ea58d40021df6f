use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::gamma::gamma;
use crate::error::{Error, Result};

/// `Σ_{k>=0} (−1)^k a_k` by the Cohen–Rodriguez Villegas–Zagier
/// acceleration with `n` terms; the error decays like `5.83^{-n}`.
fn alternating_sum(n: usize, a: impl Fn(usize) -> Complex64) -> Complex64 {
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

fn terms_for(s: Complex64) -> usize {
    (40.0 + 2.0 * s.im.abs()).ceil() as usize
}

/// Dirichlet eta `Σ (−1)^{k} (k+1)^{−s}`, entire.
pub fn dirichlet_eta(s: Complex64) -> Complex64 {
    alternating_sum(terms_for(s), |k| {
        Complex64::new((k + 1) as f64, 0.0).powc(-s)
    })
}

/// `ζ(s)`, with the functional equation applied for `Re s < 0`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("zeta", "1".into()));
    }
    if s.re < 0.0 {
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let w = 1.0 - s;
        return Ok(Complex64::new(2.0, 0.0).powc(s)
            * Complex64::new(PI, 0.0).powc(s - 1.0)
            * (s * (PI / 2.0)).sin()
            * gamma(w)?
            * zeta(w)?);
    }
    // ζ = η / (1 − 2^{1−s}),  1 − 2^{1−s} = −expm1((1−s) ln 2)
    let denom = -expm1((1.0 - s) * LN_2);
    Ok(dirichlet_eta(s) / denom)
}

/// Dirichlet `L(s, χ_{−4}) = Σ (−1)^k (2k+1)^{−s}`, entire.
pub fn dirichlet_beta(s: Complex64) -> Result<Complex64> {
    if s.re < 0.0 {
        // β(1−w) = (2/π)^w sin(πw/2) Γ(w) β(w)
        let w = 1.0 - s;
        return Ok(Complex64::new(2.0 / PI, 0.0).powc(w)
            * (w * (PI / 2.0)).sin()
            * gamma(w)?
            * dirichlet_beta(w)?);
    }
    Ok(alternating_sum(terms_for(s), |k| {
        Complex64::new((2 * k + 1) as f64, 0.0).powc(-s)
    }))
}

/// Dedekind zeta of Q(i): `ζ(s)·β(s)`.
pub fn zeta_k(s: Complex64) -> Result<Complex64> {
    Ok(zeta(s)? * dirichlet_beta(s)?)
}

/// `ζ(k)` for integers `2 <= k < 64`.
pub fn zeta_integer(k: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        (0..64)
            .map(|k| {
                if k < 2 {
                    f64::NAN
                } else {
                    zeta(Complex64::new(k as f64, 0.0)).expect("k >= 2").re
                }
            })
            .collect()
    });
    t[k]
}

/// `e^z − 1` without cancellation near 0.
pub fn expm1(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        z * exprel(z)
    } else {
        z.exp() - 1.0
    }
}

/// `(e^z − 1)/z`, equal to 1 at `z = 0`.
pub fn exprel(z: Complex64) -> Complex64 {
    if z.norm() >= 0.5 {
        return (z.exp() - 1.0) / z;
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 2..40 {
        term *= z / k as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}
