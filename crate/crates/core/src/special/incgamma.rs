use num_complex::Complex64;

use super::gamma::gamma;
use super::zeta::{exprel, zeta_integer};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const CF_SWITCH: f64 = 1.5;

/// Upper incomplete gamma `Γ(s, x) = ∫_x^∞ t^{s−1} e^{−t} dt` for complex
/// `s` and `x > 0`.
pub fn upper_incomplete_gamma_complex(s: Complex64, x: f64) -> Result<Complex64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "incomplete gamma needs x > 0, got {x}"
        )));
    }
    if x >= CF_SWITCH {
        return continued_fraction(s, x);
    }
    if s.re < -0.5 {
        let n = (-0.5 - s.re).ceil() as usize;
        let mut g = small_x(s + n as f64, x)?;
        let emx = (-x).exp();
        let lx = x.ln();
        for j in (0..n).rev() {
            let sj = s + j as f64;
            g = (g - (sj * lx).exp() * emx) / sj;
        }
        return Ok(g);
    }
    small_x(s, x)
}

/// Real-argument convenience wrapper.
pub fn upper_incomplete_gamma(s: f64, x: f64) -> Result<f64> {
    Ok(upper_incomplete_gamma_complex(Complex64::new(s, 0.0), x)?.re)
}

/// Legendre's continued fraction, evaluated by the modified Lentz method.
fn continued_fraction(s: Complex64, x: f64) -> Result<Complex64> {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(x + 1.0, 0.0) - s;
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..20_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok((s * x.ln() - x).exp() * h);
        }
    }
    Err(Error::Quadrature(format!(
        "incomplete gamma continued fraction at s={s}, x={x}"
    )))
}

/// Series branch for `x < 1.5` and `Re s >= −1/2`.
fn small_x(s: Complex64, x: f64) -> Result<Complex64> {
    let lx = x.ln();
    // Σ_{k>=1} (−1)^k x^{s+k} / (k! (s+k))
    let xs = (s * lx).exp();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = 1.0;
    for k in 1..200 {
        pow *= -x / k as f64;
        let term = xs * pow / (s + k as f64);
        tail += term;
        if term.norm() < 1e-18 * tail.norm().max(1e-300) {
            break;
        }
    }
    if s.norm() >= 0.5 {
        return Ok(gamma(s)? - xs / s - tail);
    }
    // near s = 0: (Γ(1+s) − 1)/s − (x^s − 1)/s − tail, both quotients analytic
    let mut l_over_s = Complex64::new(-EULER_GAMMA, 0.0);
    let mut sp = Complex64::new(1.0, 0.0);
    for k in 2..64 {
        sp *= s;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let term = sp * (sign * zeta_integer(k) / k as f64);
        l_over_s += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    let gamma_part = exprel(l_over_s * s) * l_over_s;
    let power_part = exprel(s * lx) * lx;
    Ok(gamma_part - power_part - tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_forms() {
        for x in [0.01, 0.5, 1.4999, 1.5, 3.0, 20.0] {
            assert!((upper_incomplete_gamma(1.0, x).unwrap() - (-x).exp()).abs() < 1e-15);
            let half = std::f64::consts::PI.sqrt() * libm::erfc(x.sqrt());
            assert!(
                (upper_incomplete_gamma(0.5, x).unwrap() - half).abs() < 1e-14,
                "{x}"
            );
        }
        // E1(1), from the alternating series −γ − ln 1 + Σ (−1)^{k+1}/(k·k!)
        let mut e1 = -EULER_GAMMA;
        let mut fact = 1.0;
        for k in 1..30 {
            fact *= k as f64;
            e1 += if k % 2 == 1 { 1.0 } else { -1.0 } / (k as f64 * fact);
        }
        assert!((upper_incomplete_gamma(0.0, 1.0).unwrap() - e1).abs() < 1e-14);
        assert!((e1 - 0.219_383_9).abs() < 1e-7);
        let g07 = gamma(c(0.7, 0.0)).unwrap().re;
        assert!((upper_incomplete_gamma(0.7, 1e-14).unwrap() - g07).abs() < 1e-9);
    }

    #[test]
    fn recurrence_holds_across_branches() {
        for &s in &[
            c(0.2, 0.0),
            c(-0.3, 4.0),
            c(0.5, -12.0),
            c(1e-9, 1e-9),
            c(-1.7, 0.3),
        ] {
            for x in [0.05, 0.7, 1.49, 1.51, 4.0, 12.0] {
                let lhs = upper_incomplete_gamma_complex(s + 1.0, x).unwrap();
                let rhs =
                    s * upper_incomplete_gamma_complex(s, x).unwrap() + (s * x.ln() - x).exp();
                assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "{s} {x}");
            }
        }
    }

    #[test]
    fn smooth_through_s_zero() {
        let x = 0.3;
        let a = upper_incomplete_gamma(-1e-12, x).unwrap();
        let b = upper_incomplete_gamma(0.0, x).unwrap();
        let c0 = upper_incomplete_gamma(1e-12, x).unwrap();
        assert!((a - b).abs() < 1e-10 && (c0 - b).abs() < 1e-10);
    }
}
