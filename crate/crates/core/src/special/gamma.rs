use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    // Γ(z) = √(2π) t^(z-1/2) e^(-t) A(z-1),  t = z - 1/2 + g
    let zm1 = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (zm1 + 0.5) * t.ln() - t + a.ln()
}

/// Principal branch of ln Γ(z).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole("Gamma", z.to_string()));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_ln_gamma(z));
    }
    // ln Γ(z) = ln Γ(z + n) − Σ_{k<n} ln(z + k), continuous off the negative axis
    let n = (0.5 - z.re).ceil() as usize;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    Ok(lanczos_ln_gamma(z + n as f64) - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 {
        return gamma_real(z.re).map(|g| Complex64::new(g, 0.0));
    }
    Ok(ln_gamma(z)?.exp())
}

/// Γ on the real line, keeping the sign for negative arguments.
pub fn gamma_real(x: f64) -> Result<f64> {
    if is_pole(Complex64::new(x, 0.0)) {
        return Err(Error::Pole("Gamma", x.to_string()));
    }
    if x >= 0.5 {
        return Ok(lanczos_ln_gamma(Complex64::new(x, 0.0)).re.exp());
    }
    // reflection: Γ(x)Γ(1−x) = π / sin(πx)
    let s = (std::f64::consts::PI * x).sin();
    Ok(std::f64::consts::PI / (s * gamma_real(1.0 - x)?))
}

/// `Γ(1/2 + s + δ) Γ(1/2 + s − δ)`.
pub fn gamma_delta(s: Complex64, delta: Complex64) -> Result<Complex64> {
    Ok((ln_gamma(s + 0.5 + delta)? + ln_gamma(s + 0.5 - delta)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap().re - 1.0).abs() < 1e-14);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(c(10.0, 0.0)).unwrap().re / 362_880.0 - 1.0).abs() < 1e-13);
        assert!((gamma_real(-0.5).unwrap() + 2.0 * PI.sqrt()).abs() < 1e-13);
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(Error::Pole(..))));
        assert!((gamma_delta(c(0.0, 0.0), c(0.0, 0.0)).unwrap().re - PI).abs() < 1e-13);
    }

    #[test]
    fn recurrence_and_reflection() {
        for &z in &[
            c(0.3, 2.0),
            c(-2.7, 0.4),
            c(4.0, -30.0),
            c(0.01, -0.02),
            c(-7.5, 11.0),
        ] {
            let lhs = ln_gamma(z + 1.0).unwrap();
            let rhs = ln_gamma(z).unwrap() + z.ln();
            // same value modulo 2πi
            let d = lhs - rhs;
            let k = (d.im / (2.0 * PI)).round();
            assert!((d - c(0.0, 2.0 * PI * k)).norm() < 1e-12, "{z}");
            let refl = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (PI * z).sin();
            assert!((refl - PI).norm() < 1e-10 * refl.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn principal_branch_is_continuous() {
        // im part of ln Γ varies slowly along a horizontal line crossing Re z = 1/2
        let mut prev = ln_gamma(c(-3.0, 1.0)).unwrap();
        for k in 1..=800 {
            let z = c(-3.0 + k as f64 * 0.01, 1.0);
            let cur = ln_gamma(z).unwrap();
            assert!((cur.im - prev.im).abs() < 0.1, "{z}");
            prev = cur;
        }
    }
}
