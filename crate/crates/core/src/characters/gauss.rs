use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{prime_symbol, residue_symbol, residue_symbol_factored};
use crate::error::{Error, Result};
use crate::exec::KahanSum;
use crate::gaussian::{factor, residue_system, GaussInt};

/// Largest modulus norm accepted by [`gauss_sum_direct`].
pub const DIRECT_SUM_GUARD: u64 = 1_000_000;

/// `coeff · √radicand` with a square-free radicand; every quadratic Gauss
/// sum modulo an odd `n` has this shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactGauss {
    pub coeff: i64,
    pub radicand: u64,
}

impl ExactGauss {
    pub const ZERO: ExactGauss = ExactGauss {
        coeff: 0,
        radicand: 1,
    };

    pub fn value(self) -> f64 {
        self.coeff as f64 * (self.radicand as f64).sqrt()
    }

    pub fn checked_mul(self, o: ExactGauss) -> Result<ExactGauss> {
        if self.coeff == 0 || o.coeff == 0 {
            return Ok(ExactGauss::ZERO);
        }
        // both radicands square-free: √r1·√r2 = g·√(r1 r2 / g²)
        let g = gcd(self.radicand, o.radicand);
        let coeff = self
            .coeff
            .checked_mul(o.coeff)
            .and_then(|c| c.checked_mul(g as i64))
            .ok_or(Error::Overflow("exact Gauss sum"))?;
        let radicand = (self.radicand / g)
            .checked_mul(o.radicand / g)
            .ok_or(Error::Overflow("exact Gauss sum"))?;
        Ok(ExactGauss { coeff, radicand })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub numeric: Complex64,
    pub exact: Option<ExactGauss>,
}

/// `g(r, n) = Σ_{x mod n} (x/n) ẽ(rx/n)` summed over a complete residue
/// system. The phase `Im(rx/n) = Im(r x n̄)/N(n)` is reduced exactly modulo 1
/// before taking the exponential.
pub fn gauss_sum_direct(r: GaussInt, n: GaussInt) -> Result<GaussSumValue> {
    if n.is_zero() {
        return Err(Error::ZeroInput("Gauss sum modulus"));
    }
    if !n.is_odd() {
        return Err(Error::EvenInput("Gauss sum modulus", n.norm()));
    }
    let norm = n.checked_norm()?;
    if norm > DIRECT_SUM_GUARD {
        return Err(Error::SizeGuard {
            norm,
            limit: DIRECT_SUM_GUARD,
        });
    }
    let fac = factor(n)?;
    let nb = n.conj();
    let rn = r.checked_mul(nb)?;
    let (mut re, mut im) = (KahanSum::default(), KahanSum::default());
    for x in residue_system(n)? {
        let chi = residue_symbol_factored(x, &fac);
        if chi == 0 {
            continue;
        }
        // Im(r n̄ x) as an exact integer, reduced mod N(n)
        let ph = rn.re as i128 * x.im as i128 + rn.im as i128 * x.re as i128;
        let m = ph.rem_euclid(norm as i128) as f64;
        let (s, c) = (2.0 * PI * m / norm as f64).sin_cos();
        re.add(chi as f64 * c);
        im.add(chi as f64 * s);
    }
    Ok(GaussSumValue {
        numeric: Complex64::new(re.value(), im.value()),
        exact: None,
    })
}

/// `g(k, ϖ^l)` for a primary prime `ϖ` and `l >= 1`.
///
/// With `ϖ^h ‖ k` (`h = ∞` for `k = 0`): `φ(ϖ^l)` for even `l <= h`, 0 for odd
/// `l <= h`, `−N(ϖ)^{l−1}` for even `l = h+1`,
/// `(ikϖ^{−h}/ϖ) N(ϖ)^{l−1/2}` for odd `l = h+1`, and 0 for `l >= h+2`.
pub fn gauss_sum_prime_power(k: GaussInt, pi: GaussInt, l: u32) -> Result<ExactGauss> {
    debug_assert!(l >= 1);
    let np = pi.norm();
    let pow = |e: u32| -> Result<i64> {
        np.checked_pow(e)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or(Error::Overflow("Gauss sum prime power"))
    };
    // h = ∞ for k = 0; only l <= h matters, so cap the count at l
    let mut h = 0u32;
    let mut kk = k;
    if k.is_zero() {
        h = u32::MAX;
    } else {
        while h <= l {
            match pi.exact_div_of(kk) {
                Some(q) => {
                    kk = q;
                    h += 1;
                }
                None => break,
            }
        }
    }
    let rational = |coeff: i64| ExactGauss { coeff, radicand: 1 };
    Ok(if l <= h {
        if l % 2 == 1 {
            ExactGauss::ZERO
        } else {
            rational(pow(l)? - pow(l - 1)?)
        }
    } else if l == h + 1 {
        if l.is_multiple_of(2) {
            rational(-pow(l - 1)?)
        } else {
            let sign = prime_symbol(GaussInt::I.checked_mul(kk)?, pi) as i64;
            ExactGauss {
                coeff: sign * pow(l - 1)?,
                radicand: np,
            }
        }
    } else {
        ExactGauss::ZERO
    })
}

/// `g(k, n)` from the prime-power table, multiplicativity over coprime
/// primary moduli, and `g(k, u·n') = (u/n') g(k, n')` for a unit `u`.
pub fn gauss_sum_closed(k: GaussInt, n: GaussInt) -> Result<GaussSumValue> {
    if n.is_zero() {
        return Err(Error::ZeroInput("Gauss sum modulus"));
    }
    if !n.is_odd() {
        return Err(Error::EvenInput("Gauss sum modulus", n.norm()));
    }
    let fac = factor(n)?;
    let primary = n.primary_associate()?;
    let unit = primary
        .exact_div_of(n)
        .expect("associates differ by a unit");
    let mut acc = ExactGauss {
        coeff: residue_symbol(unit, primary)? as i64,
        radicand: 1,
    };
    for &(pi, l) in &fac.odd_factors {
        acc = acc.checked_mul(gauss_sum_prime_power(k, pi, l)?)?;
    }
    Ok(GaussSumValue {
        numeric: Complex64::new(acc.value(), 0.0),
        exact: Some(acc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn direct_examples() {
        let pi = g(-1, 2);
        assert!(gauss_sum_direct(GaussInt::ZERO, pi).unwrap().numeric.norm() < 1e-12);
        let v = gauss_sum_direct(GaussInt::ONE, pi).unwrap().numeric;
        assert!((v - Complex64::new(-5f64.sqrt(), 0.0)).norm() < 1e-12);
        let v = gauss_sum_direct(GaussInt::ONE, GaussInt::ONE)
            .unwrap()
            .numeric;
        assert!((v - 1.0).norm() < 1e-15);
        assert!(matches!(
            gauss_sum_direct(GaussInt::ONE, g(1001, 0)),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn closed_examples() {
        let pi = g(-1, 2);
        assert_eq!(
            gauss_sum_closed(GaussInt::ONE, pi).unwrap().exact,
            Some(ExactGauss {
                coeff: -1,
                radicand: 5
            })
        );
        // l >= h + 2
        assert_eq!(
            gauss_sum_prime_power(GaussInt::ONE, pi, 2).unwrap(),
            ExactGauss::ZERO
        );
        assert_eq!(
            gauss_sum_prime_power(GaussInt::ZERO, pi, 2).unwrap().coeff,
            20
        );
    }

    #[test]
    fn surds_multiply_exactly() {
        let a = ExactGauss {
            coeff: 2,
            radicand: 15,
        };
        let b = ExactGauss {
            coeff: -3,
            radicand: 35,
        };
        assert_eq!(
            a.checked_mul(b).unwrap(),
            ExactGauss {
                coeff: -30,
                radicand: 21
            }
        );
    }
}
