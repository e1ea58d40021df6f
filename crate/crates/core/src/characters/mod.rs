//! Quadratic residue symbols over Z[i], the characters `χ_{(1+i)^5 d}`,
//! quadratic Gauss sums and a two-sided Poisson summation check.

mod gauss;
mod poisson;

pub use gauss::{
    gauss_sum_closed, gauss_sum_direct, gauss_sum_prime_power, ExactGauss, GaussSumValue,
    DIRECT_SUM_GUARD,
};
pub use poisson::{poisson_check, w_tilde, w_tilde_polar, PoissonConfig, PoissonResult};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{factor, Factorization, GaussInt};

/// `ẽ(z) = exp(2πi (z/2i − z̄/2i)) = exp(2πi·Im z)`.
pub fn e_tilde(z: Complex64) -> Complex64 {
    Complex64::cis(2.0 * std::f64::consts::PI * z.im)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: u64, n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// `(a/ϖ)` for a prime `ϖ` (any associate).
///
/// Inert `ϖ = ±q, ±iq`: Frobenius is conjugation, so `a^{(q²−1)/2} = N(a)^{(q−1)/2}`
/// and the symbol is the Legendre symbol of `N(a)`. Split `ϖ = x + yi` of prime
/// norm `p`: `Z[i]/ϖ ≅ F_p` via `i ↦ −x/y`.
pub fn prime_symbol(a: GaussInt, pi: GaussInt) -> i8 {
    let p = pi.norm();
    if pi.re == 0 || pi.im == 0 {
        let q = pi.re.unsigned_abs() + pi.im.unsigned_abs();
        let na =
            (a.re.rem_euclid(q as i64) as u128).pow(2) + (a.im.rem_euclid(q as i64) as u128).pow(2);
        return jacobi((na % q as u128) as u64, q);
    }
    let x = pi.re.rem_euclid(p as i64) as u64;
    let y = pi.im.rem_euclid(p as i64) as u64;
    let y_inv = pow_mod(y, p - 2, p);
    let r = ((p - x) as u128 * y_inv as u128 % p as u128) as u64;
    let v = (a.re.rem_euclid(p as i64) as u128 + a.im.rem_euclid(p as i64) as u128 * r as u128)
        % p as u128;
    jacobi(v as u64, p)
}

/// `(a/ϖ)` by Euler's criterion `a^{(N(ϖ)−1)/2} mod ϖ`; the reference path.
pub fn prime_symbol_euler(a: GaussInt, pi: GaussInt) -> Result<i8> {
    let a = a.reduce(pi)?;
    if a.is_zero() {
        return Ok(0);
    }
    let mut e = (pi.norm() - 1) / 2;
    let mut base = a;
    let mut acc = GaussInt::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.checked_mul(base)?.reduce(pi)?;
        }
        base = base.checked_mul(base)?.reduce(pi)?;
        e >>= 1;
    }
    if (acc - GaussInt::ONE).reduce(pi)?.is_zero() {
        Ok(1)
    } else if (acc + GaussInt::ONE).reduce(pi)?.is_zero() {
        Ok(-1)
    } else {
        Err(Error::InvalidParameter(format!("{pi} is not prime")))
    }
}

/// `(a/n)` given the factorization of an odd `n`.
pub fn residue_symbol_factored(a: GaussInt, n: &Factorization) -> i8 {
    debug_assert_eq!(n.dyadic_exponent, 0);
    let mut s = 1i8;
    for &(pi, e) in &n.odd_factors {
        let v = prime_symbol(a, pi);
        if v == 0 {
            return 0;
        }
        if e % 2 == 1 {
            s *= v;
        }
    }
    s
}

/// Quadratic residue symbol `(a/n)` for odd `n`, multiplicative in `n`,
/// with `(a/u) = 1` for units.
pub fn residue_symbol(a: GaussInt, n: GaussInt) -> Result<i8> {
    if n.is_zero() {
        return Err(Error::ZeroInput("residue symbol modulus"));
    }
    if !n.is_odd() {
        return Err(Error::EvenInput("residue symbol modulus", n.norm()));
    }
    if n.is_unit() {
        return Ok(1);
    }
    Ok(residue_symbol_factored(a, &factor(n)?))
}

/// The quadratic character `χ(a) = ((1+i)^5 d / a)` attached to an odd
/// square-free `d`. It vanishes on every `a` divisible by `1+i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub d: GaussInt,
    pub modulus: GaussInt,
    pub conductor_norm: u64,
    /// `2^5 N(d) / π²`.
    pub conductor_a: f64,
}

impl CharacterSpec {
    pub fn new(d: GaussInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroInput("character parameter d"));
        }
        if !d.is_odd() {
            return Err(Error::EvenInput("character parameter d", d.norm()));
        }
        if !factor(d)?.is_squarefree() {
            return Err(Error::NotSquareFree(d));
        }
        let modulus = GaussInt::one_plus_i_pow(5).checked_mul(d)?;
        let conductor_norm = 32 * d.norm();
        Ok(CharacterSpec {
            d,
            modulus,
            conductor_norm,
            conductor_a: conductor_norm as f64 / (std::f64::consts::PI * std::f64::consts::PI),
        })
    }

    pub fn chi(&self, a: GaussInt) -> Result<i8> {
        if a.is_zero() || !a.is_odd() {
            return Ok(0);
        }
        residue_symbol(self.modulus, a)
    }

    /// `χ(ϖ)` for an odd prime `ϖ`.
    pub fn chi_prime(&self, pi: GaussInt) -> i8 {
        prime_symbol(self.modulus, pi)
    }

    /// `χ(a)` when the factorization of odd `a` is already known.
    pub fn chi_factored(&self, a: &Factorization) -> i8 {
        if a.dyadic_exponent > 0 {
            return 0;
        }
        residue_symbol_factored(self.modulus, a)
    }
}

/// `χ_{(1+i)^5 d}(a)`.
pub fn chi_value(spec: &CharacterSpec, a: GaussInt) -> Result<i8> {
    spec.chi(a)
}
