use serde::{Deserialize, Serialize};

use super::{gcd, GaussInt};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

/// `unit · (1+i)^dyadic_exponent · Π ϖ^e` with every ϖ primary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: GaussInt,
    pub dyadic_exponent: u32,
    /// Sorted by (norm, re, im).
    pub odd_factors: Vec<(GaussInt, u32)>,
}

impl Factorization {
    pub fn reassemble(&self) -> GaussInt {
        self.odd_factors.iter().fold(
            self.unit * GaussInt::one_plus_i_pow(self.dyadic_exponent),
            |acc, &(p, e)| acc * p.pow(e),
        )
    }

    pub fn is_squarefree(&self) -> bool {
        self.dyadic_exponent <= 1 && self.odd_factors.iter().all(|&(_, e)| e == 1)
    }

    /// Möbius function of the ideal, counting `(1+i)` as a prime.
    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            return 0;
        }
        let k = self.odd_factors.len() + self.dyadic_exponent as usize;
        if k.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Order of `(Z[i]/(z))^×`.
    pub fn phi(&self) -> u64 {
        let mut phi: u64 = if self.dyadic_exponent == 0 {
            1
        } else {
            1u64 << (self.dyadic_exponent - 1)
        };
        for &(p, e) in &self.odd_factors {
            let n = p.norm();
            phi *= n.pow(e - 1) * (n - 1);
        }
        phi
    }

    /// The product of the odd primary factors (the primary generator of the
    /// odd part of the ideal).
    pub fn odd_part(&self) -> GaussInt {
        self.odd_factors
            .iter()
            .fold(GaussInt::ONE, |acc, &(p, e)| acc * p.pow(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicativeInvariants {
    pub mu: i8,
    pub phi: u64,
    pub is_squarefree: bool,
}

/// μ_[i], φ_[i] and square-freeness of an odd element.
pub fn multiplicative_invariants(z: GaussInt) -> Result<MultiplicativeInvariants> {
    if z.is_zero() {
        return Err(Error::ZeroInput("multiplicative_invariants input"));
    }
    if !z.is_odd() {
        return Err(Error::EvenInput(
            "multiplicative_invariants input",
            z.norm(),
        ));
    }
    let f = factor(z)?;
    Ok(MultiplicativeInvariants {
        mu: f.mobius(),
        phi: f.phi(),
        is_squarefree: f.is_squarefree(),
    })
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factor a rational integer by trial division up to 10^6. A leftover
/// cofactor below 10^12 is prime; above that it must pass Miller–Rabin.
pub fn factor_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let orig = n;
    let mut out = Vec::new();
    if n == 0 {
        return Err(Error::ZeroInput("factor_u64 input"));
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p <= TRIAL_LIMIT && p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        if n > TRIAL_LIMIT * TRIAL_LIMIT && !is_prime_u64(n) {
            return Err(Error::FactorizationLimit(orig));
        }
        out.push((n, 1));
    }
    Ok(out)
}

/// A square root of −1 modulo a prime `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one_mod(p: u64) -> u64 {
    debug_assert!(p % 4 == 1);
    let mut c = 2;
    loop {
        if pow_mod(c, (p - 1) / 2, p) == p - 1 {
            return pow_mod(c, (p - 1) / 4, p);
        }
        c += 1;
    }
}

/// The primary prime above a rational prime `p ≡ 1 (mod 4)`; the other one
/// is the primary associate of its conjugate.
fn split_prime_lift(p: u64) -> GaussInt {
    let r = sqrt_minus_one_mod(p);
    gcd(GaussInt::new(p as i64, 0), GaussInt::new(r as i64, 1))
        .expect("nonzero")
        .value()
}

fn assemble(
    z: GaussInt,
    rational: &[(u64, u32)],
    mut lift: impl FnMut(u64) -> GaussInt,
) -> Result<Factorization> {
    let mut rem = z;
    let mut dyadic = 0;
    let mut odd = Vec::with_capacity(rational.len() + 1);
    for &(p, e) in rational {
        if p == 2 {
            dyadic = e;
            let d = GaussInt::one_plus_i_pow(e);
            rem = d.exact_div_of(rem).expect("(1+i)-part divides");
        } else if p % 4 == 3 {
            let q = GaussInt::new(-(p as i64), 0);
            let k = e / 2;
            rem = q.pow(k).exact_div_of(rem).expect("inert part divides");
            odd.push((q, k));
        } else {
            let pi = lift(p);
            let pib = pi.conj().primary_associate()?;
            let mut a = 0;
            while let Some(w) = pi.exact_div_of(rem) {
                rem = w;
                a += 1;
                if a == e {
                    break;
                }
            }
            let b = e - a;
            if b > 0 {
                rem = pib
                    .pow(b)
                    .exact_div_of(rem)
                    .expect("conjugate part divides");
            }
            if a > 0 {
                odd.push((pi, a));
            }
            if b > 0 {
                odd.push((pib, b));
            }
        }
    }
    debug_assert!(rem.is_unit(), "leftover {rem} is not a unit");
    odd.sort_by_key(|&(p, _)| (p.norm(), p.re, p.im));
    Ok(Factorization {
        unit: rem,
        dyadic_exponent: dyadic,
        odd_factors: odd,
    })
}

/// Factor a nonzero Gaussian integer through the factorization of its norm.
pub fn factor(z: GaussInt) -> Result<Factorization> {
    if z.is_zero() {
        return Err(Error::ZeroInput("factor input"));
    }
    let rational = factor_u64(z.checked_norm()?)?;
    assemble(z, &rational, split_prime_lift)
}

/// Sieve-backed factorization for elements whose norm is bounded in advance.
///
/// Holds a smallest-prime-factor table up to `limit` and the primary prime
/// above every split rational prime up to `limit`. Immutable after
/// construction and shareable across workers.
#[derive(Clone, Debug)]
pub struct Factorizer {
    limit: u64,
    spf: Vec<u32>,
    lifts: Vec<(u32, GaussInt)>,
}

impl Factorizer {
    pub fn new(limit: u64) -> Self {
        let n = limit.max(2) as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                if p > si || (p as usize) * i > n {
                    break;
                }
                spf[p as usize * i] = p;
            }
        }
        let lifts = primes
            .iter()
            .filter(|&&p| p % 4 == 1)
            .map(|&p| (p, split_prime_lift(p as u64)))
            .collect();
        Factorizer {
            limit: n as u64,
            spf,
            lifts,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// Rational factorization; falls back to trial division beyond the sieve.
    pub fn factor_u64(&self, mut n: u64) -> Result<Vec<(u64, u32)>> {
        if n > self.limit {
            return factor_u64(n);
        }
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        Ok(out)
    }

    /// Primary prime above a split rational prime.
    pub fn split_lift(&self, p: u64) -> GaussInt {
        match self.lifts.binary_search_by_key(&p, |&(q, _)| q as u64) {
            Ok(k) => self.lifts[k].1,
            Err(_) => split_prime_lift(p),
        }
    }

    pub fn factor(&self, z: GaussInt) -> Result<Factorization> {
        if z.is_zero() {
            return Err(Error::ZeroInput("factor input"));
        }
        let rational = self.factor_u64(z.checked_norm()?)?;
        assemble(z, &rational, |p| self.split_lift(p))
    }

    /// Primary primes ϖ with `N(ϖ) <= bound`, sorted by (norm, re, im).
    pub fn primary_primes(&self, bound: u64) -> Vec<GaussInt> {
        let bound = bound.min(self.limit);
        let mut out = Vec::new();
        for p in 2..=bound {
            if !self.is_prime(p) {
                continue;
            }
            if p % 4 == 1 {
                let pi = self.split_lift(p);
                out.push(pi);
                out.push(pi.conj().primary_associate().expect("odd"));
            } else if p % 4 == 3 && p * p <= bound {
                out.push(GaussInt::new(-(p as i64), 0));
            }
        }
        out.sort_by_key(|p| (p.norm(), p.re, p.im));
        out
    }
}
