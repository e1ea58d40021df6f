//! Exact arithmetic in Z[i].
//!
//! Components are `i64` with checked operations: every arithmetic overflow
//! panics instead of wrapping, and the fallible entry points return
//! [`Error::Overflow`]. Norms up to ~4·10^18 are representable, far beyond
//! what the analytic routines ever touch.

mod enumerate;
mod factor;

pub use enumerate::{
    enumerate_odd, enumerate_odd_squarefree, enumerate_odd_squarefree_window, enumerate_odd_window,
    primary_elements, residue_system, EnumerationMode,
};
pub use factor::{
    factor, factor_u64, is_prime_u64, multiplicative_invariants, sqrt_minus_one_mod, Factorization,
    Factorizer, MultiplicativeInvariants,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Gaussian integer `re + im·i`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

/// `(1+i)^3 = -2 + 2i`; primary means congruent to 1 modulo this element.
pub const PRIMARY_MODULUS: GaussInt = GaussInt::new(-2, 2);

impl GaussInt {
    pub const ZERO: GaussInt = GaussInt::new(0, 0);
    pub const ONE: GaussInt = GaussInt::new(1, 0);
    pub const I: GaussInt = GaussInt::new(0, 1);
    pub const ONE_PLUS_I: GaussInt = GaussInt::new(1, 1);
    pub const UNITS: [GaussInt; 4] = [
        GaussInt::new(1, 0),
        GaussInt::new(0, 1),
        GaussInt::new(-1, 0),
        GaussInt::new(0, -1),
    ];

    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn is_unit(self) -> bool {
        self.re.abs() + self.im.abs() == 1
    }

    /// Odd means coprime to `1+i`, equivalently odd norm.
    pub fn is_odd(self) -> bool {
        (self.re + self.im).rem_euclid(2) == 1
    }

    pub fn checked_norm(self) -> Result<u64> {
        let n = (self.re as i128) * (self.re as i128) + (self.im as i128) * (self.im as i128);
        u64::try_from(n).map_err(|_| Error::Overflow("norm"))
    }

    /// `re² + im²`. Panics on overflow.
    pub fn norm(self) -> u64 {
        self.checked_norm().expect("GaussInt norm overflow")
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    /// Multiplication by `i`.
    pub fn mul_i(self) -> Self {
        GaussInt::new(-self.im, self.re)
    }

    /// `[z, iz, -z, -iz]`.
    pub fn associates(self) -> [GaussInt; 4] {
        let a = self.mul_i();
        [self, a, -self, -a]
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_add(o.re).ok_or(Error::Overflow("add"))?,
            self.im.checked_add(o.im).ok_or(Error::Overflow("add"))?,
        ))
    }

    pub fn checked_sub(self, o: Self) -> Result<Self> {
        Ok(GaussInt::new(
            self.re.checked_sub(o.re).ok_or(Error::Overflow("sub"))?,
            self.im.checked_sub(o.im).ok_or(Error::Overflow("sub"))?,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        let (a, b, c, d) = (self.re as i128, self.im as i128, o.re as i128, o.im as i128);
        let re = i64::try_from(a * c - b * d).map_err(|_| Error::Overflow("mul"))?;
        let im = i64::try_from(a * d + b * c).map_err(|_| Error::Overflow("mul"))?;
        Ok(GaussInt::new(re, im))
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = GaussInt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// `(1+i)^k`, computed in closed form.
    pub fn one_plus_i_pow(k: u32) -> Self {
        // (1+i)^2 = 2i, so (1+i)^(2m) = (2i)^m.
        let m = k / 2;
        let two_m = 1i64.checked_shl(m).expect("(1+i)^k overflow");
        let unit = GaussInt::UNITS[(m % 4) as usize];
        let even = GaussInt::new(unit.re * two_m, unit.im * two_m);
        if k % 2 == 1 {
            even * GaussInt::ONE_PLUS_I
        } else {
            even
        }
    }

    /// Euclidean division with the quotient rounded componentwise to the
    /// nearest integer, so that `norm(r) <= norm(b) / 2`.
    pub fn euclid_divmod(self, b: GaussInt) -> Result<(GaussInt, GaussInt)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = b.norm() as i128;
        let (x, y) = (self.re as i128, self.im as i128);
        let (c, d) = (b.re as i128, b.im as i128);
        // self * conj(b) = (xc + yd) + (yc - xd) i
        let pr = x * c + y * d;
        let pi = y * c - x * d;
        let q = GaussInt::new(round_div(pr, n)?, round_div(pi, n)?);
        let r = self.checked_sub(q.checked_mul(b)?)?;
        Ok((q, r))
    }

    /// Remainder of [`euclid_divmod`](Self::euclid_divmod).
    pub fn reduce(self, m: GaussInt) -> Result<GaussInt> {
        Ok(self.euclid_divmod(m)?.1)
    }

    pub fn divides(self, a: GaussInt) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        self.exact_div_of(a).is_some()
    }

    /// `a / self` when the division is exact.
    pub fn exact_div_of(self, a: GaussInt) -> Option<GaussInt> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm() as i128;
        let (x, y) = (a.re as i128, a.im as i128);
        let (c, d) = (self.re as i128, self.im as i128);
        let pr = x * c + y * d;
        let pi = y * c - x * d;
        if pr % n != 0 || pi % n != 0 {
            return None;
        }
        Some(GaussInt::new(
            i64::try_from(pr / n).ok()?,
            i64::try_from(pi / n).ok()?,
        ))
    }

    /// Congruent to 1 modulo `(1+i)^3`. For odd `a+bi` this is
    /// `(a, b) ≡ (1, 0)` or `(3, 2)` modulo 4.
    pub fn is_primary(self) -> bool {
        let a = self.re.rem_euclid(4);
        let b = self.im.rem_euclid(4);
        (a == 1 && b == 0) || (a == 3 && b == 2)
    }

    /// The unique associate congruent to 1 modulo `(1+i)^3`.
    pub fn primary_associate(self) -> Result<GaussInt> {
        if self.is_zero() {
            return Err(Error::ZeroInput("primary_associate input"));
        }
        if !self.is_odd() {
            return Err(Error::EvenInput("primary_associate input", self.norm()));
        }
        Ok(self
            .associates()
            .into_iter()
            .find(|z| z.is_primary())
            .expect("odd elements have exactly one primary associate"))
    }

    /// Strip the unit: `(1+i)^m · n'` with `n'` primary and `m >= 0`.
    pub fn canonical_generator(self) -> Result<CanonicalGenerator> {
        if self.is_zero() {
            return Err(Error::ZeroInput("canonical_generator input"));
        }
        let (m, odd) = self.split_dyadic();
        let odd = odd.primary_associate()?;
        Ok(CanonicalGenerator(GaussInt::one_plus_i_pow(m) * odd))
    }

    /// Write `self = (1+i)^m · w` with `w` odd. `self` must be nonzero.
    pub fn split_dyadic(self) -> (u32, GaussInt) {
        debug_assert!(!self.is_zero());
        let mut w = self;
        let mut m = 0;
        while !w.is_odd() {
            // (a+bi)/(1+i) = ((a+b) + (b-a)i)/2, exact when a+b is even.
            w = GaussInt::new((w.re + w.im) / 2, (w.im - w.re) / 2);
            m += 1;
        }
        (m, w)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re as f64, self.im as f64)
    }
}

fn round_div(p: i128, q: i128) -> Result<i64> {
    // q > 0: nearest integer to p/q, halves rounded up.
    let r = (2 * p + q).div_euclid(2 * q);
    i64::try_from(r).map_err(|_| Error::Overflow("euclid_divmod"))
}

/// Greatest common divisor, normalised into the generator set.
pub fn gcd(a: GaussInt, b: GaussInt) -> Result<CanonicalGenerator> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut x, mut y) = (a, b);
    while !y.is_zero() {
        let r = x.reduce(y)?;
        x = y;
        y = r;
    }
    x.canonical_generator()
}

/// An element of the generator set: `(1+i)^m · n'` with `n'` primary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalGenerator(GaussInt);

impl CanonicalGenerator {
    pub fn value(self) -> GaussInt {
        self.0
    }

    pub fn dyadic_exponent(self) -> u32 {
        self.0.split_dyadic().0
    }

    pub fn odd_part(self) -> GaussInt {
        self.0.split_dyadic().1
    }
}

impl From<CanonicalGenerator> for GaussInt {
    fn from(c: CanonicalGenerator) -> GaussInt {
        c.0
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        self.checked_add(o).expect("GaussInt overflow")
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        self.checked_sub(o).expect("GaussInt overflow")
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        self.checked_mul(o).expect("GaussInt overflow")
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl From<i64> for GaussInt {
    fn from(n: i64) -> Self {
        GaussInt::new(n, 0)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, 1) => write!(f, "{re}+i"),
            (re, -1) => write!(f, "{re}-i"),
            (re, im) if im > 0 => write!(f, "{re}+{im}i"),
            (re, im) => write!(f, "{re}{im}i"),
        }
    }
}

impl FromStr for GaussInt {
    type Err = Error;

    /// Accepts `3`, `-i`, `2i`, `-1+2i`, `3 - 4i`, and `(a,b)`-free forms
    /// like `5-i`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse Gaussian integer {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not the leading one
            let split = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(k, _)| k)
                .last();
            let (re_part, im_part) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im_part {
                "" | "+" => 1,
                "-" => -1,
                x => x.parse::<i64>().map_err(|_| bad())?,
            };
            let re = re_part.parse::<i64>().map_err(|_| bad())?;
            Ok(GaussInt::new(re, im))
        } else {
            Ok(GaussInt::new(t.parse::<i64>().map_err(|_| bad())?, 0))
        }
    }
}
