use super::{factor_u64, GaussInt};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationMode {
    /// One representative per ideal: the primary associate.
    Primary,
    /// All four associates.
    AllAssociates,
}

/// Bitset of squarefree rational integers in `[0, limit]`.
struct SquarefreeSieve {
    limit: u64,
    composite: Vec<u64>,
}

impl SquarefreeSieve {
    const MAX_LIMIT: u64 = 1 << 31;

    fn new(limit: u64) -> Self {
        let limit = limit.min(Self::MAX_LIMIT);
        let mut composite = vec![0u64; (limit as usize >> 6) + 1];
        let mut p = 2u64;
        while p * p <= limit {
            let sq = p * p;
            let mut m = sq;
            while m <= limit {
                composite[(m >> 6) as usize] |= 1 << (m & 63);
                m += sq;
            }
            p += 1;
        }
        SquarefreeSieve { limit, composite }
    }

    fn is_squarefree(&self, n: u64) -> bool {
        if n <= self.limit {
            self.composite[(n >> 6) as usize] & (1 << (n & 63)) == 0
        } else {
            factor_u64(n)
                .map(|f| f.iter().all(|&(_, e)| e == 1))
                .unwrap_or(false)
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// For odd `z = g·w` with `g = gcd(re, im)` and `w` primitive, `z` is
/// squarefree in Z[i] exactly when the rational integer `N(z)/g` is.
fn odd_is_squarefree(z: GaussInt, sieve: &SquarefreeSieve) -> bool {
    let g = gcd_u64(z.re.unsigned_abs(), z.im.unsigned_abs());
    sieve.is_squarefree(z.norm() / g)
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All odd elements with `lo < N(z) <= hi`, sorted by (norm, re, im).
fn odd_in_window(lo: u64, hi: u64) -> Vec<GaussInt> {
    let r = isqrt(hi) as i64;
    let mut out = Vec::new();
    for re in -r..=r {
        let re2 = (re * re) as u64;
        let top = isqrt(hi - re2) as i64;
        // smallest |im| with re² + im² > lo
        let bottom = if lo >= re2 {
            isqrt(lo - re2) as i64 + 1
        } else {
            0
        };
        if bottom > top {
            continue;
        }
        // im and re must have opposite parity
        let mut push = |im: i64| {
            if (re + im) & 1 == 1 {
                out.push(GaussInt::new(re, im));
            }
        };
        for im in bottom..=top {
            push(im);
            if im != 0 {
                push(-im);
            }
        }
    }
    out.sort_unstable_by_key(|z| (z.norm(), z.re, z.im));
    out
}

/// Odd squarefree `d` with `lo < N(d) <= hi`, norm-nondecreasing with ties
/// broken by (re, im).
pub fn enumerate_odd_squarefree_window(lo: u64, hi: u64, mode: EnumerationMode) -> Vec<GaussInt> {
    if hi <= lo {
        return Vec::new();
    }
    let sieve = SquarefreeSieve::new(hi);
    odd_in_window(lo, hi)
        .into_iter()
        .filter(|&z| mode == EnumerationMode::AllAssociates || z.is_primary())
        .filter(|&z| odd_is_squarefree(z, &sieve))
        .collect()
}

/// Every odd squarefree `d` with `N(d) <= max_norm`.
pub fn enumerate_odd_squarefree(max_norm: u64, mode: EnumerationMode) -> Vec<GaussInt> {
    enumerate_odd_squarefree_window(0, max_norm, mode)
}

/// Every odd element (squarefree or not) with `N(z) <= max_norm`.
pub fn enumerate_odd(max_norm: u64, mode: EnumerationMode) -> Vec<GaussInt> {
    odd_in_window(0, max_norm)
        .into_iter()
        .filter(|&z| mode == EnumerationMode::AllAssociates || z.is_primary())
        .collect()
}

/// Odd elements (squarefree or not) with `lo < N(z) <= hi`.
pub fn enumerate_odd_window(lo: u64, hi: u64, mode: EnumerationMode) -> Vec<GaussInt> {
    if hi <= lo {
        return Vec::new();
    }
    odd_in_window(lo, hi)
        .into_iter()
        .filter(|&z| mode == EnumerationMode::AllAssociates || z.is_primary())
        .collect()
}

/// Primary elements with `N(z) <= max_norm`.
pub fn primary_elements(max_norm: u64) -> Vec<GaussInt> {
    enumerate_odd(max_norm, EnumerationMode::Primary)
}

/// A complete residue system modulo an odd `n`: `x + y·i` with
/// `0 <= x < N(n)/g`, `0 <= y < g` where `g = gcd(re, im)`, each reduced
/// by Euclidean division.
pub fn residue_system(n: GaussInt) -> Result<Vec<GaussInt>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("residue_system modulus"));
    }
    if !n.is_odd() {
        return Err(Error::EvenInput("residue_system modulus", n.norm()));
    }
    let norm = n.checked_norm()?;
    let g = gcd_u64(n.re.unsigned_abs(), n.im.unsigned_abs());
    let width = norm / g;
    let mut out = Vec::with_capacity(norm as usize);
    for y in 0..g as i64 {
        for x in 0..width as i64 {
            out.push(GaussInt::new(x, y).reduce(n)?);
        }
    }
    Ok(out)
}
