//! Dirichlet coefficients, L-values and the kernel sum `A_{δ,τ}(d)` for the
//! characters `χ_{(1+i)^5 d}`.

mod akernel;
mod lfunction;

pub use akernel::{
    a_kernel_sum, a_kernel_sum_with, kernel_grid_for, AKernelSum, KAPPA, KERNEL_FLOOR,
};
pub use lfunction::{
    dirichlet_series, lfunction_eval, AfeConfig, LFunction, LValueResult, XiProfile,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gaussian::{Factorization, Factorizer, GaussInt};

/// Largest coefficient cutoff a table may be built for.
pub const MAX_CUTOFF: usize = 100_000_000;

/// `a_n = Σ_{m primary, N(m) = n} χ(m)` for `n <= cutoff`, indexed by `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub spec: CharacterSpec,
    pub cutoff: usize,
    pub a: Vec<i32>,
}

impl CoeffTable {
    fn guard(cutoff: usize) -> Result<()> {
        if cutoff == 0 {
            return Err(Error::InvalidParameter(
                "coefficient cutoff must be at least 1".into(),
            ));
        }
        if cutoff > MAX_CUTOFF {
            return Err(Error::MemoryGuard(cutoff));
        }
        Ok(())
    }

    /// Literal construction: walk the primary lattice points of norm at most
    /// `cutoff` and accumulate `χ(m)` into `a_{N(m)}`.
    pub fn build(spec: &CharacterSpec, cutoff: usize, exec: Exec) -> Result<Self> {
        Self::guard(cutoff)?;
        let fz = Factorizer::new(cutoff as u64);
        let r = (cutoff as f64).sqrt() as i64 + 1;
        let rows = exec.map_range((2 * r + 1) as usize, |k| -> Result<Vec<(usize, i8)>> {
            let re = k as i64 - r;
            let mut out = Vec::new();
            for im in -r..=r {
                let m = GaussInt::new(re, im);
                let n = m.norm() as usize;
                if n == 0 || n > cutoff || !m.is_odd() || !m.is_primary() {
                    continue;
                }
                out.push((n, spec.chi_factored(&fz.factor(m)?)));
            }
            Ok(out)
        });
        let mut a = vec![0i32; cutoff + 1];
        for row in rows {
            for (n, c) in row? {
                a[n] += c as i32;
            }
        }
        Ok(CoeffTable {
            spec: spec.clone(),
            cutoff,
            a,
        })
    }

    /// Euler-product construction: `a_n` is multiplicative in `n`, with
    /// `a_{p^k} = Σ_j χ(π)^j χ(π̄)^{k−j}` for split `p = ππ̄`,
    /// `a_{q^{2k}} = χ(−q)^k` and `a_{q^{odd}} = 0` for inert `q`, and
    /// `a_{2^k} = 0`.
    pub fn build_multiplicative(spec: &CharacterSpec, cutoff: usize) -> Result<Self> {
        Self::guard(cutoff)?;
        let fz = Factorizer::new(cutoff as u64);
        let mut a = vec![0i32; cutoff + 1];
        a[1] = 1;
        // χ on the primes above p, filled when p is first reached
        let mut chi1 = vec![0i8; cutoff + 1];
        let mut chi2 = vec![0i8; cutoff + 1];
        for n in 2..=cutoff {
            if n % 2 == 0 {
                continue;
            }
            let fac = fz.factor_u64(n as u64)?;
            let (p, e) = fac[0];
            let p = p as usize;
            if e == 1 && p == n {
                if p % 4 == 1 {
                    let pi = fz.split_lift(p as u64);
                    chi1[p] = spec.chi_prime(pi);
                    chi2[p] = spec.chi_prime(pi.conj().primary_associate()?);
                } else {
                    chi1[p] = spec.chi_prime(GaussInt::new(-(p as i64), 0));
                }
            }
            let pe = p.pow(e);
            let rest = a[n / pe];
            if rest == 0 {
                continue;
            }
            let local = if p % 4 == 1 {
                let (c1, c2) = (chi1[p] as i32, chi2[p] as i32);
                (0..=e).map(|j| c1.pow(j) * c2.pow(e - j)).sum::<i32>()
            } else if e % 2 == 0 {
                (chi1[p] as i32).pow(e / 2)
            } else {
                0
            };
            a[n] = local * rest;
        }
        Ok(CoeffTable {
            spec: spec.clone(),
            cutoff,
            a,
        })
    }

    pub fn get(&self, n: usize) -> i32 {
        self.a.get(n).copied().unwrap_or(0)
    }

    /// `(n, a_n)` for the nonzero coefficients up to `limit`.
    pub fn nonzero(&self, limit: usize) -> Vec<(usize, i32)> {
        (1..=limit.min(self.cutoff))
            .filter(|&n| self.a[n] != 0)
            .map(|n| (n, self.a[n]))
            .collect()
    }
}

/// `r_s(n) = Σ_{ab = n, a, b primary} (N(a)/N(b))^s`, evaluated through
/// `r_s(ϖ^e) = Σ_{j=0}^{e} N(ϖ)^{s(2j−e)}`.
pub fn r_weight(s: Complex64, n: &Factorization) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &(pi, e) in &n.odd_factors {
        let l = (pi.norm() as f64).ln();
        let local: Complex64 = (0..=e)
            .map(|j| (s * (l * (2.0 * j as f64 - e as f64))).exp())
            .sum();
        acc *= local;
    }
    acc
}
