use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::r_weight;
use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::exec::{Exec, KahanSum};
use crate::gaussian::{Factorizer, GaussInt};
use crate::special::{KernelConfig, WKernel, WKernelGrid, GRID_HI};

/// Largest `|δ1|`, `|δ2|` accepted.
pub const KAPPA: f64 = 0.01;

/// Kernel magnitude below which the sum over `n` stops.
pub const KERNEL_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AKernelSum {
    pub value: Complex64,
    /// Kernel argument at which the sum was cut.
    pub x_cut: f64,
    pub norm_cut: u64,
    /// Number of `n` with `χ(n) ≠ 0` that were summed.
    pub terms: usize,
}

/// Smallest `x` on a step-10 scan where the kernel and the next sample both
/// drop below [`KERNEL_FLOOR`].
fn kernel_cut(grid: &WKernelGrid) -> Result<f64> {
    let mut x = 10.0;
    while x + 10.0 <= GRID_HI {
        if grid.eval(x).norm() < KERNEL_FLOOR && grid.eval(x + 10.0).norm() < KERNEL_FLOOR {
            return Ok(x);
        }
        x += 10.0;
    }
    Err(Error::InvalidParameter(format!(
        "kernel does not decay below {KERNEL_FLOOR} inside the grid range x <= {GRID_HI}"
    )))
}

/// `A_{δ,τ}(d) = Σ_{n primary} r_δ(n) N(n)^{−1/2} χ(n) W_{δ,τ}(N(n)/A)` with a
/// precomputed kernel grid for `δ = (δ1−δ2)/2`, `τ = (δ1+δ2)/2`.
pub fn a_kernel_sum_with(
    spec: &CharacterSpec,
    grid: &WKernelGrid,
    exec: Exec,
) -> Result<AKernelSum> {
    let delta = grid.kernel().delta;
    let a = spec.conductor_a;
    let x_cut = kernel_cut(grid)?;
    let norm_cut = (x_cut * a).floor() as u64;
    let fz = Factorizer::new(norm_cut);
    let r = (norm_cut as f64).sqrt() as i64 + 1;
    let rows = exec.map_range((2 * r + 1) as usize, |k| -> Result<(f64, f64, usize)> {
        let re = k as i64 - r;
        let (mut sr, mut si, mut count) = (KahanSum::default(), KahanSum::default(), 0);
        for im in -r..=r {
            let m = GaussInt::new(re, im);
            let n = m.norm();
            if n == 0 || n > norm_cut || !m.is_odd() || !m.is_primary() {
                continue;
            }
            let fac = fz.factor(m)?;
            let chi = spec.chi_factored(&fac);
            if chi == 0 {
                continue;
            }
            let nf = n as f64;
            let v = r_weight(delta, &fac) * grid.eval(nf / a) * (chi as f64 / nf.sqrt());
            sr.add(v.re);
            si.add(v.im);
            count += 1;
        }
        Ok((sr.value(), si.value(), count))
    });
    let (mut sr, mut si, mut terms) = (KahanSum::default(), KahanSum::default(), 0);
    for row in rows {
        let (re, im, c) = row?;
        sr.add(re);
        si.add(im);
        terms += c;
    }
    Ok(AKernelSum {
        value: Complex64::new(sr.value(), si.value()),
        x_cut,
        norm_cut,
        terms,
    })
}

/// Kernel grid for the shifts `(δ1, δ2)`.
pub fn kernel_grid_for(delta1: Complex64, delta2: Complex64) -> Result<WKernelGrid> {
    for d in [delta1, delta2] {
        if d.norm() > KAPPA {
            return Err(Error::InvalidParameter(format!(
                "shift {d} exceeds {KAPPA} in modulus"
            )));
        }
    }
    let delta = (delta1 - delta2) / 2.0;
    let tau = (delta1 + delta2) / 2.0;
    Ok(WKernelGrid::new(WKernel::new(
        delta,
        tau,
        &KernelConfig::for_tau(tau),
    )?))
}

/// `A_{δ,τ}(d)` for the shifts `(δ1, δ2)`.
pub fn a_kernel_sum(
    spec: &CharacterSpec,
    delta1: Complex64,
    delta2: Complex64,
) -> Result<Complex64> {
    let grid = kernel_grid_for(delta1, delta2)?;
    Ok(a_kernel_sum_with(spec, &grid, Exec::default())?.value)
}
