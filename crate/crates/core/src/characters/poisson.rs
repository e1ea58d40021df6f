use std::collections::HashMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{gauss_sum_closed, residue_symbol};
use crate::error::{Error, Result};
use crate::exec::{Exec, KahanSum};
use crate::gaussian::{factor, residue_system, GaussInt};
use crate::special::quadrature::{integrate, Tolerance};
use crate::special::SmoothBump;

/// `W̃(t) = ∫∫ W(N(x+yi)) ẽ(−t(x+yi)) dx dy` for radial `W` supported in
/// `[a, b]`, reduced to the Hankel form `2π ∫ W(r²) J₀(2πtr) r dr`.
pub fn w_tilde(w: &(impl Fn(f64) -> f64 + ?Sized), support: (f64, f64), t: f64) -> f64 {
    let (lo, hi) = (support.0.max(0.0).sqrt(), support.1.sqrt());
    let panels = 4 + (t * (hi - lo)).ceil() as usize;
    let tol = Tolerance {
        abs: 1e-15,
        rel: 1e-13,
        max_panels: 50_000,
        initial_panels: panels,
    };
    let r = integrate(|r| w(r * r) * libm::j0(2.0 * PI * t * r) * r, lo, hi, tol);
    2.0 * PI * r.value
}

/// The same transform as a two-dimensional polar integral
/// `4 ∫_0^{π/2} ∫ cos(2πtr sin θ) W(r²) r dr dθ`; an independent route.
pub fn w_tilde_polar(w: &(impl Fn(f64) -> f64 + ?Sized), support: (f64, f64), t: f64) -> f64 {
    let (lo, hi) = (support.0.max(0.0).sqrt(), support.1.sqrt());
    let panels = 4 + (t * (hi - lo)).ceil() as usize;
    let inner_tol = Tolerance {
        abs: 1e-15,
        rel: 1e-13,
        max_panels: 20_000,
        initial_panels: panels,
    };
    let outer_tol = Tolerance {
        abs: 1e-14,
        rel: 1e-12,
        max_panels: 20_000,
        initial_panels: panels,
    };
    let outer = integrate(
        |theta: f64| {
            let k = 2.0 * PI * t * theta.sin();
            integrate(|r| (k * r).cos() * w(r * r) * r, lo, hi, inner_tol).value
        },
        0.0,
        PI / 2.0,
        outer_tol,
    );
    4.0 * outer.value
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PoissonConfig {
    /// The dual sum stops once `|W̃| < decay_threshold` persistently.
    pub decay_threshold: f64,
    /// Hard cap on the dual variable.
    pub max_t: f64,
    pub exec: Exec,
}

impl Default for PoissonConfig {
    fn default() -> Self {
        PoissonConfig {
            decay_threshold: 1e-12,
            max_t: 1500.0,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PoissonResult {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Truncation point of the dual sum.
    pub t_max: f64,
    /// Number of lattice points `k` in the dual sum.
    pub dual_terms: usize,
}

/// Smallest `T` (on a grid of step 10) after which five consecutive samples
/// of `|W̃|` stay below the threshold.
fn decay_point(w: &(impl Fn(f64) -> f64 + Sync), support: (f64, f64), cfg: &PoissonConfig) -> f64 {
    let mut run = 0;
    let mut t = 10.0;
    while t < cfg.max_t {
        if w_tilde(w, support, t).abs() < cfg.decay_threshold {
            run += 1;
            if run == 5 {
                return t - 40.0;
            }
        } else {
            run = 0;
        }
        t += 10.0;
    }
    cfg.max_t
}

fn isqrt(n: u64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n as i64 {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n as i64 {
        r += 1;
    }
    r
}

/// Both sides of
/// `Σ_{m odd} (m/n) W(N(m)/X) = X/(2N(n)) ((1+i)/n) Σ_k (−1)^{N(k)} g(k,n) W̃(√(N(k)X/(2N(n))))`
/// for primary `n` and a bump `W` on `[1, 2]`.
pub fn poisson_check(
    n: GaussInt,
    w: &SmoothBump,
    x: f64,
    cfg: &PoissonConfig,
) -> Result<PoissonResult> {
    if !n.is_odd() || !n.is_primary() {
        return Err(Error::InvalidParameter(format!(
            "Poisson check needs a primary modulus, got {n}"
        )));
    }
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "X must be positive, got {x}"
        )));
    }
    let support = w.support();
    let wf = |u: f64| w.value(u);
    let nn = n.norm();
    let fac = factor(n)?;

    // primal side: odd m with N(m) <= b·X, one row of the lattice per task
    let bound = (support.1 * x).floor() as u64;
    let r = isqrt(bound);
    let rows = cfg.exec.map_range((2 * r + 1) as usize, |k| {
        let a = k as i64 - r;
        let top = isqrt(bound - (a * a) as u64);
        let mut s = KahanSum::default();
        for b in -top..=top {
            if (a + b) & 1 == 0 {
                continue;
            }
            let m = GaussInt::new(a, b);
            let wv = wf(m.norm() as f64 / x);
            if wv == 0.0 {
                continue;
            }
            s.add(super::residue_symbol_factored(m, &fac) as f64 * wv);
        }
        s.value()
    });
    let mut lhs = KahanSum::default();
    rows.into_iter().for_each(|v| lhs.add(v));

    // dual side: group k by norm, since W̃ depends only on N(k)
    let t_max = decay_point(&wf, support, cfg);
    let scale = x / (2.0 * nn as f64);
    let kmax = ((t_max * t_max) / scale).floor() as u64;
    let gtable: HashMap<GaussInt, f64> = if nn == 1 {
        HashMap::new()
    } else {
        residue_system(n)?
            .into_iter()
            .map(|k| Ok((k, gauss_sum_closed(k, n)?.numeric.re)))
            .collect::<Result<_>>()?
    };
    let mut by_norm = vec![0.0f64; kmax as usize + 1];
    let rk = isqrt(kmax);
    let mut dual_terms = 0;
    for a in -rk..=rk {
        let top = isqrt(kmax - (a * a) as u64);
        for b in -top..=top {
            let k = GaussInt::new(a, b);
            let gk = if nn == 1 { 1.0 } else { gtable[&k.reduce(n)?] };
            by_norm[k.norm() as usize] += gk;
            dual_terms += 1;
        }
    }
    let norms: Vec<usize> = (0..by_norm.len()).filter(|&m| by_norm[m] != 0.0).collect();
    let terms = cfg.exec.map(&norms, |&m| {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * by_norm[m] * w_tilde(&wf, support, (m as f64 * scale).sqrt())
    });
    let mut rhs = KahanSum::default();
    terms.into_iter().for_each(|v| rhs.add(v));
    let twist = residue_symbol(GaussInt::ONE_PLUS_I, n)? as f64;
    let rhs = scale * twist * rhs.value();
    let lhs = lhs.value();
    Ok(PoissonResult {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        t_max,
        dual_terms,
    })
}
