use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CoeffTable;
use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::special::{ln_gamma, upper_incomplete_gamma, upper_incomplete_gamma_complex};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AfeConfig {
    /// The sum stops at `n_max = ⌈nmax_factor · √A⌉`; the dropped terms carry
    /// a factor of about `e^{−nmax_factor}`.
    pub nmax_factor: f64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        AfeConfig { nmax_factor: 45.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LValueResult {
    pub s: Complex64,
    pub l: Complex64,
    pub xi: Complex64,
    pub lambda: Complex64,
    pub truncation_error_bound: f64,
}

/// `Λ(s) = A^{s/2} Γ(s) L(s, χ)` with `A = 2^5 N(d)/π²`, evaluated by the
/// symmetric approximate functional equation
/// `Λ(s) = Σ a_n [(√A/n)^s Γ(s, n/√A) + (√A/n)^{1−s} Γ(1−s, n/√A)]`.
#[derive(Clone, Debug)]
pub struct LFunction {
    spec: CharacterSpec,
    sqrt_a: f64,
    nmax: usize,
    /// `(n/√A, ln(√A/n), a_n)` for the nonzero coefficients.
    terms: Vec<(f64, f64, f64)>,
}

impl LFunction {
    pub fn new(spec: &CharacterSpec, cfg: AfeConfig) -> Result<Self> {
        let nmax = Self::nmax_for(spec, cfg)?;
        let table = CoeffTable::build_multiplicative(spec, nmax)?;
        Self::with_table(&table, cfg)
    }

    pub fn with_table(table: &CoeffTable, cfg: AfeConfig) -> Result<Self> {
        let spec = &table.spec;
        let nmax = Self::nmax_for(spec, cfg)?;
        if table.cutoff < nmax {
            return Err(Error::CutoffInsufficient {
                needed: nmax,
                have: table.cutoff,
            });
        }
        let sqrt_a = spec.conductor_a.sqrt();
        let terms = table
            .nonzero(nmax)
            .into_iter()
            .map(|(n, a)| (n as f64 / sqrt_a, (sqrt_a / n as f64).ln(), a as f64))
            .collect();
        Ok(LFunction {
            spec: spec.clone(),
            sqrt_a,
            nmax,
            terms,
        })
    }

    fn nmax_for(spec: &CharacterSpec, cfg: AfeConfig) -> Result<usize> {
        if !(cfg.nmax_factor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "nmax factor must be positive, got {}",
                cfg.nmax_factor
            )));
        }
        Ok((cfg.nmax_factor * spec.conductor_a.sqrt()).ceil() as usize)
    }

    pub fn spec(&self) -> &CharacterSpec {
        &self.spec
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// `A^{1/2}`.
    pub fn sqrt_conductor(&self) -> f64 {
        self.sqrt_a
    }

    /// Bound on the dropped tail `Σ_{n > n_max}`. Uses `|Γ(s, x)| <= Γ(Re s, x)`,
    /// the geometric decay `e^{−1/√A}` of the weight per step in `n`, and
    /// `1 + ln n` for the size of `|a_n|`.
    pub fn truncation_bound(&self, sigma: f64) -> Result<f64> {
        let n = (self.nmax + 1) as f64;
        let x = n / self.sqrt_a;
        let t = x.powf(-sigma) * upper_incomplete_gamma(sigma, x)?
            + x.powf(sigma - 1.0) * upper_incomplete_gamma(1.0 - sigma, x)?;
        Ok(2.0 * (1.0 + n.ln()) * (self.sqrt_a + 1.0) * t.abs())
    }

    pub fn lambda(&self, s: Complex64) -> Result<Complex64> {
        let sc = Complex64::new(1.0, 0.0) - s;
        let (mut re, mut im) = (0.0, 0.0);
        for &(x, lr, a) in &self.terms {
            let v = (s * lr).exp() * upper_incomplete_gamma_complex(s, x)?
                + (sc * lr).exp() * upper_incomplete_gamma_complex(sc, x)?;
            re += a * v.re;
            im += a * v.im;
        }
        Ok(Complex64::new(re, im))
    }

    /// `ξ(σ) = A^{−1/4} Λ(σ)` for real `σ`, with `ξ(0)` taken as `ξ(1)`.
    pub fn xi_real(&self, sigma: f64) -> Result<f64> {
        let sigma = if sigma == 0.0 { 1.0 } else { sigma };
        let mut acc = 0.0;
        for &(x, lr, a) in &self.terms {
            acc += a
                * ((sigma * lr).exp() * upper_incomplete_gamma(sigma, x)?
                    + ((1.0 - sigma) * lr).exp() * upper_incomplete_gamma(1.0 - sigma, x)?);
        }
        Ok(acc / self.sqrt_a.sqrt())
    }

    pub fn eval(&self, s: Complex64) -> Result<LValueResult> {
        let at = if s == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            s
        };
        let lambda = self.lambda(at)?;
        let ln_sqrt_a = self.sqrt_a.ln();
        let xi = lambda * (-0.5 * ln_sqrt_a).exp();
        let l = match ln_gamma(s) {
            Ok(lg) => lambda / (s * ln_sqrt_a + lg).exp(),
            // trivial zeros at the poles of Γ(s)
            Err(Error::Pole(..)) => Complex64::new(0.0, 0.0),
            Err(e) => return Err(e),
        };
        Ok(LValueResult {
            s,
            l,
            xi,
            lambda,
            truncation_error_bound: self.truncation_bound(s.re)?,
        })
    }
}

/// `ξ(σ)` for real `σ` through the theta integral
/// `Λ(σ) = ∫_0^∞ Θ(e^u) (e^{σu} + e^{(1−σ)u}) du` with
/// `Θ(y) = Σ_{n <= n_max} a_n e^{−ny/√A}`, the Mellin form of the
/// incomplete-gamma expansion. `Θ` is tabulated once on composite
/// Gauss–Legendre nodes, after which every `σ` costs one pass over the nodes.
#[derive(Clone, Debug)]
pub struct XiProfile {
    /// `(u_j, w_j Θ(e^{u_j}))`.
    nodes: Vec<(f64, f64)>,
    scale: f64,
}

/// Width of the Gauss–Legendre panels in `u = log y`.
const THETA_PANEL: f64 = 0.125;
/// Terms with `n y/√A` beyond this are below `e^{−60}` and dropped.
const THETA_CUT: f64 = 60.0;

impl XiProfile {
    pub fn new(lf: &LFunction) -> Self {
        let (gx, gw) = crate::special::quadrature::gauss_legendre(16);
        let top = (lf.nmax as f64).ln().max(THETA_PANEL);
        let panels = (top / THETA_PANEL).ceil() as usize;
        let h = top / panels as f64;
        let mut nodes = Vec::with_capacity(panels * gx.len());
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            for (x, w) in gx.iter().zip(&gw) {
                let u = mid + 0.5 * h * x;
                let y = u.exp();
                let mut theta = 0.0;
                // terms are sorted by n, and xn = n/√A
                for &(xn, _, a) in &lf.terms {
                    let arg = xn * y;
                    if arg > THETA_CUT {
                        break;
                    }
                    theta += a * (-arg).exp();
                }
                nodes.push((u, 0.5 * h * w * theta));
            }
        }
        XiProfile {
            nodes,
            scale: lf.sqrt_a.sqrt().recip(),
        }
    }

    pub fn xi(&self, sigma: f64) -> f64 {
        let mut acc = 0.0;
        for &(u, wt) in &self.nodes {
            acc += wt * ((sigma * u).exp() + ((1.0 - sigma) * u).exp());
        }
        acc * self.scale
    }
}

/// `L(s, χ)`, `Λ` and `ξ` at one point.
pub fn lfunction_eval(spec: &CharacterSpec, s: Complex64) -> Result<LValueResult> {
    LFunction::new(spec, AfeConfig::default())?.eval(s)
}

/// `Σ_{n <= cutoff} a_n n^{−s}`; meaningful for `Re s > 1`.
pub fn dirichlet_series(table: &CoeffTable, s: Complex64) -> Complex64 {
    let (mut re, mut im) = (0.0, 0.0);
    for (n, a) in table.nonzero(table.cutoff).into_iter().rev() {
        let v = (-s * (n as f64).ln()).exp() * a as f64;
        re += v.re;
        im += v.im;
    }
    Complex64::new(re, im)
}
