use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characters::CharacterSpec;
use crate::error::{Error, Result};
use crate::gaussian::{enumerate_odd_squarefree, factor, EnumerationMode, GaussInt};

/// A real polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// `3(x/b)² − 2(x/b)³`.
    pub fn smoothstep(b: f64) -> Poly {
        Poly(vec![0.0, 0.0, 3.0 / (b * b), -2.0 / (b * b * b)])
    }
}

/// `λ(n) = μ(n) Q(log(M/N(n))/log M)` for primary `n` with `N(n) <= M`,
/// where `Q = 1` on `[b, 1]` and `Q = P` on `[0, b]`.
#[derive(Clone, Debug)]
pub struct MollifierSpec {
    pub m_length: f64,
    pub b: f64,
    pub p: Poly,
    dp: Poly,
    ddp: Poly,
    /// `(n, λ(n))` over the support, built on first use.
    lambda_cache: OnceLock<Vec<(GaussInt, f64)>>,
}

const SHAPE_TOL: f64 = 1e-12;

impl MollifierSpec {
    pub fn new(m_length: f64, b: f64, p: Poly) -> Result<Self> {
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "b must lie in (0, 1), got {b}"
            )));
        }
        if !(m_length >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "mollifier length must be >= 1, got {m_length}"
            )));
        }
        let dp = p.derivative();
        let ddp = dp.derivative();
        let checks = [
            ("P(0) = 0", p.eval(0.0)),
            ("P'(0) = 0", dp.eval(0.0)),
            ("P(b) = 1", p.eval(b) - 1.0),
            ("P'(b) = 0", dp.eval(b)),
        ];
        for (what, v) in checks {
            if v.abs() > SHAPE_TOL {
                return Err(Error::InvalidParameter(format!(
                    "mollifier polynomial violates {what} (off by {v:e})"
                )));
            }
        }
        Ok(MollifierSpec {
            m_length,
            b,
            p,
            dp,
            ddp,
            lambda_cache: OnceLock::new(),
        })
    }

    /// The cubic `3(x/b)² − 2(x/b)³`.
    pub fn cubic(m_length: f64, b: f64) -> Result<Self> {
        Self::new(m_length, b, Poly::smoothstep(b))
    }

    pub fn q(&self, x: f64) -> f64 {
        if x >= self.b {
            1.0
        } else {
            self.p.eval(x)
        }
    }

    pub fn q1(&self, x: f64) -> f64 {
        if x >= self.b {
            0.0
        } else {
            self.dp.eval(x)
        }
    }

    pub fn q2(&self, x: f64) -> f64 {
        if x >= self.b {
            0.0
        } else {
            self.ddp.eval(x)
        }
    }

    /// `Q(log(M/N)/log M)` as a function of the norm.
    fn weight(&self, norm: f64) -> f64 {
        if norm > self.m_length {
            return 0.0;
        }
        if norm <= 1.0 {
            return 1.0;
        }
        self.q((self.m_length / norm).ln() / self.m_length.ln())
    }

    /// Nonzero `(n, λ(n))`.
    pub fn support(&self) -> &[(GaussInt, f64)] {
        self.lambda_cache.get_or_init(|| {
            let max = self.m_length.floor() as u64;
            enumerate_odd_squarefree(max, EnumerationMode::Primary)
                .into_iter()
                .map(|n| (n, lambda_coeff(self, n)))
                .filter(|&(_, l)| l != 0.0)
                .collect()
        })
    }
}

/// `λ(n)`; zero unless `n` is primary and square-free with `N(n) <= M`.
pub fn lambda_coeff(spec: &MollifierSpec, n: GaussInt) -> f64 {
    if n.is_zero() || !n.is_odd() || !n.is_primary() {
        return 0.0;
    }
    let norm = n.norm();
    if norm as f64 > spec.m_length {
        return 0.0;
    }
    let mu = match factor(n) {
        Ok(f) => f.mobius(),
        Err(_) => return 0.0,
    };
    mu as f64 * spec.weight(norm as f64)
}

/// `M(s, d) = Σ_{N(n) <= M} λ(n) N(n)^{−s} χ(n)`.
pub fn mollifier_value(
    spec: &MollifierSpec,
    chi: &CharacterSpec,
    s: Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(n, l) in spec.support() {
        let c = chi.chi(n)?;
        if c != 0 {
            acc += (-s * (n.norm() as f64).ln()).exp() * (l * c as f64);
        }
    }
    Ok(acc)
}
