//! Smooth compactly supported test functions and their Mellin transforms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::quadrature::{integrate, QuadResult, Tolerance};
use crate::error::{Error, Result};

/// Truncated Taylor expansion `Σ c_k h^k`, used to differentiate the bump
/// exactly up to order 4.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Jet([f64; 5]);

impl Jet {
    fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0, 0.0])
    }

    fn variable(x: f64, slope: f64) -> Self {
        Jet([x, slope, 0.0, 0.0, 0.0])
    }

    fn add(self, o: Jet) -> Jet {
        let mut r = self.0;
        for (a, b) in r.iter_mut().zip(o.0) {
            *a += b;
        }
        Jet(r)
    }

    fn mul(self, o: Jet) -> Jet {
        let mut r = [0.0; 5];
        for k in 0..5 {
            for i in 0..=k {
                r[k] += self.0[i] * o.0[k - i];
            }
        }
        Jet(r)
    }

    fn recip(self) -> Jet {
        let a = self.0;
        let mut r = [0.0; 5];
        r[0] = 1.0 / a[0];
        for k in 1..5 {
            let s: f64 = (1..=k).map(|i| a[i] * r[k - i]).sum();
            r[k] = -s / a[0];
        }
        Jet(r)
    }

    fn exp(self) -> Jet {
        let a = self.0;
        let mut e = [0.0; 5];
        e[0] = a[0].exp();
        for k in 1..5 {
            let s: f64 = (1..=k).map(|i| i as f64 * a[i] * e[k - i]).sum();
            e[k] = s / k as f64;
        }
        Jet(e)
    }

    fn derivative(self, n: usize) -> f64 {
        const FACT: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];
        self.0[n] * FACT[n]
    }
}

/// `exp(−1/y)` for `y > 0`, zero otherwise.
fn psi(y: Jet) -> Jet {
    if y.0[0] <= 1.0 / 700.0 {
        return Jet::constant(0.0);
    }
    Jet([-y.0[0], -y.0[1], -y.0[2], -y.0[3], -y.0[4]])
        .recip()
        .exp()
}

/// Smooth step: 0 for `y <= 0`, 1 for `y >= 1`.
fn step(y: Jet) -> Jet {
    if y.0[0] <= 0.0 {
        return Jet::constant(0.0);
    }
    if y.0[0] >= 1.0 {
        return Jet::constant(1.0);
    }
    let a = psi(y);
    let one_minus = Jet([1.0 - y.0[0], -y.0[1], -y.0[2], -y.0[3], -y.0[4]]);
    let b = psi(one_minus);
    a.mul(a.add(b).recip())
}

/// A `C^∞` function on `[1, 2]`: zero outside `(1, 2)`, one on
/// `[1+ε, 2−ε]`, built from `exp(−1/x)` transition splines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothBump {
    pub epsilon: f64,
}

impl Default for SmoothBump {
    fn default() -> Self {
        SmoothBump { epsilon: 0.05 }
    }
}

impl SmoothBump {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 0.5) {
            return Err(Error::InvalidParameter(format!(
                "bump flatness must lie in (0, 1/2], got {epsilon}"
            )));
        }
        Ok(SmoothBump { epsilon })
    }

    pub fn support(&self) -> (f64, f64) {
        (1.0, 2.0)
    }

    pub fn plateau(&self) -> (f64, f64) {
        (1.0 + self.epsilon, 2.0 - self.epsilon)
    }

    fn jet(&self, t: f64) -> Jet {
        let e = self.epsilon;
        let left = step(Jet::variable((t - 1.0) / e, 1.0 / e));
        let right = step(Jet::variable((2.0 - t) / e, -1.0 / e));
        left.mul(right)
    }

    pub fn value(&self, t: f64) -> f64 {
        if t <= 1.0 || t >= 2.0 {
            return 0.0;
        }
        self.jet(t).0[0]
    }

    /// `n`-th derivative for `n <= 4`.
    pub fn derivative(&self, t: f64, n: usize) -> f64 {
        assert!(n <= 4, "derivatives are tabulated up to order 4");
        if t <= 1.0 || t >= 2.0 {
            return 0.0;
        }
        self.jet(t).derivative(n)
    }

    /// `∫_1^2 |g^{(j)}(t)| dt`.
    pub fn derivative_l1(&self, j: usize) -> f64 {
        // integrate each transition separately; the plateau contributes only for j = 0
        let e = self.epsilon;
        let tol = Tolerance {
            abs: 1e-13,
            rel: 1e-12,
            max_panels: 4000,
            initial_panels: 8,
        };
        let piece = |a: f64, b: f64| integrate(|t| self.derivative(t, j).abs(), a, b, tol).value;
        let mut total = piece(1.0, 1.0 + e) + piece(2.0 - e, 2.0);
        if j == 0 {
            total += (1.0 - 2.0 * e).max(0.0);
        }
        total
    }

    /// `g_(n) = max_{j <= n} ∫_1^2 |g^{(j)}|`, for `n = 0..=4`.
    pub fn derivative_table(&self) -> [f64; 5] {
        let l1: Vec<f64> = (0..5).map(|j| self.derivative_l1(j)).collect();
        let mut out = [0.0; 5];
        let mut m: f64 = 0.0;
        for n in 0..5 {
            m = m.max(l1[n]);
            out[n] = m;
        }
        out
    }
}

/// `ĝ(s) = ∫_1^2 g(t) t^{s−1} dt` for a function supported in `[1, 2]`.
pub fn mellin_hat(g: impl Fn(f64) -> f64, s: Complex64) -> QuadResult<Complex64> {
    // enough initial panels to resolve t^{i Im s} over [1, 2]
    let panels = 4 + (s.im.abs() * std::f64::consts::LN_2).ceil() as usize;
    let tol = Tolerance {
        abs: 1e-13,
        rel: 1e-12,
        max_panels: 20_000,
        initial_panels: panels,
    };
    let sm1 = s - 1.0;
    integrate(|t| (sm1 * t.ln()).exp() * g(t), 1.0, 2.0, tol)
}
