use std::f64::consts::PI;

use hecke_core::special::quadrature::{integrate, Tolerance};
use hecke_core::special::{
    dirichlet_beta, gamma, gamma_delta, gamma_real, mellin_hat, upper_incomplete_gamma,
    vertical_line_integral, zeta, zeta_k, KernelConfig, SmoothBump, WKernel,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const CATALAN: f64 = 0.915_965_594_177_219;

#[test]
fn gamma_is_dominated_by_its_real_part() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let x = rng.random_range(1.0..20.0);
        let y = rng.random_range(-30.0..30.0);
        let g = gamma(c(x, y)).unwrap().norm();
        assert!(g <= gamma_real(x).unwrap() * (1.0 + 1e-13), "Γ({x}+{y}i)");
    }
}

#[test]
fn shifted_gamma_product() {
    let (delta, tau) = (c(0.0, 0.01), c(0.02, 0.0));
    let direct = gamma(tau + 0.5 + delta).unwrap() * gamma(tau + 0.5 - delta).unwrap();
    let g = gamma_delta(tau, delta).unwrap();
    assert!((g - direct).norm() < 1e-14 * direct.norm());
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let s = c(rng.random_range(-0.4..3.0), rng.random_range(-10.0..10.0));
        let d = c(rng.random_range(-0.01..0.01), rng.random_range(-0.01..0.01));
        let a = gamma_delta(s, d).unwrap();
        assert!((a - gamma_delta(s, -d).unwrap()).norm() <= 1e-14 * a.norm());
    }
}

#[test]
fn exponential_integral_oracle() {
    // E₁(1) = −γ − Σ_{k>=1} (−1)^k/(k·k!)
    let euler_gamma = 0.577_215_664_901_532_9;
    let (mut term, mut sum) = (1.0f64, 0.0f64);
    for k in 1..40 {
        term *= -1.0 / k as f64;
        sum += term / k as f64;
    }
    let e1 = -euler_gamma - sum;
    assert!((upper_incomplete_gamma(0.0, 1.0).unwrap() - e1).abs() < 1e-12);
}

#[test]
fn dedekind_zeta_values() {
    let z2 = zeta_k(c(2.0, 0.0)).unwrap();
    assert!((z2.re - PI * PI / 6.0 * CATALAN).abs() < 1e-12);
    assert!((z2.re - 1.506_703_0).abs() < 1e-7);
    // (s−1)ζ_K(s) near the pole
    let h = 1e-4;
    let r = zeta_k(c(1.0 + h, 0.0)).unwrap() * h;
    assert!((r.re - PI / 4.0).abs() < 1e-3, "{r}");
    assert!(zeta_k(c(1.0, 0.0)).is_err());
}

#[test]
fn dedekind_zeta_functional_equation() {
    let completed = |s: Complex64| -> Complex64 {
        (-s * PI.ln()).exp() * gamma(s).unwrap() * zeta_k(s).unwrap()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut points = vec![c(0.3, 0.2)];
    for _ in 0..10 {
        points.push(c(
            rng.random_range(-0.5..1.5),
            rng.random_range(-20.0..20.0),
        ));
    }
    for s in points {
        let lhs = completed(s);
        let rhs = completed(c(1.0, 0.0) - s);
        assert!(
            (lhs - rhs).norm() <= 1e-8 * lhs.norm().max(1.0),
            "s={s}: {lhs} vs {rhs}"
        );
    }
    // the factors are themselves consistent
    let s = c(0.7, 3.0);
    assert!((zeta_k(s).unwrap() - zeta(s).unwrap() * dirichlet_beta(s).unwrap()).norm() < 1e-14);
}

#[test]
fn vertical_line_integral_is_linear() {
    let cfg = KernelConfig::default();
    let f = |s: Complex64| gamma(s).unwrap() * (-s * 0.7f64.ln()).exp();
    let g = |s: Complex64| gamma(s).unwrap() * (-s * 2.5f64.ln()).exp();
    let a = vertical_line_integral(f, &cfg).unwrap().value;
    let b = vertical_line_integral(g, &cfg).unwrap().value;
    let combo = vertical_line_integral(|s| f(s) * 3.0 - g(s) * c(0.0, 2.0), &cfg).unwrap();
    assert!((combo.value - (a * 3.0 - b * c(0.0, 2.0))).norm() < 1e-12);
    // inverse Mellin of Γ is e^{−x}
    assert!((a.re - (-0.7f64).exp()).abs() <= combo.error.max(1e-10));
    assert!((b.re - (-2.5f64).exp()).abs() <= 1e-10);
}

#[test]
fn kernel_is_conjugation_symmetric() {
    let cfg = KernelConfig::for_tau(c(0.004, -0.003));
    let (delta, tau) = (c(0.003, 0.005), c(0.004, -0.003));
    let w = WKernel::new(delta, tau, &cfg).unwrap();
    let wc = WKernel::new(delta.conj(), tau.conj(), &cfg).unwrap();
    for x in [1e-4, 0.01, 0.5, 1.0, 3.0, 20.0] {
        assert!((wc.eval(x) - w.eval(x).conj()).norm() < 1e-13, "x={x}");
    }
}

#[test]
fn kernel_is_independent_of_the_contour() {
    let w = WKernel::central();
    let cfg = KernelConfig::default();
    for x in [1e-3, 0.3, 1.0, 5.0, 50.0] {
        let base = w.eval_on_offset(x, 1.0, &cfg).unwrap();
        for off in [0.5, 2.0] {
            let v = w.eval_on_offset(x, off, &cfg).unwrap();
            assert!((v - base).norm() < 1e-9, "x={x} c={off}: {v} vs {base}");
        }
    }
}

/// `W_{0,0}(x) = 4 ∫_{2√x}^∞ K₀(u) du` decays like `e^{−2√x}`; the constant
/// below is the largest `|W| e^{2√x}` observed for `x >= 25`.
#[test]
fn kernel_decays_at_large_argument() {
    let w = WKernel::central();
    let calibrated = 1.5;
    let mut prev = f64::INFINITY;
    for x in [25.0, 50.0, 100.0, 200.0, 400.0] {
        let scaled = w.eval(x).norm() * (2.0 * f64::sqrt(x)).exp();
        assert!(scaled <= calibrated, "x={x}: {scaled}");
        assert!(scaled < prev);
        prev = scaled;
    }
    assert!(w.eval(100.0).norm() <= (-10.0f64).exp());
}

#[test]
fn mellin_transform_properties() {
    let b = SmoothBump::default();
    let area = integrate(
        |t| b.value(t),
        1.0,
        2.0,
        Tolerance::default().with_initial_panels(8),
    )
    .value;
    let at_one = mellin_hat(|t| b.value(t), c(1.0, 0.0));
    assert!((at_one.value.re - area).abs() < 1e-10 && at_one.value.im.abs() < 1e-14);

    let table = b.derivative_table();
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..50 {
        let s = c(rng.random_range(0.0..2.0), rng.random_range(-40.0..40.0));
        if s.norm() < 0.5 {
            continue;
        }
        let g = mellin_hat(|t| b.value(t), s).value.norm();
        let bound = 2f64.powf(s.re) * table[2] / s.norm_sqr();
        assert!(g <= bound, "s={s}: {g} > {bound}");
    }
}

#[test]
fn mellin_error_estimates_cover_oracle_errors() {
    // indicator of [1, 2]: ĝ(s) = (2^s − 1)/s
    for s in [c(0.5, 0.0), c(1.0, 7.0), c(2.0, -20.0), c(0.1, 60.0)] {
        let r = mellin_hat(|_| 1.0, s);
        let exact = ((s * 2f64.ln()).exp() - 1.0) / s;
        let err = (r.value - exact).norm();
        assert!(
            err <= r.error.max(1e-15),
            "s={s}: error {err} vs estimate {}",
            r.error
        );
        assert!(err < 1e-10);
    }
}

/// `∫|g′| = 2` (up and back down), and `∫|g″| = 4 max|g′|` since `g′` is
/// unimodal on each transition.
#[test]
fn bump_derivative_table_matches_its_definition() {
    for eps in [0.05, 0.2, 0.5] {
        let b = SmoothBump::new(eps).unwrap();
        assert!((b.derivative_l1(1) - 2.0).abs() < 1e-8, "ε={eps}");
        // g″ vanishes at the peak of g′, the transition midpoint
        let peak = b.derivative(1.0 + eps / 2.0, 1);
        let probe = (0..=1000)
            .map(|k| b.derivative(1.0 + eps * k as f64 / 1000.0, 1))
            .fold(0.0f64, f64::max);
        assert!(peak >= probe);
        assert!(
            (b.derivative_l1(2) - 4.0 * peak).abs() < 1e-8 * peak,
            "ε={eps}"
        );
        // finite differences reproduce the tabulated second derivative
        for t in [1.0 + eps / 3.0, 2.0 - eps / 5.0] {
            let h = 1e-4 * eps;
            let fd = (b.derivative(t + h, 1) - b.derivative(t - h, 1)) / (2.0 * h);
            assert!((fd - b.derivative(t, 2)).abs() < 1e-6 * b.derivative(t, 2).abs().max(1.0));
        }
    }
}
