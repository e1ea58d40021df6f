#![allow(clippy::needless_range_loop)]

use hecke_core::characters::CharacterSpec;
use hecke_core::gaussian::{enumerate_odd_squarefree, factor, primary_elements, EnumerationMode};
use hecke_core::hecke::{
    a_kernel_sum, a_kernel_sum_with, dirichlet_series, kernel_grid_for, lfunction_eval, r_weight,
    AfeConfig, CoeffTable, LFunction, XiProfile,
};
use hecke_core::{Exec, GaussInt};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sample_family(max_norm: u64, count: usize, seed: u64) -> Vec<GaussInt> {
    let family = enumerate_odd_squarefree(max_norm, EnumerationMode::AllAssociates);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| family[rng.random_range(0..family.len())])
        .collect()
}

#[test]
fn completed_function_is_symmetric() {
    for d in sample_family(2000, 20, 41) {
        let lf = LFunction::new(&CharacterSpec::new(d).unwrap(), AfeConfig::default()).unwrap();
        for k in 0..=20 {
            let sigma = k as f64 / 20.0;
            let a = lf.xi_real(sigma).unwrap();
            let b = lf.xi_real(1.0 - sigma).unwrap();
            assert!(
                (a - b).abs() <= 1e-8 * a.abs().max(1.0),
                "d={d} σ={sigma}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn completed_function_is_real_on_the_real_axis() {
    for d in sample_family(3000, 10, 42) {
        let lf = LFunction::new(&CharacterSpec::new(d).unwrap(), AfeConfig::default()).unwrap();
        for sigma in [0.05, 0.3, 0.5, 0.77, 1.0] {
            let r = lf.eval(c(sigma, 0.0)).unwrap();
            assert!(
                r.xi.im.abs() <= 1e-10 * r.xi.norm(),
                "d={d} σ={sigma}: {}",
                r.xi
            );
            // Λ, ξ and L are tied together by the stated normalisations
            let a = lf.sqrt_conductor().powi(2);
            assert!((r.xi - r.lambda * a.powf(-0.25)).norm() <= 1e-12 * r.xi.norm());
            let gamma = hecke_core::special::gamma_real(sigma).unwrap();
            assert!(
                (r.lambda - r.l * a.powf(sigma / 2.0) * gamma).norm() <= 1e-11 * r.lambda.norm()
            );
        }
    }
}

#[test]
fn l_at_two_is_positive_across_the_family() {
    for d in enumerate_odd_squarefree(400, EnumerationMode::Primary) {
        let r = lfunction_eval(&CharacterSpec::new(d).unwrap(), c(2.0, 0.0)).unwrap();
        assert!(
            r.l.re > 0.0 && r.l.im.abs() < 1e-12,
            "d={d}: L(2) = {}",
            r.l
        );
    }
}

#[test]
fn theta_profile_tracks_the_expansion() {
    for d in sample_family(5000, 6, 43) {
        let lf = LFunction::new(&CharacterSpec::new(d).unwrap(), AfeConfig::default()).unwrap();
        let prof = XiProfile::new(&lf);
        for sigma in [0.01, 0.25, 0.5, 0.9, 1.0] {
            let a = lf.xi_real(sigma).unwrap();
            assert!(
                (prof.xi(sigma) - a).abs() <= 1e-10 * a.abs().max(1.0),
                "d={d} σ={sigma}"
            );
        }
    }
}

#[test]
fn doubling_the_truncation_stays_within_the_reported_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for d in sample_family(3000, 50, 45) {
        let spec = CharacterSpec::new(d).unwrap();
        let short = LFunction::new(&spec, AfeConfig::default()).unwrap();
        let long = LFunction::new(
            &spec,
            AfeConfig {
                nmax_factor: 2.0 * AfeConfig::default().nmax_factor,
            },
        )
        .unwrap();
        assert!(long.nmax() >= 2 * short.nmax() - 1);
        let s = c(rng.random_range(0.0..1.0), rng.random_range(-8.0..8.0));
        let a = short.eval(s).unwrap();
        let b = long.eval(s).unwrap();
        assert!(
            (a.lambda - b.lambda).norm() <= a.truncation_error_bound,
            "d={d} s={s}"
        );
    }
}

#[test]
fn coefficient_tables_respect_their_invariants() {
    let cutoff = 5000;
    let mut reps = vec![0i32; cutoff + 1];
    for m in primary_elements(cutoff as u64) {
        reps[m.norm() as usize] += 1;
    }
    for d in [
        GaussInt::ONE,
        GaussInt::new(-3, 0),
        GaussInt::new(3, 2),
        GaussInt::new(-19, -30),
    ] {
        let spec = CharacterSpec::new(d).unwrap();
        let t = CoeffTable::build(&spec, cutoff, Exec::Sequential).unwrap();
        assert_eq!(t.a[1], 1);
        assert_eq!(t.a[2], 0);
        for n in 1..=cutoff {
            assert!(t.a[n].abs() <= reps[n], "d={d} n={n}");
            if n % 2 == 0 {
                assert_eq!(t.a[n], 0);
            }
        }
        assert_eq!(t, CoeffTable::build(&spec, cutoff, Exec::Parallel).unwrap());
    }
}

#[test]
fn series_and_expansion_agree_right_of_one() {
    for d in [GaussInt::ONE, GaussInt::new(3, 2)] {
        let spec = CharacterSpec::new(d).unwrap();
        let table = CoeffTable::build_multiplicative(&spec, 2_000_000).unwrap();
        let s = c(2.5, 0.0);
        let series = dirichlet_series(&table, s);
        let afe = lfunction_eval(&spec, s).unwrap().l;
        assert!(
            (afe - series).norm() <= 1e-8 * series.norm(),
            "d={d}: {afe} vs {series}"
        );
    }
}

#[test]
fn divisor_weight_is_even() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let odd = primary_elements(50_000);
    for _ in 0..100 {
        let n = odd[rng.random_range(0..odd.len())];
        let f = factor(n).unwrap();
        let s = c(rng.random_range(-0.5..0.5), rng.random_range(-3.0..3.0));
        let a = r_weight(s, &f);
        assert!(
            (a - r_weight(-s, &f)).norm() <= 1e-12 * a.norm().max(1.0),
            "n={n} s={s}"
        );
    }
}

#[test]
fn kernel_sum_is_symmetric_in_the_shifts() {
    let spec = CharacterSpec::new(GaussInt::new(-1, 2)).unwrap();
    let (d1, d2) = (c(0.006, -0.002), c(-0.003, 0.004));
    let a = a_kernel_sum(&spec, d1, d2).unwrap();
    let b = a_kernel_sum(&spec, d2, d1).unwrap();
    assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0), "{a} vs {b}");
}

#[test]
fn kernel_sum_at_the_centre_is_a_square() {
    let grid = kernel_grid_for(c(0.0, 0.0), c(0.0, 0.0)).unwrap();
    for d in [
        GaussInt::ONE,
        GaussInt::new(-3, 0),
        GaussInt::new(3, 2),
        GaussInt::new(-7, 0),
    ] {
        let spec = CharacterSpec::new(d).unwrap();
        let a = a_kernel_sum_with(&spec, &grid, Exec::Parallel)
            .unwrap()
            .value;
        let xi = lfunction_eval(&spec, c(0.5, 0.0)).unwrap().xi.re;
        assert!(a.re >= -1e-8, "d={d}: {a}");
        assert!(
            (a - xi * xi).norm() <= 1e-6 * xi.powi(2).max(1.0),
            "d={d}: {a} vs {}",
            xi * xi
        );
    }
}

#[test]
fn kernel_sum_matches_product_of_completed_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for d in sample_family(300, 4, 48) {
        let spec = CharacterSpec::new(d).unwrap();
        let mut shift = || {
            c(
                rng.random_range(-0.007..0.007),
                rng.random_range(-0.007..0.007),
            )
        };
        let (d1, d2) = (shift(), shift());
        let a = a_kernel_sum(&spec, d1, d2).unwrap();
        let lf = LFunction::new(&spec, AfeConfig::default()).unwrap();
        let prod = lf.eval(d1 + 0.5).unwrap().xi * lf.eval(d2 + 0.5).unwrap().xi;
        assert!(
            (a - prod).norm() <= 1e-6 * prod.norm().max(1.0),
            "d={d}: {a} vs {prod}"
        );
    }
}
