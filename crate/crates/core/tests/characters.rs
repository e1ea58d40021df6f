use hecke_core::characters::{
    e_tilde, gauss_sum_closed, gauss_sum_direct, poisson_check, residue_symbol, CharacterSpec,
    PoissonConfig,
};
use hecke_core::gaussian::{enumerate_odd_squarefree, gcd, EnumerationMode};
use hecke_core::special::SmoothBump;
use hecke_core::GaussInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_odd(rng: &mut ChaCha8Rng, r: i64) -> GaussInt {
    loop {
        let z = GaussInt::new(rng.random_range(-r..=r), rng.random_range(-r..=r));
        if !z.is_zero() && z.is_odd() {
            return z;
        }
    }
}

fn coprime(a: GaussInt, b: GaussInt) -> bool {
    gcd(a, b).unwrap().value().is_unit()
}

/// `Σ_{x mod m} χ(x) ẽ(x/m)` over the box `0 <= re < N(m)/g, 0 <= im < g`
/// with `g` the content of `m`, a complete residue system for any `m`.
fn full_modulus_gauss_sum(spec: &CharacterSpec) -> Complex64 {
    let m = spec.modulus;
    let n = m.norm();
    let g = {
        let (mut a, mut b) = (m.re.unsigned_abs(), m.im.unsigned_abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let mc = m.conj();
    let mut acc = Complex64::new(0.0, 0.0);
    for y in 0..g as i64 {
        for x in 0..(n / g) as i64 {
            let a = GaussInt::new(x, y);
            let c = spec.chi(a).unwrap();
            if c == 0 {
                continue;
            }
            // Im(a/m) = Im(a m̄)/N(m), reduced exactly before scaling
            let num = (a * mc).im.rem_euclid(n as i64);
            acc += e_tilde(Complex64::new(0.0, num as f64 / n as f64)) * c as f64;
        }
    }
    acc
}

#[test]
fn residue_symbol_is_multiplicative_in_the_denominator() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut done = 0;
    while done < 500 {
        let (m, n) = (random_odd(&mut rng, 40), random_odd(&mut rng, 40));
        if !coprime(m, n) {
            continue;
        }
        done += 1;
        let a = GaussInt::new(rng.random_range(-500..500), rng.random_range(-500..500));
        let lhs = residue_symbol(a, m * n).unwrap();
        assert_eq!(
            lhs,
            residue_symbol(a, m).unwrap() * residue_symbol(a, n).unwrap(),
            "({a}/{m}·{n})"
        );
    }
}

#[test]
fn gauss_sums_twist_by_the_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut done = 0;
    while done < 200 {
        let n = random_odd(&mut rng, 12);
        let s = random_odd(&mut rng, 20);
        if !coprime(s, n) {
            continue;
        }
        done += 1;
        let r = GaussInt::new(rng.random_range(-30..30), rng.random_range(-30..30));
        let lhs = gauss_sum_closed(r * s, n).unwrap().numeric;
        let rhs = gauss_sum_closed(r, n).unwrap().numeric * residue_symbol(s, n).unwrap() as f64;
        assert!((lhs - rhs).norm() < 1e-9, "g({r}·{s}, {n})");
        // the direct sum obeys the same rule
        let direct = gauss_sum_direct(r * s, n).unwrap().numeric;
        assert!(
            (direct - lhs).norm() < 1e-8 * (n.norm() as f64).max(1.0),
            "direct g({r}·{s}, {n})"
        );
    }
}

#[test]
fn closed_form_matches_direct_sum_for_small_prime_powers() {
    let primes: Vec<GaussInt> = enumerate_odd_squarefree(200, EnumerationMode::Primary)
        .into_iter()
        .filter(|p| {
            hecke_core::gaussian::factor(*p).unwrap().odd_factors.len() == 1 && !p.is_unit()
        })
        .collect();
    assert!(!primes.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for &p in &primes {
        for l in 1..=3u32 {
            let n = p.pow(l);
            if n.norm() > 40_000 {
                continue;
            }
            let mut ks = vec![GaussInt::ZERO, GaussInt::ONE, p, p * p * p];
            for _ in 0..4 {
                ks.push(GaussInt::new(
                    rng.random_range(-99..99),
                    rng.random_range(-99..99),
                ));
            }
            for k in ks {
                let d = gauss_sum_direct(k, n).unwrap().numeric;
                let c = gauss_sum_closed(k, n).unwrap().numeric;
                assert!(
                    (d - c).norm() <= 1e-8 * c.norm().max(1.0),
                    "g({k}, {n}): {d} vs {c}"
                );
            }
        }
    }
}

#[test]
fn character_is_periodic_modulo_its_modulus() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for d in [
        GaussInt::new(-3, 0),
        GaussInt::new(3, 2),
        GaussInt::new(1, 4),
        GaussInt::new(-7, 0),
    ] {
        let spec = CharacterSpec::new(d).unwrap();
        for _ in 0..200 {
            let a = random_odd(&mut rng, 10_000);
            let t = GaussInt::new(rng.random_range(-50..50), rng.random_range(-50..50));
            assert_eq!(
                spec.chi(a).unwrap(),
                spec.chi(a + spec.modulus * t).unwrap(),
                "d={d} a={a} t={t}"
            );
        }
        assert_eq!(
            spec.chi(GaussInt::ONE_PLUS_I * GaussInt::new(5, 2))
                .unwrap(),
            0
        );
    }
}

#[test]
fn character_gauss_sum_has_conductor_modulus() {
    let family = enumerate_odd_squarefree(60, EnumerationMode::AllAssociates);
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..20 {
        let d = family[rng.random_range(0..family.len())];
        let spec = CharacterSpec::new(d).unwrap();
        let g = full_modulus_gauss_sum(&spec);
        let expected = (spec.conductor_norm as f64).sqrt();
        assert!(
            (g.norm() - expected).abs() < 1e-9 * expected,
            "d={d}: |g| = {} vs {expected}",
            g.norm()
        );
    }
}

#[test]
fn poisson_summation_for_nondegenerate_moduli() {
    // a wide transition keeps the dual sum short
    let w = SmoothBump::new(0.5).unwrap();
    let cfg = PoissonConfig::default();
    for n in [GaussInt::ONE, GaussInt::new(1, 4), GaussInt::new(-3, 0)] {
        for x in [50.0, 200.0] {
            let r = poisson_check(n, &w, x, &cfg).unwrap();
            assert!(r.residual <= 1e-6, "n={n} X={x}: {r:?}");
            assert!(
                r.lhs.abs() > 0.1,
                "n={n} X={x}: the identity is being tested on a vanishing sum"
            );
        }
    }
}

#[test]
fn poisson_rejects_non_primary_moduli() {
    let w = SmoothBump::default();
    assert!(poisson_check(GaussInt::new(3, 0), &w, 50.0, &PoissonConfig::default()).is_err());
}
