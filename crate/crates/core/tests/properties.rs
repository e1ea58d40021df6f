use hecke_core::characters::{e_tilde, residue_symbol};
use hecke_core::gaussian::{factor, gcd};
use hecke_core::hecke::r_weight;
use hecke_core::moments::{v_formula, MollifierSpec, Prefactor, VConvention};
use hecke_core::survey::{ScanStatus, SurveyRecord};
use hecke_core::GaussInt;
use num_complex::Complex64;
use proptest::prelude::*;

fn gauss(r: i64) -> impl Strategy<Value = GaussInt> {
    (-r..=r, -r..=r).prop_map(|(a, b)| GaussInt::new(a, b))
}

fn nonzero(r: i64) -> impl Strategy<Value = GaussInt> {
    gauss(r).prop_filter("nonzero", |z| !z.is_zero())
}

fn odd(r: i64) -> impl Strategy<Value = GaussInt> {
    gauss(r).prop_filter("odd", |z| !z.is_zero() && z.is_odd())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_multiplicative(a in gauss(1 << 14), b in gauss(1 << 14)) {
        prop_assert_eq!((a * b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn associates_share_a_canonical_form(z in nonzero(10_000)) {
        let c = z.canonical_generator().unwrap().value();
        for a in z.associates() {
            prop_assert_eq!(a.norm(), z.norm());
            prop_assert_eq!(a.canonical_generator().unwrap().value(), c);
        }
        prop_assert_eq!(c.canonical_generator().unwrap().value(), c);
    }

    #[test]
    fn euclidean_division(a in gauss(1 << 24), b in nonzero(1 << 12)) {
        let (q, r) = a.euclid_divmod(b).unwrap();
        prop_assert_eq!(q * b + r, a);
        prop_assert!(2 * r.norm() <= b.norm());
    }

    #[test]
    fn primary_elements_are_closed(a in odd(500), b in odd(500)) {
        let (pa, pb) = (a.primary_associate().unwrap(), b.primary_associate().unwrap());
        prop_assert!(pa.is_primary() && pb.is_primary());
        prop_assert!((pa * pb).is_primary());
    }

    #[test]
    fn residue_symbol_is_multiplicative(a in gauss(1000), b in gauss(1000), n in odd(60)) {
        let lhs = residue_symbol(a * b, n).unwrap();
        prop_assert_eq!(lhs, residue_symbol(a, n).unwrap() * residue_symbol(b, n).unwrap());
        prop_assert_eq!(lhs == 0, !gcd(a * b, n).unwrap().value().is_unit());
    }

    #[test]
    fn additive_character_is_a_homomorphism(x in -50.0f64..50.0, y in -50.0f64..50.0, u in -50.0f64..50.0, v in -50.0f64..50.0) {
        let (z, w) = (Complex64::new(x, y), Complex64::new(u, v));
        let lhs = e_tilde(z + w);
        prop_assert!((lhs - e_tilde(z) * e_tilde(w)).norm() < 1e-12);
        prop_assert!((lhs.norm() - 1.0).abs() < 1e-13);
        prop_assert!((e_tilde(z + Complex64::new(0.0, 1.0)) - e_tilde(z)).norm() < 1e-12);
    }

    #[test]
    fn divisor_weight_is_even(n in odd(300), re in -0.5f64..0.5, im in -5.0f64..5.0) {
        let f = factor(n).unwrap();
        let s = Complex64::new(re, im);
        let a = r_weight(s, &f);
        prop_assert!((a - r_weight(-s, &f)).norm() <= 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn v_is_at_least_one(u in -20.0f64..20.0, v in -20.0f64..20.0, halved in any::<bool>()) {
        let m = MollifierSpec::cubic(f64::MAX, 0.64).unwrap();
        let prefactor = if halved { Prefactor::Halved } else { Prefactor::MainTerm };
        let r = v_formula(u, v, 0.5 - 5e-10, &m, VConvention { prefactor, ..Default::default() }).unwrap();
        prop_assert!(r.value >= 1.0 && r.minus_one >= 0.0);
    }

    #[test]
    fn csv_rows_parse_back(re in -1000i64..1000, im in -1000i64..1000, zeros in 0usize..5, m in 1e-30f64..1e30, status in 0u8..3) {
        let d = GaussInt::new(re, im);
        let status = [ScanStatus::Clean, ScanStatus::Suspect, ScanStatus::Failed][status as usize];
        let rec = SurveyRecord {
            d,
            norm: d.norm(),
            num_real_zeros: zeros,
            min_abs_xi: m,
            suspect_flag: status == ScanStatus::Suspect,
            zero_locations: vec![],
            status,
        };
        let row = rec.csv_row();
        let fields: Vec<&str> = row.split(',').collect();
        prop_assert_eq!(fields.len(), 6);
        prop_assert_eq!(fields[0].parse::<i64>().unwrap(), re);
        prop_assert_eq!(fields[1].parse::<i64>().unwrap(), im);
        prop_assert_eq!(fields[2].parse::<u64>().unwrap(), d.norm());
        prop_assert_eq!(fields[3].parse::<usize>().unwrap(), zeros);
        let back: f64 = fields[4].parse().unwrap();
        prop_assert!((back - m).abs() <= 1e-6 * m);
        prop_assert_eq!(fields[5].parse::<ScanStatus>().unwrap(), status);
    }
}
