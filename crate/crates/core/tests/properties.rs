//! Invariants over random inputs.

use num_traits::Signed;
use proptest::prelude::*;

use lorentzkit::bodies::{minkowski_sum, mixed_volumes, BodyFamily, Polytope};
use lorentzkit::deficits::{deficit_b, deficit_k, flatness_conditions, radii};
use lorentzkit::interval::Interval;
use lorentzkit::cone::ConeModel;
use lorentzkit::lorentz::check_positive_orthant_lorentzian;
use lorentzkit::matroid::{chow_ring, degree, DivisorSpec, Matroid};
use lorentzkit::poly::{Direction, VolumePolynomial};
use lorentzkit::rational::{fmt_rational, int, parse_rational, rat, Rational};

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
}

fn polygon() -> impl Strategy<Value = Polytope> {
    prop::collection::vec((0i64..5, 0i64..5), 3..7)
        .prop_map(|pts| Polytope::new(pts.into_iter().map(|(x, y)| vec![int(x), int(y)]).collect()).unwrap())
        .prop_filter("full-dimensional", |p| p.volume().is_positive())
}

fn positive_vector(s: usize) -> impl Strategy<Value = Direction> {
    prop::collection::vec((1i64..6, 1i64..4), s).prop_map(|v| Direction::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rationals_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&q)).unwrap(), q);
    }

    #[test]
    fn interval_products_enclose(a in rational(), b in rational(), c in rational(), d in rational()) {
        let x = Interval::new(a.clone().min(b.clone()), a.clone().max(b.clone()));
        let y = Interval::new(c.clone().min(d.clone()), c.clone().max(d.clone()));
        prop_assert!(x.mul(&y).contains(&(&a * &c)));
        prop_assert!(x.add(&y).contains(&(&b + &d)));
    }

    #[test]
    fn nth_root_encloses(n in 1i64..10_000, k in 2u32..5) {
        let q = int(n);
        let r = Interval::exact(q.clone()).nth_root(k, 64);
        prop_assert!(lorentzkit::rational::pow(&r.lo, k) <= q);
        prop_assert!(lorentzkit::rational::pow(&r.hi, k) >= q);
    }

    #[test]
    fn mixed_area_is_symmetric_and_additive(a in polygon(), b in polygon()) {
        let f = mixed_volumes(&BodyFamily::new(vec![a.clone(), b.clone()]).unwrap()).unwrap();
        let g = mixed_volumes(&BodyFamily::new(vec![b.clone(), a.clone()]).unwrap()).unwrap();
        prop_assert_eq!(f.coefficient(&[1, 1]), g.coefficient(&[1, 1]));
        let sum = minkowski_sum(&a, &b).unwrap();
        prop_assert_eq!(f.evaluate(&Direction::from_ints(&[1, 1])).unwrap(), sum.volume());
        // translation invariance
        let moved = a.translate(&[rat(1, 3), int(-2)]);
        let h = mixed_volumes(&BodyFamily::new(vec![moved, b]).unwrap()).unwrap();
        prop_assert_eq!(f, h);
    }

    #[test]
    fn polygon_pairs_are_lorentzian(a in polygon(), b in polygon()) {
        let f = mixed_volumes(&BodyFamily::new(vec![a, b]).unwrap()).unwrap();
        let cert = check_positive_orthant_lorentzian(&f);
        prop_assert!(cert.is_certified());
    }

    #[test]
    fn deficits_are_nonnegative(a in positive_vector(3), b in positive_vector(3)) {
        // second elementary symmetric polynomial in three variables
        let f = VolumePolynomial::from_int_terms(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]).unwrap();
        let bm = deficit_b(&f, &a, &b, 96).unwrap();
        let kt = deficit_k(&f, &a, &b, 96).unwrap();
        prop_assert!(!bm.hi.is_negative());
        prop_assert!(!kt.hi.is_negative());
        let c = flatness_conditions(&f, &a, &b).unwrap();
        prop_assert!(c.iter().all(|&x| x == c[0]));
        prop_assert_eq!(c[0], a.is_proportional(&b));
        let r = radii(&f, &a, &b, &ConeModel::positive_orthant(3)).unwrap();
        prop_assert!(r.verify_order(&f, &a, &b, &ConeModel::positive_orthant(3), &[]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn matroid_degrees_ignore_relabeling(perm in Just(vec![0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let m = Matroid::graphic(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let p = m.permute(&perm).unwrap();
        for mat in [&m, &p] {
            let ring = chow_ring(mat).unwrap();
            let ab = degree(&ring, &[DivisorSpec::Alpha, DivisorSpec::Beta]).unwrap();
            prop_assert_eq!(ab, int(4));
        }
    }
}
