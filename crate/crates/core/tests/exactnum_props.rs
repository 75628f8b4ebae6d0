use num_traits::ToPrimitive;
use proptest::prelude::*;
use sylowtab::exactnum::{cyc_root, ideal_reduce, Cyc, IdealReducer, Rat};

const AMBIENT: u64 = 120;

fn eval(a: &Cyc) -> (f64, f64) {
    let n = a.conductor() as f64;
    a.terms().iter().fold((0.0, 0.0), |(re, im), (e, q)| {
        let c = q.to_f64().unwrap();
        let t = std::f64::consts::TAU * *e as f64 / n;
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

/// Integer combinations of roots of unity whose orders divide 120.
fn cyc() -> impl Strategy<Value = Cyc> {
    let conductors = prop::sample::select(vec![1u64, 3, 4, 5, 8, 12, 15, 24, 40, 120]);
    prop::collection::vec((conductors, 0i64..120, -4i64..5), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(n, k, c)| &cyc_root(n, k).unwrap() * &Cyc::from_int(c))
            .sum()
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])
}

#[test]
fn spec_examples() {
    assert_eq!(cyc_root(1, 0).unwrap(), Cyc::one());
    let i = cyc_root(4, 1).unwrap();
    assert_eq!(&i * &i, Cyc::from_int(-1));
    assert_eq!(&cyc_root(3, 1).unwrap() + &cyc_root(3, 2).unwrap(), Cyc::from_int(-1));
    let z5 = cyc_root(5, 1).unwrap();
    assert_eq!(&z5 + &Cyc::zero(), z5);
    assert_eq!(&cyc_root(8, 1).unwrap() * &cyc_root(8, 3).unwrap(), Cyc::from_int(-1));
    let z3 = cyc_root(3, 1).unwrap();
    let a = &Cyc::one() + &z3;
    let b = &Cyc::one() + &z3.pow(2);
    assert_eq!(&a * &b, Cyc::one());
    assert_eq!(z3.galois(-1).unwrap(), z3.pow(2));
    assert_eq!(Cyc::from_int(7).galois(5).unwrap(), Cyc::from_int(7));
    assert_eq!(cyc_root(8, 1).unwrap().abs2(), Cyc::one());
    assert_eq!((&Cyc::one() + &i).abs2(), Cyc::from_int(2));
    assert_eq!(Cyc::zero().abs2(), Cyc::zero());
    assert_eq!((&z3 + &z3.pow(2)).to_rat().unwrap(), Rat::from_integer((-1).into()));
    assert!(z5.to_rat().is_err());
    assert!(z3.galois(3).is_err());
}

#[test]
fn reduction_examples() {
    let r = ideal_reduce(&Cyc::from_int(-7), 5).unwrap();
    assert_eq!(r, r.field().from_int(3));
    let g = ideal_reduce(&cyc_root(3, 1).unwrap(), 2).unwrap();
    assert_eq!(g.field().size(), 4u32.into());
    assert_eq!(g.multiplicative_order(), Some(3));
    let z4 = ideal_reduce(&cyc_root(4, 1).unwrap(), 2).unwrap();
    assert!(z4.is_one());
    assert!(ideal_reduce(&cyc_root(3, 1).unwrap().scale(&Rat::new(1.into(), 2.into())), 3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complex_embedding_is_a_ring_homomorphism(a in cyc(), b in cyc()) {
        let (x, y) = (eval(&a), eval(&b));
        prop_assert!(close(eval(&(&a + &b)), (x.0 + y.0, x.1 + y.1)));
        prop_assert!(close(eval(&(&a * &b)), (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)));
        prop_assert!(close(eval(&a.conj()), (x.0, -x.1)));
    }

    #[test]
    fn ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_unique(a in cyc(), b in cyc()) {
        prop_assert_eq!(close(eval(&a), eval(&b)), a == b);
    }

    #[test]
    fn galois_action(a in cyc(), b in cyc(), j in prop::sample::select(vec![1i64, 7, 11, 13, 17, 19, 23, 29, -1])) {
        let s = |x: &Cyc| x.galois(j).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
    }

    #[test]
    fn abs2_is_rational_for_rationals_times_roots(k in 0i64..120, c in -9i64..10) {
        let a = &cyc_root(AMBIENT, k).unwrap() * &Cyc::from_int(c);
        prop_assert_eq!(a.abs2(), Cyc::from_int(c * c));
    }

    #[test]
    fn inverse_and_division(a in cyc(), b in cyc()) {
        prop_assume!(!b.is_zero());
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn ideal_reduction_is_a_ring_homomorphism(a in cyc(), b in cyc(), p in prime()) {
        let r = IdealReducer::new(p, AMBIENT as u32).unwrap();
        let (x, y) = (r.reduce(&a).unwrap(), r.reduce(&b).unwrap());
        prop_assert_eq!(r.reduce(&(&a + &b)).unwrap(), x.add(&y));
        prop_assert_eq!(r.reduce(&(&a * &b)).unwrap(), x.mul(&y));
    }
}
