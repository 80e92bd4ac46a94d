mod common;

use common::*;
use proptest::prelude::*;
use tate_core::scalars::{gamma_half, PiHalf};
use tate_core::{HalfInt, Rat, Scalar};

fn ring_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
    assert_eq!(&(a + b) + c, a + &(b + c));
    assert_eq!(&(a * b) * c, a * &(b * c));
    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    assert_eq!(a * b, b * a);
    assert_eq!(a + b, b + a);
    assert_eq!(&(a - a), &Scalar::zero(a.order()));
    assert_eq!(a * &Scalar::one(a.order()), a.clone());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rationals_form_a_ring(a in scalar(1, false), b in scalar(1, false), c in scalar(1, false)) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn pi_half_ring(a in scalar(1, true), b in scalar(1, true), c in scalar(1, true)) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn nil_ring(a in scalar(3, true), b in scalar(3, true), c in scalar(3, true)) {
        ring_axioms(&a, &b, &c);
    }

    #[test]
    fn nilpotents_vanish_at_the_order(z in nilpotent(3)) {
        prop_assert!(z.pow(3).is_zero());
    }

    #[test]
    fn units_invert(q in nonzero_rat(), p in -3i32..=3, z in nilpotent(3)) {
        let u = &Scalar::from_pihalf(PiHalf::monomial(q, HalfInt::from_doubled(p)), 3) + &z;
        let inv = u.inverse().unwrap();
        prop_assert!((&inv * &u).is_one());
    }

    #[test]
    fn non_units_do_not_invert(z in nilpotent(3)) {
        prop_assert!(z.inverse().is_err());
    }

    #[test]
    fn gamma_recursion(d in -21i32..=21) {
        let s = HalfInt::from_doubled(d);
        if let (Ok(g), Ok(g1)) = (gamma_half(s), gamma_half(s + HalfInt::ONE)) {
            let t = Rat::new(d as i64 + 2, 2);
            prop_assert_eq!(g1, g.scale(&t));
        }
    }
}
