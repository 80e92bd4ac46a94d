mod common;

use common::*;
use proptest::prelude::*;
use tate_core::nil_group::{NilLaurentElement, OddHalfElement};
use tate_core::{HalfInt, Ring};

fn el(s: tate_core::Series) -> NilLaurentElement {
    NilLaurentElement::validate(s).expect("generator yields valid elements")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn group_axioms(a in nil_element(3, -1, 9), b in nil_element(3, -1, 9), c in nil_element(3, -1, 9)) {
        let (a, b, c) = (el(a), el(b), el(c));
        let e = NilLaurentElement::identity(Ring::nil(3).unwrap(), 9).unwrap();
        prop_assert!(a.compose(&e).unwrap().series().agrees_with(a.series()));
        prop_assert!(e.compose(&a).unwrap().series().agrees_with(a.series()));
        let inv = a.inverse().unwrap();
        prop_assert!(a.compose(&inv).unwrap().series().agrees_with(e.series()));
        prop_assert!(inv.compose(&a).unwrap().series().agrees_with(e.series()));
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(l.series().agrees_with(r.series()));
    }

    #[test]
    fn reduction_is_a_coordinate_change(a in nil_element(3, -2, 8)) {
        let r = el(a).reduced();
        prop_assert_eq!(r.valuation(), Some(HalfInt::ONE));
        prop_assert!(r.terms().all(|(e, c)| e >= HalfInt::ONE && c.as_rational().is_some()));
    }

    #[test]
    fn act_is_a_ring_homomorphism(
        g in nil_element(2, 0, 10),
        u in laurent_in(2, -2, 3, 9),
        v in laurent_in(2, -2, 3, 9),
    ) {
        let g = el(g);
        let sum = g.act(&u.add(&v).unwrap()).unwrap();
        prop_assert!(sum.agrees_with(&g.act(&u).unwrap().add(&g.act(&v).unwrap()).unwrap()));
        let prod = g.act(&u.mul(&v).unwrap()).unwrap();
        prop_assert!(prod.agrees_with(&g.act(&u).unwrap().mul(&g.act(&v).unwrap()).unwrap()));
    }

    #[test]
    fn act_is_a_right_action(
        g1 in nil_element(2, 0, 10),
        g2 in nil_element(2, 0, 10),
        f in laurent_in(2, -2, 3, 9),
    ) {
        let (g1, g2) = (el(g1), el(g2));
        let lhs = g1.compose(&g2).unwrap().act(&f).unwrap();
        let rhs = g2.act(&g1.act(&f).unwrap()).unwrap();
        prop_assert!(lhs.agrees_with(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn odd_action_preserves_the_form(
        g in nil_element(2, 1, 10),
        u in odd_series(2, -3, 3, 15),
        v in odd_series(2, -3, 3, 15),
        k in 1i64..=3,
    ) {
        let h: OddHalfElement = el(with_lead(&g, tate_core::Scalar::int(k * k, 2))).to_odd_half().unwrap();
        let (hu, hv) = (h.act(&u).unwrap(), h.act(&v).unwrap());
        prop_assert!(hu.is_odd_in_sqrt() || hu.is_zero());
        let before = u.mul(&v.derivative()).unwrap().residue().unwrap();
        let after = hu.mul(&hv.derivative()).unwrap().residue().unwrap();
        prop_assert_eq!(after, before);
    }
}
