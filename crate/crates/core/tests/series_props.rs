mod common;

use common::*;
use proptest::prelude::*;
use tate_core::{HalfInt, Ring, Series, Window};

fn x(n: u32, hi: i32) -> Series {
    Series::power(Ring::nil(n).unwrap(), HalfInt::ONE, HalfInt::int(hi)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_of_derivative_vanishes(f in laurent(3, -4, 4)) {
        prop_assert!(f.derivative().residue().unwrap().is_zero());
    }

    #[test]
    fn composition_is_associative(
        f in laurent(3, -2, 6),
        g in nil_element(3, -1, 7),
        h in nil_element(3, -1, 7),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right), "{} vs {}", left, right);
    }

    #[test]
    fn reversion_is_two_sided(g in nil_element(3, -1, 8)) {
        let r = g.reversion().unwrap();
        for id in [g.compose(&r).unwrap(), r.compose(&g).unwrap()] {
            prop_assert!(id.agrees_with(&x(3, 8)), "{}", id);
            if g.valuation().is_some_and(|v| v >= HalfInt::ZERO) {
                prop_assert!(id.window().contains(HalfInt::ONE), "{}", id);
            }
        }
    }

    #[test]
    fn change_of_variable_keeps_residues(
        u in laurent_in(2, -2, 3, 9),
        v in laurent_in(2, -2, 3, 9),
        g in nil_element(2, 0, 14),
    ) {
        let lhs = u.compose(&g).unwrap().mul(&v.compose(&g).unwrap().derivative()).unwrap();
        let rhs = u.mul(&v.derivative()).unwrap();
        prop_assert_eq!(lhs.residue().unwrap(), rhs.residue().unwrap());
    }

    #[test]
    fn inverse_times_series_is_one(f in nil_element(3, -1, 6)) {
        let h = f.mul_monomial(&tate_core::Scalar::one(3), -HalfInt::ONE).unwrap();
        let p = h.mul(&h.mul_inverse().unwrap()).unwrap();
        prop_assert!(p.agrees_with(&Series::power(Ring::nil(3).unwrap(), HalfInt::ZERO, HalfInt::int(10)).unwrap()));
    }

    #[test]
    fn odd_square_root_squares_back(g in nil_element(2, -1, 7), k in 1i64..=3) {
        let g = with_lead(&g, tate_core::Scalar::int(k * k, 2));
        let h = g.sqrt_odd().unwrap();
        prop_assert!(h.is_odd_in_sqrt());
        prop_assert!(h.mul(&h).unwrap().agrees_with(&g));
    }

    #[test]
    fn projection_is_idempotent(f in laurent(2, -5, 5), m in -6i32..=6) {
        let m = HalfInt::int(m);
        if let Ok(p) = f.project_geq(m) {
            prop_assert_eq!(p.project_geq(m).unwrap(), p);
        }
    }

    #[test]
    fn larger_windows_refine_smaller_ones(
        f in laurent(3, -2, 10),
        g in nil_element(3, -1, 10),
        cut in 4i32..=9,
    ) {
        let small = |s: &Series| s.restrict(Window::new(s.window().lo, HalfInt::int(cut)).unwrap()).unwrap();
        let big = f.compose(&g).unwrap().mul(&g.reversion().unwrap()).unwrap();
        let little = small(&f).compose(&small(&g)).unwrap().mul(&small(&g).reversion().unwrap()).unwrap();
        prop_assert!(little.refined_by(&big), "{} vs {}", little, big);
    }
}
