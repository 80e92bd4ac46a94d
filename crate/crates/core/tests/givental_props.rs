use std::collections::BTreeMap;

use proptest::prelude::*;
use tate_core::givental::{HodgeSpace, VecSeries};
use tate_core::linalg::{self, Matrix};
use tate_core::Rat;

fn hodge() -> impl Strategy<Value = HodgeSpace> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-2i32..=2, n),
                prop::collection::vec(-3i64..=3, n * n),
            )
        })
        .prop_map(|(h, raw)| {
            let n = h.len();
            let e: Matrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if h[i] - h[j] == 2 { Rat::int(raw[i * n + j]) } else { Rat::zero() })
                        .collect()
                })
                .collect();
            HodgeSpace::new(h, e).expect("grading-compatible E is nilpotent")
        })
}

fn vector(n: usize) -> impl Strategy<Value = VecSeries> {
    prop::collection::vec(prop::collection::btree_map(-3i32..=3, (-4i64..=4).prop_map(Rat::int), 0..4), n)
        .prop_map(|comps: Vec<BTreeMap<i32, Rat>>| VecSeries::from_rats(-3, 3, comps).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twisted_involution_squares_to_identity(
        (space, f) in hodge().prop_flat_map(|s| { let n = s.dim(); (Just(s), vector(n)) })
    ) {
        let twice = space.twisted_involution(&space.twisted_involution(&f).unwrap()).unwrap();
        prop_assert_eq!(twice, f);
    }

    #[test]
    fn exponentials_are_inverse(space in hodge()) {
        let p = linalg::mat_mul(space.exp_e(), space.exp_neg_e());
        prop_assert_eq!(p, linalg::identity(space.dim()));
    }

    #[test]
    fn zero_e_is_the_plain_involution(
        (h, f) in prop::collection::vec(-2i32..=2, 1..=4).prop_flat_map(|h| { let n = h.len(); (Just(h), vector(n)) })
    ) {
        let n = h.len();
        let space = HodgeSpace::new(h, vec![vec![Rat::zero(); n]; n]).unwrap();
        prop_assert_eq!(space.twisted_involution(&f).unwrap(), f.flip());
    }

    #[test]
    fn twisted_gram_is_antisymmetric_and_full_rank(space in hodge()) {
        let r = space.polarization_report(-2, 1).unwrap();
        prop_assert!(r.antisymmetric);
        prop_assert!(r.full_rank());
    }
}
