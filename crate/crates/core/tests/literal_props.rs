mod common;

use common::*;
use proptest::prelude::*;
use tate_core::literal::{
    format_partition, parse_grid, parse_half, parse_partition, parse_scalar, parse_series,
    parse_window, Grid,
};
use tate_core::{HalfInt, Ring, Window};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn half_integers(d in -200i32..=200) {
        let h = HalfInt::from_doubled(d);
        prop_assert_eq!(parse_half(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn scalars(s in scalar(3, true)) {
        prop_assert_eq!(parse_scalar(&s.to_string(), 3).unwrap(), s);
    }

    #[test]
    fn series(s in laurent(3, -4, 4), o in odd_series(2, -5, 3, 7)) {
        prop_assert_eq!(parse_series(&s.to_string(), s.ring()).unwrap(), s);
        prop_assert_eq!(parse_series(&o.to_string(), Ring::nil(2).unwrap()).unwrap(), o);
    }

    #[test]
    fn windows(lo in -30i32..=30, len in 0i32..=30) {
        let w = Window::new(HalfInt::from_doubled(lo), HalfInt::from_doubled(lo + len)).unwrap();
        prop_assert_eq!(parse_window(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn grids(cs in prop::collection::btree_map((0u32..5, 0u32..5), scalar(2, false), 0..6), deg in 8u32..=12) {
        let coeffs = cs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let g = Grid { coeffs, degree: deg };
        prop_assert_eq!(parse_grid(&g.to_string(), 2).unwrap(), g);
    }

    #[test]
    fn partitions(mut ps in prop::collection::vec(1u32..20, 0..6)) {
        ps.sort_unstable_by(|a, b| b.cmp(a));
        prop_assert_eq!(parse_partition(&format_partition(&ps)).unwrap(), ps);
    }
}
