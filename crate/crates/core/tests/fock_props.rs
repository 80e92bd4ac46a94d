use proptest::prelude::*;
use tate_core::fock::{
    alpha_apply, basis_upto, schur_q, strict_partitions, FockSpace, FockVector, Mode,
};
use tate_core::{HalfInt, Rat};

fn level(m: &[u32]) -> i32 {
    m.iter().map(|&d| d as i32).sum()
}

#[test]
fn heisenberg_relations_through_level_six() {
    let modes: Vec<i32> = (-13..=13).filter(|d| d % 2 != 0).collect();
    for b in basis_upto(HalfInt::int(6)) {
        let v = FockVector::basis(b.clone());
        for &r in &modes {
            for &s in &modes {
                let (mr, ms) = (Mode::doubled(r).unwrap(), Mode::doubled(s).unwrap());
                let rs = alpha_apply(mr, &alpha_apply(ms, &v));
                let sr = alpha_apply(ms, &alpha_apply(mr, &v));
                let want = if r + s == 0 { v.scale(&Rat::new(r as i64, 2)) } else { FockVector::zero() };
                assert_eq!(rs.sub(&sr), want, "[a_{r}/2, a_{s}/2] on {b:?}");
            }
        }
    }
}

#[test]
fn virasoro_shifts_level() {
    let f = FockSpace::new(HalfInt::int(6));
    for b in basis_upto(HalfInt::int(4)) {
        let v = FockVector::basis(b.clone());
        for k in -2..=3 {
            let out = f.virasoro_apply(k, &v).unwrap();
            for (m, _) in out.terms() {
                assert_eq!(level(m), level(&b) - 2 * k);
            }
        }
    }
    for k in 1..=3 {
        assert!(f.virasoro_apply(k, &FockVector::vacuum()).unwrap().is_zero());
    }
}

fn vars() -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-5i64..=5, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d)), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_q_is_symmetric(xs in vars(), n in 1u32..=6, rot in 0usize..4, swap in any::<bool>()) {
        let mut ys = xs.clone();
        let len = ys.len();
        ys.rotate_left(rot % len);
        if swap && len > 1 {
            ys.swap(0, 1);
        }
        for lambda in strict_partitions(n) {
            prop_assert_eq!(schur_q(&lambda, &xs).unwrap(), schur_q(&lambda, &ys).unwrap());
        }
    }

    #[test]
    fn schur_q_vanishes_on_too_few_variables(xs in vars(), n in 1u32..=8) {
        for lambda in strict_partitions(n).into_iter().filter(|l| l.len() > xs.len()) {
            prop_assert!(schur_q(&lambda, &xs).unwrap().is_zero());
        }
    }
}
