mod common;

use common::*;
use proptest::prelude::*;
use tate_core::fgl_tate::{FormalGroupLaw, TateModule};
use tate_core::half_spin::{embed, gamma_series_or_zero, kappa, xsymplectic};
use tate_core::{HalfInt, Ring, Scalar, Series, Window};

fn poly(cs: &[tate_core::Rat], lo: i32) -> Series {
    let hi = lo + cs.len() as i32 - 1;
    Series::from_rats(Ring::PLAIN, lo, cs, Window::ints(lo, hi).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn divided_power_derivative(d in -15i32..=15) {
        let s = HalfInt::from_doubled(d);
        let g = gamma_series_or_zero(s, s).unwrap();
        let dg = g.derivative();
        let want = gamma_series_or_zero(s - HalfInt::ONE, s).unwrap();
        prop_assert!(dg.agrees_with(&want), "{} vs {}", dg, want);
    }

    #[test]
    fn embed_is_linear(
        a in prop::collection::vec(small_rat(), 6),
        b in prop::collection::vec(small_rat(), 6),
        q in small_rat(),
    ) {
        let (f, g) = (poly(&a, -3), poly(&b, -3));
        let lhs = embed(&f.add(&g.scale(&Scalar::rat(q.clone(), 1)).unwrap()).unwrap()).unwrap();
        let rhs = embed(&f).unwrap().add(&embed(&g).unwrap().scale(&Scalar::rat(q, 1)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn embedding_is_symplectic_up_to_kappa(
        a in prop::collection::vec(small_rat(), 8),
        b in prop::collection::vec(small_rat(), 8),
    ) {
        let t = TateModule::new(FormalGroupLaw::additive(8), 3).unwrap();
        let (f, g) = (poly(&a, -4).with_window(t.window()).unwrap(), poly(&b, -4).with_window(t.window()).unwrap());
        let tate = t.symplectic(&f, &g).unwrap();
        let x = xsymplectic(&embed(&poly(&a, -4)).unwrap(), &embed(&poly(&b, -4)).unwrap()).unwrap();
        prop_assert_eq!(x, &Scalar::from_pihalf(kappa(), 1) * &tate);
    }
}

#[test]
fn embedding_transports_the_polarization() {
    // The image of a monomial is exact, so its window may be widened.
    let e = |k: i32| {
        let m = embed(&Series::power(Ring::PLAIN, HalfInt::int(k), HalfInt::int(k)).unwrap()).unwrap();
        m.with_window(Window::new(m.window().lo, HalfInt::int(8)).unwrap()).unwrap()
    };
    for j in -5..=4 {
        for k in -5..=4 {
            if (j >= 0) == (k >= 0) {
                assert!(xsymplectic(&e(j), &e(k)).unwrap().is_zero(), "({j},{k})");
            }
        }
    }
}
