#![allow(dead_code)]

use proptest::prelude::*;
use tate_core::{HalfInt, Rat, Ring, Scalar, Series, Window};

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| Rat::new(n, d))
}

/// A scalar in `Q[ε]/(ε^n)`, optionally with π-powers.
pub fn scalar(n: u32, with_pi: bool) -> impl Strategy<Value = Scalar> {
    let pi_range = if with_pi { -2i32..=2 } else { 0i32..=0 };
    prop::collection::vec((small_rat(), pi_range, 0..n), 0..4).prop_map(move |ms| {
        ms.into_iter().fold(Scalar::zero(n), |acc, (q, p, e)| {
            &acc + &Scalar::monomial(q, HalfInt::from_doubled(p), e, n)
        })
    })
}

pub fn nilpotent(n: u32) -> impl Strategy<Value = Scalar> {
    scalar(n, false).prop_map(move |s| {
        let mut layers = s.into_layers();
        layers[0] = Default::default();
        Scalar::from_layers(layers, n).unwrap()
    })
}

/// Rational Laurent series on `[lo, hi]` with integer exponents.
pub fn laurent(n: u32, lo: i32, hi: i32) -> impl Strategy<Value = Series> {
    prop::collection::vec(scalar(n, false), (hi - lo + 1) as usize).prop_map(move |cs| {
        let ring = Ring::nil(n).unwrap();
        Series::new(
            ring,
            Window::ints(lo, hi).unwrap(),
            cs.into_iter()
                .enumerate()
                .map(|(i, c)| (HalfInt::int(lo + i as i32), c)),
        )
        .unwrap()
    })
}

/// As [`laurent`], supported on `[lo, top]` inside the window `[lo, hi]`.
pub fn laurent_in(n: u32, lo: i32, top: i32, hi: i32) -> impl Strategy<Value = Series> {
    laurent(n, lo, top).prop_map(move |s| {
        s.with_window(Window::ints(lo, hi).unwrap()).unwrap()
    })
}

/// A random nil-Laurent group element `Σ g_k x^{k+1}` on `[lo, hi]`,
/// `lo ≤ 0`.
pub fn nil_element(n: u32, lo: i32, hi: i32) -> impl Strategy<Value = Series> {
    let below = prop::collection::vec(nilpotent(n), (1 - lo) as usize);
    let above = prop::collection::vec(scalar(n, false), (hi - 1).max(0) as usize);
    (below, nonzero_rat(), nilpotent(n), above).prop_map(move |(b, g0, g0nil, a)| {
        let ring = Ring::nil(n).unwrap();
        let mut terms: Vec<(HalfInt, Scalar)> = b
            .into_iter()
            .enumerate()
            .map(|(i, c)| (HalfInt::int(lo + i as i32), c))
            .collect();
        terms.push((HalfInt::ONE, &Scalar::rat(g0, n) + &g0nil));
        terms.extend(a.into_iter().enumerate().map(|(i, c)| (HalfInt::int(2 + i as i32), c)));
        Series::new(ring, Window::ints(lo, hi).unwrap(), terms).unwrap()
    })
}

/// An odd series in `y = x^{1/2}`: half-odd `x`-exponents with doubled
/// values in `[lo_d, hi_d]`.
pub fn odd_series(n: u32, lo_d: i32, top_d: i32, hi_d: i32) -> impl Strategy<Value = Series> {
    let count = ((top_d - lo_d) / 2 + 1) as usize;
    prop::collection::vec(scalar(n, false), count).prop_map(move |cs| {
        let ring = Ring::nil(n).unwrap();
        Series::new(
            ring,
            Window::new(HalfInt::from_doubled(lo_d), HalfInt::from_doubled(hi_d)).unwrap(),
            cs.into_iter()
                .enumerate()
                .map(|(i, c)| (HalfInt::from_doubled(lo_d + 2 * i as i32), c)),
        )
        .unwrap()
    })
}

/// A logarithm `x + Σ_{k≥2} a_k x^k` on `[1, d]`.
pub fn logarithm(n: u32, d: i32) -> impl Strategy<Value = Series> {
    prop::collection::vec(scalar(n, false), (d - 1) as usize).prop_map(move |cs| {
        let ring = Ring::nil(n).unwrap();
        let mut terms = vec![(HalfInt::ONE, Scalar::one(n))];
        terms.extend(cs.into_iter().enumerate().map(|(i, c)| (HalfInt::int(2 + i as i32), c)));
        Series::new(ring, Window::ints(1, d).unwrap(), terms).unwrap()
    })
}

/// `g` with its `x^1` coefficient replaced by `c`.
pub fn with_lead(g: &Series, c: Scalar) -> Series {
    let terms = g
        .terms()
        .filter(|(e, _)| *e != HalfInt::ONE)
        .map(|(e, c)| (e, c.clone()))
        .chain([(HalfInt::ONE, c)])
        .collect::<Vec<_>>();
    Series::new(g.ring(), g.window(), terms).unwrap()
}
