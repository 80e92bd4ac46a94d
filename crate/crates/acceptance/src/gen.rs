//! Seeded generators for random test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tate_core::literal::Grid;
use tate_core::{HalfInt, Rat, Ring, Scalar, Series, Window};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(r: &mut impl Rng) -> Rat {
    Rat::new(r.random_range(-7..=7), r.random_range(1..=5))
}

pub fn nonzero_rat(r: &mut impl Rng) -> Rat {
    loop {
        let q = rat(r);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A scalar in `Q[π^{±1/2}][ε]/(ε^n)` with up to three monomials.
pub fn scalar(r: &mut impl Rng, n: u32, with_pi: bool, min_eps: u32) -> Scalar {
    let mut s = Scalar::zero(n);
    if min_eps >= n {
        return s;
    }
    for _ in 0..r.random_range(0..=3) {
        let pi = if with_pi { r.random_range(-3..=3) } else { 0 };
        let e = r.random_range(min_eps..n);
        s = &s + &Scalar::monomial(rat(r), HalfInt::from_doubled(pi), e, n);
    }
    s
}

/// Integer-exponent series supported in `[lo, top]` on window `[lo, hi]`.
pub fn laurent(r: &mut impl Rng, n: u32, lo: i32, top: i32, hi: i32) -> Series {
    let ring = Ring::nil(n).unwrap();
    let terms: Vec<_> = (lo..=top)
        .map(|e| (HalfInt::int(e), scalar(r, n, false, 0)))
        .collect();
    Series::new(ring, Window::ints(lo, hi).unwrap(), terms).unwrap()
}

/// Half-odd-exponent series with doubled exponents in `[lo_d, top_d]`.
pub fn odd_series(r: &mut impl Rng, n: u32, lo_d: i32, top_d: i32, hi_d: i32) -> Series {
    let ring = Ring::nil(n).unwrap();
    let terms: Vec<_> = (lo_d..=top_d)
        .step_by(2)
        .map(|d| (HalfInt::from_doubled(d), scalar(r, n, true, 0)))
        .collect();
    Series::new(ring, Window::new(HalfInt::from_doubled(lo_d), HalfInt::from_doubled(hi_d)).unwrap(), terms)
        .unwrap()
}

/// A nil-Laurent group element on `[lo, hi]`: nilpotent coefficients (each
/// present with probability `p_neg`) below `x^1`, a unit at `x^1`, anything
/// above. Below `x^-1` only the top layer `ε^{n-1}` appears, so that
/// compositions keep their linear coefficient inside the certified window.
pub fn nil_element(r: &mut impl Rng, n: u32, lo: i32, hi: i32, p_neg: f64) -> Series {
    nil_element_supported(r, n, lo, lo, hi, p_neg)
}

/// As [`nil_element`] with nilpotent terms only from `x^floor` up; the
/// window still starts at `lo`, so the zeros below are exact.
pub fn nil_element_supported(r: &mut impl Rng, n: u32, lo: i32, floor: i32, hi: i32, p_neg: f64) -> Series {
    let ring = Ring::nil(n).unwrap();
    let mut terms = Vec::new();
    for e in floor.max(lo)..=0 {
        if r.random_bool(p_neg) {
            let min_eps = if e < -1 { n - 1 } else { 1 };
            terms.push((HalfInt::int(e), scalar(r, n, false, min_eps)));
        }
    }
    let unit = &Scalar::rat(nonzero_rat(r), n) + &scalar(r, n, false, 1);
    terms.push((HalfInt::ONE, unit));
    for e in 2..=hi {
        if r.random_bool(0.6) {
            terms.push((HalfInt::int(e), scalar(r, n, false, 0)));
        }
    }
    Series::new(ring, Window::ints(lo, hi).unwrap(), terms).unwrap()
}

pub fn window(r: &mut impl Rng) -> Window {
    let lo = r.random_range(-30..=30);
    let len = r.random_range(0..=30);
    Window::new(HalfInt::from_doubled(lo), HalfInt::from_doubled(lo + len)).unwrap()
}

pub fn grid(r: &mut impl Rng, n: u32) -> Grid {
    let degree = r.random_range(4..=12);
    let mut coeffs = std::collections::BTreeMap::new();
    for _ in 0..r.random_range(0..=6) {
        let i = r.random_range(0..=degree);
        let j = r.random_range(0..=(degree - i));
        let c = scalar(r, n, true, 0);
        if !c.is_zero() {
            coeffs.insert((i, j), c);
        }
    }
    Grid { coeffs, degree }
}

/// A partition in descending order, possibly empty.
pub fn partition(r: &mut impl Rng) -> Vec<u32> {
    let mut p: Vec<u32> = (0..r.random_range(0..=6)).map(|_| r.random_range(1..=20)).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

/// Distinct nonzero rationals.
pub fn distinct_rats(r: &mut impl Rng, n: usize) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::new();
    while out.len() < n {
        let q = nonzero_rat(r);
        if !out.contains(&q) {
            out.push(q);
        }
    }
    out
}
