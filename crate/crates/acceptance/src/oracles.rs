//! Reference computations written independently of the library algorithms.
//! They share only exact rational arithmetic with it.

use std::collections::BTreeMap;

use tate_core::{HalfInt, PiHalf, Rat};

/// `Γ(s)` for `s = d/2` as `q · π^{p/2}`, returned as `(q, p)`; `None` at poles.
pub fn gamma(d: i32) -> Option<(Rat, i32)> {
    if d % 2 == 0 {
        let n = d / 2;
        if n <= 0 {
            return None;
        }
        let mut q = Rat::one();
        for i in 1..n {
            q = &q * &Rat::int(i as i64);
        }
        return Some((q, 0));
    }
    // Γ(1/2) = π^{1/2}; walk to d by Γ(s+1) = sΓ(s).
    let mut q = Rat::one();
    let mut cur = 1;
    while cur < d {
        q = &q * &Rat::new(cur as i64, 2);
        cur += 2;
    }
    while cur > d {
        cur -= 2;
        q = &q * &Rat::new(2, cur as i64);
    }
    Some((q, 1))
}

/// `1/Γ(s)` as a `PiHalf`, zero at poles.
pub fn recip_gamma(d: i32) -> PiHalf {
    match gamma(d) {
        Some((q, p)) => PiHalf::monomial(q.recip().expect("nonzero"), HalfInt::from_doubled(-p)),
        None => PiHalf::zero(),
    }
}

/// `n!!` for odd `n ≥ -1`.
pub fn double_factorial(n: i64) -> Rat {
    let mut acc = Rat::one();
    let mut k = n;
    while k > 1 {
        acc = &acc * &Rat::int(k);
        k -= 2;
    }
    acc
}

pub fn power(q: &Rat, k: u32) -> Rat {
    (0..k).fold(Rat::one(), |acc, _| &acc * q)
}

/// Coefficient of `e^k` in `1/(1 + βe)`.
pub fn geometric(beta: &Rat, k: u32) -> Rat {
    power(&-beta, k)
}

/// Rank over Q by fraction-free row reduction.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                a[i][j] = &(&a[i][j] * &piv) - &(&a[r][j] * &f);
            }
        }
        r += 1;
    }
    r
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `Q_λ(x) = 2^ℓ/(n−ℓ)! · Σ_{w ∈ S_n} w(x^λ Π_{i ≤ ℓ, i < j} (x_i + x_j)/(x_i − x_j))`,
/// for distinct `x`.
pub fn schur_q_symmetrized(lambda: &[u32], x: &[Rat]) -> Rat {
    let (l, n) = (lambda.len(), x.len());
    if l > n {
        return Rat::zero();
    }
    let mut total = Rat::zero();
    for w in permutations(n) {
        let y: Vec<&Rat> = w.iter().map(|&i| &x[i]).collect();
        let mut term = Rat::one();
        for (i, &li) in lambda.iter().enumerate() {
            term = &term * &power(y[i], li);
            for yj in &y[i + 1..] {
                let num = y[i] + *yj;
                let den = y[i] - *yj;
                term = &(&term * &num) * &den.recip().expect("distinct variables");
            }
        }
        total = &total + &term;
    }
    let mut fact = Rat::one();
    for k in 1..=(n - l) {
        fact = &fact * &Rat::int(k as i64);
    }
    &(&total * &power(&Rat::int(2), l as u32)) * &fact.recip().expect("nonzero")
}

/// Twisted boson states: occupation numbers of the creation modes `α_{−d/2}`,
/// keyed by odd `d > 0`.
pub type State = BTreeMap<u32, u32>;
pub type Vector = BTreeMap<State, Rat>;

fn add_into(v: &mut Vector, s: State, c: Rat) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(s.clone()).or_insert_with(Rat::zero);
    *e = &*e + &c;
    if e.is_zero() {
        v.remove(&s);
    }
}

/// `α_{d/2}` on occupation vectors, `[α_r, α_s] = r δ_{r+s,0}`.
pub fn alpha(d: i32, v: &Vector) -> Vector {
    let mut out = Vector::new();
    for (s, c) in v {
        let mut t = s.clone();
        if d < 0 {
            *t.entry((-d) as u32).or_insert(0) += 1;
            add_into(&mut out, t, c.clone());
        } else {
            let k = t.get(&(d as u32)).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            if k == 1 {
                t.remove(&(d as u32));
            } else {
                t.insert(d as u32, k - 1);
            }
            add_into(&mut out, t, c * &Rat::new(d as i64 * k as i64, 2));
        }
    }
    out
}

pub fn doubled_level(s: &State) -> i32 {
    s.iter().map(|(&d, &k)| (d * k) as i32).sum()
}

/// `½ Σ_r :α_{k−r} α_r:` plus `z` when `k = 0`.
pub fn virasoro(k: i32, z: &Rat, v: &Vector) -> Vector {
    let top = v.keys().map(doubled_level).max().unwrap_or(0);
    let bound = top + 2 * k.abs() + 1;
    let mut out = Vector::new();
    let half = Rat::new(1, 2);
    let mut r = -bound - if bound % 2 == 0 { 1 } else { 0 };
    while r <= bound {
        let a = 2 * k - r;
        // normal order: the larger index acts first
        let (first, second) = if a <= r { (r, a) } else { (a, r) };
        for (s, c) in alpha(second, &alpha(first, v)) {
            add_into(&mut out, s, &c * &half);
        }
        r += 2;
    }
    if k == 0 {
        for (s, c) in v {
            add_into(&mut out, s.clone(), c * z);
        }
    }
    out
}

pub fn scale(v: &Vector, q: &Rat) -> Vector {
    let mut out = Vector::new();
    for (s, c) in v {
        add_into(&mut out, s.clone(), c * q);
    }
    out
}

pub fn sub(a: &Vector, b: &Vector) -> Vector {
    let mut out = a.clone();
    for (s, c) in b {
        add_into(&mut out, s.clone(), -c);
    }
    out
}

/// The `L_0` constant forced by `[L_1, L_{−1}] = 2 L_0` on the vacuum.
pub fn zero_point() -> Rat {
    let vac: Vector = [(State::new(), Rat::one())].into_iter().collect();
    let w = virasoro(1, &Rat::zero(), &virasoro(-1, &Rat::zero(), &vac));
    &w.get(&State::new()).cloned().unwrap_or_else(Rat::zero) * &Rat::new(1, 2)
}

/// `[L_m, L_n] v − (m − n) L_{m+n} v`.
pub fn bracket_defect(m: i32, n: i32, z: &Rat, v: &Vector) -> Vector {
    let mn = virasoro(m, z, &virasoro(n, z, v));
    let nm = virasoro(n, z, &virasoro(m, z, v));
    sub(&sub(&mn, &nm), &scale(&virasoro(m + n, z, v), &Rat::int((m - n) as i64)))
}

/// Converts a doubled-mode monomial (descending) to occupation numbers.
pub fn state_of(m: &[u32]) -> State {
    let mut s = State::new();
    for &d in m {
        *s.entry(d).or_insert(0) += 1;
    }
    s
}
