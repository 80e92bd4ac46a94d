//! The bosonic Fock space on half-integer modes.
//!
//! A basis vector is a creation monomial `α_{-s_1} ⋯ α_{-s_k} |0⟩` with
//! positive `s_i ∈ Z + 1/2`; it is keyed by the doubled modes `2 s_i` (odd
//! integers) in descending order, and its level is `Σ s_i`. Equivalently
//! the space is `Q[p_1, p_3, p_5, …]` with `α_{-s}` multiplying by `p_{2s}`
//! and `α_s` acting as `s ∂/∂p_{2s}`, so that `[α_r, α_s] = r δ_{r+s,0}`.
//!
//! The Virasoro operators are `L_k = ½ Σ_r :α_{k-r} α_r:`, plus a zero-point
//! constant on `L_0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::{double_factorial, recip_gamma_half, PiHalf, Rat};

/// Default level cap.
pub const DEFAULT_LEVEL_CAP: i32 = 6;

/// A Heisenberg mode `r ∈ Z + 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode(HalfInt);

impl Mode {
    pub fn new(r: HalfInt) -> Result<Mode> {
        if r.is_integer() {
            return Err(Error::DomainError(format!("mode {r} is not in Z + 1/2")));
        }
        Ok(Mode(r))
    }

    /// The mode with doubled value `d` (odd).
    pub fn doubled(d: i32) -> Result<Mode> {
        Mode::new(HalfInt::from_doubled(d))
    }

    pub fn value(self) -> HalfInt {
        self.0
    }
}

/// Doubled modes, descending.
pub type Monomial = Vec<u32>;

fn level_of(m: &[u32]) -> i32 {
    m.iter().map(|&d| d as i32).sum()
}

/// A finitely supported vector in the Fock space.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FockVector {
    terms: BTreeMap<Monomial, Rat>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        FockVector::basis(Vec::new())
    }

    /// The basis vector for a multiset of doubled modes (any order).
    pub fn basis(mut m: Monomial) -> Self {
        m.sort_unstable_by(|a, b| b.cmp(a));
        let mut v = FockVector::zero();
        v.add_term(m, Rat::one());
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest level among the terms, as a half-integer.
    pub fn max_level(&self) -> Option<HalfInt> {
        self.terms.keys().map(|m| HalfInt::from_doubled(level_of(m))).max()
    }

    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &FockVector) -> FockVector {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn scale(&self, q: &Rat) -> FockVector {
        if q.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Product as polynomials in the power sums `p_{2s}`.
    pub fn mul(&self, o: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                let mut m: Monomial = a.iter().chain(b).copied().collect();
                m.sort_unstable_by(|x, y| y.cmp(x));
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// `Some(λ)` when `self = λ · o` (with `o` nonzero).
    pub fn ratio_to(&self, o: &FockVector) -> Option<Rat> {
        let (m, c) = o.terms.iter().next()?;
        let lambda = &self.coefficient(m) * &c.recip().ok()?;
        (self == &o.scale(&lambda)).then_some(lambda)
    }
}

/// `c*|s_1,s_2,…>` terms joined by ` + `; `0` for the zero vector.
impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let modes: Vec<String> = m
                .iter()
                .map(|&d| HalfInt::from_doubled(d as i32).to_string())
                .collect();
            write!(f, "{c}*|{}>", modes.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `α_r v`.
pub fn alpha_apply(r: Mode, v: &FockVector) -> FockVector {
    let d = r.0.doubled();
    let mut out = FockVector::zero();
    if d < 0 {
        for (m, c) in &v.terms {
            let mut m = m.clone();
            m.push((-d) as u32);
            m.sort_unstable_by(|a, b| b.cmp(a));
            out.add_term(m, c.clone());
        }
    } else {
        let s = d as u32;
        let weight = Rat::new(d as i64, 2);
        for (m, c) in &v.terms {
            let mult = m.iter().filter(|&&x| x == s).count();
            if mult == 0 {
                continue;
            }
            let mut m = m.clone();
            let pos = m.iter().position(|&x| x == s).expect("present");
            m.remove(pos);
            out.add_term(m, &(c * &weight) * &Rat::int(mult as i64));
        }
    }
    out
}

/// Normal-ordered quadratic operator
/// `Σ q_{ab} :α_a α_b: + Σ l_a α_a + constant`, keyed by doubled modes with
/// `a ≤ b`, so a creation index always stands left of an annihilation one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuadOperator {
    pub quadratic: BTreeMap<(i32, i32), Rat>,
    pub linear: BTreeMap<i32, Rat>,
    pub constant: Rat,
}

impl QuadOperator {
    /// `L_k`, restricted to the pairs that can act on levels up to `reach`
    /// (a half-integer bound on the input level).
    pub fn virasoro(k: i32, zero_point: &Rat, reach: HalfInt) -> QuadOperator {
        let mut op = QuadOperator::default();
        let k2 = 2 * k;
        let bound = reach.doubled().max(0) + k2.abs() + 1;
        let half = Rat::new(1, 2);
        let mut r = -bound - (bound % 2 == 0) as i32;
        while r <= bound {
            let (a, b) = (k2 - r, r);
            // an annihilator beyond the input level kills everything
            if a.max(b) <= reach.doubled() || a.max(b) < 0 {
                let key = (a.min(b), a.max(b));
                *op.quadratic.entry(key).or_default() += &half;
            }
            r += 2;
        }
        op.quadratic.retain(|_, v| !v.is_zero());
        if k == 0 {
            op.constant = zero_point.clone();
        }
        op
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mode = |d: i32| Mode::doubled(d).expect("odd index");
        let mut out = v.scale(&self.constant);
        for (&(a, b), q) in &self.quadratic {
            let w = alpha_apply(mode(a), &alpha_apply(mode(b), v));
            out = out.add(&w.scale(q));
        }
        for (&a, l) in &self.linear {
            out = out.add(&alpha_apply(mode(a), v).scale(l));
        }
        out
    }
}

/// Basis monomials at doubled level `n`: partitions of `n` into odd parts.
pub fn basis_at(n: u32) -> Vec<Monomial> {
    fn go(n: u32, max: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut p = max.min(n);
        if p % 2 == 0 {
            p -= 1;
        }
        while p >= 1 {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
            if p < 2 {
                break;
            }
            p -= 2;
        }
    }
    let mut out = Vec::new();
    go(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// All basis monomials of level at most `cap`.
pub fn basis_upto(cap: HalfInt) -> Vec<Monomial> {
    (0..=cap.doubled().max(-1))
        .flat_map(|n| basis_at(n as u32))
        .collect()
}

/// The zero-point constant that makes `[L_1, L_{-1}] = 2 L_0` on the vacuum:
/// half the defect of the bracket computed without it.
pub fn derived_zero_point() -> Rat {
    let space = FockSpace::with_zero_point(HalfInt::int(2), Rat::zero());
    let d = space
        .bracket_defect(1, -1, &FockVector::vacuum())
        .expect("levels stay below the cap");
    let d0 = d.coefficient(&[]);
    &d0 * &Rat::new(1, 2)
}

/// Truncated Fock space with a level cap and an `L_0` zero point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockSpace {
    cap: HalfInt,
    zero_point: Rat,
}

/// Result of checking one bracket against the central-extension formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub m: i32,
    pub n: i32,
    pub vector: Monomial,
    pub defect: FockVector,
    /// `c` read off as `defect = c/12·(m³−m)·v`, when `m³ ≠ m` and the
    /// defect is proportional to `v`.
    pub central: Option<Rat>,
}

/// Pass/fail per pair `(m, n)` for the operators `L_k`, `k ≥ -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub pairs: Vec<(i32, i32, bool, usize)>,
}

impl ClosureReport {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.2)
    }
}

impl FockSpace {
    /// Level cap `cap`, zero point from [`derived_zero_point`].
    pub fn new(cap: HalfInt) -> Self {
        FockSpace::with_zero_point(cap, derived_zero_point())
    }

    pub fn with_zero_point(cap: HalfInt, zero_point: Rat) -> Self {
        FockSpace { cap, zero_point }
    }

    pub fn cap(&self) -> HalfInt {
        self.cap
    }

    pub fn zero_point(&self) -> &Rat {
        &self.zero_point
    }

    pub fn basis(&self) -> Vec<Monomial> {
        basis_upto(self.cap)
    }

    fn check_level(&self, level: HalfInt) -> Result<()> {
        if level > self.cap {
            return Err(Error::LevelOverflow {
                level: level.to_string(),
                cap: self.cap.to_string(),
            });
        }
        Ok(())
    }

    /// `L_k v`.
    pub fn virasoro_apply(&self, k: i32, v: &FockVector) -> Result<FockVector> {
        let Some(top) = v.max_level() else {
            return Ok(FockVector::zero());
        };
        self.check_level(top)?;
        self.check_level(top - HalfInt::int(k))?;
        Ok(QuadOperator::virasoro(k, &self.zero_point, top).apply(v))
    }

    /// `[L_m, L_n] v − (m − n) L_{m+n} v`.
    pub fn bracket_defect(&self, m: i32, n: i32, v: &FockVector) -> Result<FockVector> {
        let mn = self.virasoro_apply(m, &self.virasoro_apply(n, v)?)?;
        let nm = self.virasoro_apply(n, &self.virasoro_apply(m, v)?)?;
        let l = self.virasoro_apply(m + n, v)?;
        Ok(mn.sub(&nm).sub(&l.scale(&Rat::int((m - n) as i64))))
    }

    /// Brackets a basis vector and reads off the central constant.
    pub fn check_bracket(&self, m: i32, n: i32, b: &Monomial) -> Result<BracketCheck> {
        let v = FockVector::basis(b.clone());
        let defect = self.bracket_defect(m, n, &v)?;
        let w = m * m * m - m;
        let central = if m + n == 0 && w != 0 {
            defect
                .ratio_to(&v)
                .map(|lambda| &lambda * &Rat::new(12, w as i64))
        } else {
            None
        };
        Ok(BracketCheck {
            m,
            n,
            vector: b.clone(),
            defect,
            central,
        })
    }

    /// The central charge from `[L_2, L_{-2}]` on the vacuum.
    pub fn central_charge(&self) -> Result<Rat> {
        self.check_bracket(2, -2, &Vec::new())?
            .central
            .ok_or_else(|| Error::DomainError("defect is not proportional to the vacuum".into()))
    }

    /// Brackets every basis vector the cap allows (`m ≥ n` and its swap are
    /// checked separately) for `m, n ∈ [-1, kmax]`.
    pub fn closure_report(&self, kmax: i32) -> ClosureReport {
        let pairs: Vec<(i32, i32)> = (-1..=kmax)
            .flat_map(|m| (-1..=kmax).map(move |n| (m, n)))
            .collect();
        let basis = self.basis();
        let rows = crate::par::map(&pairs, |&(m, n)| {
            let mut tested = 0;
            let mut ok = true;
            for b in &basis {
                match self.bracket_defect(m, n, &FockVector::basis(b.clone())) {
                    Ok(d) => {
                        tested += 1;
                        ok &= d.is_zero();
                    }
                    Err(Error::LevelOverflow { .. }) => {}
                    Err(_) => ok = false,
                }
            }
            (m, n, ok && tested > 0, tested)
        });
        ClosureReport { pairs: rows }
    }
}

/// `t_k(Λ) = −(2k−1)!! Σ λ_i^{−2k−1}`.
pub fn kw_trace(k: u32, eigenvalues: &[Rat]) -> Result<Rat> {
    let s = inverse_power_trace(k, eigenvalues)?;
    Ok(-&(&double_factorial(2 * k as i64 - 1)? * &s))
}

fn inverse_power_trace(k: u32, eigenvalues: &[Rat]) -> Result<Rat> {
    let mut s = Rat::zero();
    for l in eigenvalues {
        if !l.is_positive() {
            return Err(Error::NonPositiveEigenvalue(l.to_string()));
        }
        s += &l.pow(-(2 * k as i32) - 1)?;
    }
    Ok(s)
}

/// `Σ γ_{−k−1/2}(λ_i²) / Σ λ_i^{−2k−1}`, which is `1/Γ(1/2 − k)`.
pub fn kw_gamma_comparison(k: u32, eigenvalues: &[Rat]) -> Result<PiHalf> {
    let s = HalfInt::from_doubled(-2 * k as i32 - 1);
    let g = recip_gamma_half(s);
    let mut num = PiHalf::zero();
    for l in eigenvalues {
        if !l.is_positive() {
            return Err(Error::NonPositiveEigenvalue(l.to_string()));
        }
        // (λ²)^s with s = −k − 1/2
        let sq = &(l * l);
        let root = sq.sqrt_exact().expect("λ² has the root λ");
        let p = &sq.pow(-(k as i32) - 1)? * &root;
        num = &num + &g.scale(&p);
    }
    let den = inverse_power_trace(k, eigenvalues)?;
    if den.is_zero() {
        return Err(Error::DomainError("empty eigenvalue list".into()));
    }
    Ok(num.scale(&den.recip()?))
}

/// `q_k`: the coefficient of `t^k` in `Π (1 + x_i t)/(1 − x_i t)`.
pub fn schur_q_single(k: u32, vars: &[Rat]) -> Rat {
    q_sequence(k, vars).pop().expect("non-empty")
}

/// `[q_0, …, q_n]`.
pub fn q_sequence(n: u32, vars: &[Rat]) -> Vec<Rat> {
    let n = n as usize;
    let mut c = vec![Rat::zero(); n + 1];
    c[0] = Rat::one();
    for x in vars {
        // (1 + x t)/(1 − x t) = 1 + 2 Σ_{j≥1} x^j t^j
        let mut f = vec![Rat::one(); n + 1];
        let mut p = Rat::one();
        for fj in f.iter_mut().skip(1) {
            p = &p * x;
            *fj = &p * &Rat::int(2);
        }
        let mut next = vec![Rat::zero(); n + 1];
        for i in 0..=n {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                next[i + j] += &(&c[i] * &f[j]);
            }
        }
        c = next;
    }
    c
}

fn check_strict(lambda: &[u32]) -> Result<()> {
    let strict = lambda.windows(2).all(|w| w[0] > w[1]) && lambda.iter().all(|&p| p > 0);
    if !strict {
        return Err(Error::NotStrict(crate::literal::format_partition(lambda)));
    }
    Ok(())
}

/// Generic Schur Q evaluation over a commutative algebra given `q_k`.
fn schur_q_with<T, Q, M, A, N, P>(lambda: &[u32], q: Q, mul: M, add: A, neg_scale2: N, pf: P) -> Result<T>
where
    T: Clone,
    Q: Fn(u32) -> T,
    M: Fn(&T, &T) -> T,
    A: Fn(&T, &T) -> T,
    N: Fn(&T, i64) -> T,
    P: Fn(&[Vec<T>]) -> Result<T>,
{
    check_strict(lambda)?;
    let two_row = |a: u32, b: u32| -> T {
        let mut acc = mul(&q(a), &q(b));
        for i in 1..=b {
            let sign = if i % 2 == 0 { 2 } else { -2 };
            acc = add(&acc, &neg_scale2(&mul(&q(a + i), &q(b - i)), sign));
        }
        acc
    };
    match lambda.len() {
        0 => Ok(q(0)),
        1 => Ok(q(lambda[0])),
        2 => Ok(two_row(lambda[0], lambda[1])),
        _ => {
            let mut parts = lambda.to_vec();
            if parts.len() % 2 == 1 {
                parts.push(0);
            }
            let n = parts.len();
            let zero = neg_scale2(&q(0), 0);
            let mut m = vec![vec![zero.clone(); n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = if parts[j] == 0 { q(parts[i]) } else { two_row(parts[i], parts[j]) };
                    m[j][i] = neg_scale2(&v, -1);
                    m[i][j] = v;
                }
            }
            pf(&m)
        }
    }
}

/// `Q_λ(x_1, …, x_n)` for a strict partition `λ`.
pub fn schur_q(lambda: &[u32], vars: &[Rat]) -> Result<Rat> {
    let top = lambda.iter().copied().max().unwrap_or(0) * 2;
    let qs = q_sequence(top, vars);
    schur_q_with(
        lambda,
        |k| qs[k as usize].clone(),
        |a, b| a * b,
        |a, b| a + b,
        |a, s| a * &Rat::int(s),
        crate::linalg::pfaffian,
    )
}

/// `q_k` as a polynomial in the odd power sums, using
/// `Σ q_k t^k = exp(Σ_{n odd} 2 p_n t^n / n)`; `p_n` is the Fock monomial
/// `α_{-n/2}|0⟩`.
pub fn q_in_power_sums(k: u32) -> FockVector {
    q_power_sequence(k).pop().expect("non-empty")
}

fn q_power_sequence(n: u32) -> Vec<FockVector> {
    // k q_k = Σ_{j odd ≤ k} 2 p_j q_{k−j}
    let mut q = vec![FockVector::vacuum()];
    for k in 1..=n {
        let mut acc = FockVector::zero();
        let mut j = 1;
        while j <= k {
            let pj = FockVector::basis(vec![j]);
            acc = acc.add(&pj.mul(&q[(k - j) as usize]).scale(&Rat::int(2)));
            j += 2;
        }
        q.push(acc.scale(&Rat::new(1, k as i64)));
    }
    q
}

/// `Q_λ` expanded in the Fock monomial basis (odd power sums).
pub fn schur_q_in_power_sums(lambda: &[u32]) -> Result<FockVector> {
    let top = lambda.iter().copied().max().unwrap_or(0) * 2;
    let qs = q_power_sequence(top);
    schur_q_with(
        lambda,
        |k| qs[k as usize].clone(),
        FockVector::mul,
        FockVector::add,
        |a, s| a.scale(&Rat::int(s)),
        fock_pfaffian,
    )
}

fn fock_pfaffian(m: &[Vec<FockVector>]) -> Result<FockVector> {
    fn pf(m: &[Vec<FockVector>], idx: &[usize]) -> FockVector {
        if idx.is_empty() {
            return FockVector::vacuum();
        }
        let i = idx[0];
        let mut acc = FockVector::zero();
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
            let term = m[i][j].mul(&pf(m, &rest));
            acc = if pos % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    if m.len() % 2 == 1 {
        return Err(Error::DomainError("Pfaffian needs an even-sized matrix".into()));
    }
    let idx: Vec<usize> = (0..m.len()).collect();
    Ok(pf(m, &idx))
}

/// Strict partitions of `n`, each in descending order.
pub fn strict_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half(d: i32) -> Mode {
        Mode::doubled(d).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let vac = FockVector::vacuum();
        assert!(alpha_apply(half(1), &vac).is_zero());
        let v = alpha_apply(half(-1), &vac);
        assert_eq!(alpha_apply(half(1), &v), vac.scale(&Rat::new(1, 2)));
    }

    #[test]
    fn virasoro_on_vacuum() {
        let sp = FockSpace::new(HalfInt::int(6));
        let vac = FockVector::vacuum();
        assert!(sp.virasoro_apply(1, &vac).unwrap().is_zero());
        assert_eq!(
            sp.virasoro_apply(-1, &vac).unwrap(),
            FockVector::basis(vec![1, 1]).scale(&Rat::new(1, 2))
        );
        let v = FockVector::basis(vec![1]);
        let z = sp.zero_point().clone();
        assert_eq!(sp.virasoro_apply(0, &v).unwrap(), v.scale(&(&Rat::new(1, 2) + &z)));
    }

    #[test]
    fn zero_point_and_central_charge() {
        assert_eq!(derived_zero_point(), Rat::new(1, 16));
        let sp = FockSpace::new(HalfInt::int(6));
        assert_eq!(sp.central_charge().unwrap(), Rat::one());
        assert!(sp.bracket_defect(1, 2, &FockVector::basis(vec![3, 1])).unwrap().is_zero());
    }

    #[test]
    fn level_overflow() {
        let sp = FockSpace::new(HalfInt::int(1));
        assert!(matches!(
            sp.virasoro_apply(-2, &FockVector::vacuum()),
            Err(Error::LevelOverflow { .. })
        ));
    }

    #[test]
    fn closure_on_small_range() {
        let r = FockSpace::new(HalfInt::int(5)).closure_report(2);
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn basis_counts_match_odd_partitions() {
        let counts: Vec<usize> = (0..=8).map(|n| basis_at(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn kw_examples() {
        let r = |n| Rat::int(n);
        assert_eq!(kw_trace(1, &[r(1), r(1)]).unwrap(), r(-2));
        assert_eq!(kw_trace(0, &[r(1), r(2)]).unwrap(), Rat::new(-3, 2));
        assert_eq!(kw_trace(2, &[r(1)]).unwrap(), r(-3));
        assert!(matches!(kw_trace(0, &[r(0)]), Err(Error::NonPositiveEigenvalue(_))));
        assert_eq!(
            kw_gamma_comparison(0, &[r(3)]).unwrap(),
            PiHalf::monomial(Rat::one(), HalfInt::from_doubled(-1))
        );
        assert_eq!(
            kw_gamma_comparison(1, &[r(3), Rat::new(1, 2)]).unwrap(),
            PiHalf::monomial(Rat::new(-1, 2), HalfInt::from_doubled(-1))
        );
    }

    #[test]
    fn schur_q_examples() {
        let r = |n| Rat::int(n);
        assert_eq!(schur_q_single(0, &[r(5)]), r(1));
        assert_eq!(schur_q_single(2, &[r(1)]), r(2));
        assert_eq!(schur_q_single(1, &[r(3), r(4)]), r(14));
        assert_eq!(schur_q(&[1], &[r(3)]).unwrap(), r(6));
        assert_eq!(schur_q(&[2, 1], &[r(3)]).unwrap(), r(0));
        assert!(matches!(schur_q(&[1, 1], &[r(3)]), Err(Error::NotStrict(_))));
    }

    #[test]
    fn power_sum_expansion_evaluates_back() {
        // p_n(x) = Σ x_i^n
        let vars = [Rat::int(2), Rat::new(-1, 3), Rat::int(5)];
        for lambda in [vec![1], vec![3, 1], vec![3, 2, 1]] {
            let e = schur_q_in_power_sums(&lambda).unwrap();
            let mut val = Rat::zero();
            for (m, c) in e.terms() {
                let mut t = c.clone();
                for &n in m {
                    let mut p = Rat::zero();
                    for x in &vars {
                        p += &x.pow(n as i32).unwrap();
                    }
                    t = &t * &p;
                }
                val += &t;
            }
            assert_eq!(val, schur_q(&lambda, &vars).unwrap());
        }
    }

    #[test]
    fn strict_partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| strict_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 3, 4]);
    }
}
