//! Givental's twisted involution `I_Giv = t^H e^{-E} I e^{E} t^{-H}` on
//! vector-valued Laurent series in `e`, with `t` a formal unit standing for
//! `e^{1/2}` and `I` the substitution `e ↦ −e` on every component.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::Rat;

/// A Laurent polynomial in `t` over Q.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    terms: BTreeMap<i32, Rat>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn constant(q: Rat) -> Self {
        TPoly::monomial(q, 0)
    }

    /// `q · t^k`.
    pub fn monomial(q: Rat, k: i32) -> Self {
        let mut p = TPoly::zero();
        if !q.is_zero() {
            p.terms.insert(k, q);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rat)> {
        self.terms.iter().map(|(&k, q)| (k, q))
    }

    fn add_term(&mut self, k: i32, q: Rat) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += &q;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (&k, q) in &o.terms {
            out.add_term(k, q.clone());
        }
        out
    }

    pub fn neg(&self) -> TPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, q: &Rat) -> TPoly {
        let mut out = TPoly::zero();
        for (&k, v) in &self.terms {
            out.add_term(k, v * q);
        }
        out
    }

    pub fn mul(&self, o: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (&a, p) in &self.terms {
            for (&b, q) in &o.terms {
                out.add_term(a + b, p * q);
            }
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i32) -> TPoly {
        TPoly {
            terms: self.terms.iter().map(|(&e, q)| (e + k, q.clone())).collect(),
        }
    }

    /// Evaluation at a nonzero rational `t`.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (&k, q) in &self.terms {
            acc += &(q * &t.pow(k)?);
        }
        Ok(acc)
    }
}

/// `q*t^k` terms joined by ` + `; `0` when zero.
impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&k, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{q}")?;
            } else {
                write!(f, "{q}*t^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A vector of Laurent series in `e` with `Q[t^{±1}]` coefficients on a
/// common integer window `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSeries {
    pub lo: i32,
    pub hi: i32,
    pub comps: Vec<BTreeMap<i32, TPoly>>,
}

impl VecSeries {
    pub fn zero(n: usize, lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::WindowError(format!("empty window [{lo},{hi}]")));
        }
        Ok(VecSeries {
            lo,
            hi,
            comps: vec![BTreeMap::new(); n],
        })
    }

    /// `b_i · e^j` on `[j, hi]`.
    pub fn basis(n: usize, i: usize, j: i32, hi: i32) -> Result<Self> {
        let mut v = VecSeries::zero(n, j, hi.max(j))?;
        v.set(i, j, TPoly::constant(Rat::one()))?;
        Ok(v)
    }

    /// Builds from rational coefficient maps `component → (exponent → q)`.
    pub fn from_rats(lo: i32, hi: i32, comps: Vec<BTreeMap<i32, Rat>>) -> Result<Self> {
        let mut v = VecSeries::zero(comps.len(), lo, hi)?;
        for (i, c) in comps.into_iter().enumerate() {
            for (j, q) in c {
                v.set(i, j, TPoly::constant(q))?;
            }
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn get(&self, i: usize, j: i32) -> TPoly {
        self.comps[i].get(&j).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: i32, p: TPoly) -> Result<()> {
        if j < self.lo || j > self.hi {
            return Err(Error::WindowError(format!(
                "e^{j} is outside [{},{}]",
                self.lo, self.hi
            )));
        }
        if p.is_zero() {
            self.comps[i].remove(&j);
        } else {
            self.comps[i].insert(j, p);
        }
        Ok(())
    }

    fn map_coeffs(&self, f: impl Fn(usize, i32, &TPoly) -> TPoly) -> VecSeries {
        let comps = self
            .comps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.iter()
                    .map(|(&j, p)| (j, f(i, j, p)))
                    .filter(|(_, p)| !p.is_zero())
                    .collect()
            })
            .collect();
        VecSeries { comps, ..self.clone() }
    }

    /// Component `i` multiplied by `t^{s·h_i}`.
    fn diag_t(&self, h: &[i32], s: i32) -> VecSeries {
        self.map_coeffs(|i, _, p| p.shift(s * h[i]))
    }

    /// `e ↦ −e` on every component.
    pub fn flip(&self) -> VecSeries {
        self.map_coeffs(|_, j, p| if j % 2 == 0 { p.clone() } else { p.neg() })
    }

    /// Left multiplication by a constant matrix.
    fn apply_matrix(&self, m: &Matrix) -> VecSeries {
        let n = self.dim();
        let mut out = VecSeries {
            comps: vec![BTreeMap::new(); n],
            ..self.clone()
        };
        for (i, row) in m.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (&j, p) in &self.comps[k] {
                    let e = out.comps[i].entry(j).or_default();
                    *e = e.add(&p.scale(a));
                }
            }
        }
        for c in &mut out.comps {
            c.retain(|_, p| !p.is_zero());
        }
        out
    }
}

/// `(f, g) = Σ_i res(f_i g_i de)`, with each window read as a support floor.
pub fn pairing(f: &VecSeries, g: &VecSeries) -> Result<TPoly> {
    if f.dim() != g.dim() {
        return Err(Error::DomainError("vector dimensions differ".into()));
    }
    let lo = f.lo + g.lo;
    let hi = (f.lo + g.hi).min(f.hi + g.lo);
    if lo > -1 {
        return Ok(TPoly::zero());
    }
    if hi < -1 {
        return Err(Error::WindowError(format!(
            "residue needs -1 in the product window [{lo},{hi}]"
        )));
    }
    let mut acc = TPoly::zero();
    for (fc, gc) in f.comps.iter().zip(&g.comps) {
        for (&j, p) in fc {
            if let Some(q) = gc.get(&(-1 - j)) {
                acc = acc.add(&p.mul(q));
            }
        }
    }
    Ok(acc)
}

/// Grading `H = diag(h)` and a nilpotent `E` with `[H, E] = 2E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeSpace {
    h: Vec<i32>,
    e: Matrix,
    exp_e: Matrix,
    exp_neg_e: Matrix,
}

fn exp_nilpotent(e: &Matrix) -> Matrix {
    let n = e.len();
    let mut acc = linalg::identity(n);
    let mut pw = linalg::identity(n);
    for k in 1..=n {
        pw = linalg::mat_mul(&pw, e);
        let inv = Rat::new(1, k as i64);
        pw = pw.iter().map(|r| r.iter().map(|v| v * &inv).collect()).collect();
        for (a, p) in acc.iter_mut().zip(&pw) {
            for (x, y) in a.iter_mut().zip(p) {
                *x += y;
            }
        }
    }
    acc
}

impl HodgeSpace {
    pub fn new(h: Vec<i32>, e: Matrix) -> Result<Self> {
        let n = h.len();
        if e.len() != n || e.iter().any(|r| r.len() != n) {
            return Err(Error::DomainError(format!("E must be {n}x{n}")));
        }
        let mut pw = linalg::identity(n);
        for _ in 0..n {
            pw = linalg::mat_mul(&pw, &e);
        }
        if pw.iter().flatten().any(|v| !v.is_zero()) {
            return Err(Error::EndomorphismNotNilpotent);
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = &e[i][j] * &Rat::int((h[i] - h[j]) as i64);
                if lhs != &e[i][j] * &Rat::int(2) {
                    return Err(Error::GradingMismatch);
                }
            }
        }
        let neg: Matrix = e.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
        Ok(HodgeSpace {
            exp_e: exp_nilpotent(&e),
            exp_neg_e: exp_nilpotent(&neg),
            h,
            e,
        })
    }

    pub fn dim(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[i32] {
        &self.h
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn exp_e(&self) -> &Matrix {
        &self.exp_e
    }

    pub fn exp_neg_e(&self) -> &Matrix {
        &self.exp_neg_e
    }

    fn check_dim(&self, f: &VecSeries) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DomainError(format!(
                "vector has {} components, space has {}",
                f.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `C f = e^{E} t^{-H} f`, the conjugator.
    pub fn conjugator(&self, f: &VecSeries) -> Result<VecSeries> {
        self.check_dim(f)?;
        Ok(f.diag_t(&self.h, -1).apply_matrix(&self.exp_e))
    }

    /// `C^{-1} f = t^{H} e^{-E} f`.
    pub fn conjugator_inverse(&self, f: &VecSeries) -> Result<VecSeries> {
        self.check_dim(f)?;
        Ok(f.apply_matrix(&self.exp_neg_e).diag_t(&self.h, 1))
    }

    /// `I_Giv f`, applying the five factors right to left.
    pub fn twisted_involution(&self, f: &VecSeries) -> Result<VecSeries> {
        self.conjugator_inverse(&self.conjugator(f)?.flip())
    }

    /// `{f, g}_Giv = (I_Giv f, g)`.
    pub fn twisted_form(&self, f: &VecSeries, g: &VecSeries) -> Result<TPoly> {
        pairing(&self.twisted_involution(f)?, g)
    }

    /// Gram matrix and isotropy data on the basis `b_i e^j`, `j ∈ lo..=hi`,
    /// ordered by component then exponent.
    pub fn polarization_report(&self, lo: i32, hi: i32) -> Result<PolarizationReport> {
        let n = self.dim();
        let mut basis = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            for j in lo..=hi {
                basis.push(VecSeries::basis(n, i, j, hi)?);
                labels.push((i, j));
            }
        }
        let images: Vec<VecSeries> = crate::par::map(&basis, |b| self.twisted_involution(b))
            .into_iter()
            .collect::<Result<_>>()?;
        let m = basis.len();
        let cells = crate::par::map_range(m * m, |c| pairing(&images[c / m], &basis[c % m]));
        let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
        let gram: Vec<Vec<TPoly>> = cells.chunks(m.max(1)).map(<[TPoly]>::to_vec).collect();
        let antisymmetric = (0..m).all(|a| (0..m).all(|b| gram[a][b] == gram[b][a].neg()));
        let rank = full_rank_over_qt(&gram);
        // Images of the degree-split halves under C^{-1}.
        let split = |keep: &dyn Fn(i32) -> bool| -> Result<bool> {
            let half: Vec<VecSeries> = basis
                .iter()
                .zip(&labels)
                .filter(|(_, &(_, j))| keep(j))
                .map(|(b, _)| self.conjugator_inverse(b))
                .collect::<Result<_>>()?;
            for u in &half {
                for v in &half {
                    if !self.twisted_form(u, v)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        };
        let isotropic_nonnegative = split(&|j| j >= 0)?;
        let isotropic_negative = split(&|j| j < 0)?;
        Ok(PolarizationReport {
            labels,
            isotropic_nonnegative,
            isotropic_negative,
            gram,
            antisymmetric,
            rank,
        })
    }
}

/// Output of [`HodgeSpace::polarization_report`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationReport {
    /// `(component, exponent)` for each row and column.
    pub labels: Vec<(usize, i32)>,
    pub gram: Vec<Vec<TPoly>>,
    pub antisymmetric: bool,
    /// Rank over Q(t).
    pub rank: usize,
    pub isotropic_nonnegative: bool,
    pub isotropic_negative: bool,
}

impl PolarizationReport {
    pub fn full_rank(&self) -> bool {
        self.rank == self.gram.len()
    }
}

/// Rank over Q(t), as the largest rank over Q at sample points `t = q`.
/// A polynomial minor that vanishes at more points than its degree span is
/// zero, so enough samples give the generic rank exactly.
pub fn full_rank_over_qt(m: &[Vec<TPoly>]) -> usize {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let span: i64 = m
        .iter()
        .flatten()
        .filter_map(|p| {
            let ks: Vec<i32> = p.terms().map(|(k, _)| k).collect();
            Some((ks.last()? - ks.first()?) as i64)
        })
        .max()
        .unwrap_or(0);
    // A k×k minor has degree span at most k·span.
    let samples = n as i64 * span + 1;
    let mut best = 0;
    for s in 0..samples {
        let t = Rat::int(2 + s);
        let mq: Matrix = m
            .iter()
            .map(|r| r.iter().map(|p| p.eval(&t).expect("t is nonzero")).collect())
            .collect();
        best = best.max(linalg::rank(&mq));
        if best == n {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| Rat::int(v)).collect()).collect()
    }

    #[test]
    fn space_validation() {
        assert!(HodgeSpace::new(vec![0], mat(&[&[0]])).is_ok());
        assert!(HodgeSpace::new(vec![-1, 1], mat(&[&[0, 0], &[1, 0]])).is_ok());
        assert_eq!(
            HodgeSpace::new(vec![0, 0], mat(&[&[1, 0], &[0, 1]])),
            Err(Error::EndomorphismNotNilpotent)
        );
        assert_eq!(
            HodgeSpace::new(vec![0, 1], mat(&[&[0, 0], &[1, 0]])),
            Err(Error::GradingMismatch)
        );
    }

    #[test]
    fn involution_squares_to_identity() {
        let sp = HodgeSpace::new(vec![-1, 1], mat(&[&[0, 0], &[1, 0]])).unwrap();
        let mut f = VecSeries::zero(2, -3, 3).unwrap();
        f.set(0, -2, TPoly::monomial(Rat::int(3), 1)).unwrap();
        f.set(1, 1, TPoly::constant(Rat::new(1, 2))).unwrap();
        let ff = sp.twisted_involution(&sp.twisted_involution(&f).unwrap()).unwrap();
        assert_eq!(ff, f);
    }

    #[test]
    fn constant_vector_example() {
        let sp = HodgeSpace::new(vec![-1, 1], mat(&[&[0, 0], &[1, 0]])).unwrap();
        let f = VecSeries::basis(2, 0, 0, 2).unwrap();
        assert_eq!(sp.twisted_involution(&f).unwrap(), f);
    }

    #[test]
    fn report_on_the_worked_example() {
        let sp = HodgeSpace::new(vec![-1, 1], mat(&[&[0, 0], &[1, 0]])).unwrap();
        let r = sp.polarization_report(-4, 3).unwrap();
        assert!(r.antisymmetric);
        assert!(r.full_rank());
        assert!(r.isotropic_nonnegative && r.isotropic_negative);
    }
}
