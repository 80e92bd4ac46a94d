//! Formal group laws and the Tate module `E*((e))` they define: invariant
//! differential, formal inverse, residue boundary map, the residue pairing,
//! the symplectic form `{f, g} = (I f, g)`, and Gram matrices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::literal::Grid;
use crate::scalars::{Rat, Scalar};
use crate::series::{Ring, Series, Window};

/// Default total-degree bound for formal group laws.
pub const DEFAULT_DEGREE: u32 = 12;

/// How a law was built; built-in polynomial laws can be rebuilt at any degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FglKind {
    Additive,
    Multiplicative(Rat),
    Custom,
}

/// Input to [`make_fgl`].
#[derive(Debug, Clone)]
pub enum FglSpec {
    Additive,
    Multiplicative(Rat),
    Custom(Grid),
}

/// Truncated polynomial in up to three variables with a total-degree cap.
#[derive(Clone, Debug, PartialEq)]
struct MPoly {
    terms: BTreeMap<[u32; 3], Scalar>,
    deg: u32,
    order: u32,
}

fn total(k: &[u32; 3]) -> u32 {
    k[0] + k[1] + k[2]
}

impl MPoly {
    fn zero(deg: u32, order: u32) -> Self {
        MPoly {
            terms: BTreeMap::new(),
            deg,
            order,
        }
    }

    fn constant(c: Scalar, deg: u32) -> Self {
        let order = c.order();
        let mut p = MPoly::zero(deg, order);
        p.add_term([0, 0, 0], c);
        p
    }

    fn var(i: usize, deg: u32, order: u32) -> Self {
        let mut k = [0; 3];
        k[i] = 1;
        let mut p = MPoly::zero(deg, order);
        p.add_term(k, Scalar::one(order));
        p
    }

    fn add_term(&mut self, k: [u32; 3], c: Scalar) {
        if total(&k) > self.deg || c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(|| Scalar::zero(self.order));
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    fn scale(&self, c: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.deg, self.order);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.deg.min(o.deg), self.order);
        for (ka, a) in &self.terms {
            for (kb, b) in &o.terms {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]];
                if total(&k) <= out.deg {
                    out.add_term(k, a * b);
                }
            }
        }
        out
    }

    /// `[1, p, p², …, p^n]`, truncated.
    fn powers(&self, n: u32) -> Vec<MPoly> {
        let mut out = vec![MPoly::constant(Scalar::one(self.order), self.deg)];
        for i in 1..=n as usize {
            let next = out[i - 1].mul(self);
            out.push(next);
        }
        out
    }

    fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.deg.saturating_sub(1), self.order);
        for (k, c) in &self.terms {
            if k[i] > 0 {
                let mut kk = *k;
                kk[i] -= 1;
                out.add_term(kk, c.scale(&Rat::int(k[i] as i64)));
            }
        }
        out
    }

    /// Lowest total degree where `self` and `o` differ.
    fn first_difference(&self, o: &MPoly) -> Option<u32> {
        self.terms
            .keys()
            .chain(o.terms.keys())
            .filter(|k| self.terms.get(*k) != o.terms.get(*k))
            .map(total)
            .min()
    }
}

/// `Σ a_ij p^i q^j` for a coefficient grid.
fn substitute_grid(grid: &BTreeMap<(u32, u32), Scalar>, p: &MPoly, q: &MPoly) -> MPoly {
    let (mi, mj) = grid
        .keys()
        .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)));
    let pp = p.powers(mi);
    let qp = q.powers(mj);
    let mut out = MPoly::zero(p.deg.min(q.deg), p.order);
    for (&(i, j), c) in grid {
        out = out.add(&pp[i as usize].mul(&qp[j as usize]).scale(c));
    }
    out
}

/// `Σ s_k p^k` for a power series `s` known through `p.deg`.
fn substitute_series(s: &Series, p: &MPoly) -> Result<MPoly> {
    if s.window().hi < HalfInt::int(p.deg as i32) {
        return Err(Error::WindowError(format!(
            "series window {} does not reach degree {}",
            s.window(),
            p.deg
        )));
    }
    let pw = p.powers(p.deg);
    let mut out = MPoly::zero(p.deg, p.order);
    for (e, c) in s.terms() {
        let k = e
            .as_integer()
            .filter(|k| *k >= 0)
            .ok_or_else(|| Error::InvalidSubstitution(format!("x^({e}) is not a power series term")))?;
        if k as u32 <= p.deg {
            out = out.add(&pw[k as usize].scale(c));
        }
    }
    Ok(out)
}

/// A formal group law truncated at total degree `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalGroupLaw {
    kind: FglKind,
    grid: Grid,
    order: u32,
}

/// Builds and validates a formal group law of total degree `degree`.
pub fn make_fgl(spec: FglSpec, degree: u32) -> Result<FormalGroupLaw> {
    match spec {
        FglSpec::Additive => Ok(FormalGroupLaw::additive(degree)),
        FglSpec::Multiplicative(b) => Ok(FormalGroupLaw::multiplicative(b, degree)),
        FglSpec::Custom(mut g) => {
            let order = g.coeffs.values().map(Scalar::order).max().unwrap_or(1);
            g.degree = degree;
            FormalGroupLaw::custom(g, order)
        }
    }
}

impl FormalGroupLaw {
    fn builtin(kind: FglKind, degree: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 0), Scalar::one(1));
        coeffs.insert((0, 1), Scalar::one(1));
        if let FglKind::Multiplicative(b) = &kind {
            if !b.is_zero() && degree >= 2 {
                coeffs.insert((1, 1), Scalar::rat(b.clone(), 1));
            }
        }
        FormalGroupLaw {
            kind,
            grid: Grid { coeffs, degree },
            order: 1,
        }
    }

    /// `F(x, y) = x + y`.
    pub fn additive(degree: u32) -> Self {
        Self::builtin(FglKind::Additive, degree)
    }

    /// `F(x, y) = x + y + βxy`.
    pub fn multiplicative(beta: Rat, degree: u32) -> Self {
        Self::builtin(FglKind::Multiplicative(beta), degree)
    }

    /// Validates a coefficient grid over `B[ε]/(ε^order)`.
    pub fn custom(grid: Grid, order: u32) -> Result<Self> {
        let coeffs = grid
            .coeffs
            .into_iter()
            .filter(|((i, j), _)| i + j <= grid.degree)
            .map(|(k, c)| match c.order() {
                1 => Ok((k, c.with_order(order))),
                n if n == order => Ok((k, c)),
                n => Err(Error::RingMismatch(order, n)),
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let law = FormalGroupLaw {
            kind: FglKind::Custom,
            grid: Grid {
                coeffs,
                degree: grid.degree,
            },
            order,
        };
        law.validate()?;
        Ok(law)
    }

    /// The law `exp(log x + log y)` for a logarithm `log = x + …`, which must
    /// be known through degree `degree`.
    pub fn from_logarithm(log: &Series, degree: u32) -> Result<Self> {
        let order = log.ring().eps_order();
        let exp = log.reversion()?;
        let x = MPoly::var(0, degree, order);
        let y = MPoly::var(1, degree, order);
        let sum = substitute_series(log, &x)?.add(&substitute_series(log, &y)?);
        let f = substitute_series(&exp, &sum)?;
        let coeffs = f
            .terms
            .into_iter()
            .map(|(k, c)| ((k[0], k[1]), c))
            .collect();
        Self::custom(Grid { coeffs, degree }, order)
    }

    fn validate(&self) -> Result<()> {
        let a = |i: u32, j: u32| self.coefficient(i, j);
        let d = self.degree();
        // F(x, 0) = x and F(0, y) = y.
        for n in 0..=d {
            let want = if n == 1 { Scalar::one(self.order) } else { Scalar::zero(self.order) };
            if a(n, 0) != want || a(0, n) != want {
                return Err(Error::AxiomViolation { axiom: "unit", degree: n });
            }
        }
        for n in 2..=d {
            if (1..n).any(|i| a(i, n - i) != a(n - i, i)) {
                return Err(Error::AxiomViolation {
                    axiom: "commutativity",
                    degree: n,
                });
            }
        }
        let x = MPoly::var(0, d, self.order);
        let y = MPoly::var(1, d, self.order);
        let z = MPoly::var(2, d, self.order);
        let g = &self.grid.coeffs;
        let left = substitute_grid(g, &substitute_grid(g, &x, &y), &z);
        let right = substitute_grid(g, &x, &substitute_grid(g, &y, &z));
        if let Some(n) = left.first_difference(&right) {
            return Err(Error::AxiomViolation {
                axiom: "associativity",
                degree: n,
            });
        }
        Ok(())
    }

    pub fn kind(&self) -> &FglKind {
        &self.kind
    }

    pub fn degree(&self) -> u32 {
        self.grid.degree
    }

    pub fn ring(&self) -> Ring {
        Ring::nil(self.order).expect("order is positive")
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `a_ij`, the coefficient of `x^i y^j`.
    pub fn coefficient(&self, i: u32, j: u32) -> Scalar {
        self.grid
            .coeffs
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.order))
    }

    /// The same built-in law at another degree bound.
    pub fn with_degree(&self, degree: u32) -> Result<Self> {
        match &self.kind {
            FglKind::Custom if degree <= self.degree() => {
                let mut g = self.grid.clone();
                g.degree = degree;
                g.coeffs.retain(|(i, j), _| i + j <= degree);
                Ok(FormalGroupLaw { grid: g, ..self.clone() })
            }
            FglKind::Custom => Err(Error::WindowError(format!(
                "a custom law known to degree {} cannot be extended to degree {degree}",
                self.degree()
            ))),
            k => Ok(Self::builtin(k.clone(), degree)),
        }
    }

    /// `∂F/∂y (e, 0)`.
    fn linear_in_y(&self) -> Result<Series> {
        let d = self.degree() as i32;
        Series::new(
            self.ring(),
            Window::ints(0, d - 1)?,
            (0..d as u32).map(|i| (HalfInt::int(i as i32), self.coefficient(i, 1))),
        )
    }

    /// `ω(e) = 1 / ∂₂F(e, 0)`, the coefficient of `de` in `dlog`; window `[0, D-1]`.
    pub fn invariant_differential(&self) -> Result<Series> {
        self.linear_in_y()?.mul_inverse()
    }

    /// `ι(e)` with `F(e, ι(e)) = 0`; window `[1, D]`.
    pub fn formal_inverse(&self) -> Result<Series> {
        let d = self.degree() as usize;
        let n = self.order;
        // b[k] = coefficient of e^k in ι, solved degree by degree.
        let mut b = vec![Scalar::zero(n); d + 1];
        for m in 1..=d {
            // Coefficient of e^m in Σ a_ij e^i ι^j with b[m] still zero.
            let mut pw = vec![Scalar::zero(n); d + 1];
            pw[0] = Scalar::one(n);
            let mut acc = Scalar::zero(n);
            for j in 0..=m {
                if j > 0 {
                    let mut next = vec![Scalar::zero(n); d + 1];
                    for (s, ps) in pw.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        for (t, bt) in b.iter().enumerate().skip(1) {
                            if s + t > m {
                                break;
                            }
                            if !bt.is_zero() {
                                next[s + t] = &next[s + t] + &(ps * bt);
                            }
                        }
                    }
                    pw = next;
                }
                for i in 0..=(m - j) {
                    let a = self.coefficient(i as u32, j as u32);
                    if !a.is_zero() && !pw[m - i].is_zero() {
                        acc = &acc + &(&a * &pw[m - i]);
                    }
                }
            }
            b[m] = -acc;
        }
        Series::new(
            self.ring(),
            Window::ints(1, d as i32)?,
            b.into_iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| (HalfInt::int(k as i32), c)),
        )
    }

    /// Checks `ω(F(e,t))·∂F/∂e(e,t) = ω(e)` through degree `D-1`; returns the
    /// first degree where it fails.
    pub fn invariance_defect(&self) -> Result<Option<u32>> {
        let d = self.degree().saturating_sub(1);
        let omega = self.invariant_differential()?;
        let x = MPoly::var(0, self.degree(), self.order);
        let y = MPoly::var(1, self.degree(), self.order);
        let f = substitute_grid(&self.grid.coeffs, &x, &y);
        let mut fd = f.clone();
        fd.deg = d;
        fd.terms.retain(|k, _| total(k) <= d);
        let lhs = substitute_series(&omega, &fd)?.mul(&f.derivative(0));
        let rhs = substitute_series(&omega, &MPoly::var(0, d, self.order))?;
        Ok(lhs.first_difference(&rhs))
    }
}

/// Which bilinear form a Gram matrix uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Pairing,
    Symplectic,
}

/// The Tate module of a law, evaluated on the exponent range `[-K-1, K]`.
#[derive(Debug, Clone)]
pub struct TateModule {
    fgl: FormalGroupLaw,
    k: i32,
    omega: Series,
    iota: Series,
}

impl TateModule {
    /// Needs degree bound `D >= 2K + 2` so that every pair of monomials in the
    /// range has a known symplectic pairing; built-in laws are raised to it.
    pub fn new(fgl: FormalGroupLaw, k: i32) -> Result<Self> {
        if k < 0 {
            return Err(Error::DomainError("K must be non-negative".into()));
        }
        let need = (2 * k + 2) as u32;
        let fgl = if fgl.degree() < need {
            if fgl.kind == FglKind::Custom {
                return Err(Error::WindowError(format!(
                    "the range [-{}, {k}] needs degree bound {need}, law has {}",
                    k + 1,
                    fgl.degree()
                )));
            }
            fgl.with_degree(need)?
        } else {
            fgl
        };
        let omega = fgl.invariant_differential()?;
        let iota = fgl.formal_inverse()?;
        Ok(TateModule { fgl, k, omega, iota })
    }

    pub fn fgl(&self) -> &FormalGroupLaw {
        &self.fgl
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn ring(&self) -> Ring {
        self.fgl.ring()
    }

    pub fn window(&self) -> Window {
        Window::ints(-self.k - 1, self.k).expect("K >= 0")
    }

    pub fn invariant_differential(&self) -> &Series {
        &self.omega
    }

    pub fn formal_inverse(&self) -> &Series {
        &self.iota
    }

    /// `e^j` on `[j, K]`.
    pub fn monomial(&self, j: i32) -> Result<Series> {
        Series::power(self.ring(), HalfInt::int(j), HalfInt::int(self.k.max(j)))
    }

    /// `I(f) = f ∘ ι`.
    pub fn involution(&self, f: &Series) -> Result<Series> {
        f.compose(&self.iota)
    }

    /// `b_k = res(e^k · f · ω)` for `k = 0..=kmax`.
    pub fn boundary_coefficients(&self, f: &Series, kmax: u32) -> Result<Vec<Scalar>> {
        let one = self.ring().one();
        let fw = f.mul(&self.omega)?;
        (0..=kmax as i32)
            .map(|k| fw.mul_monomial(&one, HalfInt::int(k))?.floor_residue())
            .collect()
    }

    /// `(f, g) = res(f g de)`.
    pub fn pairing(&self, f: &Series, g: &Series) -> Result<Scalar> {
        f.mul(g)?.floor_residue()
    }

    /// `{f, g} = (I f, g)`.
    pub fn symplectic(&self, f: &Series, g: &Series) -> Result<Scalar> {
        self.pairing(&self.involution(f)?, g)
    }

    pub fn form(&self, form: Form, f: &Series, g: &Series) -> Result<Scalar> {
        match form {
            Form::Pairing => self.pairing(f, g),
            Form::Symplectic => self.symplectic(f, g),
        }
    }

    /// `M[j][k] = form(e^j, e^k)` for `j, k` in `lo..=hi`, row-major.
    pub fn gram(&self, form: Form, lo: i32, hi: i32) -> Result<Vec<Vec<Scalar>>> {
        if lo > hi {
            return Ok(Vec::new());
        }
        let n = (hi - lo + 1) as usize;
        let basis = (lo..=hi).map(|j| self.monomial(j)).collect::<Result<Vec<_>>>()?;
        let images: Vec<Series> = match form {
            Form::Pairing => basis.clone(),
            Form::Symplectic => crate::par::map(&basis, |b| self.involution(b))
                .into_iter()
                .collect::<Result<_>>()?,
        };
        let cells = crate::par::map_range(n * n, |c| images[c / n].mul(&basis[c % n])?.floor_residue());
        let cells = cells.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(cells.chunks(n).map(<[Scalar]>::to_vec).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::{parse_grid, parse_series};

    fn q(n: i64) -> Scalar {
        Scalar::int(n, 1)
    }

    #[test]
    fn builtin_laws_validate() {
        for law in [
            FormalGroupLaw::additive(12),
            FormalGroupLaw::multiplicative(Rat::one(), 12),
            FormalGroupLaw::multiplicative(Rat::new(-3, 2), 8),
        ] {
            law.validate().unwrap();
            assert_eq!(law.invariance_defect().unwrap(), None);
        }
    }

    #[test]
    fn bad_grids_name_the_axiom() {
        let g = parse_grid("x + y + 1*x^2 @deg 6", 1).unwrap();
        assert_eq!(
            FormalGroupLaw::custom(g, 1),
            Err(Error::AxiomViolation { axiom: "unit", degree: 2 })
        );
        let g = parse_grid("x + y + 1*x^2*y^1 @deg 6", 1).unwrap();
        assert_eq!(
            FormalGroupLaw::custom(g, 1),
            Err(Error::AxiomViolation { axiom: "commutativity", degree: 3 })
        );
        let g = parse_grid("x + y + 1*x^2*y^1 + 1*x^1*y^2 @deg 6", 1).unwrap();
        assert!(matches!(
            FormalGroupLaw::custom(g, 1),
            Err(Error::AxiomViolation { axiom: "associativity", .. })
        ));
    }

    #[test]
    fn invariant_differentials() {
        let w = FormalGroupLaw::additive(12).invariant_differential().unwrap();
        assert_eq!(w.to_string(), "1*x^(0) @[0,11]");
        let w = FormalGroupLaw::multiplicative(Rat::int(2), 5).invariant_differential().unwrap();
        assert_eq!(
            w.to_string(),
            "1*x^(0) + -2*x^(1) + 4*x^(2) + -8*x^(3) + 16*x^(4) @[0,4]"
        );
    }

    #[test]
    fn formal_inverses() {
        let i = FormalGroupLaw::additive(6).formal_inverse().unwrap();
        assert_eq!(i.to_string(), "-1*x^(1) @[1,6]");
        let i = FormalGroupLaw::multiplicative(Rat::one(), 4).formal_inverse().unwrap();
        assert_eq!(i.to_string(), "-1*x^(1) + 1*x^(2) + -1*x^(3) + 1*x^(4) @[1,4]");
    }

    #[test]
    fn logarithm_law_has_the_expected_differential() {
        let log = parse_series("1*x^(1) + 1/2*x^(2) + -1/3*x^(4) + 2*x^(5) @[1,7]", Ring::PLAIN).unwrap();
        let law = FormalGroupLaw::from_logarithm(&log, 7).unwrap();
        let w = law.invariant_differential().unwrap();
        assert!(w.agrees_with(&log.derivative()));
        let i = law.formal_inverse().unwrap();
        assert_eq!(i.compose(&i).unwrap().restrict(Window::ints(1, 7).unwrap()).unwrap(),
            Series::power(Ring::PLAIN, HalfInt::ONE, HalfInt::int(7)).unwrap());
    }

    #[test]
    fn boundary_examples() {
        let t = TateModule::new(FormalGroupLaw::additive(12), 4).unwrap();
        let b = t.boundary_coefficients(&parse_series("1*x^(-1) @[-1,4]", Ring::PLAIN).unwrap(), 1).unwrap();
        assert_eq!(b, vec![q(1), q(0)]);
        let t = TateModule::new(FormalGroupLaw::multiplicative(Rat::one(), 12), 4).unwrap();
        let b = t.boundary_coefficients(&parse_series("1*x^(-2) @[-2,4]", Ring::PLAIN).unwrap(), 0).unwrap();
        assert_eq!(b, vec![q(-1)]);
    }

    #[test]
    fn pairing_and_symplectic_examples() {
        let t = TateModule::new(FormalGroupLaw::additive(12), 4).unwrap();
        let e = |j| t.monomial(j).unwrap();
        assert_eq!(t.pairing(&e(0), &e(-1)).unwrap(), q(1));
        assert_eq!(t.pairing(&e(2), &e(-3)).unwrap(), q(1));
        assert_eq!(t.pairing(&e(2), &e(-2)).unwrap(), q(0));
        assert_eq!(t.symplectic(&e(0), &e(-1)).unwrap(), q(1));
        assert_eq!(t.symplectic(&e(0), &e(2)).unwrap(), q(0));
        assert_eq!(t.symplectic(&e(-1), &e(0)).unwrap(), q(-1));
    }

    #[test]
    fn gram_examples() {
        let t = TateModule::new(FormalGroupLaw::additive(12), 4).unwrap();
        let m = t.gram(Form::Symplectic, -2, 1).unwrap();
        let want = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]];
        for (r, w) in m.iter().zip(want) {
            assert_eq!(r, &w.map(q).to_vec());
        }
        let m = t.gram(Form::Pairing, -4, 3).unwrap();
        for (i, r) in m.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                assert_eq!(*c, q((i + j == 7) as i64));
            }
        }
        assert!(t.gram(Form::Pairing, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn custom_law_too_short_for_range() {
        let g = parse_grid("x + y @deg 6", 1).unwrap();
        let law = FormalGroupLaw::custom(g, 1).unwrap();
        assert!(matches!(TateModule::new(law, 4), Err(Error::WindowError(_))));
    }
}
