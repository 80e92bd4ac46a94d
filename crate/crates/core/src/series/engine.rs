//! Precision-tracking arithmetic behind composition, reversion, inversion and
//! square roots.
//!
//! A series over `B[ε]/(ε^N)` is split into its ε-layers, each a series over
//! `B = Q[π^{±1/2}]` with its own precision: layer `a` is exact through
//! exponent `prec`, unknown above it, and zero below its lowest stored term.
//! Tracking precision per layer is what keeps nilpotent negative powers from
//! eating the whole window: a product of `N` nilpotents is exactly zero, so
//! the downward drift they cause is bounded by `N - 1` steps.
//!
//! Exponents here are integers in whichever variable the caller chose
//! (`x`, or `y = x^{1/2}`).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{PiHalf, Rat, Scalar};

/// Precision of a layer that is known everywhere.
pub(crate) const EXACT: i64 = i64::MAX / 8;

fn clamp(v: i64) -> i64 {
    v.min(EXACT)
}

#[derive(Clone, Debug)]
pub(crate) struct Layer {
    pub terms: BTreeMap<i64, PiHalf>,
    pub prec: i64,
}

impl Layer {
    pub fn exact_zero() -> Self {
        Layer {
            terms: BTreeMap::new(),
            prec: EXACT,
        }
    }

    pub fn with_prec(prec: i64) -> Self {
        Layer {
            terms: BTreeMap::new(),
            prec,
        }
    }

    /// Lower bound for the exponent of any nonzero term, known or not.
    pub fn low(&self) -> i64 {
        match self.terms.keys().next() {
            Some(&e) => e,
            None => clamp(self.prec + 1),
        }
    }

    fn add_term(&mut self, e: i64, v: PiHalf) {
        if e > self.prec || v.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(v);
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_ref(&v);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn add_product(&mut self, e: i64, a: &PiHalf, b: &PiHalf) {
        if e > self.prec {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                let v = a * b;
                if !v.is_zero() {
                    slot.insert(v);
                }
            }
            Entry::Occupied(mut slot) => {
                slot.get_mut().add_product(a, b);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn truncate(&mut self, cap: i64) {
        if cap < self.prec {
            self.prec = cap;
            self.terms.retain(|&e, _| e <= cap);
        }
    }

    fn coeff(&self, e: i64) -> Option<&PiHalf> {
        self.terms.get(&e)
    }
}

/// A series split into ε-layers with per-layer precision.
#[derive(Clone, Debug)]
pub(crate) struct Trunc {
    pub layers: Vec<Layer>,
}

impl Trunc {
    pub fn order(&self) -> usize {
        self.layers.len()
    }

    pub fn exact_zero(n: usize) -> Self {
        Trunc {
            layers: (0..n).map(|_| Layer::exact_zero()).collect(),
        }
    }

    /// The exact monomial `x^e`.
    pub fn exact_monomial(n: usize, e: i64) -> Self {
        let mut t = Trunc::exact_zero(n);
        t.layers[0].terms.insert(e, PiHalf::one());
        t
    }

    /// Only layer 0 of `self`; the other layers are exactly zero.
    pub fn layer0_part(&self) -> Trunc {
        let mut t = Trunc::exact_zero(self.order());
        t.layers[0] = self.layers[0].clone();
        t
    }

    /// `self` with layer 0 replaced by exact zero.
    pub fn nil_part(&self) -> Trunc {
        let mut t = self.clone();
        t.layers[0] = Layer::exact_zero();
        t
    }

    /// Only layer `a`; everything else exactly zero.
    pub fn only_layer(&self, a: usize) -> Trunc {
        let mut t = Trunc::exact_zero(self.order());
        t.layers[a] = self.layers[a].clone();
        t
    }

    pub fn min_prec(&self) -> i64 {
        self.layers.iter().map(|l| l.prec).min().unwrap_or(EXACT)
    }

    pub fn truncate(&mut self, cap: i64) {
        for l in &mut self.layers {
            l.truncate(cap);
        }
    }

    pub fn shift(&self, k: i64) -> Trunc {
        Trunc {
            layers: self
                .layers
                .iter()
                .map(|l| Layer {
                    terms: l.terms.iter().map(|(&e, v)| (e + k, v.clone())).collect(),
                    prec: if l.prec >= EXACT { EXACT } else { l.prec + k },
                })
                .collect(),
        }
    }

    /// Multiplies every coefficient by a base-ring element.
    pub fn scale_base(&self, p: &PiHalf) -> Trunc {
        Trunc {
            layers: self
                .layers
                .iter()
                .map(|l| {
                    let mut out = Layer::with_prec(l.prec);
                    for (&e, v) in &l.terms {
                        out.add_product(e, v, p);
                    }
                    out
                })
                .collect(),
        }
    }

    pub fn scale_rat(&self, q: &Rat) -> Trunc {
        self.scale_base(&PiHalf::rat(q.clone()))
    }

    pub fn neg(&self) -> Trunc {
        self.scale_rat(&-Rat::one())
    }

    pub fn add(&self, o: &Trunc) -> Trunc {
        let layers = self
            .layers
            .iter()
            .zip(&o.layers)
            .map(|(a, b)| {
                let mut out = Layer::with_prec(a.prec.min(b.prec));
                for (&e, v) in a.terms.iter().chain(&b.terms) {
                    out.add_term(e, v.clone());
                }
                out
            })
            .collect();
        Trunc { layers }
    }

    pub fn sub(&self, o: &Trunc) -> Trunc {
        self.add(&o.neg())
    }

    /// Product, exact through the per-layer precision it certifies, and cut
    /// off at `cap`.
    pub fn mul(&self, o: &Trunc, cap: i64) -> Trunc {
        let n = self.order();
        let layers = (0..n)
            .map(|c| {
                let mut prec = cap;
                for a in 0..=c {
                    let (f, g) = (&self.layers[a], &o.layers[c - a]);
                    prec = prec
                        .min(clamp(f.low() + g.prec))
                        .min(clamp(f.prec + g.low()));
                }
                let mut out = Layer::with_prec(prec);
                for a in 0..=c {
                    let (f, g) = (&self.layers[a], &o.layers[c - a]);
                    let glow = g.low();
                    for (&ea, va) in &f.terms {
                        if ea + glow > prec {
                            break;
                        }
                        for (&eb, vb) in &g.terms {
                            if ea + eb > prec {
                                break;
                            }
                            out.add_product(ea + eb, va, vb);
                        }
                    }
                }
                out
            })
            .collect();
        Trunc { layers }
    }

    /// Multiplication by an exactly known scalar.
    pub fn scalar_mul(&self, s: &Scalar) -> Trunc {
        let n = self.order();
        let layers = (0..n)
            .map(|c| {
                let mut prec = EXACT;
                for a in 0..=c {
                    if !s.layer(a).is_zero() {
                        prec = prec.min(self.layers[c - a].prec);
                    }
                }
                let mut out = Layer::with_prec(prec);
                for a in 0..=c {
                    let sa = s.layer(a);
                    if sa.is_zero() {
                        continue;
                    }
                    for (&e, v) in &self.layers[c - a].terms {
                        out.add_product(e, sa, v);
                    }
                }
                out
            })
            .collect();
        Trunc { layers }
    }

    pub fn derivative(&self) -> Trunc {
        Trunc {
            layers: self
                .layers
                .iter()
                .map(|l| {
                    let mut out = Layer::with_prec(if l.prec >= EXACT { EXACT } else { l.prec - 1 });
                    for (&e, v) in &l.terms {
                        out.add_term(e - 1, v.scale(&Rat::int(e)));
                    }
                    out
                })
                .collect(),
        }
    }

    /// Scalar coefficient at exponent `e` assembled across layers.
    pub fn scalar_at(&self, e: i64) -> Scalar {
        let layers = self
            .layers
            .iter()
            .map(|l| l.coeff(e).cloned().unwrap_or_default())
            .collect();
        Scalar::from_layers(layers, self.order() as u32).expect("layer count matches order")
    }

    /// All exponents carrying a stored term in some layer, ascending.
    pub fn exponents(&self) -> Vec<i64> {
        let mut es: Vec<i64> = self.layers.iter().flat_map(|l| l.terms.keys().copied()).collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Lowest exponent that can carry a nonzero term.
    pub fn low(&self) -> i64 {
        self.layers.iter().map(Layer::low).min().unwrap_or(EXACT)
    }

    /// Multiplicative inverse. The lowest layer-0 term must be a unit; lower
    /// terms are nilpotent and handled by a geometric series that stops after
    /// `N` steps.
    pub fn inverse(&self) -> Result<Trunc> {
        let n = self.order();
        let l0 = &self.layers[0];
        let (&v, c) = l0
            .terms
            .iter()
            .next()
            .ok_or_else(|| Error::NotInvertible("no non-nilpotent coefficient in the window".into()))?;
        let cinv = c
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("leading coefficient {c} is not a unit")))?;
        let u = self.shift(-v).scale_base(&cinv);
        let i0 = Trunc {
            layers: {
                let mut ls = vec![inverse0(&u.layers[0])?];
                ls.extend((1..n).map(|_| Layer::exact_zero()));
                ls
            },
        };
        let w = u.nil_part().mul(&i0, EXACT).neg();
        let mut sum = Trunc::exact_monomial(n, 0);
        let mut pw = Trunc::exact_monomial(n, 0);
        for _ in 1..n {
            pw = pw.mul(&w, EXACT);
            sum = sum.add(&pw);
        }
        Ok(i0.mul(&sum, EXACT).shift(-v).scale_base(&cinv))
    }

    /// Checks that `self` is a valid coordinate `x·h`: layer 0 starts at
    /// exponent 1 with a unit, and lower terms are nilpotent.
    pub fn check_substitution(&self) -> Result<()> {
        let l0 = &self.layers[0];
        if l0.prec < 1 {
            return Err(Error::InvalidSubstitution(
                "the linear coefficient is outside the window".into(),
            ));
        }
        match l0.terms.iter().next() {
            Some((&1, c)) if c.is_unit() => Ok(()),
            Some((&1, c)) => Err(Error::InvalidSubstitution(format!(
                "linear coefficient {c} is not a unit"
            ))),
            Some((&e, _)) if e < 1 => Err(Error::InvalidSubstitution(format!(
                "coefficient of exponent {e} is not nilpotent"
            ))),
            _ => Err(Error::InvalidSubstitution("linear coefficient vanishes".into())),
        }
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Trunc) -> Result<Trunc> {
        g.check_substitution()?;
        let n = self.order();
        let h = g.shift(-1);
        let m = (1..n).map(|j| h.layers[j].low()).min().unwrap_or(0).min(0);

        // Unknown terms of layer a of self sit above its precision; after
        // substitution they land in layer a + b no lower than prec + 1 + b·m.
        let tail: Vec<i64> = (0..n)
            .map(|c| {
                (0..=c)
                    .map(|a| clamp(self.layers[a].prec + (c - a) as i64 * m))
                    .min()
                    .unwrap()
            })
            .collect();
        let cap = *tail.iter().max().unwrap();
        if cap >= EXACT {
            return Err(Error::WindowError("composition needs a finite window".into()));
        }

        let exps = self.exponents();
        let mut result = Trunc::exact_zero(n);
        if let (Some(&emin), Some(&emax)) = (exps.first(), exps.last()) {
            let mut pos = Vec::new();
            if emax >= 0 {
                let mut p = Trunc::exact_monomial(n, 0);
                pos.push(p.clone());
                for e in 1..=emax {
                    p = p.mul(&h, cap - e);
                    pos.push(p.clone());
                }
            }
            let mut neg = Vec::new();
            if emin < 0 {
                let mut hinv = h.inverse()?;
                hinv.truncate(cap - emin);
                let mut p = Trunc::exact_monomial(n, 0);
                neg.push(p.clone());
                for _ in 1..=(-emin) {
                    p = p.mul(&hinv, cap - emin);
                    neg.push(p.clone());
                }
            }
            for &e in &exps {
                let s = self.scalar_at(e);
                let power = if e >= 0 {
                    &pos[e as usize]
                } else {
                    &neg[(-e) as usize]
                };
                result = result.add(&power.shift(e).scalar_mul(&s));
            }
        }
        for (l, &t) in result.layers.iter_mut().zip(&tail) {
            l.truncate(t);
        }
        Ok(result)
    }

    /// Compositional inverse, solved one ε-layer at a time: the reduction
    /// mod ε by classical reversion, then each higher layer by the linear
    /// correction `r_a = -[g(r)]_a / g_0'(r_0)`.
    pub fn reversion(&self) -> Result<Trunc> {
        self.check_substitution()?;
        let n = self.order();
        let r0 = Trunc {
            layers: {
                let mut ls = vec![reversion0(&self.layers[0])?];
                ls.extend((1..n).map(|_| Layer::exact_zero()));
                ls
            },
        };
        if n == 1 {
            return Ok(r0);
        }
        let slope = self.layer0_part().derivative().compose(&r0)?.inverse()?;
        let x = Trunc::exact_monomial(n, 1);
        let mut r = r0;
        for a in 1..n {
            let defect = self.compose(&r)?.sub(&x);
            debug_assert!(defect.layers[..a].iter().all(|l| l.terms.is_empty()));
            let corr = defect.only_layer(a).mul(&slope, EXACT);
            r = r.sub(&corr);
        }
        Ok(r)
    }

    /// Square root of a series whose layer 0 starts with the constant 1.
    pub fn sqrt_unit(&self) -> Result<Trunc> {
        let n = self.order();
        let mut s0 = Trunc::exact_zero(n);
        s0.layers[0] = sqrt0(&self.layers[0])?;
        let u0inv = self.layer0_part().inverse()?;
        let w = self.nil_part().mul(&u0inv, EXACT);
        // sqrt(1 + w) = Σ binom(1/2, i) w^i, finite since w is nilpotent.
        let mut sum = Trunc::exact_monomial(n, 0);
        let mut pw = Trunc::exact_monomial(n, 0);
        let mut binom = Rat::one();
        for i in 1..n {
            binom = &binom * &Rat::new(1 - 2 * (i as i64 - 1), 2 * i as i64);
            pw = pw.mul(&w, EXACT);
            sum = sum.add(&pw.scale_rat(&binom));
        }
        Ok(s0.mul(&sum, EXACT))
    }
}

fn finite_prec(l: &Layer) -> Result<i64> {
    if l.prec >= EXACT {
        Err(Error::WindowError("operation needs a finite window".into()))
    } else {
        Ok(l.prec)
    }
}

/// Inverse of a base-ring power series with unit constant term.
fn inverse0(l: &Layer) -> Result<Layer> {
    let p = finite_prec(l)?;
    let a0 = l
        .coeff(0)
        .filter(|_| l.low() == 0)
        .ok_or_else(|| Error::NotInvertible("constant term missing".into()))?;
    let a0inv = a0
        .inverse()
        .map_err(|_| Error::NotInvertible(format!("{a0} is not a unit")))?;
    let mut b: Vec<PiHalf> = vec![a0inv.clone()];
    for k in 1..=p {
        let mut acc = PiHalf::zero();
        for (&i, ai) in l.terms.range(1..=k) {
            acc.add_product(ai, &b[(k - i) as usize]);
        }
        b.push(-&(&acc * &a0inv));
    }
    Ok(layer_from_dense(b, 0, p))
}

/// Square root of a base-ring power series with constant term 1.
fn sqrt0(l: &Layer) -> Result<Layer> {
    let p = finite_prec(l)?;
    if l.low() != 0 || !l.coeff(0).is_some_and(PiHalf::is_one) {
        return Err(Error::DomainError("square root needs constant term 1".into()));
    }
    let half = Rat::new(1, 2);
    let mut s: Vec<PiHalf> = vec![PiHalf::one()];
    for k in 1..=p {
        let mut acc = l.coeff(k).cloned().unwrap_or_default();
        for i in 1..k {
            acc = &acc - &(&s[i as usize] * &s[(k - i) as usize]);
        }
        s.push(acc.scale(&half));
    }
    Ok(layer_from_dense(s, 0, p))
}

/// Classical reversion of `Σ_{n≥1} a_n x^n` with `a_1` a unit; the result is
/// exact through the input precision.
fn reversion0(l: &Layer) -> Result<Layer> {
    let p = finite_prec(l)?;
    let a1inv = l
        .coeff(1)
        .ok_or_else(|| Error::InvalidSubstitution("linear coefficient vanishes".into()))?
        .inverse()
        .map_err(|_| Error::InvalidSubstitution("linear coefficient is not a unit".into()))?;
    let pu = p as usize;
    // pw[k][j] = [x^j] r^k
    let mut pw: Vec<Vec<PiHalf>> = vec![vec![PiHalf::zero(); pu + 1]; pu + 1];
    pw[0][0] = PiHalf::one();
    let mut b: Vec<PiHalf> = vec![PiHalf::zero(); pu + 1];
    for j in 1..=pu {
        for k in 2..=j {
            let mut acc = PiHalf::zero();
            for i in 1..=(j + 1 - k) {
                if !b[i].is_zero() {
                    acc.add_product(&b[i], &pw[k - 1][j - i]);
                }
            }
            pw[k][j] = acc;
        }
        let mut rhs = if j == 1 { PiHalf::one() } else { PiHalf::zero() };
        for k in 2..=j {
            if let Some(ak) = l.coeff(k as i64) {
                rhs = &rhs - &(ak * &pw[k][j]);
            }
        }
        b[j] = &rhs * &a1inv;
        pw[1][j] = b[j].clone();
    }
    Ok(layer_from_dense(b, 0, p))
}

fn layer_from_dense(v: Vec<PiHalf>, start: i64, prec: i64) -> Layer {
    let mut out = Layer::with_prec(prec);
    for (i, c) in v.into_iter().enumerate() {
        out.add_term(start + i as i64, c);
    }
    out
}
