//! Truncated formal series with exponents in (1/2)Z.
//!
//! A [`Series`] carries a window `[lo, hi]`. Coefficients inside the window
//! are exact. Above `hi` nothing is known. Below `lo` the series is taken to
//! vanish whenever an operation needs bounded-below support (products,
//! substitution, inversion), while direct coefficient queries outside the
//! window are refused with [`Error::WindowError`]. Every operation derives
//! its output window so that this contract keeps holding.

mod engine;

use std::collections::BTreeMap;

use engine::{Layer, Trunc, EXACT};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::scalars::{PiHalf, Rat, Scalar};

/// Coefficient ring descriptor: `Q[π^{±1/2}][ε]/(ε^N)`; `N = 1` means no ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    eps_order: u32,
}

impl Ring {
    /// The ring without nilpotents.
    pub const PLAIN: Ring = Ring { eps_order: 1 };

    pub fn nil(eps_order: u32) -> Result<Ring> {
        if eps_order == 0 {
            return Err(Error::DomainError("eps order must be at least 1".into()));
        }
        Ok(Ring { eps_order })
    }

    pub fn eps_order(self) -> u32 {
        self.eps_order
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero(self.eps_order)
    }

    pub fn one(self) -> Scalar {
        Scalar::one(self.eps_order)
    }

    fn check(self, o: Ring) -> Result<()> {
        if self == o {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.eps_order, o.eps_order))
        }
    }

    fn adopt(self, s: Scalar) -> Result<Scalar> {
        match s.order() {
            n if n == self.eps_order => Ok(s),
            1 => Ok(s.with_order(self.eps_order)),
            n => Err(Error::RingMismatch(self.eps_order, n)),
        }
    }
}

/// Closed exponent interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: HalfInt,
    pub hi: HalfInt,
}

impl Window {
    pub fn new(lo: HalfInt, hi: HalfInt) -> Result<Window> {
        if lo > hi {
            return Err(Error::WindowError(format!("empty window [{lo},{hi}]")));
        }
        Ok(Window { lo, hi })
    }

    pub fn ints(lo: i32, hi: i32) -> Result<Window> {
        Window::new(HalfInt::int(lo), HalfInt::int(hi))
    }

    pub fn contains(&self, e: HalfInt) -> bool {
        self.lo <= e && e <= self.hi
    }

    pub fn intersect(&self, o: &Window) -> Result<Window> {
        Window::new(self.lo.max(o.lo), self.hi.min(o.hi))
    }

    pub fn shift(&self, k: HalfInt) -> Window {
        Window {
            lo: self.lo + k,
            hi: self.hi + k,
        }
    }
}

/// Which variable a substitution runs in: `x`, or `y = x^{1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    X,
    Y,
}

impl Var {
    /// Doubled exponents per unit of this variable.
    fn scale(self) -> i32 {
        match self {
            Var::X => 2,
            Var::Y => 1,
        }
    }
}

/// A truncated series in `x` with exponents in (1/2)Z.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    ring: Ring,
    window: Window,
    coeffs: BTreeMap<HalfInt, Scalar>,
}

impl Series {
    /// Builds a series; every term must lie in the window.
    pub fn new<I>(ring: Ring, window: Window, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (HalfInt, Scalar)>,
    {
        let mut s = Series::zero(ring, window);
        for (e, c) in terms {
            if !window.contains(e) {
                return Err(Error::WindowError(format!(
                    "term x^({e}) lies outside [{},{}]",
                    window.lo, window.hi
                )));
            }
            let c = ring.adopt(c)?;
            s.accumulate(e, c);
        }
        Ok(s)
    }

    /// Like [`Series::new`] but silently drops terms outside the window.
    pub fn truncated<I>(ring: Ring, window: Window, terms: I) -> Result<Series>
    where
        I: IntoIterator<Item = (HalfInt, Scalar)>,
    {
        Series::new(ring, window, terms.into_iter().filter(|(e, _)| window.contains(*e)))
    }

    pub fn zero(ring: Ring, window: Window) -> Series {
        Series {
            ring,
            window,
            coeffs: BTreeMap::new(),
        }
    }

    /// `c · x^e` on `window`.
    pub fn monomial(ring: Ring, c: Scalar, e: HalfInt, window: Window) -> Result<Series> {
        Series::new(ring, window, [(e, c)])
    }

    /// `x^e` alone on the tight window `[e, hi]`.
    pub fn power(ring: Ring, e: HalfInt, hi: HalfInt) -> Result<Series> {
        Series::monomial(ring, ring.one(), e, Window::new(e, hi)?)
    }

    /// `Σ c_k x^k` over integer exponents `lo, lo+1, …` from a dense list of rationals.
    pub fn from_rats(ring: Ring, lo: i32, coeffs: &[Rat], window: Window) -> Result<Series> {
        Series::new(
            ring,
            window,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, q)| (HalfInt::int(lo + i as i32), Scalar::rat(q.clone(), 1))),
        )
    }

    fn accumulate(&mut self, e: HalfInt, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Stored (nonzero) terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, &Scalar)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^e`; refused outside the window.
    pub fn coefficient(&self, e: HalfInt) -> Result<Scalar> {
        if !self.window.contains(e) {
            return Err(Error::WindowError(format!(
                "x^({e}) is outside [{},{}]",
                self.window.lo, self.window.hi
            )));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<HalfInt> {
        self.coeffs.keys().next().copied()
    }

    /// Whether every stored exponent is an integer (a series in `x` proper).
    pub fn is_integral(&self) -> bool {
        self.coeffs.keys().all(|e| e.is_integer())
    }

    /// Whether every stored exponent is a half-odd integer (odd in `y = x^{1/2}`).
    pub fn is_odd_in_sqrt(&self) -> bool {
        self.coeffs.keys().all(|e| !e.is_integer())
    }

    /// Same coefficients on a smaller window.
    pub fn restrict(&self, w: Window) -> Result<Series> {
        let w = self.window.intersect(&w)?;
        Series::truncated(self.ring, w, self.coeffs.clone())
    }

    /// Re-declares the window, keeping every stored term. Widening is only
    /// meaningful when the caller knows the extra coefficients vanish.
    pub fn with_window(&self, w: Window) -> Result<Series> {
        Series::new(self.ring, w, self.coeffs.clone())
    }

    /// Sends `ε ↦ 0`.
    pub fn reduced(&self) -> Series {
        Series::truncated(
            self.ring,
            self.window,
            self.coeffs.iter().map(|(&e, c)| (e, c.reduced())),
        )
        .expect("same ring and window")
    }

    pub fn add(&self, o: &Series) -> Result<Series> {
        self.ring.check(o.ring)?;
        let w = self.window.intersect(&o.window)?;
        Series::truncated(
            self.ring,
            w,
            self.coeffs
                .iter()
                .chain(&o.coeffs)
                .map(|(&e, c)| (e, c.clone())),
        )
    }

    pub fn neg(&self) -> Series {
        Series {
            ring: self.ring,
            window: self.window,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Series) -> Result<Series> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Result<Series> {
        let c = self.ring.adopt(c.clone())?;
        Series::new(
            self.ring,
            self.window,
            self.coeffs.iter().map(|(&e, v)| (e, v * &c)),
        )
    }

    /// Multiplication by `c · x^k`; the window shifts with it.
    pub fn mul_monomial(&self, c: &Scalar, k: HalfInt) -> Result<Series> {
        let c = self.ring.adopt(c.clone())?;
        Series::new(
            self.ring,
            self.window.shift(k),
            self.coeffs.iter().map(|(&e, v)| (e + k, v * &c)),
        )
    }

    /// Product on `[f.lo + g.lo, min(f.lo + g.hi, f.hi + g.lo)]`.
    pub fn mul(&self, o: &Series) -> Result<Series> {
        self.ring.check(o.ring)?;
        let (f, g) = (self.window, o.window);
        let w = Window::new(f.lo + g.lo, (f.lo + g.hi).min(f.hi + g.lo))?;
        let left: Vec<(HalfInt, &Scalar)> = self.terms().collect();
        let partials = crate::par::map(&left, |&(ea, a)| {
            o.terms()
                .filter(|&(eb, _)| w.contains(ea + eb))
                .map(|(eb, b)| (ea + eb, a * b))
                .collect::<Vec<_>>()
        });
        Series::new(self.ring, w, partials.into_iter().flatten())
    }

    /// d/dx, including half-integer exponents; the window moves down by one.
    pub fn derivative(&self) -> Series {
        let w = self.window.shift(-HalfInt::ONE);
        Series::truncated(
            self.ring,
            w,
            self.coeffs.iter().map(|(&e, c)| {
                (e - HalfInt::ONE, c.scale(&Rat::new(e.doubled() as i64, 2)))
            }),
        )
        .expect("derivative stays in the shifted window")
    }

    /// Coefficient of `x^{-1}`.
    pub fn residue(&self) -> Result<Scalar> {
        self.coefficient(HalfInt::int(-1))
            .map_err(|_| {
                Error::WindowError(format!(
                    "residue needs -1 in the window [{},{}]",
                    self.window.lo, self.window.hi
                ))
            })
    }

    /// Coefficient of `x^{-1}`, reading the window floor as a support bound:
    /// when `-1 < lo` the answer is zero. Only `hi < -1` is unknowable.
    pub fn floor_residue(&self) -> Result<Scalar> {
        if self.window.lo > HalfInt::int(-1) {
            return Ok(self.ring.zero());
        }
        self.residue()
    }

    /// Drops every exponent below `m`; the window floor rises to `m`.
    pub fn project_geq(&self, m: HalfInt) -> Result<Series> {
        let lo = self.window.lo.max(m);
        let w = Window::new(lo, self.window.hi)?;
        Series::truncated(self.ring, w, self.coeffs.clone())
    }

    /// The projection onto exponents `≥ -1`.
    pub fn collapse(&self) -> Result<Series> {
        self.project_geq(HalfInt::int(-1))
    }

    fn to_trunc(&self, var: Var) -> Result<Trunc> {
        let k = var.scale();
        let n = self.ring.eps_order as usize;
        let prec = self.window.hi.doubled().div_euclid(k) as i64;
        let mut layers: Vec<Layer> = (0..n).map(|_| Layer::with_prec(prec)).collect();
        for (e, c) in &self.coeffs {
            if e.doubled() % k != 0 {
                return Err(Error::InvalidSubstitution(format!(
                    "x^({e}) is not an integer power of the substitution variable"
                )));
            }
            let ee = (e.doubled() / k) as i64;
            for (a, p) in c.layers().iter().enumerate() {
                if !p.is_zero() {
                    layers[a].terms.insert(ee, p.clone());
                }
            }
        }
        Ok(Trunc { layers })
    }

    /// Everything below the lowest stored term is known to vanish, so the
    /// window floor may be declared anywhere at or below it; `floor` lowers it
    /// to the caller's preferred value.
    fn from_trunc(ring: Ring, t: &Trunc, var: Var, floor: Option<HalfInt>) -> Result<Series> {
        let k = var.scale() as i64;
        let hi = t.min_prec();
        if hi >= EXACT {
            return Err(Error::WindowError("result has no finite window".into()));
        }
        let mut lo = t.low().min(hi);
        if let Some(f) = floor {
            lo = lo.min(f.doubled().div_euclid(k as i32) as i64);
        }
        let to_half = |v: i64| -> Result<HalfInt> {
            i32::try_from(v * k)
                .map(HalfInt::from_doubled)
                .map_err(|_| Error::WindowError("exponent out of range".into()))
        };
        let w = Window::new(to_half(lo)?, to_half(hi)?)?;
        let terms = t
            .exponents()
            .into_iter()
            .filter(|&e| e <= hi)
            .map(|e| Ok((to_half(e)?, t.scalar_at(e))))
            .collect::<Result<Vec<_>>>()?;
        Series::new(ring, w, terms)
    }

    fn substitution(&self, g: &Series, var: Var) -> Result<Series> {
        self.ring.check(g.ring)?;
        let f = self.to_trunc(var)?;
        let gt = g.to_trunc(var)?;
        Series::from_trunc(self.ring, &f.compose(&gt)?, var, Some(self.window.lo))
    }

    /// `f ∘ g` for a coordinate change `g = x·h` in `x`: `h` has a unit
    /// constant term and only nilpotent coefficients at negative powers.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        self.substitution(g, Var::X)
    }

    /// `f(h(y))` with `y = x^{1/2}`, for series read as Laurent series in `y`.
    pub fn compose_sqrt(&self, h: &Series) -> Result<Series> {
        self.substitution(h, Var::Y)
    }

    /// Compositional inverse in `x`.
    pub fn reversion(&self) -> Result<Series> {
        Series::from_trunc(self.ring, &self.to_trunc(Var::X)?.reversion()?, Var::X, Some(self.window.lo))
    }

    /// Compositional inverse in `y = x^{1/2}`.
    pub fn reversion_sqrt(&self) -> Result<Series> {
        Series::from_trunc(self.ring, &self.to_trunc(Var::Y)?.reversion()?, Var::Y, Some(self.window.lo))
    }

    /// Multiplicative inverse; the lowest non-nilpotent coefficient must be a unit.
    pub fn mul_inverse(&self) -> Result<Series> {
        Series::from_trunc(self.ring, &self.to_trunc(Var::Y)?.inverse()?, Var::Y, None)
    }

    /// The odd square root: `h(y)` with `h(y)^2 = g(y^2)`, returned as a
    /// series in `x` supported on half-odd exponents. The leading coefficient
    /// of `g` must be a rational square; its positive root is taken.
    pub fn sqrt_odd(&self) -> Result<Series> {
        if !self.is_integral() {
            return Err(Error::InvalidSubstitution(
                "square root needs a series in integer powers of x".into(),
            ));
        }
        let t = self.to_trunc(Var::X)?;
        t.check_substitution()?;
        let lead = t.layers[0].terms[&1].clone();
        let root = lead
            .as_rational()
            .and_then(|q| q.sqrt_exact())
            .filter(|q| !q.is_zero())
            .ok_or_else(|| Error::LeadingNotASquare(lead.to_string()))?;
        let lead_inv = lead.inverse()?;
        let u = t.shift(-1).scale_base(&lead_inv);
        let s = u.sqrt_unit()?.scale_base(&PiHalf::rat(root));
        let s = Series::from_trunc(self.ring, &s, Var::X, Some(self.window.lo - HalfInt::ONE))?;
        // y·S(y^2): odd exponents only, so the next unknown one is two steps up.
        let w = Window::new(
            s.window.lo + HalfInt::HALF,
            s.window.hi + HalfInt::ONE,
        )?;
        Series::new(
            self.ring,
            w,
            s.coeffs.into_iter().map(|(e, c)| (e + HalfInt::HALF, c)),
        )
    }

    /// Whether `self` and `o` agree on every exponent both windows certify.
    pub fn agrees_with(&self, o: &Series) -> bool {
        let Ok(w) = self.window.intersect(&o.window) else {
            return true;
        };
        let keys = self.coeffs.keys().chain(o.coeffs.keys());
        keys.filter(|e| w.contains(**e))
            .all(|&e| self.coeffs.get(&e) == o.coeffs.get(&e))
    }

    /// Whether `other` reproduces every coefficient of `self`, reading
    /// exponents below `other`'s floor as zero. The window of `self` must not
    /// reach above `other`'s.
    pub fn refined_by(&self, other: &Series) -> bool {
        if self.window.hi > other.window.hi || self.ring != other.ring {
            return false;
        }
        let zero = self.ring.zero();
        let lookup = |s: &Series, e: HalfInt| s.coeffs.get(&e).cloned().unwrap_or(zero.clone());
        let exps: Vec<HalfInt> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|e| self.window.contains(*e))
            .collect();
        exps.into_iter().all(|e| lookup(self, e) == lookup(other, e))
    }
}

impl std::fmt::Debug for Series {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}
