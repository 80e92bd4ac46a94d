use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rat;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Element of Q[π^{1/2}, π^{-1/2}]: a finite sum of rational multiples of
/// half-integer powers of π. Keys are doubled exponents; zero coefficients
/// are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PiHalf {
    terms: BTreeMap<i32, Rat>,
}

impl PiHalf {
    pub fn zero() -> Self {
        PiHalf::default()
    }

    pub fn one() -> Self {
        PiHalf::rat(Rat::one())
    }

    pub fn rat(q: Rat) -> Self {
        PiHalf::monomial(q, HalfInt::ZERO)
    }

    /// `q · π^power`.
    pub fn monomial(q: Rat, power: HalfInt) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(power.doubled(), q);
        }
        PiHalf { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Units of a Laurent polynomial ring over a field are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// `(power of π, coefficient)` pairs in ascending power.
    pub fn terms(&self) -> impl Iterator<Item = (HalfInt, &Rat)> {
        self.terms.iter().map(|(&k, v)| (HalfInt::from_doubled(k), v))
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(Rat, HalfInt)> {
        if self.terms.len() == 1 {
            let (&k, v) = self.terms.iter().next().unwrap();
            Some((v.clone(), HalfInt::from_doubled(k)))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<PiHalf> {
        match self.as_monomial() {
            Some((q, p)) => Ok(PiHalf::monomial(q.recip()?, -p)),
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }

    pub fn scale(&self, q: &Rat) -> PiHalf {
        if q.is_zero() {
            return PiHalf::zero();
        }
        PiHalf {
            terms: self.terms.iter().map(|(&k, v)| (k, v * q)).collect(),
        }
    }

    pub fn add_assign_ref(&mut self, o: &PiHalf) {
        for (&k, v) in &o.terms {
            accumulate(&mut self.terms, k, v.clone());
        }
    }

    /// `self += a * b` without temporaries for the common single-term case.
    pub fn add_product(&mut self, a: &PiHalf, b: &PiHalf) {
        for (&ka, va) in &a.terms {
            for (&kb, vb) in &b.terms {
                accumulate(&mut self.terms, ka + kb, va * vb);
            }
        }
    }
}

fn accumulate(terms: &mut BTreeMap<i32, Rat>, k: i32, v: Rat) {
    use std::collections::btree_map::Entry;
    match terms.entry(k) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl From<Rat> for PiHalf {
    fn from(q: Rat) -> Self {
        PiHalf::rat(q)
    }
}

impl Add<&PiHalf> for &PiHalf {
    type Output = PiHalf;
    fn add(self, o: &PiHalf) -> PiHalf {
        let mut r = self.clone();
        r.add_assign_ref(o);
        r
    }
}

impl Sub<&PiHalf> for &PiHalf {
    type Output = PiHalf;
    fn sub(self, o: &PiHalf) -> PiHalf {
        self + &(-o)
    }
}

impl Mul<&PiHalf> for &PiHalf {
    type Output = PiHalf;
    fn mul(self, o: &PiHalf) -> PiHalf {
        let mut r = PiHalf::zero();
        r.add_product(self, o);
        r
    }
}

impl Neg for &PiHalf {
    type Output = PiHalf;
    fn neg(self) -> PiHalf {
        PiHalf {
            terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect(),
        }
    }
}

pub(crate) fn fmt_pi_monomial(f: &mut fmt::Formatter<'_>, q: &Rat, power: HalfInt) -> fmt::Result {
    write!(f, "{q}")?;
    if power != HalfInt::ZERO {
        write!(f, "*pi^({power})")?;
    }
    Ok(())
}

/// Sum of `RAT*pi^(FRAC)` monomials joined by ` + `; `0` when empty.
impl fmt::Display for PiHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, q)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            fmt_pi_monomial(f, q, p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PiHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
