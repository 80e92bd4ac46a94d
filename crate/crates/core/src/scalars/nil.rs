use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{PiHalf, Rat};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Element of `B[ε]/(ε^N)` with `B = Q[π^{±1/2}]`.
///
/// Order `N = 1` is the base ring itself, and a base element with no π
/// terms is a plain rational, so this one type carries all three
/// coefficient rings. Binary operations accept operands of equal order, or
/// one operand of order 1 which is promoted; anything else panics (use the
/// `checked_*` forms to get a [`Error::RingMismatch`]).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    coeffs: Vec<PiHalf>,
}

impl Scalar {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "eps order must be at least 1");
        Scalar {
            coeffs: vec![PiHalf::zero(); order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Scalar::from_pihalf(PiHalf::one(), order)
    }

    pub fn from_pihalf(p: PiHalf, order: u32) -> Self {
        let mut s = Scalar::zero(order);
        s.coeffs[0] = p;
        s
    }

    pub fn rat(q: Rat, order: u32) -> Self {
        Scalar::from_pihalf(PiHalf::rat(q), order)
    }

    pub fn int(n: i64, order: u32) -> Self {
        Scalar::rat(Rat::int(n), order)
    }

    /// The generator ε (zero when `order == 1`).
    pub fn eps(order: u32) -> Self {
        Scalar::monomial(Rat::one(), HalfInt::ZERO, 1, order)
    }

    /// `q · π^pi · ε^eps`; the term vanishes when `eps >= order`.
    pub fn monomial(q: Rat, pi: HalfInt, eps: u32, order: u32) -> Self {
        let mut s = Scalar::zero(order);
        if eps < order {
            s.coeffs[eps as usize] = PiHalf::monomial(q, pi);
        }
        s
    }

    /// Builds `Σ layers[i] ε^i`; extra layers beyond `order` must be zero.
    pub fn from_layers(layers: Vec<PiHalf>, order: u32) -> Result<Self> {
        let mut s = Scalar::zero(order);
        for (i, p) in layers.into_iter().enumerate() {
            if i < order as usize {
                s.coeffs[i] = p;
            } else if !p.is_zero() {
                return Err(Error::DomainError(format!(
                    "eps^{i} term in a ring with eps^{order} = 0"
                )));
            }
        }
        Ok(s)
    }

    pub fn order(&self) -> u32 {
        self.coeffs.len() as u32
    }

    /// Coefficient of ε^i.
    pub fn layer(&self, i: usize) -> &PiHalf {
        &self.coeffs[i]
    }

    pub fn layers(&self) -> &[PiHalf] {
        &self.coeffs
    }

    pub fn into_layers(self) -> Vec<PiHalf> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(PiHalf::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(PiHalf::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0].is_unit()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    /// The rational value, if the scalar has no π and no ε content.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(PiHalf::is_zero) {
            self.coeffs[0].as_rational()
        } else {
            None
        }
    }

    pub fn as_pihalf(&self) -> Option<&PiHalf> {
        self.coeffs[1..]
            .iter()
            .all(PiHalf::is_zero)
            .then_some(&self.coeffs[0])
    }

    /// Re-embeds into order `n`, truncating higher powers of ε.
    pub fn with_order(&self, n: u32) -> Scalar {
        let mut s = Scalar::zero(n);
        for (i, c) in self.coeffs.iter().enumerate().take(n as usize) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    /// Reduction modulo the nilradical.
    pub fn reduced(&self) -> Scalar {
        Scalar::from_pihalf(self.coeffs[0].clone(), self.order())
    }

    pub fn scale(&self, q: &Rat) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        let n = self.order();
        let c0inv = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NotAUnit(self.to_string()))?;
        let u = self * &Scalar::from_pihalf(c0inv.clone(), n);
        let nil = -&(&u - &Scalar::one(n));
        // 1/(1 - nil) = Σ nil^i, which stops at i = N - 1.
        let mut sum = Scalar::one(n);
        let mut p = Scalar::one(n);
        for _ in 1..n {
            p = &p * &nil;
            sum = &sum + &p;
        }
        Ok(&sum * &Scalar::from_pihalf(c0inv, n))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn joint_order(&self, o: &Scalar) -> Result<u32> {
        match (self.order(), o.order()) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(Error::RingMismatch(a, b)),
        }
    }

    pub fn checked_add(&self, o: &Scalar) -> Result<Scalar> {
        let n = self.joint_order(o)? as usize;
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Scalar { coeffs })
    }

    pub fn checked_mul(&self, o: &Scalar) -> Result<Scalar> {
        let n = self.joint_order(o)? as usize;
        let mut coeffs = vec![PiHalf::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i.min(n)) {
                if i + j < n {
                    coeffs[i + j].add_product(a, b);
                }
            }
        }
        Ok(Scalar { coeffs })
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.checked_add(o).expect("scalar ring mismatch")
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.checked_add(&-o).expect("scalar ring mismatch")
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.checked_mul(o).expect("scalar ring mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, o: Scalar) -> Scalar {
        &self + &o
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, o: Scalar) -> Scalar {
        &self - &o
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, o: Scalar) -> Scalar {
        &self * &o
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// Monomials `(q, π-power, ε-power)` in output order: ε ascending, then π.
    pub fn monomials(&self) -> impl Iterator<Item = (&Rat, HalfInt, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(pw, q)| (q, pw, i as u32)))
    }
}

pub(crate) fn fmt_monomial(
    f: &mut fmt::Formatter<'_>,
    q: &Rat,
    pi: HalfInt,
    eps: u32,
) -> fmt::Result {
    super::pihalf::fmt_pi_monomial(f, q, pi)?;
    if eps > 0 {
        write!(f, "*eps^{eps}")?;
    }
    Ok(())
}

/// `RAT*pi^(FRAC)*eps^INT` monomials joined by ` + `; `0` when zero.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (q, pi, eps)) in self.monomials().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            fmt_monomial(f, q, pi, eps)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
