use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    /// `n / d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Rat(BigRational::new(n.into(), d.into()))
    }

    pub fn from_big(n: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DomainError("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(n, d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            Err(Error::NotAUnit("0".into()))
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i32) -> Result<Rat> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut acc = Rat::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// The non-negative rational square root, when one exists.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.0.numer(), self.0.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rat(BigRational::new(rn, rd)))
        } else {
            None
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `a` or `a/b` with an optional leading sign on `a`.
impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad rational `{s}`"));
        let digits = |t: &str| {
            let body = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        match s.split_once('/') {
            None if digits(s) => Ok(Rat(BigRational::from_integer(s.parse().map_err(|_| bad())?))),
            Some((n, d)) if digits(n) && d.bytes().all(|b| b.is_ascii_digit()) && !d.is_empty() => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                Rat::from_big(n, d).map_err(|_| bad())
            }
            _ => Err(bad()),
        }
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $atr<&Rat> for Rat {
            fn $am(&mut self, o: &Rat) {
                self.0.$am(&o.0);
            }
        }
    };
}

rat_binop!(Add, add, AddAssign, add_assign);
rat_binop!(Sub, sub, SubAssign, sub_assign);
rat_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_sum() {
        assert_eq!(Rat::new(1, 2) + Rat::new(1, 3), Rat::new(5, 6));
        assert_eq!(Rat::new(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("-3/4".parse::<Rat>().unwrap(), Rat::new(-3, 4));
        assert_eq!("7".parse::<Rat>().unwrap(), Rat::int(7));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1/-2".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(Rat::new(9, 4).sqrt_exact(), Some(Rat::new(3, 2)));
        assert_eq!(Rat::int(2).sqrt_exact(), None);
        assert_eq!(Rat::int(-4).sqrt_exact(), None);
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(Rat::zero().recip(), Err(Error::NotAUnit(_))));
    }
}
