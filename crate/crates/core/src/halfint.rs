use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of (1/2)Z, stored as its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const ONE: HalfInt = HalfInt(2);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_doubled(d: i32) -> Self {
        HalfInt(d)
    }

    pub const fn int(k: i32) -> Self {
        HalfInt(2 * k)
    }

    pub const fn doubled(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// `Some(k)` when the value is the integer `k`.
    pub fn as_integer(self) -> Option<i32> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Largest integer not above `self`.
    pub fn floor(self) -> i32 {
        self.0.div_euclid(2)
    }

    /// Smallest integer not below `self`.
    pub fn ceil(self) -> i32 {
        -(-self.0).div_euclid(2)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl From<i32> for HalfInt {
    fn from(k: i32) -> Self {
        HalfInt::int(k)
    }
}

/// Prints `k` for integers and `p/2` otherwise.
impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_of_halves() {
        assert_eq!(HalfInt::from_doubled(-3).floor(), -2);
        assert_eq!(HalfInt::from_doubled(-3).ceil(), -1);
        assert_eq!(HalfInt::from_doubled(5).floor(), 2);
        assert_eq!(HalfInt::from_doubled(5).ceil(), 3);
        assert_eq!(HalfInt::int(4).floor(), 4);
        assert_eq!(HalfInt::int(-4).ceil(), -4);
    }

    #[test]
    fn display() {
        assert_eq!(HalfInt::from_doubled(-1).to_string(), "-1/2");
        assert_eq!(HalfInt::int(-3).to_string(), "-3");
    }
}
