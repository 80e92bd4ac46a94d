//! The group of invertible nil-Laurent series `Σ g_k x^{k+1}` under
//! composition, its substitution action on series, and the odd square-root
//! group in `y = x^{1/2}`.
//!
//! The action is `act(g, f) = f ∘ g`. With this convention
//! `act(g1 ∘ g2, f) = act(g2, act(g1, f))`, so the group acts on the right.

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::series::{Ring, Series, Window};

/// A validated element of the nil-Laurent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilLaurentElement {
    series: Series,
}

impl NilLaurentElement {
    /// Checks `g_0` is a unit and every `g_k` with `k < 0` is nilpotent.
    pub fn validate(g: Series) -> Result<Self> {
        if !g.is_integral() {
            return Err(Error::InvalidSubstitution(
                "nil-Laurent elements have integer exponents".into(),
            ));
        }
        if !g.window().contains(HalfInt::ONE) {
            return Err(Error::WindowError(format!(
                "g_0 (the x^1 coefficient) is outside {}",
                g.window()
            )));
        }
        for (e, c) in g.terms() {
            if e >= HalfInt::ONE {
                break;
            }
            if !c.is_nilpotent() {
                return Err(Error::NotNilpotent(e.floor() - 1));
            }
        }
        let g0 = g.coefficient(HalfInt::ONE)?;
        if !g0.is_unit() {
            return Err(Error::NotAUnit(g0.to_string()));
        }
        Ok(NilLaurentElement { series: g })
    }

    /// `x` on `[1, hi]`.
    pub fn identity(ring: Ring, hi: i32) -> Result<Self> {
        Ok(NilLaurentElement {
            series: Series::power(ring, HalfInt::ONE, HalfInt::int(hi.max(1)))?,
        })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn into_series(self) -> Series {
        self.series
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &NilLaurentElement) -> Result<Self> {
        Self::validate(self.series.compose(&other.series)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::validate(self.series.reversion()?)
    }

    /// `f ∘ g`. Series with half-integer exponents are substituted through
    /// the odd square root of `g`.
    pub fn act(&self, f: &Series) -> Result<Series> {
        if f.is_integral() {
            f.compose(&self.series)
        } else {
            self.to_odd_half()?.act(f)
        }
    }

    /// The image under `ε ↦ 0`, a classical coordinate change `x·(unit + O(x))`.
    pub fn reduced(&self) -> Series {
        self.series.reduced()
    }

    /// The odd series `h` with `h(y)^2 = g(y^2)`, positive leading root.
    pub fn to_odd_half(&self) -> Result<OddHalfElement> {
        OddHalfElement::validate(self.series.sqrt_odd()?)
    }
}

/// A validated invertible odd series in `y = x^{1/2}`, stored as a series in
/// `x` with half-odd exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddHalfElement {
    series: Series,
}

impl OddHalfElement {
    /// Checks odd support, a unit `y` coefficient and nilpotent coefficients
    /// below it. `NotNilpotent(k)` names `y^{k+1}`.
    pub fn validate(h: Series) -> Result<Self> {
        if !h.is_odd_in_sqrt() {
            return Err(Error::InvalidSubstitution(
                "odd elements have only half-odd exponents in x".into(),
            ));
        }
        if !h.window().contains(HalfInt::HALF) {
            return Err(Error::WindowError(format!(
                "the y coefficient is outside {}",
                h.window()
            )));
        }
        for (e, c) in h.terms() {
            if e >= HalfInt::HALF {
                break;
            }
            if !c.is_nilpotent() {
                return Err(Error::NotNilpotent(e.doubled() - 1));
            }
        }
        let lead = h.coefficient(HalfInt::HALF)?;
        if !lead.is_unit() {
            return Err(Error::NotAUnit(lead.to_string()));
        }
        Ok(OddHalfElement { series: h })
    }

    /// `y` on `[1/2, hi]`.
    pub fn identity(ring: Ring, hi: HalfInt) -> Result<Self> {
        Ok(OddHalfElement {
            series: Series::monomial(ring, ring.one(), HalfInt::HALF, Window::new(HalfInt::HALF, hi.max(HalfInt::HALF))?)?,
        })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    /// `self ∘ other` in `y`.
    pub fn compose(&self, other: &OddHalfElement) -> Result<Self> {
        Self::validate(self.series.compose_sqrt(&other.series)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::validate(self.series.reversion_sqrt()?)
    }

    /// `f(h(y))`.
    pub fn act(&self, f: &Series) -> Result<Series> {
        f.compose_sqrt(&self.series)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::parse_series;
    use crate::scalars::{Rat, Scalar};

    fn el(lit: &str, n: u32) -> Result<NilLaurentElement> {
        NilLaurentElement::validate(parse_series(lit, Ring::nil(n).unwrap()).unwrap())
    }

    #[test]
    fn validation() {
        assert!(el("1*x^(1) @[1,4]", 1).is_ok());
        assert!(el("1*eps^1 + 1*x^(1) @[0,4]", 2).is_ok());
        assert_eq!(el("1 + 1*x^(1) @[0,4]", 1), Err(Error::NotNilpotent(-1)));
        assert!(matches!(el("1*eps^1*x^(1) @[1,4]", 2), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn composition_examples() {
        let a = el("1*eps^1 + 1*x^(1) @[0,6]", 2).unwrap();
        let b = el("1*x^(1) + 1*x^(2) @[1,6]", 2).unwrap();
        let c = a.compose(&b).unwrap();
        let want = parse_series("1*eps^1 + 1*x^(1) + 1*x^(2) @[0,6]", Ring::nil(2).unwrap()).unwrap();
        assert!(c.series().agrees_with(&want));
        let s = el("2*x^(1) @[1,5]", 1).unwrap();
        let t = el("1/2*x^(1) @[1,5]", 1).unwrap();
        assert_eq!(s.compose(&t).unwrap(), NilLaurentElement::identity(Ring::PLAIN, 5).unwrap());
    }

    #[test]
    fn inverse_examples() {
        let a = el("1*eps^1 + 1*x^(1) @[0,6]", 2).unwrap();
        let want = parse_series("-1*eps^1 + 1*x^(1) @[0,5]", Ring::nil(2).unwrap()).unwrap();
        assert_eq!(a.inverse().unwrap().series().restrict(want.window()).unwrap(), want);
    }

    #[test]
    fn act_on_inverse_power() {
        let g = el("1*eps^1 + 1*x^(1) @[0,6]", 2).unwrap();
        let f = parse_series("1*x^(-1) @[-1,4]", Ring::nil(2).unwrap()).unwrap();
        let r = g.act(&f).unwrap();
        assert_eq!(r.coefficient(HalfInt::int(-1)).unwrap(), Scalar::one(2));
        assert_eq!(r.coefficient(HalfInt::int(-2)).unwrap(), -Scalar::eps(2));
        assert!(r.coefficient(HalfInt::int(0)).unwrap().is_zero());
    }

    #[test]
    fn odd_half_examples() {
        let h = el("1*x^(1) + 1*eps^1*x^(2) @[1,4]", 2).unwrap().to_odd_half().unwrap();
        assert_eq!(
            h.series().coefficient(HalfInt::from_doubled(3)).unwrap(),
            Scalar::monomial(Rat::new(1, 2), HalfInt::ZERO, 1, 2)
        );
        let h = el("4*x^(1) @[1,4]", 1).unwrap().to_odd_half().unwrap();
        assert_eq!(h.series().coefficient(HalfInt::HALF).unwrap(), Scalar::int(2, 1));
        assert!(matches!(
            el("3*x^(1) @[1,4]", 1).unwrap().to_odd_half(),
            Err(Error::LeadingNotASquare(_))
        ));
    }
}
