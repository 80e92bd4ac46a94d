use super::{PiHalf, Rat};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// Γ(1 + s) for half-integer `s`, exactly.
///
/// Uses Γ(t + 1) = t·Γ(t) from the anchors Γ(1) = 1 and Γ(1/2) = π^{1/2},
/// walking up or down as needed.
pub fn gamma_half(s: HalfInt) -> Result<PiHalf> {
    let t = s + HalfInt::ONE;
    if let Some(n) = t.as_integer() {
        if n <= 0 {
            return Err(Error::GammaPole(t.to_string()));
        }
        let mut acc = Rat::one();
        for k in 1..n {
            acc = &acc * &Rat::int(k as i64);
        }
        return Ok(PiHalf::rat(acc));
    }
    // t = m + 1/2; Γ(1/2) = π^{1/2}
    let mut q = Rat::one();
    let mut cur = HalfInt::HALF;
    while cur < t {
        q = &q * &half_to_rat(cur);
        cur = cur + HalfInt::ONE;
    }
    while cur > t {
        cur = cur - HalfInt::ONE;
        q = &q * &half_to_rat(cur).recip()?;
    }
    Ok(PiHalf::monomial(q, HalfInt::HALF))
}

/// 1/Γ(1 + s); zero at the poles of Γ.
pub fn recip_gamma_half(s: HalfInt) -> PiHalf {
    match gamma_half(s) {
        Ok(g) => g.inverse().expect("Gamma at a half-integer is a monomial"),
        Err(_) => PiHalf::zero(),
    }
}

fn half_to_rat(h: HalfInt) -> Rat {
    Rat::new(h.doubled() as i64, 2)
}

/// n!! for odd `n ≥ -1`, with (-1)!! = 1.
pub fn double_factorial(n: i64) -> Result<Rat> {
    if n < -1 || n % 2 == 0 {
        return Err(Error::DomainError(format!(
            "double factorial needs an odd argument >= -1, got {n}"
        )));
    }
    let mut acc = Rat::one();
    let mut k = 1;
    while k <= n {
        acc = &acc * &Rat::int(k);
        k += 2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt_pi(q: Rat) -> PiHalf {
        PiHalf::monomial(q, HalfInt::HALF)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_half(HalfInt::ZERO).unwrap(), PiHalf::one());
        assert_eq!(gamma_half(HalfInt::HALF).unwrap(), sqrt_pi(Rat::new(1, 2)));
        assert_eq!(
            gamma_half(HalfInt::from_doubled(-5)).unwrap(),
            sqrt_pi(Rat::new(4, 3))
        );
        assert_eq!(gamma_half(HalfInt::int(4)).unwrap(), PiHalf::rat(Rat::int(24)));
    }

    #[test]
    fn gamma_poles() {
        for k in [-1, -2, -5] {
            assert!(matches!(gamma_half(HalfInt::int(k)), Err(Error::GammaPole(_))));
        }
        assert!(recip_gamma_half(HalfInt::int(-3)).is_zero());
    }

    #[test]
    fn gamma_recursion_holds() {
        for d in -15..15 {
            let s = HalfInt::from_doubled(d);
            let (Ok(g0), Ok(g1)) = (gamma_half(s), gamma_half(s + HalfInt::ONE)) else {
                continue;
            };
            let t = PiHalf::rat(Rat::new(d as i64 + 2, 2));
            assert_eq!(g1, &t * &g0, "s = {s}");
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), Rat::one());
        assert_eq!(double_factorial(1).unwrap(), Rat::one());
        assert_eq!(double_factorial(5).unwrap(), Rat::int(15));
        assert_eq!(double_factorial(9).unwrap(), Rat::int(945));
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }
}
