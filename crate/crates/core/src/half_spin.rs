//! Fractional divided powers `γ_s(x) = x^s / Γ(1+s)` and the embedding
//! `e^k ↦ γ_{-k-1/2}` of the additive Tate module into √x-series.
//!
//! The form on the target is `{u, v} = res_x(u · dv/dx)`, the coefficient of
//! `x^{-1}`. In `y = x^{1/2}` the same number is half the `y^{-1}`
//! coefficient of `u · dv/dy`.

use crate::error::{Error, Result};
use crate::fgl_tate::{FormalGroupLaw, TateModule};
use crate::halfint::HalfInt;
use crate::scalars::{gamma_half, recip_gamma_half, PiHalf, Rat, Scalar};
use crate::series::{Ring, Series, Window};

/// `x^s / Γ(1+s)` for a fixed `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DividedPower {
    pub s: HalfInt,
    pub coeff: PiHalf,
}

impl DividedPower {
    pub fn new(s: HalfInt) -> Result<Self> {
        let g = gamma_half(s)?;
        Ok(DividedPower {
            s,
            coeff: g.inverse().expect("Gamma at a half-integer is a monomial"),
        })
    }

    /// The monomial on `[s, max(s, hi)]`.
    pub fn series(&self, hi: HalfInt) -> Result<Series> {
        Series::monomial(
            Ring::PLAIN,
            Scalar::from_pihalf(self.coeff.clone(), 1),
            self.s,
            Window::new(self.s, hi.max(self.s))?,
        )
    }
}

/// `γ_s` on `[s, max(s, hi)]`.
pub fn gamma_series(s: HalfInt, hi: HalfInt) -> Result<Series> {
    DividedPower::new(s)?.series(hi)
}

/// `γ_s` with the convention `1/Γ = 0` at poles, so integer `s < 0` gives
/// the zero series.
pub fn gamma_series_or_zero(s: HalfInt, hi: HalfInt) -> Result<Series> {
    Series::truncated(
        Ring::PLAIN,
        Window::new(s, hi.max(s))?,
        [(s, Scalar::from_pihalf(recip_gamma_half(s), 1))],
    )
}

fn embed_with(f: &Series, unit: &PiHalf) -> Result<Series> {
    if f.ring() != Ring::PLAIN {
        return Err(Error::RingMismatch(1, f.ring().eps_order()));
    }
    if !f.is_integral() {
        return Err(Error::DomainError("embed takes a series in integer powers of e".into()));
    }
    let w = f.window();
    // Exponent order reverses, so the window maps to [-hi-1/2, -lo-1/2].
    let out = Window::new(-w.hi - HalfInt::HALF, -w.lo - HalfInt::HALF)?;
    let terms = f.terms().map(|(k, c)| {
        let s = -k - HalfInt::HALF;
        let g = DividedPower::new(s).expect("-k-1/2 is never a pole");
        let c = c.layer(0) * &(&g.coeff * unit);
        (s, Scalar::from_pihalf(c, 1))
    });
    Series::new(Ring::PLAIN, out, terms.collect::<Vec<_>>())
}

/// Linear extension of `e^k ↦ γ_{-k-1/2}(x)`. The input is read as the
/// finite Laurent polynomial it stores: its window is the support.
pub fn embed(f: &Series) -> Result<Series> {
    embed_with(f, &PiHalf::one())
}

/// `π^{1/2} · embed(f)`, which makes the comparison constant 1.
pub fn embed_rescaled(f: &Series) -> Result<Series> {
    embed_with(f, &PiHalf::monomial(Rat::one(), HalfInt::HALF))
}

/// `{u, v} = res_x(u · dv/dx)`.
pub fn xsymplectic(u: &Series, v: &Series) -> Result<Scalar> {
    u.mul(&v.derivative())?.floor_residue()
}

/// `{embed e^j, embed e^k} / {e^j, e^k}` for `j + k = -1`.
pub fn comparison_scalar(j: i32, k: i32) -> Result<PiHalf> {
    comparison_with(j, k, embed)
}

/// As [`comparison_scalar`] for the rescaled embedding.
pub fn comparison_scalar_rescaled(j: i32, k: i32) -> Result<PiHalf> {
    comparison_with(j, k, embed_rescaled)
}

fn comparison_with(j: i32, k: i32, emb: fn(&Series) -> Result<Series>) -> Result<PiHalf> {
    if j + k != -1 {
        return Err(Error::DomainError(format!(
            "both forms vanish unless j + k = -1 (got {j} + {k})"
        )));
    }
    let kk = j.max(k);
    let t = TateModule::new(FormalGroupLaw::additive(2 * kk as u32 + 2), kk)?;
    let (ej, ek) = (t.monomial(j)?, t.monomial(k)?);
    let tate = t.symplectic(&ej, &ek)?;
    let one = |m: i32| Series::power(Ring::PLAIN, HalfInt::int(m), HalfInt::int(m));
    let x = xsymplectic(&emb(&one(j)?)?, &emb(&one(k)?)?)?;
    let tate = tate
        .as_rational()
        .ok_or_else(|| Error::DomainError("Tate form is not rational".into()))?;
    Ok(x.layer(0).scale(&tate.recip()?))
}

/// `κ = 1/π`, the constant that relates the two forms.
pub fn kappa() -> PiHalf {
    PiHalf::monomial(Rat::one(), HalfInt::int(-1))
}
