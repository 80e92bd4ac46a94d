//! Exact coefficient rings: Q, Q[π^{±1/2}], and the truncated nilpotent
//! extension `B[ε]/(ε^N)`.

mod nil;
mod pihalf;
mod rat;
mod special;

pub use nil::Scalar;
pub(crate) use nil::fmt_monomial;
pub use pihalf::PiHalf;
pub use rat::Rat;
pub use special::{double_factorial, gamma_half, recip_gamma_half};

/// The nilpotent-extended scalar ring; all coefficient rings embed in it.
pub type NilScalar = Scalar;
/// Q[π^{1/2}, π^{-1/2}].
pub type PiHalfScalar = PiHalf;
