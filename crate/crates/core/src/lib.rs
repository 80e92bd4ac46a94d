//! Exact truncated-series algebra for the Tate cohomology of circle actions.
//!
//! The crate provides:
//! - exact scalars over Q, Q[π^{±1/2}] and a truncated nilpotent extension,
//! - windowed Laurent/Puiseux series with conservative precision tracking,
//! - formal group laws and the residue, pairing and symplectic structure of
//!   their Tate modules,
//! - the composition group of nil-Laurent series and its odd square roots,
//! - the half-integral divided-power embedding into √x-series,
//! - the twisted bosonic Fock space with Heisenberg and Virasoro operators,
//!   Kontsevich–Witten trace functions and Schur Q-functions,
//! - Givental's twisted involution on vector-valued series.

pub mod error;
pub mod fgl_tate;
pub mod fock;
pub mod givental;
pub mod half_spin;
pub mod halfint;
pub mod linalg;
pub mod literal;
pub mod nil_group;
pub mod par;
pub mod scalars;
pub mod series;

pub use error::{Error, Result};
pub use halfint::HalfInt;
pub use scalars::{PiHalf, Rat, Scalar};
pub use series::{Ring, Series, Window};
