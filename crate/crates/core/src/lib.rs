//! Rotation operators `exp(iθ n̂·J)` for arbitrary spin, written as explicit
//! polynomials of degree `2j` in the spin matrix.
//!
//! Every algebraic object (central factorial numbers, coefficient series,
//! Vandermonde inverses, dual matrices, biorthogonal duals) is carried in
//! exact rational arithmetic. Floating point only appears once an angle is
//! substituted or a non-axial spin matrix is built.
//!
//! Module map:
//!
//! - [`central_factorials`]: `t(m, n)` and Taylor series of `arcsin(z)^n`.
//! - [`coefficients`]: the angle-dependent coefficients `A_k^[j](θ)`.
//! - [`spin_algebra`]: spin matrices and the power-reduction identity.
//! - [`rotation`]: polynomial assembly of the rotation and its oracle.
//! - [`vandermonde`]: spectrum Vandermonde matrix, trace duals, metric.
//! - [`biorthogonal`]: sine-power / cosine-harmonic biorthogonal systems.
//! - [`plot`], [`bench`], [`verify`]: machinery behind the CLI.

pub mod bench;
pub mod biorthogonal;
pub mod central_factorials;
pub mod coefficients;
mod error;
pub mod exact;
pub mod plot;
pub mod rotation;
mod spin;
pub mod spin_algebra;
pub mod vandermonde;
pub mod verify;

pub use error::{Error, Result};
pub use spin::HalfInteger;

/// Complex scalar used by every floating-point matrix in the crate.
pub type Complex64 = nalgebra::Complex<f64>;

/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<Complex64>;
