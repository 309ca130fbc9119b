//! Explicit bounds on prime generators of abelian group quotients, together
//! with the machinery to re-derive their numerical constants and to verify
//! them empirically by exhaustive computation.
//!
//! The crate is organised in five layers:
//!
//! * [`specfun`] — scalar special functions (digamma, trigamma, logarithmic
//!   integral, von Mangoldt, Chebyshev psi) plus a double-double extended
//!   precision type used to certify one-sided inequalities.
//! * [`bounds`] — the bound formulas themselves, the smoothing functions
//!   behind them, and the certification that every numerical constant in the
//!   formulas is a valid one-sided estimate.
//! * [`abelian`] — finite abelian groups in invariant-factor form: elements,
//!   subgroups as canonical lattice bases, subgroup enumeration, characters.
//! * [`zmstar`] — the unit groups `(Z/mZ)^×`: structure computation, discrete
//!   logarithms, and exhaustive verification that small primes generate every
//!   subgroup within the proven bound.
//! * [`quadforms`] — class groups of imaginary quadratic orders via binary
//!   quadratic forms, prime forms, and the analogous generation-by-small-
//!   primes verification.
//!
//! Scans over ranges of moduli or discriminants run in parallel when the
//! `parallel` feature (default) is enabled; the sequential fallback produces
//! byte-identical results.

pub mod abelian;
pub mod bounds;
mod exec;
pub mod quadforms;
pub mod specfun;
pub mod zmstar;

mod error;

pub use error::{Error, Result};
