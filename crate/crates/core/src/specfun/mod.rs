//! Scalar special functions: polygamma, logarithmic integral, von Mangoldt,
//! Chebyshev ψ, and the double-double type used for certified evaluation.

pub mod dd;
mod logint;
mod polygamma;
mod sieve;

pub use dd::Dd;
pub use logint::log_integral;
pub use polygamma::{digamma, trigamma};
pub use sieve::{chebyshev_psi, von_mangoldt, Sieve};
