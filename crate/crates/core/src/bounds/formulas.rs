//! The bound formulas.
//!
//! Everything here is a closed-form expression in logarithms; the heavy
//! lifting (that the decimal constants are valid) lives in
//! [`super::certify_constants`].

use super::constants::*;
use crate::{Error, Result};

/// Input to the general bound: a quotient of a ray class group described by
/// the absolute discriminant, the norm of the finite part of the modulus,
/// the number of real places dividing the modulus, the number of distinct
/// prime ideals dividing the finite part, and the index of the subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundInput {
    /// Absolute value of the field discriminant, ≥ 1.
    pub delta: u64,
    /// Norm of the finite part of the modulus, ≥ 1.
    pub norm_m0: u64,
    /// Number of real places dividing the modulus.
    pub real_places: u64,
    /// Number of distinct prime ideals dividing the finite part.
    pub omega: u64,
    /// Index of the subgroup in the ray class group, ≥ 1.
    pub index: u64,
}

impl BoundInput {
    /// Validates the structural preconditions: positivity and the trivial
    /// cap `ω(m₀) ≤ log₂(Δ·N(m₀))` (every prime ideal divides the norm or
    /// ramifies in the discriminant, and each contributes a factor ≥ 2).
    pub fn validate(&self) -> Result<()> {
        if self.delta == 0 || self.norm_m0 == 0 {
            return Err(Error::domain("delta and norm_m0 must be >= 1"));
        }
        if self.index == 0 {
            return Err(Error::domain("subgroup index must be >= 1"));
        }
        let log2_dn = (self.delta as f64).log2() + (self.norm_m0 as f64).log2();
        if self.omega as f64 > log2_dn {
            return Err(Error::domain(format!(
                "omega = {} exceeds its trivial cap log2(delta*norm_m0) = {log2_dn:.3}",
                self.omega
            )));
        }
        Ok(())
    }
}

/// The general bound on the norm of prime ideals needed to generate a
/// subgroup of given index:
/// `(index·(2.71·log(Δ·N(m₀)) + 1.29·|real places| + 1.38·ω(m₀)) + 4.13)²`.
pub fn main_bound(input: &BoundInput) -> Result<f64> {
    input.validate()?;
    let log_dn = (input.delta as f64).ln() + (input.norm_m0 as f64).ln();
    Ok(main_bound_from_logs(
        log_dn,
        input.real_places as f64,
        input.omega as f64,
        input.index as f64,
    ))
}

/// The same formula on pre-taken logarithms (used for analytic comparisons
/// where `log(Δ·N(m₀))` is only known as a lower bound, not as the log of an
/// integer).
pub fn main_bound_from_logs(log_disc_norm: f64, real_places: f64, omega: f64, index: f64) -> f64 {
    let linear = index
        * (MAIN_LOG_COEFF * log_disc_norm
            + MAIN_REAL_PLACES_COEFF * real_places
            + MAIN_OMEGA_COEFF * omega)
        + MAIN_OFFSET;
    linear * linear
}

/// Specialised bound for subgroups of `(Z/mZ)^×`: primes up to
/// `16·(index·log m)²` generate any subgroup of that index.
pub fn zm_bound(m: u64, index: u64) -> Result<f64> {
    if m < 2 {
        return Err(Error::domain(format!("modulus must be >= 2, got {m}")));
    }
    if index == 0 {
        return Err(Error::domain("subgroup index must be >= 1"));
    }
    let t = index as f64 * (m as f64).ln();
    Ok(UNIT_GROUP_FACTOR * t * t)
}

/// Specialised bound for class groups of imaginary quadratic orders (the
/// horizontal isogeny setting): `26·(h⁺·log(Δ·N(f)))²`, requiring
/// `Δ·N(f) ≥ 3`.
pub fn isogeny_bound(delta: u64, conductor_norm: u64, h_plus: u64) -> Result<f64> {
    if h_plus == 0 {
        return Err(Error::domain("h_plus must be >= 1"));
    }
    if delta == 0 || conductor_norm == 0 || delta.saturating_mul(conductor_norm) < 3 {
        return Err(Error::domain(format!(
            "isogeny bound requires delta*conductor_norm >= 3, got {}*{}",
            delta, conductor_norm
        )));
    }
    let log_dn = (delta as f64).ln() + (conductor_norm as f64).ln();
    let t = h_plus as f64 * log_dn;
    Ok(ISOGENY_FACTOR * t * t)
}

/// Bound for generating the relative class group in the cyclotomic setting:
/// `(2.71·h⁺(K₀)·log Δ + 4.13)²`.
pub fn cyclotomic_relative_bound(h_k0: u64, log_delta: f64) -> Result<f64> {
    if h_k0 == 0 {
        return Err(Error::domain("h_k0 must be >= 1"));
    }
    if !log_delta.is_finite() || log_delta <= 0.0 {
        return Err(Error::domain(format!(
            "log_delta must be positive and finite, got {log_delta}"
        )));
    }
    let linear = MAIN_LOG_COEFF * h_k0 as f64 * log_delta + MAIN_OFFSET;
    Ok(linear * linear)
}

/// The single-log simplification of the main bound at trivial index, with
/// its intermediate form and the comparable specialisation of Bach's bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimplifiedBound {
    /// `62·(log x)²`.
    pub value: f64,
    /// `(5.62·log x + 5.52)²` — the step before folding the offset in.
    pub intermediate: f64,
    /// `72·(log x)²` — what Bach's discriminant bound gives here.
    pub bach_comparison: f64,
}

/// Simplified bound `62·(log x)²` for `x = Δ·N(m₀) ≥ 12`.
pub fn simplified_bound(x: u64) -> Result<SimplifiedBound> {
    if x < 12 {
        return Err(Error::domain(format!(
            "simplified bound requires x >= 12, got {x}"
        )));
    }
    let lx = (x as f64).ln();
    let inter = SIMPLIFIED_LOG_COEFF * lx + SIMPLIFIED_OFFSET;
    Ok(SimplifiedBound {
        value: SIMPLIFIED_FACTOR * lx * lx,
        intermediate: inter * inter,
        bach_comparison: BACH_COMPARISON_FACTOR * lx * lx,
    })
}
