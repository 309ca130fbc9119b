//! Every numerical constant appearing in the bound formulas, as exact
//! decimal literals in one table.
//!
//! None of these is tunable: each is either proved as a one-sided inequality
//! by [`super::certify_constants`] (from smoothing-function values, polygamma
//! closed forms and logarithm comparisons, all evaluated in double-double
//! arithmetic with at least [`CERTIFICATION_MIN_SLACK`] of margin) or is an
//! exact algebraic combination of the others. Tests pin both directions:
//! that the inequality holds and that the slack is small, so a typo in
//! either direction is caught.

/// Coefficient of `log(Δ·N(m₀))` in the main bound. Valid because
/// `4·s1(95) = 2.70889… ≤ 2.71`.
pub const MAIN_LOG_COEFF: f64 = 2.71;

/// Coefficient of the number of real places entering the modulus. Valid
/// because `4·s4(95) = 1.28646… ≤ 1.29`.
pub const MAIN_REAL_PLACES_COEFF: f64 = 1.29;

/// Coefficient of `ω(m₀)`, the number of distinct prime divisors of the
/// finite part. Valid because `4·s3(95) = 1.37504… ≤ 1.38`.
pub const MAIN_OMEGA_COEFF: f64 = 1.38;

/// Additive constant of the main bound. Valid because
/// `4·s2(95) = 4.12775… ≤ 4.13`.
pub const MAIN_OFFSET: f64 = 4.13;

/// The smoothing functions are evaluated at this pivot; arguments below it
/// are covered by the bound's additive constant alone.
pub const SMOOTHING_PIVOT: f64 = 95.0;

/// Chebyshev ψ(x) ≤ 1.03883·x for all x > 0 (Rosser–Schoenfeld); the
/// empirical maximum of ψ(x)/x is 1.038820… at x = 113.
pub const CHEBYSHEV_PSI_RATIO: f64 = 1.03883;

/// Leading factor of the specialised bound for subgroups of `(Z/mZ)^×`:
/// `16·(index·log m)²`.
pub const UNIT_GROUP_FACTOR: f64 = 16.0;

/// Leading factor of the specialised bound for horizontal isogenies /
/// class groups of imaginary quadratic orders: `26·(h⁺·log(Δ·N(f)))²`.
pub const ISOGENY_FACTOR: f64 = 26.0;

/// Leading factor of the simplified single-log bound `62·(log(Δ·N(m₀)))²`,
/// valid for `Δ·N(m₀) ≥ 12` and trivial index.
pub const SIMPLIFIED_FACTOR: f64 = 62.0;

/// The comparable specialisation of Bach's discriminant bound,
/// `72·(log(Δ·N(m₀)))²` (= 18·(log of the squared quantity)²), kept for
/// comparison: the simplified factor 62 beats it.
pub const BACH_COMPARISON_FACTOR: f64 = 72.0;
const _: () = assert!(SIMPLIFIED_FACTOR < BACH_COMPARISON_FACTOR);

/// Number of real places is at most `0.71·log(Δ·N(m₀)) + 1.07`; the two
/// constants are `1/(log 2π − ψ(2)) = 0.70666…` and
/// `1.5/(log 2π − ψ(2)) = 1.06000…` rounded up.
pub const REAL_PLACES_LOG_RATIO: f64 = 0.71;
pub const REAL_PLACES_LOG_OFFSET: f64 = 1.07;

/// Intermediate form of the simplified bound: `(5.62·log + 5.52)²` with
/// `5.62 ≥ 2.71 + 1.29·0.71 + 1.38/log 2` and `5.52 ≥ 1.29·1.07 + 4.13`.
pub const SIMPLIFIED_LOG_COEFF: f64 = 5.62;
pub const SIMPLIFIED_OFFSET: f64 = 5.52;

/// `log 12 = 2.4849… ≥ 2.48`, the smallest log over the simplified bound's
/// domain; used to fold the offset into the 62 factor.
pub const SIMPLIFIED_MIN_LOG: f64 = 2.48;

/// Density-style estimate `(li(log 11000) + 0.12·√(log 11000))/log 11000 =
/// 0.66898… ≤ 0.67`, which folds the rational-prime correction into the 16
/// factor for moduli up to 11000 (larger moduli are covered asymptotically).
pub const UNIT_PRIME_DENSITY: f64 = 0.67;
pub const UNIT_PRIME_DENSITY_SECONDARY: f64 = 0.12;
pub const UNIT_PRIME_DENSITY_CUTOFF: f64 = 11000.0;

/// `ω(f)/log(Δ·N(f)) ≤ 1.06` over the isogeny bound's domain, via
/// `5/4.73 = 1.05708…` and `5/log(2·3·5·7·11) + 1/log 13 = 1.03544…`.
pub const ISOGENY_OMEGA_RATIO: f64 = 1.06;

/// Discriminant-norm lower bound `log(Δ·N(f)) ≥ 4·log 3.263 = 4.73058… ≥
/// 4.73` for the degree-4 CM fields entering the isogeny bound.
pub const CM_LOG_LOWER: f64 = 4.73;

/// Minimum margin demanded of every certified one-sided inequality; double-
/// double evaluation keeps rounding error ~20 orders of magnitude below it.
pub const CERTIFICATION_MIN_SLACK: f64 = 1e-9;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bach_factor_is_exactly_18_times_4() {
        // 18·(log y²)² = 18·4·(log y)²; the 72 is algebraic, not estimated.
        assert_eq!(BACH_COMPARISON_FACTOR, 18.0 * 4.0);
    }
}
