//! The five smoothing-kernel integrals `s1 … s5` whose values at the pivot
//! determine the main bound's constants, plus the singular-limit helper they
//! share.
//!
//! The functions take a kernel shape parameter `a ∈ (0, 1]` and an
//! evaluation point `x ≥ 1`. At `a = 1` the inner bracket of `s4` becomes
//! the limit `(log x)²/2`; away from `a = 1` it equals
//! [`limit_term`]`(x, a−1)`, which is evaluated in a cancellation-free form
//! so the two branches agree to machine precision as `a → 1`.

use crate::specfun::digamma;
use crate::{Error, Result};

/// Kernel shape `a` and evaluation point `x` for the smoothing functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingParams {
    pub a: f64,
    pub x: f64,
}

/// Values of the five smoothing functions at one parameter point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothingValues {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s4: f64,
    pub s5: f64,
}

/// Evaluates `s1 … s5` at the given parameters. Requires `0 < a ≤ 1` and
/// `x ≥ 1`.
// Negated comparisons so that NaN fails the domain checks.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn s_functions(params: SmoothingParams) -> Result<SmoothingValues> {
    let SmoothingParams { a, x } = params;
    if !(a > 0.0 && a <= 1.0) || !a.is_finite() {
        return Err(Error::domain(format!(
            "smoothing shape parameter must lie in (0, 1], got {a}"
        )));
    }
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "smoothing evaluation point must satisfy x >= 1, got {x}"
        )));
    }

    let lx = x.ln();
    let x_a_half = x.powf(a + 0.5);
    let sqrt_x = x.sqrt();

    let s1 = 2.0 / (2.0 * a + 1.0) * (1.0 + ((2.0 + a) * lx + 1.0) / x_a_half);

    let s2 = s1 * (1.0 / a + 1.0 / (a + 1.0))
        + (lx / x_a_half) * (1.5 + 1.0 / a + 1.0 / (a + 1.0))
        + (1.0 / x_a_half) * (1.0 / (a * a) + 1.0 / ((a + 1.0) * (a + 1.0)));

    let s3 = 2.0 * lx / (std::f64::consts::E * a * sqrt_x);

    let bracket = if a == 1.0 {
        lx * lx / 2.0
    } else {
        limit_term_unchecked(x, a - 1.0)
    };
    let s4 = 1.0 / ((a - 2.0) * (a - 2.0) * x.powf(2.5))
        - (s1 / 2.0) * (digamma((a + 1.0) / 2.0)? - digamma((a + 2.0) / 2.0)?)
        + 1.0 / (a * a * sqrt_x)
        + bracket / x.powf(1.5);

    const LN_2PI: f64 = 1.8378770664093456;
    let s5 = s1 * (digamma(a + 1.0)? - LN_2PI);

    Ok(SmoothingValues { s1, s2, s3, s4, s5 })
}

/// The singular factor `(x^b − b·log x − 1)/(b²·x^b)` for small `b ≠ 0`.
///
/// As `b → 0` this converges to `(log x)²/2` at rate `O(b)`. Requires
/// `x > 0` and `0 < |b| ≤ 0.1`; the naive expression loses all precision
/// near `b = 0`, so see [`limit_term_unchecked`] for the evaluation scheme.
// Negated comparisons so that NaN fails the domain checks.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn limit_term(x: f64, b: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("limit_term requires x > 0, got {x}")));
    }
    if b == 0.0 || !(b.abs() <= 0.1) {
        return Err(Error::domain(format!(
            "limit_term requires 0 < |b| <= 0.1, got {b}"
        )));
    }
    Ok(limit_term_unchecked(x, b))
}

/// Same as [`limit_term`] without the range check on `b` (the `s4` bracket
/// needs `b = a − 1 ∈ (−1, 0)`).
///
/// Writing `t = b·log x`, the value is `(e^t − t − 1)/(b²·e^t)`. For small
/// `|t|` the numerator is summed as `t²·Σ t^k/(k+2)!`; otherwise it is
/// assembled from `exp_m1`, which keeps full relative precision in the
/// subtraction.
pub(crate) fn limit_term_unchecked(x: f64, b: f64) -> f64 {
    debug_assert!(x > 0.0 && b != 0.0);
    let lx = x.ln();
    let t = b * lx;
    if t.abs() < 0.125 {
        // (e^t − t − 1)/t² = Σ_{k≥0} t^k/(k+2)!
        let mut term = 0.5f64;
        let mut sum = 0.5f64;
        for k in 1..=16u32 {
            term *= t / (k as f64 + 2.0);
            sum += term;
            if term.abs() < f64::EPSILON * sum.abs() {
                break;
            }
        }
        lx * lx * sum * (-t).exp()
    } else {
        let em = t.exp_m1();
        (em - t) / (b * b * (1.0 + em))
    }
}
