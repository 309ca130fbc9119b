//! Double-double arithmetic: unevaluated sums `hi + lo` of two `f64`s giving
//! roughly 31 significant decimal digits.
//!
//! The certification code in [`crate::bounds`] proves one-sided inequalities
//! like `4·s1(95) ≤ 2.71` with a slack of `1e-9`; double-double evaluation
//! keeps the total rounding error many orders of magnitude below that slack,
//! so a comparison of the computed value against the decimal constant is
//! decisive. Only the operations needed there are provided (no exp, no trig).
//!
//! Algorithms are the classical error-free transformations (two-sum, FMA
//! two-product) with one Newton-style correction step for division and
//! square root, and an argument-reduced `atanh` series for the logarithm.

/// A double-double value. Invariant: `lo.abs() <= ulp(hi) / 2`, i.e. the pair
/// is the canonical non-overlapping representation of `hi + lo`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// `s + e = a + b` exactly, with `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `two_sum` specialised to `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// `p + e = a * b` exactly, with `p = fl(a * b)`.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

// Explicit method-call arithmetic keeps every rounding step visible at the
// call sites; the operator traits are deliberately not implemented.
#[allow(clippy::should_implement_trait)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Euler's number e.
    pub const E: Dd = Dd::from_parts(std::f64::consts::E, 1.4456468917292502e-16);
    /// ln 2.
    pub const LN2: Dd = Dd::from_parts(std::f64::consts::LN_2, 2.3190468138462996e-17);
    /// ln(2π).
    pub const LN_2PI: Dd = Dd::from_parts(1.8378770664093456, -7.756588316134483e-17);
    /// The Euler–Mascheroni constant γ.
    pub const EULER_GAMMA: Dd = Dd::from_parts(0.5772156649015329, -4.942915152430645e-18);
    /// ψ(1) = −γ.
    pub const PSI_1: Dd = Dd::from_parts(-0.5772156649015329, 4.942915152430645e-18);
    /// ψ(3/2) = 2 − γ − 2·ln 2.
    pub const PSI_3_2: Dd = Dd::from_parts(0.03648997397857652, 1.9534229894802305e-19);
    /// ψ(2) = 1 − γ.
    pub const PSI_2: Dd = Dd::from_parts(0.42278433509846713, 4.942915152430645e-18);

    /// Builds a value from pre-normalised components. The caller must ensure
    /// the components do not overlap (as all the constants above do).
    pub const fn from_parts(hi: f64, lo: f64) -> Dd {
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion for any integer magnitude (splits across the two
    /// components when the integer exceeds 2^53).
    pub fn from_u64(x: u64) -> Dd {
        let hi = x as f64;
        let lo = if hi as u128 >= x as u128 {
            -(((hi as u128) - (x as u128)) as f64)
        } else {
            ((x as u128) - (hi as u128)) as f64
        };
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }

    pub fn sqr(self) -> Dd {
        self.mul(self)
    }

    pub fn div(self, rhs: Dd) -> Dd {
        debug_assert!(rhs.hi != 0.0, "double-double division by zero");
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul_f64(q1));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul_f64(q2));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    pub fn mul_f64(self, rhs: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (s, e) = quick_two_sum(p1, p2 + self.lo * rhs);
        Dd { hi: s, lo: e }
    }

    /// Exact multiplication by a power of two.
    pub fn mul_pow2(self, k: i32) -> Dd {
        let f = (k as f64).exp2();
        Dd {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    /// Square root of a non-negative value (one Newton correction on the
    /// `f64` seed, which is fully accurate at double-double precision).
    pub fn sqrt(self) -> Dd {
        debug_assert!(self.hi >= 0.0, "double-double sqrt of negative value");
        if self.hi == 0.0 {
            return Dd::ZERO;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let err = self.sub(Dd::from_f64(ax).sqr()).hi * (x * 0.5);
        let (s, e) = quick_two_sum(ax, err);
        Dd { hi: s, lo: e }
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut n = n;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.sqr();
            n >>= 1;
        }
        acc
    }

    /// Natural logarithm of a positive value.
    ///
    /// Reduces `x = m · 2^k` with `m ∈ [√½, √2)` and sums the `atanh` series
    /// `ln m = 2·(t + t³/3 + t⁵/5 + …)` with `t = (m−1)/(m+1)`, `|t| ≤ 0.172`,
    /// which reaches double-double precision in about twenty terms.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "double-double ln of non-positive value");
        let k = (self.hi.log2() + 0.5).floor() as i32;
        let m = self.mul_pow2(-k);
        let t = m.sub(Dd::ONE).div(m.add(Dd::ONE));
        let t2 = t.sqr();
        let mut term = t;
        let mut sum = t;
        for j in 1..=24u32 {
            term = term.mul(t2);
            sum = sum.add(term.div(Dd::from_u64(2 * j as u64 + 1)));
        }
        sum.mul_pow2(1).add(Dd::LN2.mul_f64(k as f64))
    }

    /// The exponential integral Ei(y) for y > 0, via the everywhere-positive
    /// Maclaurin series `Ei(y) = γ + ln y + Σ_{k≥1} y^k/(k·k!)`.
    pub fn ei_positive(self) -> Dd {
        debug_assert!(self.hi > 0.0, "Ei series requires a positive argument");
        let mut sum = Dd::ZERO;
        let mut pw = Dd::ONE; // y^k / k!
        for k in 1..=200u64 {
            pw = pw.mul(self).div(Dd::from_u64(k));
            let term = pw.div(Dd::from_u64(k));
            sum = sum.add(term);
            if term.hi < 1e-40 * sum.hi.abs() {
                break;
            }
        }
        sum.add(Dd::EULER_GAMMA).add(self.ln())
    }

    pub fn lt(self, rhs: Dd) -> bool {
        self.hi < rhs.hi || (self.hi == rhs.hi && self.lo < rhs.lo)
    }

    pub fn le(self, rhs: Dd) -> bool {
        self.lt(rhs) || self == rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// |a − b| as f64, for tolerance checks against frozen references.
    fn diff(a: Dd, b: Dd) -> f64 {
        a.sub(b).to_f64().abs()
    }

    #[test]
    fn constants_are_normalised() {
        for c in [
            Dd::E,
            Dd::LN2,
            Dd::LN_2PI,
            Dd::EULER_GAMMA,
            Dd::PSI_2,
            Dd::PSI_3_2,
        ] {
            assert!(c.lo.abs() <= c.hi.abs() * 1.2e-16);
            assert_eq!(c.hi + c.lo, c.hi, "components must not overlap");
        }
    }

    #[test]
    fn add_sub_roundtrip() {
        let a = Dd::from_f64(0.1).add(Dd::from_f64(1e-20));
        let b = Dd::E;
        assert!(diff(a.add(b).sub(b), a) < 1e-31);
    }

    #[test]
    fn mul_div_roundtrip() {
        let a = Dd::LN2.mul(Dd::E);
        assert!(diff(a.div(Dd::E), Dd::LN2) < 1e-32);
        assert!(diff(Dd::E.recip().mul(Dd::E), Dd::ONE) < 1e-31);
    }

    #[test]
    fn sqrt_squares_back() {
        let a = Dd::from_u64(95);
        let s = a.sqrt();
        assert!(diff(s.sqr(), a) < 1e-29);
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let x = Dd::from_f64(1.5).add(Dd::from_f64(3e-18));
        let mut acc = Dd::ONE;
        for _ in 0..7 {
            acc = acc.mul(x);
        }
        assert!(diff(x.powi(7), acc) < 1e-30);
    }

    #[test]
    fn ln_matches_reference_values() {
        // ln 95, components computed at 40-digit precision.
        let ln95 = Dd::from_parts(4.553876891600541, 6.851793318118398e-17);
        assert!(diff(Dd::from_u64(95).ln(), ln95) < 1e-30);
        assert!(diff(Dd::from_u64(2).ln(), Dd::LN2) < 1e-31);
        // ln(2π) assembled independently: ln 2 + ln π.
        let ln_pi = Dd::from_parts(1.1447298858494002, 1.0265951162707826e-17);
        assert!(diff(Dd::LN2.add(ln_pi), Dd::LN_2PI) < 1e-31);
    }

    #[test]
    fn ln_inverts_power_scaling() {
        let x = Dd::from_u64(11000);
        let a = x.ln();
        let b = x.mul_pow2(3).ln().sub(Dd::LN2.mul_f64(3.0));
        assert!(diff(a, b) < 1e-30);
    }

    #[test]
    fn ei_matches_reference_values() {
        // Ei(1) = 1.895117816355936755466521… (= li(e), 40-digit reference).
        let ei1 = Dd::ONE.ei_positive();
        assert!(
            diff(
                ei1,
                Dd::from_parts(1.8951178163559368, -3.5162267978395395e-17)
            ) < 1e-28
        );
        // li(10) = Ei(ln 10) = 6.165599504787297937522982…
        let li10 = Dd::from_u64(10).ln().ei_positive();
        assert!((li10.to_f64() - 6.165599504787298).abs() < 1e-14);
    }

    #[test]
    fn from_u64_is_exact_beyond_2_53() {
        let x = (1u64 << 60) + 12345;
        let d = Dd::from_u64(x);
        // hi + lo carries the integer exactly even though neither part does.
        assert!(diff(d.sub(Dd::from_u64(12345)), Dd::from_u64(1 << 60)) == 0.0);
        assert!(diff(d.sub(Dd::from_u64(1 << 60)), Dd::from_u64(12345)) == 0.0);
    }

    #[test]
    fn ordering_uses_both_components() {
        let a = Dd::from_parts(1.0, -1e-20);
        assert!(a.lt(Dd::ONE));
        assert!(a.le(Dd::ONE));
        assert!(!Dd::ONE.lt(a));
    }
}
