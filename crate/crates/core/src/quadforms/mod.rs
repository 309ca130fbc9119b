//! Class groups of imaginary quadratic orders, modelled by positive definite
//! binary quadratic forms.
//!
//! A form `a·x² + b·x·y + c·y²` of discriminant `D = b² − 4ac < 0` stands for
//! an ideal class of the order of discriminant `D`; Gauss composition makes
//! the primitive reduced forms of fixed `D` a finite abelian group. This
//! module enumerates that group, recovers its invariant-factor structure,
//! extracts the classes above rational primes (`prime forms`), and — in
//! [`verify_connectivity`] — checks that the primes below the proven bound
//! generate the whole group.

mod verify;

pub use verify::{scan_discriminants, verify_connectivity, ConnectivityResult, QuadScanConfig};

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::zmstar::pow_mod;
use crate::{Error, Result};

/// Largest `|D|` accepted by the default form enumeration.
pub const DEFAULT_DISC_LIMIT: u64 = 10_000_000;

/// A positive definite integral binary quadratic form `ax² + bxy + cy²`
/// (so `a > 0` and `D = b² − 4ac < 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadForm {
    a: i64,
    b: i64,
    c: i64,
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl QuadForm {
    /// Validates positive definiteness: `a > 0` and `b² − 4ac < 0`.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let disc = i128::from(b) * i128::from(b) - 4 * i128::from(a) * i128::from(c);
        if a <= 0 || disc >= 0 {
            return Err(Error::domain(format!(
                "({a}, {b}, {c}) is not positive definite"
            )));
        }
        if disc < i128::from(i64::MIN) {
            return Err(Error::domain(format!(
                "discriminant of ({a}, {b}, {c}) overflows"
            )));
        }
        Ok(QuadForm { a, b, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `b² − 4ac` (negative by construction).
    pub fn discriminant(&self) -> i64 {
        (i128::from(self.b) * i128::from(self.b) - 4 * i128::from(self.a) * i128::from(self.c))
            as i64
    }

    /// `gcd(a, b, c) = 1`?
    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b), self.c) == 1
    }

    /// `|b| ≤ a ≤ c`, with `b ≥ 0` whenever `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// The unique reduced form equivalent to `self` (classical Gauss
    /// reduction: swap when `c < a`, translate `b` into `(−a, a]`, and fix
    /// the sign of `b` on the boundary ties).
    pub fn reduce(&self) -> QuadForm {
        let (mut a, mut b, mut c) = (i128::from(self.a), i128::from(self.b), i128::from(self.c));
        loop {
            if c < a {
                (a, b, c) = (c, -b, a);
                continue;
            }
            if b > a || b <= -a {
                let mut b2 = b.rem_euclid(2 * a);
                if b2 > a {
                    b2 -= 2 * a;
                }
                c += (b2 * b2 - b * b) / (4 * a);
                b = b2;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
                continue;
            }
            let out = QuadForm {
                a: a as i64,
                b: b as i64,
                c: c as i64,
            };
            debug_assert!(out.is_reduced());
            debug_assert_eq!(out.discriminant(), self.discriminant());
            return out;
        }
    }

    /// The class inverse: conjugate `b ↦ −b`, reduced.
    pub fn inverse(&self) -> QuadForm {
        QuadForm {
            a: self.a,
            b: -self.b,
            c: self.c,
        }
        .reduce()
    }

    /// Gauss composition of form classes, returned reduced.
    ///
    /// With `β = (b₁+b₂)/2` and Bezout coefficients `m = gcd(a₁, a₂, β)
    /// = e₁a₁ + e₂a₂ + e₃β`, the composite is `(A, B, (B²−D)/4A)` where
    /// `A = a₁a₂/m²` and `B ≡ (e₁a₁b₂ + e₂a₂b₁ + e₃(b₁b₂+D)/2)/m (mod 2A)`.
    pub fn compose(&self, other: &QuadForm) -> Result<QuadForm> {
        let f = self.reduce();
        let g = other.reduce();
        let d = f.discriminant();
        if d != g.discriminant() {
            return Err(Error::DiscriminantMismatch(d, g.discriminant()));
        }
        let d = i128::from(d);
        let (a1, b1) = (i128::from(f.a), i128::from(f.b));
        let (a2, b2) = (i128::from(g.a), i128::from(g.b));
        let beta = (b1 + b2) / 2;
        let (g1, x, y) = ext_gcd(a1, a2);
        let (m, w, z) = ext_gcd(g1, beta);
        let (e1, e2, e3) = (w * x, w * y, z);
        let a3 = (a1 / m) * (a2 / m);
        let numer = e1 * a1 * b2 + e2 * a2 * b1 + e3 * (b1 * b2 + d) / 2;
        assert_eq!(numer % m, 0, "composition numerator must be divisible by m");
        let b3 = (numer / m).rem_euclid(2 * a3);
        let rem = (b3 * b3 - d) % (4 * a3);
        assert_eq!(
            rem, 0,
            "composed middle coefficient must satisfy B² ≡ D (mod 4A)"
        );
        let c3 = (b3 * b3 - d) / (4 * a3);
        Ok(QuadForm {
            a: a3 as i64,
            b: b3 as i64,
            c: c3 as i64,
        }
        .reduce())
    }
}

/// The principal (identity) form of discriminant `d`.
pub fn principal_form(d: i64) -> Result<QuadForm> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::domain(format!(
            "not a negative discriminant (need d < 0 and d ≡ 0, 1 mod 4): {d}"
        )));
    }
    if d % 4 == 0 {
        QuadForm::new(1, 0, -d / 4)
    } else {
        QuadForm::new(1, 1, (1 - d) / 4)
    }
}

/// Is `d` a fundamental discriminant (of an imaginary quadratic field)?
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    if d.rem_euclid(4) == 1 {
        return squarefree(d.unsigned_abs());
    }
    if d % 4 == 0 {
        let m = d / 4;
        return m.rem_euclid(4) >= 2 && squarefree(m.unsigned_abs());
    }
    false
}

fn squarefree(mut n: u64) -> bool {
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i * i) {
            return false;
        }
        if n.is_multiple_of(i) {
            n /= i;
        }
        i += 1;
    }
    true
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    crate::abelian::gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Extended Euclid: returns `(g, x, y)` with `g = gcd(a, b) ≥ 0` and
/// `x·a + y·b = g`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - (a.div_euclid(b)) * y)
}

/// Kronecker symbol `(d | p)` at a prime `p`.
fn kronecker_at_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            return 0;
        }
        return if matches!(d.rem_euclid(8), 1 | 7) {
            1
        } else {
            -1
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Square root mod an odd prime by Tonelli–Shanks; `None` for non-residues.
fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 {
        return Some(a);
    }
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // p ≡ 1 mod 4: full Tonelli–Shanks. Write p − 1 = q·2^s with q odd.
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = crate::zmstar::mul_mod(t2, t2, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = crate::zmstar::mul_mod(b, b, p);
        }
        m = i;
        c = crate::zmstar::mul_mod(b, b, p);
        t = crate::zmstar::mul_mod(t, c, p);
        r = crate::zmstar::mul_mod(r, b, p);
    }
    Some(r)
}

/// Smallest nonnegative `b` with `b² ≡ d (mod 4p)`, or `None` when `p` is
/// inert (`kronecker(d, p) = −1`).
fn canonical_prime_form_b(d: i64, p: u64) -> Option<u64> {
    if p == 2 {
        // d mod 8 determines everything: 1 → split with b = 1, 5 → inert,
        // 0 → ramified with b = 0, 4 → ramified with b = 2.
        return match d.rem_euclid(8) {
            1 => Some(1),
            5 => None,
            0 => Some(0),
            4 => Some(2),
            _ => unreachable!("discriminants are 0 or 1 mod 4"),
        };
    }
    if kronecker_at_prime(d, p) == -1 {
        return None;
    }
    let r = sqrt_mod_prime(d.rem_euclid(p as i64) as u64, p)
        .expect("split or ramified prime must admit a square root");
    // Solutions mod 2p are the parity-corrected lifts of ±r mod p; adding p
    // flips parity because p is odd. `b` must share the parity of d so that
    // b² ≡ d also holds mod 4.
    let want_odd = d.rem_euclid(2) == 1;
    let mut best: Option<u64> = None;
    for t in [r, p - r] {
        let b = if (t % 2 == 1) == want_odd { t } else { t + p };
        let fits = |candidate: u64| {
            let bb = u128::from(candidate) * u128::from(candidate);
            let dd = i128::from(d).rem_euclid(4 * i128::from(p)) as u128;
            bb % (4 * u128::from(p)) == dd
        };
        debug_assert!(fits(b));
        best = Some(best.map_or(b, |cur| cur.min(b)));
    }
    best
}

/// The form class group of the order of discriminant `fundamental_disc ·
/// conductor²`, with an explicit dictionary between reduced forms and
/// invariant-coordinate group elements.
#[derive(Debug, Clone)]
pub struct FormClassGroup {
    fundamental_disc: i64,
    conductor: u64,
    discriminant: i64,
    forms: Vec<QuadForm>,
    group: FiniteAbelianGroup,
    element_by_form: HashMap<QuadForm, GroupElement>,
    form_by_element: HashMap<GroupElement, QuadForm>,
}

/// [`FormClassGroup::with_limit`] at the default `|D|` ceiling.
pub fn class_group(fundamental_disc: i64, conductor: u64) -> Result<FormClassGroup> {
    FormClassGroup::with_limit(fundamental_disc, conductor, DEFAULT_DISC_LIMIT)
}

impl FormClassGroup {
    /// Builds the class group of the order `Z + conductor·O_K` inside the
    /// field of discriminant `fundamental_disc`, refusing `|D|` beyond
    /// `limit`.
    pub fn with_limit(fundamental_disc: i64, conductor: u64, limit: u64) -> Result<Self> {
        if !is_fundamental(fundamental_disc) {
            return Err(Error::NotFundamental(fundamental_disc));
        }
        if conductor == 0 {
            return Err(Error::domain("conductor must be >= 1"));
        }
        let d = i128::from(fundamental_disc) * i128::from(conductor) * i128::from(conductor);
        if d.unsigned_abs() > u128::from(limit) {
            return Err(Error::LimitExceeded {
                what: "form enumeration",
                required: d.unsigned_abs().min(u128::from(u64::MAX)) as u64,
                limit,
            });
        }
        let d = d as i64;
        let forms = reduced_forms(d);
        let (group, dict) = group_structure(d, &forms)?;
        let mut element_by_form = HashMap::with_capacity(forms.len());
        let mut form_by_element = HashMap::with_capacity(forms.len());
        for (form, element) in dict {
            form_by_element.insert(element.clone(), form);
            element_by_form.insert(form, element);
        }
        assert_eq!(
            element_by_form.len() as u64,
            group.order(),
            "form/element dictionary must be a bijection"
        );
        assert_eq!(element_by_form.len(), forms.len());
        Ok(FormClassGroup {
            fundamental_disc,
            conductor,
            discriminant: d,
            forms,
            group,
            element_by_form,
            form_by_element,
        })
    }

    pub fn fundamental_disc(&self) -> i64 {
        self.fundamental_disc
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The order discriminant `fundamental_disc · conductor²`.
    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// The class number `h(D)`.
    pub fn class_number(&self) -> u64 {
        self.forms.len() as u64
    }

    /// All primitive reduced forms of the discriminant, sorted.
    pub fn forms(&self) -> &[QuadForm] {
        &self.forms
    }

    /// The abstract group in invariant-factor coordinates.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// The identity class.
    pub fn principal(&self) -> QuadForm {
        principal_form(self.discriminant).expect("constructed discriminant is valid")
    }

    /// Invariant coordinates of a reduced form class.
    pub fn element_of(&self, form: &QuadForm) -> Result<&GroupElement> {
        self.element_by_form
            .get(&form.reduce())
            .ok_or(Error::ParentMismatch)
    }

    /// The reduced form sitting at the given invariant coordinates.
    pub fn form_of(&self, element: &GroupElement) -> Result<&QuadForm> {
        self.form_by_element
            .get(element)
            .ok_or(Error::ParentMismatch)
    }

    /// The class of ideals of norm `p`: the reduced form `(p, b, (b²−D)/4p)`
    /// with the smallest nonnegative valid `b`, or `None` when `p` is inert.
    /// `p` must be a prime not dividing the conductor.
    pub fn prime_form(&self, p: u64) -> Result<Option<QuadForm>> {
        if p < 2 || !trial_is_prime(p) {
            return Err(Error::domain(format!("prime_form needs a prime, got {p}")));
        }
        if self.conductor.is_multiple_of(p) {
            return Err(Error::domain(format!(
                "prime {p} divides the conductor {}",
                self.conductor
            )));
        }
        let Some(b) = canonical_prime_form_b(self.discriminant, p) else {
            return Ok(None);
        };
        let b = b as i64;
        let c =
            (i128::from(b) * i128::from(b) - i128::from(self.discriminant)) / (4 * i128::from(p));
        let form = QuadForm::new(p as i64, b, c as i64)?;
        debug_assert!(form.is_primitive());
        Ok(Some(form.reduce()))
    }
}

/// All primitive reduced forms of discriminant `d`, sorted by `(a, b, c)`.
fn reduced_forms(d: i64) -> Vec<QuadForm> {
    debug_assert!(d < 0 && d.rem_euclid(4) <= 1);
    let mut out = Vec::new();
    let amax = ((d.unsigned_abs() / 3) as f64).sqrt() as i64 + 1;
    for a in 1..=amax {
        for b in (-a + 1)..=a {
            let num = i128::from(b) * i128::from(b) - i128::from(d);
            if num % (4 * i128::from(a)) != 0 {
                continue;
            }
            let c = (num / (4 * i128::from(a))) as i64;
            if c < a {
                continue;
            }
            if (b.abs() == a || a == c) && b < 0 {
                continue;
            }
            if gcd_i64(gcd_i64(a, b), c) != 1 {
                continue;
            }
            out.push(QuadForm { a, b, c });
        }
    }
    out.sort();
    out
}

/// Recovers the invariant-factor structure of the form class group by a
/// generator-adjoining closure: each new generator `g` contributes the
/// relation `g^s = (known element)` where `s` is its relative order, and the
/// resulting triangular relation matrix generates the full relation lattice.
fn group_structure(
    d: i64,
    forms: &[QuadForm],
) -> Result<(FiniteAbelianGroup, Vec<(QuadForm, GroupElement)>)> {
    let principal = principal_form(d)?;
    let mut exps: HashMap<QuadForm, Vec<i128>> = HashMap::new();
    exps.insert(principal, Vec::new());
    let mut relations: Vec<Vec<i128>> = Vec::new();
    for &f in forms {
        if exps.contains_key(&f) {
            continue;
        }
        for v in exps.values_mut() {
            v.push(0);
        }
        for r in relations.iter_mut() {
            r.push(0);
        }
        let k = exps.values().next().map_or(1, Vec::len);
        let base: Vec<(QuadForm, Vec<i128>)> = exps.iter().map(|(g, v)| (*g, v.clone())).collect();
        let mut power = f;
        let mut s: i128 = 1;
        while !exps.contains_key(&power) {
            for (g, v) in &base {
                let product = g.compose(&power)?;
                let mut pv = v.clone();
                pv[k - 1] = s;
                let prior = exps.insert(product, pv);
                debug_assert!(prior.is_none(), "coset elements must be new");
            }
            power = power.compose(&f)?;
            s += 1;
        }
        let mut rel = exps[&power].clone();
        rel[k - 1] -= s;
        relations.push(rel);
    }
    debug_assert_eq!(exps.len(), forms.len());
    let decomposition = FiniteAbelianGroup::from_relations(relations)?;
    let mut dict = Vec::with_capacity(forms.len());
    for (form, v) in exps {
        let coords: Vec<i128> = decomposition
            .to_invariant
            .first()
            .map(|row| row.len())
            .map_or_else(Vec::new, |width| {
                (0..width)
                    .map(|j| {
                        v.iter()
                            .zip(&decomposition.to_invariant)
                            .map(|(x, row)| x * row[j])
                            .sum()
                    })
                    .collect()
            });
        dict.push((form, decomposition.group.element_signed(&coords)?));
    }
    Ok((decomposition.group.clone(), dict))
}

fn trial_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}
