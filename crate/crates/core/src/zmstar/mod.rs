//! The multiplicative group (Z/mZ)^×: explicit structure, generators, and
//! discrete logarithms onto the abstract invariant-factor presentation.
//!
//! Construction is the classical one: factor `m`, take the known cyclic
//! presentation of each prime-power component ((Z/2^k)^× = ⟨−1⟩ × ⟨5⟩ for
//! k ≥ 3, primitive roots for odd prime powers), lift the component
//! generators through the Chinese remainder theorem, and regroup the cyclic
//! orders into a divisibility chain. Discrete logarithms are a full lookup
//! table, which is the right tool at the moduli sizes this crate scans.

mod verify;

pub use verify::{scan, verify_subgroup, ScanConfig, ZmVerificationResult};

use crate::abelian::{FiniteAbelianGroup, GroupElement};
use crate::{Error, Result};

/// Default ceiling on the modulus; the dlog table is Θ(m).
pub const DEFAULT_MODULUS_LIMIT: u64 = 1_000_000;

/// (Z/mZ)^× with its invariant-factor structure, canonical generator
/// residues, and a full discrete-logarithm table.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    modulus: u64,
    group: FiniteAbelianGroup,
    generators: Vec<u64>,
    /// `dlog[r]` = flat mixed-radix index of the exponent vector of `r`,
    /// or `u32::MAX` when `gcd(r, m) > 1`.
    dlog: Vec<u32>,
    /// `strides[j] = d_{j+1}·…·d_k`, so flat = Σ e_j·strides[j].
    strides: Vec<u64>,
}

impl UnitGroup {
    /// Build the unit group mod `m` (2 ≤ m ≤ [`DEFAULT_MODULUS_LIMIT`]).
    pub fn new(modulus: u64) -> Result<Self> {
        Self::with_limit(modulus, DEFAULT_MODULUS_LIMIT)
    }

    /// Build with an explicit modulus ceiling.
    pub fn with_limit(modulus: u64, limit: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::domain(format!(
                "unit group needs modulus ≥ 2, got {modulus}"
            )));
        }
        if modulus > limit {
            return Err(Error::LimitExceeded {
                what: "unit group modulus",
                required: modulus,
                limit,
            });
        }

        // Cyclic presentation of each prime-power component, with the
        // component generators lifted to residues mod m.
        let mut cyclic_orders: Vec<u64> = Vec::new();
        let mut residues: Vec<u64> = Vec::new();
        for (p, e) in factorize(modulus) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => {
                        cyclic_orders.push(2);
                        residues.push(crt_lift(3, pe, modulus));
                    }
                    _ => {
                        cyclic_orders.push(2);
                        residues.push(crt_lift(pe - 1, pe, modulus));
                        cyclic_orders.push(pe / 4);
                        residues.push(crt_lift(5, pe, modulus));
                    }
                }
            } else {
                cyclic_orders.push(pe / p * (p - 1));
                residues.push(crt_lift(primitive_root_mod_prime_power(p, e), pe, modulus));
            }
        }

        let dec = FiniteAbelianGroup::from_cyclic_orders(&cyclic_orders)?;
        let group = dec.group;
        let phi: u64 = euler_phi(modulus);
        assert_eq!(group.order(), phi, "unit group order must equal φ(m)");
        if phi > u64::from(u32::MAX) {
            return Err(Error::LimitExceeded {
                what: "dlog table",
                required: phi,
                limit: u64::from(u32::MAX),
            });
        }

        // Generators of the invariant factors, as products of the component
        // generators (exponents only matter modulo the component orders).
        let d = group.invariant_factors().to_vec();
        let generators: Vec<u64> = (0..d.len())
            .map(|j| {
                let mut acc = 1u64;
                for (t, &r) in residues.iter().enumerate() {
                    let exp =
                        dec.from_invariant[j][t].rem_euclid(i128::from(cyclic_orders[t])) as u64;
                    acc = mul_mod(acc, pow_mod(r, exp, modulus), modulus);
                }
                acc
            })
            .collect();

        let k = d.len();
        let mut strides = vec![1u64; k];
        for j in (0..k.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * d[j + 1];
        }

        // Fill the dlog table by walking exponent vectors in mixed-radix
        // order; the flat index then advances by exactly one per step.
        // `partial[t]` is the residue of g_0^{e_0}···g_{t−1}^{e_{t−1}}.
        let mut dlog = vec![u32::MAX; modulus as usize];
        let mut exps = vec![0u64; k];
        let mut partial = vec![1u64; k + 1];
        dlog[1] = 0;
        for flat in 1..phi {
            let mut j = k;
            loop {
                j -= 1;
                exps[j] += 1;
                if exps[j] < d[j] {
                    break;
                }
                exps[j] = 0;
            }
            partial[j + 1] = mul_mod(partial[j + 1], generators[j], modulus);
            for t in j + 1..k {
                partial[t + 1] = partial[j + 1];
            }
            let r = partial[k] as usize;
            dlog[r] = flat as u32;
        }
        let covered = dlog.iter().filter(|&&v| v != u32::MAX).count() as u64;
        assert_eq!(
            covered, phi,
            "dlog walk must hit every coprime residue exactly once"
        );

        Ok(UnitGroup {
            modulus,
            group,
            generators,
            dlog,
            strides,
        })
    }

    /// The modulus m.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The abstract group in invariant-factor form.
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// One generator residue per invariant factor.
    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// φ(m) = the group order.
    pub fn phi(&self) -> u64 {
        self.group.order()
    }

    /// Discrete logarithm of `x` (any representative; reduced mod m).
    /// `None` when `gcd(x, m) > 1`.
    pub fn dlog(&self, x: u64) -> Option<GroupElement> {
        let mut flat = u64::from(self.dlog[(x % self.modulus) as usize]);
        if flat == u64::from(u32::MAX) {
            return None;
        }
        let exps: Vec<u64> = self
            .strides
            .iter()
            .map(|&s| {
                let e = flat / s;
                flat %= s;
                e
            })
            .collect();
        Some(
            self.group
                .element(&exps)
                .expect("decoded vector has rank length"),
        )
    }

    /// The residue representing an abstract element: `∏ g_j^{e_j} mod m`.
    pub fn residue(&self, e: &GroupElement) -> Result<u64> {
        if e.exponents().len() != self.group.rank() {
            return Err(Error::ParentMismatch);
        }
        let mut acc = 1u64;
        for (&g, &exp) in self.generators.iter().zip(e.exponents()) {
            acc = mul_mod(acc, pow_mod(g, exp, self.modulus), self.modulus);
        }
        Ok(acc)
    }
}

/// Number of distinct prime factors ω(m).
pub fn omega(m: u64) -> u64 {
    factorize(m).len() as u64
}

/// Euler's totient, from the factorization.
pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .map(|(p, e)| p.pow(e) / p * (p - 1))
        .product()
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Smallest positive primitive root mod p^e (p an odd prime).
///
/// Uses the smallest primitive root g mod p; when g^{p−1} ≡ 1 (mod p²),
/// g + p is primitive mod every power of p, otherwise g already is.
fn primitive_root_mod_prime_power(p: u64, e: u32) -> u64 {
    let g = smallest_primitive_root(p);
    if e == 1 {
        g
    } else if pow_mod(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let prime_divisors: Vec<u64> = factorize(p - 1).into_iter().map(|(q, _)| q).collect();
    (2..p)
        .find(|&g| {
            prime_divisors
                .iter()
                .all(|&q| pow_mod(g, (p - 1) / q, p) != 1)
        })
        .expect("every prime has a primitive root")
}

/// The residue mod m that is `r` mod `pe` and 1 mod `m/pe`
/// (requires gcd(pe, m/pe) = 1, which holds for prime-power components).
fn crt_lift(r: u64, pe: u64, m: u64) -> u64 {
    let q = m / pe;
    if q == 1 {
        return r % m;
    }
    // x = 1 + q·t with q·t ≡ r − 1 (mod pe).
    let t = mul_mod((r + pe - 1) % pe, inverse_mod(q % pe, pe), pe);
    (1 + mul_mod(q, t, m)) % m
}

fn inverse_mod(a: u64, m: u64) -> u64 {
    // Extended Euclid; gcd(a, m) = 1 by construction.
    let (mut old_r, mut r) = (i128::from(a), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(i128::from(m)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    #[test]
    fn structures_match_classical_table() {
        // Invariant factors confirmed against an independent
        // computer-algebra computation of (Z/mZ)^×.
        let cases: [(u64, &[u64]); 19] = [
            (2, &[]),
            (3, &[2]),
            (4, &[2]),
            (5, &[4]),
            (7, &[6]),
            (8, &[2, 2]),
            (15, &[2, 4]),
            (16, &[2, 4]),
            (24, &[2, 2, 2]),
            (35, &[2, 12]),
            (36, &[2, 6]),
            (40, &[2, 2, 4]),
            (60, &[2, 2, 4]),
            (72, &[2, 2, 6]),
            (120, &[2, 2, 2, 4]),
            (240, &[2, 2, 4, 4]),
            (255, &[2, 4, 16]),
            (720, &[2, 2, 4, 12]),
            (840, &[2, 2, 2, 2, 12]),
        ];
        for (m, factors) in cases {
            let u = UnitGroup::new(m).unwrap();
            assert_eq!(u.group().invariant_factors(), factors, "m = {m}");
            assert_eq!(u.phi(), euler_phi(m), "m = {m}");
        }
    }

    #[test]
    fn generator_orders_equal_invariant_factors() {
        for m in [7, 8, 15, 35, 36, 40, 240, 255, 720] {
            let u = UnitGroup::new(m).unwrap();
            let d = u.group().invariant_factors();
            for (j, &g) in u.generators().iter().enumerate() {
                assert_eq!(gcd(g, m), 1);
                // Multiplicative order of g mod m.
                let mut ord = 1u64;
                let mut x = g;
                while x != 1 {
                    x = mul_mod(x, g, m);
                    ord += 1;
                }
                assert_eq!(ord, d[j], "m = {m}, generator {j}");
            }
        }
    }

    #[test]
    fn smallest_primitive_roots() {
        assert_eq!(smallest_primitive_root(3), 2);
        assert_eq!(smallest_primitive_root(7), 3);
        assert_eq!(smallest_primitive_root(11), 2);
        assert_eq!(smallest_primitive_root(191), 19);
        assert_eq!(smallest_primitive_root(409), 21);
    }

    #[test]
    fn prime_power_lift_handles_wieferich_style_failures() {
        // 5 is the smallest primitive root mod 40487, but
        // 5^{p−1} ≡ 1 (mod p²), so the lift must move to g + p.
        let p = 40487u64;
        assert_eq!(smallest_primitive_root(p), 5);
        assert_eq!(pow_mod(5, p - 1, p * p), 1);
        let g = primitive_root_mod_prime_power(p, 2);
        assert_eq!(g, p + 5);
        // The lifted root has full order mod p²: φ(p²) = p(p−1), and g to
        // the power φ/q is ≠ 1 for every prime q | φ (40486 = 2·31·653).
        let phi = p * (p - 1);
        for q in [2, 31, 653, p] {
            assert_ne!(pow_mod(g, phi / q, p * p), 1, "q = {q}");
        }
    }

    #[test]
    fn odd_prime_power_structure_is_cyclic() {
        // 487² stays within the modulus limit; its unit group must be
        // cyclic of order 486·487 with generator the smallest root (3
        // survives the lift: 3^486 ≢ 1 mod 487²).
        let u = UnitGroup::new(487 * 487).unwrap();
        assert_eq!(u.group().invariant_factors(), &[486 * 487]);
        assert_eq!(u.generators(), &[3]);
    }

    #[test]
    fn cyclic_moduli_use_smallest_primitive_root() {
        let u = UnitGroup::new(7).unwrap();
        assert_eq!(u.generators(), &[3]);
        let u = UnitGroup::new(9).unwrap();
        assert_eq!(u.generators(), &[2]);
        let u = UnitGroup::new(4).unwrap();
        assert_eq!(u.generators(), &[3]);
    }

    #[test]
    fn dlog_inverts_residue_everywhere() {
        for m in [2, 3, 8, 15, 36, 97, 120, 720, 841] {
            let u = UnitGroup::new(m).unwrap();
            let mut coprime = 0u64;
            for x in 1..m {
                match u.dlog(x) {
                    Some(e) => {
                        coprime += 1;
                        assert_eq!(u.residue(&e).unwrap(), x, "m = {m}, x = {x}");
                    }
                    None => assert_ne!(gcd(x, m), 1, "m = {m}, x = {x}"),
                }
            }
            assert_eq!(coprime, u.phi(), "m = {m}");
        }
    }

    #[test]
    fn dlog_is_a_homomorphism_on_all_pairs() {
        for m in [15u64, 35, 40, 97] {
            let u = UnitGroup::new(m).unwrap();
            let units: Vec<u64> = (1..m).filter(|&x| gcd(x, m) == 1).collect();
            for &a in &units {
                for &b in &units {
                    let sum = u
                        .group()
                        .add(&u.dlog(a).unwrap(), &u.dlog(b).unwrap())
                        .unwrap();
                    assert_eq!(
                        sum,
                        u.dlog(mul_mod(a, b, m)).unwrap(),
                        "m = {m}: dlog({a}·{b}) ≠ dlog({a}) + dlog({b})"
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_group_for_modulus_two() {
        let u = UnitGroup::new(2).unwrap();
        assert_eq!(u.group().rank(), 0);
        assert_eq!(u.phi(), 1);
        assert_eq!(u.dlog(1).unwrap(), u.group().identity());
        assert_eq!(u.dlog(0), None);
        assert_eq!(u.residue(&u.group().identity()).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(UnitGroup::new(1), Err(Error::Domain(_))));
        assert!(matches!(
            UnitGroup::with_limit(100, 50),
            Err(Error::LimitExceeded {
                what: "unit group modulus",
                ..
            })
        ));
    }

    #[test]
    fn omega_and_phi_basics() {
        assert_eq!(omega(1), 0);
        assert_eq!(omega(2), 1);
        assert_eq!(omega(12), 2);
        assert_eq!(omega(30030), 6);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(euler_phi(11000), 4000);
    }
}
