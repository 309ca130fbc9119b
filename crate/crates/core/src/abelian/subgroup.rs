//! Subgroups as canonical lattice bases, plus exhaustive enumeration.
//!
//! A subgroup `H ≤ ⊕ Z/d_i` is the image of an integer lattice
//! `L ⊆ Z^k` with `diag(d)·Z^k ⊆ L`; we store the Hermite basis of `L`,
//! which is a canonical form — two subgroups are equal iff their bases are.
//! The lattice index `[Z^k : L]` equals the group index `[G : H]`.

use std::collections::{HashSet, VecDeque};

use super::{diagonal_product, hermite_normal_form, in_lattice, FiniteAbelianGroup, GroupElement};
use crate::{Error, Result};

/// A subgroup of a [`FiniteAbelianGroup`], held as the canonical Hermite
/// basis of its preimage lattice in Z^k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent_factors: Vec<u64>,
    basis: Vec<Vec<i128>>,
    order: u64,
    index: u64,
}

impl Subgroup {
    /// The subgroup generated by the given elements.
    pub fn generated(group: &FiniteAbelianGroup, generators: &[GroupElement]) -> Result<Self> {
        let rows = generators
            .iter()
            .map(|g| {
                if g.exponents().len() != group.rank() {
                    return Err(Error::ParentMismatch);
                }
                Ok(g.exponents().iter().map(|&e| i128::from(e)).collect())
            })
            .collect::<Result<Vec<Vec<i128>>>>()?;
        Ok(Self::from_rows(group, rows))
    }

    /// The trivial subgroup `{0}`.
    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::from_rows(group, Vec::new())
    }

    /// The whole group as a subgroup of itself.
    pub fn full(group: &FiniteAbelianGroup) -> Self {
        let k = group.rank();
        let rows = (0..k)
            .map(|i| (0..k).map(|j| i128::from(i == j)).collect())
            .collect();
        Self::from_rows(group, rows)
    }

    /// Build from arbitrary lattice rows (the `diag(d)` relations are always
    /// adjoined, so callers may pass raw generator exponents).
    pub(crate) fn from_rows(group: &FiniteAbelianGroup, mut rows: Vec<Vec<i128>>) -> Self {
        let k = group.rank();
        for (i, &d) in group.invariant_factors().iter().enumerate() {
            let mut rel = vec![0i128; k];
            rel[i] = i128::from(d);
            rows.push(rel);
        }
        let basis = hermite_normal_form(rows, k);
        let index = diagonal_product(&basis) as u64;
        debug_assert_eq!(group.order() % index, 0);
        Subgroup {
            parent_factors: group.invariant_factors().to_vec(),
            basis,
            order: group.order() / index,
            index,
        }
    }

    /// The subgroup `⟨self, g⟩`.
    pub fn with_generator(&self, group: &FiniteAbelianGroup, g: &GroupElement) -> Result<Self> {
        self.check_parent(group)?;
        if g.exponents().len() != group.rank() {
            return Err(Error::ParentMismatch);
        }
        let mut rows = self.basis.clone();
        rows.push(g.exponents().iter().map(|&e| i128::from(e)).collect());
        Ok(Self::from_rows(group, rows))
    }

    /// The join `⟨self ∪ other⟩`.
    pub fn join(&self, group: &FiniteAbelianGroup, other: &Subgroup) -> Result<Self> {
        self.check_parent(group)?;
        other.check_parent(group)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(Self::from_rows(group, rows))
    }

    /// Membership test (exact lattice back-substitution).
    pub fn contains(&self, group: &FiniteAbelianGroup, g: &GroupElement) -> Result<bool> {
        self.check_parent(group)?;
        if g.exponents().len() != group.rank() {
            return Err(Error::ParentMismatch);
        }
        let target: Vec<i128> = g.exponents().iter().map(|&e| i128::from(e)).collect();
        Ok(in_lattice(&self.basis, &target))
    }

    /// Subgroup order.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Index `[G : H]`.
    pub fn index(&self) -> u64 {
        self.index
    }

    /// Is this the trivial subgroup?
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// The canonical Hermite basis rows (entries are reduced, so they fit
    /// comfortably in `u64`). Row `i` has its pivot at column `i`.
    pub fn basis_rows(&self) -> Vec<Vec<u64>> {
        self.basis
            .iter()
            .map(|row| row.iter().map(|&e| e as u64).collect())
            .collect()
    }

    /// All elements, sorted. Materialises the subgroup; intended for small
    /// orders.
    pub fn elements(&self, group: &FiniteAbelianGroup) -> Result<Vec<GroupElement>> {
        self.check_parent(group)?;
        let gens: Vec<GroupElement> = self
            .basis
            .iter()
            .map(|row| group.element_signed(row))
            .collect::<Result<_>>()?;
        let mut seen: HashSet<GroupElement> = HashSet::with_capacity(self.order as usize);
        let mut queue = VecDeque::new();
        seen.insert(group.identity());
        queue.push_back(group.identity());
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = group.add(&x, g)?;
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(seen.len() as u64, self.order);
        let mut out: Vec<GroupElement> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    fn check_parent(&self, group: &FiniteAbelianGroup) -> Result<()> {
        if self.parent_factors != group.invariant_factors() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical scan order: ascending index (whole group first), then the
/// flattened basis lexicographically.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index
            .cmp(&other.index)
            .then_with(|| self.basis.cmp(&other.basis))
            .then_with(|| self.parent_factors.cmp(&other.parent_factors))
    }
}

/// Enumerate every subgroup of `group`, sorted canonically.
///
/// Works one Sylow subgroup at a time (every subgroup of a finite abelian
/// group is the direct sum of its Sylow parts), so the breadth-first closure
/// only ever walks p-groups, then stitches the parts together. Fails with
/// [`Error::LimitExceeded`] if the total count would exceed `cap`.
pub fn enumerate_subgroups(group: &FiniteAbelianGroup, cap: u64) -> Result<Vec<Subgroup>> {
    if group.order() == 1 {
        return Ok(vec![Subgroup::trivial(group)]);
    }
    let primes = prime_divisors(group.order());
    // Per prime: the subgroups of the abstract Sylow p-group, each mapped to
    // lattice rows in the parent's coordinates.
    let mut per_prime: Vec<Vec<Vec<Vec<i128>>>> = Vec::new();
    let mut total: u128 = 1;
    for &p in &primes {
        // d_1 | d_2 | … makes the p-adic valuations nondecreasing, so the
        // p-power orders below already form a divisibility chain.
        let mut positions = Vec::new();
        let mut p_orders = Vec::new();
        let mut multipliers = Vec::new();
        for (i, &d) in group.invariant_factors().iter().enumerate() {
            let mut q = 1u64;
            let mut rest = d;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            if q > 1 {
                positions.push(i);
                p_orders.push(q);
                multipliers.push(d / q);
            }
        }
        let sylow = FiniteAbelianGroup::new(p_orders)?;
        let subs = subgroups_by_closure(&sylow, cap)?;
        total = total.saturating_mul(subs.len() as u128);
        if total > u128::from(cap) {
            return Err(Error::LimitExceeded {
                what: "subgroup enumeration",
                required: total.min(u128::from(u64::MAX)) as u64,
                limit: cap,
            });
        }
        let mapped: Vec<Vec<Vec<i128>>> = subs
            .iter()
            .map(|s| {
                s.basis
                    .iter()
                    .map(|row| {
                        let mut g_row = vec![0i128; group.rank()];
                        for (t, &c) in row.iter().enumerate() {
                            g_row[positions[t]] = c * i128::from(multipliers[t]);
                        }
                        g_row
                    })
                    .collect()
            })
            .collect();
        per_prime.push(mapped);
    }

    // Cartesian product across primes via an odometer.
    let mut out = Vec::with_capacity(total as usize);
    let mut pick = vec![0usize; per_prime.len()];
    loop {
        let rows: Vec<Vec<i128>> = pick
            .iter()
            .zip(&per_prime)
            .flat_map(|(&i, subs)| subs[i].iter().cloned())
            .collect();
        out.push(Subgroup::from_rows(group, rows));
        let mut axis = per_prime.len();
        loop {
            if axis == 0 {
                out.sort();
                debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
                return Ok(out);
            }
            axis -= 1;
            pick[axis] += 1;
            if pick[axis] < per_prime[axis].len() {
                break;
            }
            pick[axis] = 0;
        }
    }
}

/// Breadth-first closure enumeration: start from the trivial subgroup and
/// repeatedly adjoin single elements. Every subgroup is a join of cyclic
/// ones, so this reaches all of them.
fn subgroups_by_closure(group: &FiniteAbelianGroup, cap: u64) -> Result<Vec<Subgroup>> {
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut seen: HashSet<Vec<Vec<i128>>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    let trivial = Subgroup::trivial(group);
    seen.insert(trivial.basis.clone());
    queue.push_back(trivial.clone());
    out.push(trivial);
    while let Some(s) = queue.pop_front() {
        for g in &elements {
            if s.contains(group, g)? {
                continue;
            }
            let bigger = s.with_generator(group, g)?;
            if seen.insert(bigger.basis.clone()) {
                if out.len() as u64 >= cap {
                    return Err(Error::LimitExceeded {
                        what: "subgroup enumeration",
                        required: out.len() as u64 + 1,
                        limit: cap,
                    });
                }
                out.push(bigger.clone());
                queue.push_back(bigger);
            }
        }
    }
    Ok(out)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(factors: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(factors.to_vec()).unwrap()
    }

    /// Independent oracle: test every subset of the right cardinality for
    /// closure under the group operations. Only viable for tiny groups.
    fn count_subgroups_naive(g: &FiniteAbelianGroup) -> usize {
        let elems: Vec<GroupElement> = g.elements().collect();
        let n = elems.len();
        assert!(n <= 16, "naive oracle only for tiny groups");
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            // Must contain the identity (index 0 in enumeration order) and
            // have cardinality dividing the group order.
            if mask & 1 == 0 || !g.order().is_multiple_of(u64::from(mask.count_ones())) {
                continue;
            }
            let subset: Vec<&GroupElement> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| &elems[i])
                .collect();
            let set: HashSet<&GroupElement> = subset.iter().copied().collect();
            let closed = subset
                .iter()
                .all(|a| subset.iter().all(|b| set.contains(&g.add(a, b).unwrap())));
            if closed {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn subgroup_counts_match_naive_subset_oracle() {
        for factors in [
            vec![2, 4],
            vec![2, 2, 2],
            vec![12],
            vec![2, 6],
            vec![16],
            vec![3, 3],
        ] {
            let g = group(&factors);
            let fast = enumerate_subgroups(&g, 10_000).unwrap().len();
            let naive = count_subgroups_naive(&g);
            assert_eq!(fast, naive, "factors {factors:?}");
        }
    }

    #[test]
    fn subgroup_counts_for_unit_group_shapes() {
        // Invariant-factor shapes of various multiplicative groups, with
        // subgroup counts confirmed by an independent computer-algebra run.
        let cases: [(&[u64], usize); 10] = [
            (&[6], 4),            // modulus 7
            (&[2, 2], 5),         // modulus 8
            (&[2, 4], 8),         // moduli 15, 16
            (&[2, 2, 2], 16),     // modulus 24
            (&[2, 12], 16),       // modulus 35
            (&[2, 6], 10),        // modulus 36
            (&[2, 2, 4], 27),     // modulus 40
            (&[2, 2, 2, 4], 118), // modulus 120
            (&[2, 2, 4, 4], 249), // modulus 240
            (&[2, 4, 16], 108),   // modulus 255
        ];
        for (factors, expected) in cases {
            let g = group(factors);
            let subs = enumerate_subgroups(&g, 10_000).unwrap();
            assert_eq!(subs.len(), expected, "factors {factors:?}");
            // Lagrange on every entry, and canonical ordering.
            for s in &subs {
                assert_eq!(s.order() * s.index(), g.order());
                assert_eq!(s.elements(&g).unwrap().len() as u64, s.order());
            }
            assert!(subs.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(subs.first().unwrap().index(), 1);
            assert!(subs.last().unwrap().is_trivial());
        }
    }

    #[test]
    fn cyclic_subgroup_count_is_divisor_count() {
        let g = group(&[36]);
        let subs = enumerate_subgroups(&g, 1_000).unwrap();
        assert_eq!(subs.len(), 9); // divisors of 36
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let g = group(&[2, 2, 4]);
        let err = enumerate_subgroups(&g, 10).unwrap_err();
        assert!(matches!(
            err,
            Error::LimitExceeded {
                what: "subgroup enumeration",
                ..
            }
        ));
    }

    #[test]
    fn membership_and_join() {
        let g = group(&[2, 4]);
        let a = g.element(&[1, 0]).unwrap();
        let b = g.element(&[0, 2]).unwrap();
        let h = Subgroup::generated(&g, std::slice::from_ref(&a)).unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.contains(&g, &a).unwrap());
        assert!(!h.contains(&g, &b).unwrap());
        let j = h.with_generator(&g, &b).unwrap();
        assert_eq!(j.order(), 4);
        assert!(j.contains(&g, &g.add(&a, &b).unwrap()).unwrap());
        let full = Subgroup::full(&g);
        assert_eq!(j.join(&g, &full).unwrap(), full);
        assert_eq!(j.join(&g, &Subgroup::trivial(&g)).unwrap(), j);
    }

    #[test]
    fn canonical_basis_is_generator_order_independent() {
        let g = group(&[2, 2, 4]);
        let x = g.element(&[1, 0, 2]).unwrap();
        let y = g.element(&[0, 1, 1]).unwrap();
        let h1 = Subgroup::generated(&g, &[x.clone(), y.clone()]).unwrap();
        let h2 = Subgroup::generated(&g, &[y.clone(), x.clone()]).unwrap();
        let xy = g.add(&x, &y).unwrap();
        let h3 = Subgroup::generated(&g, &[xy, x]).unwrap();
        assert_eq!(h1, h2);
        assert_eq!(h1, h3);
        assert_eq!(h1.basis_rows(), h2.basis_rows());
    }

    #[test]
    fn elements_of_generated_subgroup_match_scalar_multiples() {
        let g = group(&[2, 12]);
        let a = g.element(&[1, 3]).unwrap();
        let h = Subgroup::generated(&g, std::slice::from_ref(&a)).unwrap();
        let ord = g.element_order(&a).unwrap();
        assert_eq!(h.order(), ord);
        let mut expect: Vec<GroupElement> =
            (0..ord).map(|n| g.mul_scalar(&a, n).unwrap()).collect();
        expect.sort();
        assert_eq!(h.elements(&g).unwrap(), expect);
    }

    #[test]
    fn parent_mismatch_is_detected() {
        let g = group(&[2, 4]);
        let other = group(&[2, 8]);
        let h = Subgroup::full(&g);
        assert!(matches!(
            h.contains(&other, &other.identity()),
            Err(Error::ParentMismatch)
        ));
        assert!(matches!(
            h.join(&other, &Subgroup::full(&other)),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn trivial_group_has_single_subgroup() {
        let g = FiniteAbelianGroup::trivial();
        let subs = enumerate_subgroups(&g, 10).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order(), 1);
        assert_eq!(subs[0].index(), 1);
        assert!(subs[0].contains(&g, &g.identity()).unwrap());
    }
}
