//! Finite abelian groups in invariant-factor coordinates.
//!
//! A group is stored as its invariant factors `d_1 | d_2 | … | d_k` (each
//! ≥ 2), and an element as its exponent vector in `⊕ Z/d_i`. Subgroups are
//! canonical Hermite bases of their preimage lattices in Z^k, so equality,
//! membership, order and index are all exact integer computations. The
//! character machinery evaluates to exact roots of unity (exponent pairs),
//! never floating point.

mod character;
mod matrix;
mod subgroup;

pub use character::{characters_trivial_on, exact_root_sum, Character, RootOfUnity};
pub use subgroup::{enumerate_subgroups, Subgroup};

pub(crate) use matrix::{diagonal_product, hermite_normal_form, in_lattice};

use crate::{Error, Result};

/// A finite abelian group `⊕_i Z/d_i` with `d_1 | d_2 | … | d_k`, `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
    order: u64,
}

/// An element of a [`FiniteAbelianGroup`], as a reduced exponent vector
/// (`0 ≤ e_i < d_i`). Elements only make sense relative to the group that
/// produced them; all operations live on the group and check lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exponents: Vec<u64>,
}

impl GroupElement {
    /// The reduced exponent vector.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }
}

/// Invariant-factor decomposition of `⊕ Z/c_i` for arbitrary cyclic orders
/// `c_i`, together with both change-of-basis maps (see
/// [`FiniteAbelianGroup::from_cyclic_orders`]).
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The group in invariant-factor form.
    pub group: FiniteAbelianGroup,
    /// `k_old × k_new` matrix: a vector of exponents over the original cyclic
    /// generators maps to invariant coordinates via `x ↦ x·M mod d`.
    pub to_invariant: Vec<Vec<i128>>,
    /// `k_new × k_old` matrix: row `j` expresses the `j`-th invariant-factor
    /// generator as exponents of the original cyclic generators.
    pub from_invariant: Vec<Vec<i128>>,
}

impl FiniteAbelianGroup {
    /// Build a group from its invariant factors. Fails unless each factor is
    /// ≥ 2 and each divides the next.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        for (i, &d) in invariant_factors.iter().enumerate() {
            if d < 2 {
                return Err(Error::domain(format!(
                    "invariant factor {d} at position {i} must be at least 2"
                )));
            }
            if i > 0 && d % invariant_factors[i - 1] != 0 {
                return Err(Error::domain(format!(
                    "invariant factors must form a divisibility chain: {} ∤ {d}",
                    invariant_factors[i - 1]
                )));
            }
            order = order.checked_mul(d).ok_or(Error::LimitExceeded {
                what: "group order",
                required: u64::MAX,
                limit: u64::MAX,
            })?;
        }
        Ok(Self {
            invariant_factors,
            order,
        })
    }

    /// The trivial group (no factors, order 1).
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
            order: 1,
        }
    }

    /// Decompose a direct sum of cyclic groups of arbitrary orders `c_i ≥ 1`
    /// into invariant factors, tracking the coordinate changes in both
    /// directions. Unit factors are dropped.
    pub fn from_cyclic_orders(orders: &[u64]) -> Result<Decomposition> {
        for &c in orders {
            if c == 0 {
                return Err(Error::domain("cyclic orders must be positive"));
            }
        }
        let k = orders.len();
        let rel: Vec<Vec<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { i128::from(orders[i]) } else { 0 })
                    .collect()
            })
            .collect();
        Self::from_relations(rel)
    }

    /// Decompose `Z^k / rowspan(relations)` into invariant factors. The
    /// relation matrix must be square and of full rank (i.e. the quotient is
    /// finite); this is the general form of [`Self::from_cyclic_orders`].
    pub fn from_relations(relations: Vec<Vec<i128>>) -> Result<Decomposition> {
        let k = relations.len();
        if relations.iter().any(|r| r.len() != k) {
            return Err(Error::domain("relation matrix must be square"));
        }
        let (diag, v, v_inv) = matrix::smith_normal_form(relations);
        // Smith form sorts the chain ascending, so unit factors lead.
        let keep = diag.iter().position(|&s| s > 1).unwrap_or(k);
        let factors: Vec<u64> = diag[keep..].iter().map(|&s| s as u64).collect();
        let group = Self::new(factors)?;
        let to_invariant: Vec<Vec<i128>> = v.iter().map(|row| row[keep..].to_vec()).collect();
        let from_invariant: Vec<Vec<i128>> = v_inv[keep..].to_vec();
        Ok(Decomposition {
            group,
            to_invariant,
            from_invariant,
        })
    }

    /// The invariant factors `d_1 | … | d_k`.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of invariant factors (the rank of the presentation).
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Group order `∏ d_i`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The exponent of the group (largest element order): `d_k`, or 1 for the
    /// trivial group.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exponents: vec![0; self.rank()],
        }
    }

    /// Build an element from an exponent vector, reducing each coordinate
    /// modulo its factor. Fails if the length does not match the rank.
    pub fn element(&self, exponents: &[u64]) -> Result<GroupElement> {
        if exponents.len() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(GroupElement {
            exponents: exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&e, &d)| e % d)
                .collect(),
        })
    }

    /// Build an element from signed exponents (reduced with `rem_euclid`).
    pub fn element_signed(&self, exponents: &[i128]) -> Result<GroupElement> {
        if exponents.len() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(GroupElement {
            exponents: exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&e, &d)| e.rem_euclid(i128::from(d)) as u64)
                .collect(),
        })
    }

    /// `a + b`.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&b.exponents)
                .zip(&self.invariant_factors)
                .map(|((&x, &y), &d)| (x + y) % d)
                .collect(),
        })
    }

    /// `-a`.
    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &d)| (d - x) % d)
                .collect(),
        })
    }

    /// `n·a` by coordinate-wise modular multiplication.
    pub fn mul_scalar(&self, a: &GroupElement, n: u64) -> Result<GroupElement> {
        self.check(a)?;
        Ok(GroupElement {
            exponents: a
                .exponents
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&x, &d)| ((u128::from(x) * u128::from(n)) % u128::from(d)) as u64)
                .collect(),
        })
    }

    /// Order of an element: `lcm_i d_i / gcd(d_i, a_i)`.
    pub fn element_order(&self, a: &GroupElement) -> Result<u64> {
        self.check(a)?;
        let mut ord: u64 = 1;
        for (&x, &d) in a.exponents.iter().zip(&self.invariant_factors) {
            let cyc = d / gcd(d, x);
            ord = ord / gcd(ord, cyc) * cyc;
        }
        Ok(ord)
    }

    /// All elements, in mixed-radix order. Intended for groups small enough
    /// to enumerate; the iterator is lazy so callers can cap it.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let k = self.rank();
        let mut current = Some(vec![0u64; k]);
        std::iter::from_fn(move || {
            let exps = current.take()?;
            let mut next = exps.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break; // wrapped around: this was the last element
                }
                i -= 1;
                next[i] += 1;
                if next[i] < self.invariant_factors[i] {
                    current = Some(next);
                    break;
                }
                next[i] = 0;
            }
            Some(GroupElement { exponents: exps })
        })
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if a.exponents.len() != self.rank() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
