//! Characters of finite abelian groups with exact root-of-unity values.
//!
//! A character of `⊕ Z/d_i` is a weight vector `w` acting by
//! `χ_w(x) = exp(2πi · Σ_i w_i x_i / d_i)`. Values are kept as exact
//! fractions of a turn over the common denominator `d_k` (the group
//! exponent), so orthogonality sums can be certified without floating
//! point.

use super::{FiniteAbelianGroup, GroupElement, Subgroup};
use crate::{Error, Result};

/// Refuse to enumerate characters of groups larger than this.
const CHARACTER_ENUM_LIMIT: u64 = 1 << 22;

/// `exp(2πi · numerator / denominator)` with `0 ≤ numerator < denominator`.
/// The denominator is the exponent of the group the value came from, and is
/// deliberately not reduced so that values from one group share it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    pub numerator: u64,
    pub denominator: u64,
}

impl RootOfUnity {
    /// Is this the value 1?
    pub fn is_one(&self) -> bool {
        self.numerator == 0
    }

    /// Floating-point approximation `(cos, sin)` for cross-checks.
    pub fn approx(&self) -> (f64, f64) {
        let angle = std::f64::consts::TAU * self.numerator as f64 / self.denominator as f64;
        (angle.cos(), angle.sin())
    }
}

/// A character, stored as its weight vector against the invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    parent_factors: Vec<u64>,
    weights: Vec<u64>,
}

impl Character {
    /// Build a character from its weight vector (reduced mod the factors).
    pub fn new(group: &FiniteAbelianGroup, weights: &[u64]) -> Result<Self> {
        let w = group.element(weights)?;
        Ok(Character {
            parent_factors: group.invariant_factors().to_vec(),
            weights: w.exponents().to_vec(),
        })
    }

    /// The weight vector.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Evaluate at a group element, exactly.
    pub fn eval(&self, group: &FiniteAbelianGroup, x: &GroupElement) -> Result<RootOfUnity> {
        if self.parent_factors != group.invariant_factors() || x.exponents().len() != group.rank() {
            return Err(Error::ParentMismatch);
        }
        let l = group.exponent();
        let mut num: u128 = 0;
        for ((&w, &e), &d) in self
            .weights
            .iter()
            .zip(x.exponents())
            .zip(group.invariant_factors())
        {
            num += u128::from(w) * u128::from(e) % u128::from(d) * u128::from(l / d);
            num %= u128::from(l);
        }
        Ok(RootOfUnity {
            numerator: num as u64,
            denominator: l,
        })
    }

    /// Order of the character in the dual group.
    pub fn order(&self, group: &FiniteAbelianGroup) -> Result<u64> {
        // The dual group has the same invariant factors, so the weight
        // vector's order as an element is the character's order.
        group.element_order(&group.element(&self.weights)?)
    }

    /// Does the character restrict to 1 on the whole subgroup?
    pub fn is_trivial_on(&self, group: &FiniteAbelianGroup, h: &Subgroup) -> Result<bool> {
        for row in h.basis_rows() {
            // Basis rows generate the subgroup's lattice; relation rows
            // evaluate to 1 automatically, so checking them is harmless.
            let x = group.element(&row)?;
            if !self.eval(group, &x)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All characters of `group` that are trivial on `h` — the dual of `G/H`.
/// The list is sorted by weight vector and has exactly `[G : H]` entries.
pub fn characters_trivial_on(group: &FiniteAbelianGroup, h: &Subgroup) -> Result<Vec<Character>> {
    if group.order() > CHARACTER_ENUM_LIMIT {
        return Err(Error::LimitExceeded {
            what: "character enumeration",
            required: group.order(),
            limit: CHARACTER_ENUM_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(h.index() as usize);
    for w in group.elements() {
        let chi = Character {
            parent_factors: group.invariant_factors().to_vec(),
            weights: w.exponents().to_vec(),
        };
        if chi.is_trivial_on(group, h)? {
            out.push(chi);
        }
    }
    if out.len() as u64 != h.index() {
        return Err(Error::domain(format!(
            "character count {} does not match subgroup index {}",
            out.len(),
            h.index()
        )));
    }
    out.sort();
    Ok(out)
}

/// Exact value of a sum of roots of unity when it has one of the two
/// structured shapes that orthogonality produces: all terms equal to 1
/// (sum = count), or equal multiplicities of every `r`-th root of unity for
/// some `r ≥ 2` (sum = 0). Returns `None` for anything else.
pub fn exact_root_sum(values: &[RootOfUnity]) -> Option<i128> {
    if values.is_empty() {
        return Some(0);
    }
    let den = values[0].denominator;
    if values.iter().any(|v| v.denominator != den) {
        return None;
    }
    if values.iter().all(RootOfUnity::is_one) {
        return Some(values.len() as i128);
    }
    let mut counts = std::collections::BTreeMap::new();
    for v in values {
        *counts.entry(v.numerator).or_insert(0usize) += 1;
    }
    let r = counts.len() as u64;
    if !den.is_multiple_of(r) {
        return None;
    }
    let step = den / r;
    let uniform = counts.values().all(|&c| c == values.len() / r as usize);
    let full_orbit = counts
        .keys()
        .enumerate()
        .all(|(j, &num)| num == j as u64 * step);
    if uniform && full_orbit && values.len().is_multiple_of(r as usize) {
        Some(0)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_subgroups;
    use super::*;

    fn group(factors: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(factors.to_vec()).unwrap()
    }

    #[test]
    fn eval_on_cyclic_group() {
        let g = group(&[4]);
        let chi = Character::new(&g, &[1]).unwrap();
        let x = g.element(&[3]).unwrap();
        assert_eq!(
            chi.eval(&g, &x).unwrap(),
            RootOfUnity {
                numerator: 3,
                denominator: 4
            }
        );
        assert_eq!(chi.order(&g).unwrap(), 4);
        let chi2 = Character::new(&g, &[2]).unwrap();
        assert_eq!(chi2.order(&g).unwrap(), 2);
        assert!(chi2.eval(&g, &g.element(&[2]).unwrap()).unwrap().is_one());
    }

    #[test]
    fn eval_uses_common_denominator_across_factors() {
        // χ with weights (1, 1) on Z/2 × Z/6 at (1, 1):
        // exp(2πi(1/2 + 1/6)) = exp(2πi·4/6).
        let g = group(&[2, 6]);
        let chi = Character::new(&g, &[1, 1]).unwrap();
        let v = chi.eval(&g, &g.element(&[1, 1]).unwrap()).unwrap();
        assert_eq!(
            v,
            RootOfUnity {
                numerator: 4,
                denominator: 6
            }
        );
        let (re, im) = v.approx();
        approx::assert_relative_eq!(re, -0.5, max_relative = 1e-12);
        approx::assert_relative_eq!(im, -0.8660254037844386, max_relative = 1e-12);
    }

    #[test]
    fn character_group_sizes_match_indices() {
        let g = group(&[2, 12]);
        for h in enumerate_subgroups(&g, 1_000).unwrap() {
            let chars = characters_trivial_on(&g, &h).unwrap();
            assert_eq!(chars.len() as u64, h.index());
        }
    }

    #[test]
    fn orthogonality_detects_membership() {
        // Σ_{χ trivial on H} χ(g) is [G:H] for g ∈ H and 0 otherwise.
        let g = group(&[2, 4]);
        for h in enumerate_subgroups(&g, 1_000).unwrap() {
            let chars = characters_trivial_on(&g, &h).unwrap();
            for x in g.elements() {
                let values: Vec<RootOfUnity> =
                    chars.iter().map(|chi| chi.eval(&g, &x).unwrap()).collect();
                let sum = exact_root_sum(&values).unwrap();
                if h.contains(&g, &x).unwrap() {
                    assert_eq!(sum, h.index() as i128);
                } else {
                    assert_eq!(sum, 0);
                }
            }
        }
    }

    #[test]
    fn trivial_group_has_one_character() {
        let g = FiniteAbelianGroup::trivial();
        let h = Subgroup::trivial(&g);
        let chars = characters_trivial_on(&g, &h).unwrap();
        assert_eq!(chars.len(), 1);
        let v = chars[0].eval(&g, &g.identity()).unwrap();
        assert!(v.is_one());
        assert_eq!(v.denominator, 1);
    }

    #[test]
    fn root_sum_rejects_unstructured_input() {
        let vals = [
            RootOfUnity {
                numerator: 1,
                denominator: 8,
            },
            RootOfUnity {
                numerator: 2,
                denominator: 8,
            },
        ];
        assert_eq!(exact_root_sum(&vals), None);
        // Full orbit of 4th roots inside denominator 8 sums to zero.
        let orbit: Vec<RootOfUnity> = (0..4)
            .map(|j| RootOfUnity {
                numerator: 2 * j,
                denominator: 8,
            })
            .collect();
        assert_eq!(exact_root_sum(&orbit), Some(0));
    }
}
