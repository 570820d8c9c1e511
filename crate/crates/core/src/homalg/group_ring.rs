use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::HomalgError;

/// Element of the group ring of `(Z/2)^n` over GF(2), written in the basis
/// `ξ_A = Π_{i∈A} (1 + x_i)`. Subsets are bit masks; bit `i - 1` stands for `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRingElement {
    pub n: u32,
    pub support: BTreeSet<u32>,
}

impl GroupRingElement {
    pub fn zero(n: u32) -> Self {
        GroupRingElement {
            n,
            support: BTreeSet::new(),
        }
    }

    pub fn xi(n: u32, a: u32) -> Result<Self, HomalgError> {
        check_mask(n, a)?;
        Ok(GroupRingElement { n, support: [a].into() })
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        GroupRingElement {
            n: self.n,
            support: &self.support ^ &other.support,
        }
    }

    fn toggle(&mut self, a: u32) {
        if !self.support.remove(&a) {
            self.support.insert(a);
        }
    }

    /// Smallest `|A|` in the support; `None` for zero.
    pub fn filtration_level(&self) -> Option<u32> {
        self.support.iter().map(|a| a.count_ones()).min()
    }

    /// Coefficients in the group basis `g_B = Π_{i∈B} x_i`, using `ξ_A = Σ_{B⊆A} g_B`.
    pub fn to_group_basis(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for &a in &self.support {
            for b in submasks(a) {
                if !out.remove(&b) {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// Inverse of [`Self::to_group_basis`], using `g_B = Σ_{A⊆B} ξ_A`.
    pub fn from_group_basis(n: u32, g: &BTreeSet<u32>) -> Self {
        let mut e = Self::zero(n);
        for &b in g {
            for a in submasks(b) {
                e.toggle(a);
            }
        }
        e
    }
}

fn full_mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn check_mask(n: u32, a: u32) -> Result<(), HomalgError> {
    if a & !full_mask(n) != 0 {
        return Err(HomalgError::Subset { mask: a, n });
    }
    Ok(())
}

/// All submasks of `m`, including 0 and `m`.
pub(crate) fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut s = Some(m);
    std::iter::from_fn(move || {
        let cur = s?;
        s = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

/// `x_I · e`, expanded by `x_I ξ_A = Σ_{A ⊆ A' ⊆ A ∪ I} ξ_{A'}`.
pub fn xi_multiply(i: u32, e: &GroupRingElement) -> Result<GroupRingElement, HomalgError> {
    check_mask(e.n, i)?;
    let mut out = GroupRingElement::zero(e.n);
    for &a in &e.support {
        for s in submasks(i & !a) {
            out.toggle(a | s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(n: u32, masks: &[u32]) -> GroupRingElement {
        GroupRingElement {
            n,
            support: masks.iter().copied().collect(),
        }
    }

    #[test]
    fn displayed_cases() {
        let e = GroupRingElement::xi(2, 0).unwrap();
        assert_eq!(xi_multiply(0b01, &e).unwrap(), el(2, &[0, 0b01]));
        assert_eq!(xi_multiply(0, &e).unwrap(), e);
        assert_eq!(xi_multiply(0b11, &e).unwrap(), el(2, &[0, 0b01, 0b10, 0b11]));
        assert_eq!(el(2, &[0b11]).filtration_level(), Some(2));
        assert_eq!(el(2, &[0, 0b01]).filtration_level(), Some(0));
        assert_eq!(xi_multiply(0b01, &el(2, &[0b01])).unwrap().filtration_level(), Some(1));
        assert!(xi_multiply(0b100, &e).is_err());
    }

    #[test]
    fn matches_group_law_exhaustively() {
        for n in 0..=4u32 {
            for i in 0..(1u32 << n) {
                for a in 0..(1u32 << n) {
                    let e = GroupRingElement::xi(n, a).unwrap();
                    let shifted: BTreeSet<u32> = e.to_group_basis().into_iter().map(|b| b ^ i).collect();
                    assert_eq!(
                        xi_multiply(i, &e).unwrap(),
                        GroupRingElement::from_group_basis(n, &shifted)
                    );
                }
            }
        }
    }

    fn arb_element() -> impl Strategy<Value = (u32, GroupRingElement)> {
        (0u32..=5).prop_flat_map(|n| {
            let m = 1u32 << n;
            (Just(n), proptest::collection::btree_set(0..m, 0..6))
                .prop_map(|(n, s)| (n, GroupRingElement { n, support: s }))
        })
    }

    proptest! {
        #[test]
        fn products_compose((n, e) in arb_element(), i in 0u32..32, j in 0u32..32) {
            let m = (1u32 << n) - 1;
            let (i, j) = (i & m, j & m);
            let lhs = xi_multiply(i, &xi_multiply(j, &e).unwrap()).unwrap();
            prop_assert_eq!(lhs, xi_multiply(i ^ j, &e).unwrap());
        }

        #[test]
        fn multiplication_raises_filtration_of_the_difference((n, _e) in arb_element(), a in 0u32..32, i in 1u32..32) {
            let m = (1u32 << n) - 1;
            let (a, i) = (a & m, i & m);
            let x = GroupRingElement::xi(n, a).unwrap();
            let diff = xi_multiply(i, &x).unwrap().add(&x);
            if let Some(level) = diff.filtration_level() {
                prop_assert!(level > a.count_ones());
            }
        }

        #[test]
        fn basis_change_round_trips((n, e) in arb_element()) {
            prop_assert_eq!(GroupRingElement::from_group_basis(n, &e.to_group_basis()), e);
        }
    }
}
