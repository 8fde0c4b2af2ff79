use std::fmt;

use super::CycleType;
use crate::{ensure_prime, Error, Result};

/// Largest degree for which an element is expanded into an explicit permutation.
pub const MAX_PERMUTATION_DEGREE: u64 = 1_000_000;

/// Number of wreath nodes in a tree of the given level: `(p^k - 1)/(p - 1)`.
pub(crate) fn node_count(p: u32, level: u32) -> usize {
    let p = p as usize;
    (0..level).fold(0, |acc, _| acc * p + 1)
}

/// An element of `P_{p^k}` stored as the top exponents of its wreath tree in
/// preorder: `tops[0]` is the root, followed by the `p` child subtrees.
///
/// Level 0 is the trivial group on one point and has no nodes. Every vector
/// of `(p^k - 1)/(p - 1)` exponents in `0..p` is a distinct element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElem {
    p: u32,
    level: u32,
    tops: Vec<u8>,
}

impl WreathElem {
    pub fn identity(p: u32, level: u32) -> Self {
        WreathElem {
            p,
            level,
            tops: vec![0; node_count(p, level)],
        }
    }

    /// The generator `c = (0 1 … p-1)` of `P_p`.
    pub fn base_cycle(p: u32) -> Self {
        WreathElem { p, level: 1, tops: vec![1] }
    }

    /// `c^e` in `P_p`.
    pub fn base_power(p: u32, e: u32) -> Self {
        WreathElem {
            p,
            level: 1,
            tops: vec![(e % p) as u8],
        }
    }

    pub fn from_tops(p: u32, level: u32, tops: Vec<u8>) -> Result<Self> {
        ensure_prime(p)?;
        if p > u8::MAX as u32 {
            return Err(Error::domain(format!("p = {p} is too large for the wreath model")));
        }
        if tops.len() != node_count(p, level) {
            return Err(Error::domain(format!(
                "level {level} needs {} top exponents, got {}",
                node_count(p, level),
                tops.len()
            )));
        }
        if let Some(&bad) = tops.iter().find(|&&e| e as u32 >= p) {
            return Err(Error::domain(format!("top exponent {bad} outside 0..{p}")));
        }
        Ok(WreathElem { p, level, tops })
    }

    /// `(children[0], …, children[p-1]; c^top)`.
    pub fn node(children: &[WreathElem], top: u32) -> Result<Self> {
        let first = children
            .first()
            .ok_or_else(|| Error::domain("a wreath node needs p children"))?;
        let (p, level) = (first.p, first.level);
        if children.len() != p as usize {
            return Err(Error::domain(format!("a wreath node needs {p} children, got {}", children.len())));
        }
        if children.iter().any(|c| c.p != p || c.level != level) {
            return Err(Error::domain("children of a wreath node must share p and level"));
        }
        if top >= p {
            return Err(Error::domain(format!("top exponent {top} outside 0..{p}")));
        }
        let mut tops = Vec::with_capacity(node_count(p, level + 1));
        tops.push(top as u8);
        for c in children {
            tops.extend_from_slice(&c.tops);
        }
        Ok(WreathElem { p, level: level + 1, tops })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Degree `p^k` of the permutation this element realises.
    pub fn degree(&self) -> u64 {
        (self.p as u64).pow(self.level)
    }

    pub fn tops(&self) -> &[u8] {
        &self.tops
    }

    /// Exponent `e` of the top permutation `c^e`; `None` at level 0.
    pub fn top(&self) -> Option<u32> {
        self.tops.first().map(|&e| e as u32)
    }

    pub fn child(&self, i: usize) -> Option<WreathElem> {
        if self.level == 0 || i >= self.p as usize {
            return None;
        }
        let size = node_count(self.p, self.level - 1);
        Some(WreathElem {
            p: self.p,
            level: self.level - 1,
            tops: self.tops[1 + i * size..1 + (i + 1) * size].to_vec(),
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn mul(&self, other: &WreathElem) -> WreathElem {
        assert!(self.p == other.p && self.level == other.level, "mismatched wreath elements");
        let mut out = vec![0u8; self.tops.len()];
        mul_into(self.p, self.level, &self.tops, &other.tops, &mut out);
        WreathElem { p: self.p, level: self.level, tops: out }
    }

    pub fn inverse(&self) -> WreathElem {
        let mut out = vec![0u8; self.tops.len()];
        inverse_into(self.p, self.level, &self.tops, &mut out);
        WreathElem { p: self.p, level: self.level, tops: out }
    }

    /// `f_{σ^{p-1}(0)} ∘ ⋯ ∘ f_{σ(0)} ∘ f_0`, an element one level down.
    ///
    /// When the top is nontrivial this is conjugate to the `p`-th power of the
    /// element restricted to block 0, so the two share a cycle type.
    pub fn twisted_product(&self) -> Option<WreathElem> {
        if self.level == 0 {
            return None;
        }
        let tops = twisted_into(self.p, self.level, &self.tops);
        Some(WreathElem { p: self.p, level: self.level - 1, tops })
    }

    /// Image of `point` under the element.
    pub fn apply(&self, point: u64) -> u64 {
        apply_at(self.p as u64, self.level, &self.tops, point)
    }

    /// Image array of `0..p^k`.
    pub fn to_permutation(&self) -> Result<Vec<u64>> {
        let degree = self.degree();
        if degree > MAX_PERMUTATION_DEGREE {
            return Err(Error::SizeGuard {
                what: "permutation degree",
                value: degree,
                limit: MAX_PERMUTATION_DEGREE,
            });
        }
        Ok((0..degree).map(|x| self.apply(x)).collect())
    }

    /// Cycle type read off the explicit permutation.
    pub fn cycle_type_of_permutation(&self) -> Result<CycleType> {
        let perm = self.to_permutation()?;
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = perm[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(self.degree(), parts)
    }

    /// Cycle type computed on the tree: a trivial top contributes the union of
    /// its children, a nontrivial top multiplies every cycle of the twisted
    /// product by `p`.
    pub fn cycle_type(&self) -> CycleType {
        let mut parts = Vec::new();
        collect_cycles(self.p, self.level, &self.tops, 1, &mut parts);
        CycleType::new(self.degree(), parts).expect("wreath cycles cover every point")
    }

    /// Cycle lengths greater than 1, unsorted.
    pub fn moved_cycles(&self) -> Vec<u64> {
        let mut parts = Vec::new();
        collect_cycles(self.p, self.level, &self.tops, 1, &mut parts);
        parts.retain(|&x| x > 1);
        parts
    }

    /// Sum of the top exponents of all nodes at each level, reduced mod `p`.
    /// Entry `j - 1` covers level `j`; leaves of the tree sit at level 1.
    pub fn level_sums(&self) -> Vec<u32> {
        let mut sums = vec![0u32; self.level as usize];
        level_sums_into(self.p, self.level, &self.tops, &mut sums);
        sums
    }
}

impl fmt::Debug for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WreathElem(p={}, k={}, tops={:?})", self.p, self.level, self.tops)
    }
}

impl fmt::Display for WreathElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "1"),
            _ => {
                let children: Vec<String> = (0..self.p as usize)
                    .map(|i| self.child(i).unwrap().to_string())
                    .collect();
                write!(f, "({}; c^{})", children.join(","), self.tops[0])
            }
        }
    }
}

fn child_slice(p: u32, level: u32, tops: &[u8], i: usize) -> &[u8] {
    let size = node_count(p, level - 1);
    &tops[1 + i * size..1 + (i + 1) * size]
}

pub(crate) fn mul_into(p: u32, level: u32, a: &[u8], b: &[u8], out: &mut [u8]) {
    if level == 0 {
        return;
    }
    let (ea, eb) = (a[0] as u32, b[0] as u32);
    out[0] = ((ea + eb) % p) as u8;
    let size = node_count(p, level - 1);
    for i in 0..p as usize {
        let j = (i + p as usize - ea as usize) % p as usize;
        let (lo, hi) = (1 + i * size, 1 + (i + 1) * size);
        mul_into(p, level - 1, &a[lo..hi], child_slice(p, level, b, j), &mut out[lo..hi]);
    }
}

fn inverse_into(p: u32, level: u32, a: &[u8], out: &mut [u8]) {
    if level == 0 {
        return;
    }
    let e = a[0] as usize;
    out[0] = ((p as usize - e) % p as usize) as u8;
    let size = node_count(p, level - 1);
    for i in 0..p as usize {
        let j = (i + e) % p as usize;
        let (lo, hi) = (1 + i * size, 1 + (i + 1) * size);
        inverse_into(p, level - 1, child_slice(p, level, a, j), &mut out[lo..hi]);
    }
}

fn twisted_into(p: u32, level: u32, tops: &[u8]) -> Vec<u8> {
    let e = tops[0] as usize;
    let mut acc = child_slice(p, level, tops, 0).to_vec();
    let mut scratch = vec![0u8; acc.len()];
    for t in 1..p as usize {
        let block = (t * e) % p as usize;
        mul_into(p, level - 1, child_slice(p, level, tops, block), &acc, &mut scratch);
        std::mem::swap(&mut acc, &mut scratch);
    }
    acc
}

fn apply_at(p: u64, level: u32, tops: &[u8], point: u64) -> u64 {
    if level == 0 {
        return point;
    }
    let block_size = p.pow(level - 1);
    let (j, r) = (point / block_size, point % block_size);
    let target = (j + tops[0] as u64) % p;
    let child = child_slice(p as u32, level, tops, target as usize);
    target * block_size + apply_at(p, level - 1, child, r)
}

fn collect_cycles(p: u32, level: u32, tops: &[u8], scale: u64, out: &mut Vec<u64>) {
    if level == 0 {
        out.push(scale);
        return;
    }
    if tops[0] == 0 {
        for i in 0..p as usize {
            collect_cycles(p, level - 1, child_slice(p, level, tops, i), scale, out);
        }
    } else {
        let twisted = twisted_into(p, level, tops);
        collect_cycles(p, level - 1, &twisted, scale * p as u64, out);
    }
}

fn level_sums_into(p: u32, level: u32, tops: &[u8], sums: &mut [u32]) {
    if level == 0 {
        return;
    }
    let slot = &mut sums[level as usize - 1];
    *slot = (*slot + tops[0] as u32) % p;
    for i in 0..p as usize {
        level_sums_into(p, level - 1, child_slice(p, level, tops, i), sums);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: u32, e: u32) -> WreathElem {
        WreathElem::base_power(p, e)
    }

    fn id1(p: u32) -> WreathElem {
        WreathElem::identity(p, 1)
    }

    fn elem(p: u32, level: u32) -> impl Strategy<Value = WreathElem> {
        prop::collection::vec(0..p as u8, node_count(p, level))
            .prop_map(move |tops| WreathElem::from_tops(p, level, tops).unwrap())
    }

    fn compose(a: &[u64], b: &[u64]) -> Vec<u64> {
        b.iter().map(|&x| a[x as usize]).collect()
    }

    #[test]
    fn identity_is_identity_permutation() {
        let x = WreathElem::identity(3, 2);
        assert_eq!(x.to_permutation().unwrap(), (0..9).collect::<Vec<_>>());
        assert_eq!(x.cycle_type(), CycleType::identity(9));
    }

    #[test]
    fn generator_convention() {
        assert_eq!(c(3, 1).to_permutation().unwrap(), vec![1, 2, 0]);
        assert_eq!(WreathElem::identity(3, 0).to_permutation().unwrap(), vec![0]);
    }

    #[test]
    fn single_leaf_cycle() {
        let x = WreathElem::node(&[c(3, 1), id1(3), id1(3)], 0).unwrap();
        assert_eq!(x.cycle_type(), CycleType::with_fixed_points(9, &[3]).unwrap());
        assert_eq!(x.cycle_type_of_permutation().unwrap(), x.cycle_type());
    }

    #[test]
    fn two_leaf_cycles() {
        let x = WreathElem::node(&[c(3, 1), c(3, 2), id1(3)], 0).unwrap();
        assert_eq!(x.cycle_type(), CycleType::with_fixed_points(9, &[3, 3]).unwrap());
    }

    #[test]
    fn long_cycle_from_twisted_product() {
        let x = WreathElem::node(&[c(3, 1), id1(3), id1(3)], 1).unwrap();
        assert_eq!(x.twisted_product().unwrap(), c(3, 1));
        assert_eq!(x.cycle_type(), CycleType::new(9, vec![9]).unwrap());
        assert_eq!(x.cycle_type_of_permutation().unwrap(), x.cycle_type());
    }

    #[test]
    fn invalid_constructions() {
        assert!(WreathElem::from_tops(3, 2, vec![0; 3]).is_err());
        assert!(WreathElem::from_tops(3, 1, vec![3]).is_err());
        assert!(WreathElem::from_tops(4, 1, vec![0]).is_err());
        assert!(WreathElem::node(&[c(3, 1), id1(3)], 0).is_err());
        assert!(WreathElem::node(&[c(3, 1), id1(3), WreathElem::identity(3, 2)], 0).is_err());
    }

    #[test]
    fn permutation_guard() {
        let x = WreathElem::identity(2, 21);
        assert!(matches!(x.to_permutation(), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn level_sums_count_tops_per_level() {
        let x = WreathElem::node(&[c(3, 1), c(3, 2), c(3, 2)], 2).unwrap();
        assert_eq!(x.level_sums(), vec![(1 + 2 + 2) % 3, 2]);
    }

    #[test]
    fn display_nests_children() {
        let x = WreathElem::node(&[c(2, 1), id1(2)], 1).unwrap();
        assert_eq!(x.to_string(), "((1,1; c^1),(1,1; c^0); c^1)");
    }

    proptest! {
        #[test]
        fn product_matches_permutation_composition(
            (a, b) in prop::sample::select(vec![(2u32, 3u32), (3, 2), (2, 4), (5, 2), (3, 3)])
                .prop_flat_map(|(p, k)| (elem(p, k), elem(p, k)))
        ) {
            let ab = a.mul(&b).to_permutation().unwrap();
            prop_assert_eq!(ab, compose(&a.to_permutation().unwrap(), &b.to_permutation().unwrap()));
        }

        #[test]
        fn inverse_cancels(a in prop::sample::select(vec![(2u32, 4u32), (3, 3), (5, 2)])
                .prop_flat_map(|(p, k)| elem(p, k))) {
            let id = WreathElem::identity(a.p(), a.level());
            prop_assert_eq!(a.mul(&a.inverse()), id.clone());
            prop_assert_eq!(a.inverse().mul(&a), id);
        }

        #[test]
        fn tree_cycle_type_matches_permutation(a in prop::sample::select(vec![(2u32, 5u32), (3, 3), (5, 2), (7, 2)])
                .prop_flat_map(|(p, k)| elem(p, k))) {
            prop_assert_eq!(a.cycle_type(), a.cycle_type_of_permutation().unwrap());
        }

        #[test]
        fn level_sums_are_a_homomorphism(
            (a, b) in prop::sample::select(vec![(2u32, 4u32), (3, 3), (5, 2)])
                .prop_flat_map(|(p, k)| (elem(p, k), elem(p, k)))
        ) {
            let p = a.p();
            let expected: Vec<u32> = a.level_sums().iter().zip(b.level_sums()).map(|(x, y)| (x + y) % p).collect();
            prop_assert_eq!(a.mul(&b).level_sums(), expected);
        }
    }
}
