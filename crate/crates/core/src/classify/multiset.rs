use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite multiset of integers, stored sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMultiset(Vec<i64>);

impl IntMultiset {
    pub fn new(mut items: Vec<i64>) -> Self {
        items.sort_unstable();
        IntMultiset(items)
    }

    pub fn items(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, v: i64) -> usize {
        self.0.iter().filter(|&&x| x == v).count()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn shifted(&self, by: i64) -> IntMultiset {
        IntMultiset(self.0.iter().map(|x| x + by).collect())
    }

    /// `self \ other`, or `None` if `other` is not contained in `self`.
    pub fn difference(&self, other: &IntMultiset) -> Option<IntMultiset> {
        let mut counts = self.counts();
        for x in &other.0 {
            let c = counts.get_mut(x)?;
            if *c == 0 {
                return None;
            }
            *c -= 1;
        }
        Some(IntMultiset::from_counts(&counts))
    }

    fn counts(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.0 {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    fn from_counts(counts: &BTreeMap<i64, usize>) -> IntMultiset {
        IntMultiset(
            counts
                .iter()
                .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
                .collect(),
        )
    }
}

impl FromIterator<i64> for IntMultiset {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        IntMultiset::new(iter.into_iter().collect())
    }
}

impl fmt::Display for IntMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}*", items.join(","))
    }
}

/// Given `base` and `bumped`, where `bumped` is `base` with exactly `c`
/// elements increased by one, recover those `c` elements (before the bump).
///
/// Walking upwards through the values, the number of chosen copies of `v`
/// is `cnt_base(v) - cnt_bumped(v) + chosen(v-1)`.
pub fn bumped_elements(base: &IntMultiset, bumped: &IntMultiset, c: usize) -> Option<IntMultiset> {
    if base.len() != bumped.len() || c > base.len() {
        return None;
    }
    let lo = base.0.first().copied().unwrap_or(0).min(bumped.0.first().copied().unwrap_or(0));
    let hi = base.0.last().copied().unwrap_or(0).max(bumped.0.last().copied().unwrap_or(0));
    let (cb, cu) = (base.counts(), bumped.counts());
    let mut chosen = Vec::new();
    let mut carry: i64 = 0;
    for v in lo..=hi + 1 {
        let x = *cb.get(&v).unwrap_or(&0) as i64 - *cu.get(&v).unwrap_or(&0) as i64 + carry;
        if x < 0 || x > *cb.get(&v).unwrap_or(&0) as i64 {
            return None;
        }
        chosen.extend(std::iter::repeat_n(v, x as usize));
        carry = x;
    }
    (chosen.len() == c).then_some(IntMultiset(chosen))
}

/// Outcome of comparing `Σ (-q)^σ_j` with `Σ (-q)^τ_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SignedPowers {
    /// The multisets coincide.
    Equal,
    /// Equal sums from `{w, w-1, …, w-1}*` against `{w-2, …, w-2}*`.
    Exceptional(i64),
    SumsDiffer,
}

fn signed_power_sum(q: i64, exps: &IntMultiset) -> BigInt {
    let base = BigInt::from(-q);
    exps.items().iter().fold(BigInt::zero(), |acc, &e| {
        acc + num_traits::pow(base.clone(), e as usize)
    })
}

fn is_exceptional_pair(a: usize, high: &IntMultiset, low: &IntMultiset) -> Option<i64> {
    let w = *high.items().last()?;
    let expect_high: IntMultiset = std::iter::once(w).chain(std::iter::repeat_n(w - 1, a - 1)).collect();
    let expect_low = IntMultiset(vec![w - 2; a]);
    (w >= 2 && *high == expect_high && *low == expect_low).then_some(w)
}

/// Classify a pair of exponent multisets of size `a ≤ q`.
///
/// Any equal-sum pair that is neither equal nor of the exceptional shape is
/// reported as an internal error: it would contradict the classification.
pub fn signed_power_case(q: i64, sigma: &IntMultiset, tau: &IntMultiset) -> Result<SignedPowers> {
    if q < 2 {
        return Err(Error::domain(format!("q = {q}; need q ≥ 2")));
    }
    let a = sigma.len();
    if a != tau.len() || a == 0 {
        return Err(Error::domain("multisets of different or zero size"));
    }
    if a as i64 > q {
        return Err(Error::domain(format!("{a} exponents exceed q = {q}")));
    }
    if sigma.items().iter().chain(tau.items()).any(|&e| e < 0) {
        return Err(Error::domain("negative exponent"));
    }
    if signed_power_sum(q, sigma) != signed_power_sum(q, tau) {
        return Ok(SignedPowers::SumsDiffer);
    }
    if sigma == tau {
        return Ok(SignedPowers::Equal);
    }
    if a as i64 == q {
        if let Some(w) = is_exceptional_pair(a, sigma, tau).or_else(|| is_exceptional_pair(a, tau, sigma)) {
            return Ok(SignedPowers::Exceptional(w));
        }
    }
    Err(Error::internal(format!(
        "{sigma} and {tau} have equal signed {q}-power sums but no admissible shape"
    )))
}

/// Result of the cancellation lemma on a concrete instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum KeyLemma {
    /// `{l_1..l_c}* = {m_1..m_c}*`, the common value.
    Holds(IntMultiset),
    Counterexample { left: IntMultiset, right: IntMultiset },
}

/// From `{l}* = {m}*` and equality after adding one to the first `c` entries
/// of each, conclude that the first `c` entries agree as multisets.
pub fn keylemma_conclude(l: &[i64], m: &[i64], c: usize) -> Result<KeyLemma> {
    if l.len() != m.len() {
        return Err(Error::domain("sequences of different lengths"));
    }
    if c == 0 || c >= l.len() {
        return Err(Error::domain(format!("c = {c} must lie in 1..{}", l.len())));
    }
    let bump = |xs: &[i64]| -> IntMultiset {
        xs.iter().enumerate().map(|(i, &x)| if i < c { x + 1 } else { x }).collect()
    };
    if IntMultiset::new(l.to_vec()) != IntMultiset::new(m.to_vec()) {
        return Err(Error::domain("precondition failed: {l}* ≠ {m}*"));
    }
    if bump(l) != bump(m) {
        return Err(Error::domain("precondition failed: bumped multisets differ"));
    }
    let left = IntMultiset::new(l[..c].to_vec());
    let right = IntMultiset::new(m[..c].to_vec());
    Ok(if left == right {
        KeyLemma::Holds(left)
    } else {
        KeyLemma::Counterexample { left, right }
    })
}
