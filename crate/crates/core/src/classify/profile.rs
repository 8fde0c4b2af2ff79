use std::collections::BTreeMap;

use rayon::prelude::*;

use super::multiset::{bumped_elements, IntMultiset};
use crate::chars::{BitSeq, CharSpec};
use crate::{Error, Result};

/// `f(l_1,…,l_b; s) = Σ_i (s_1 + … + s_{l_i})`.
pub fn f_value(levels: &[u32], s: &BitSeq) -> Result<u64> {
    check_level_list(levels, s.len() as u32)?;
    Ok(levels.iter().map(|&l| s.prefix_sum(l as usize) as u64).sum())
}

/// `f` applied to every row of a uniform character.
pub fn f_multiset(levels: &[u32], spec: &CharSpec) -> Result<IntMultiset> {
    let (a, _) = spec.uniform().ok_or_else(|| {
        Error::Unsupported(format!("f-multisets need n = a·p^k, got {}", spec.n()))
    })?;
    if levels.len() > a as usize {
        return Err(Error::domain(format!("{} levels for {a} rows", levels.len())));
    }
    rows_multiset(levels, &spec.bit_rows())
}

fn rows_multiset(levels: &[u32], rows: &[BitSeq]) -> Result<IntMultiset> {
    rows.iter().map(|r| f_value(levels, r).map(|v| v as i64)).collect()
}

fn check_level_list(levels: &[u32], k: u32) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::domain("empty level list"));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("levels {levels:?} are not strictly increasing")));
    }
    if levels[0] == 0 || *levels.last().unwrap() > k {
        return Err(Error::domain(format!("levels {levels:?} outside 1..={k}")));
    }
    Ok(())
}

/// Strictly increasing lists in `1..=k` of length `1..=max_b`, by length and
/// then lexicographically.
pub fn level_lists(k: u32, max_b: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for b in 1..=max_b.min(k as usize) {
        let mut cur: Vec<u32> = (1..=b as u32).collect();
        loop {
            out.push(cur.clone());
            // next combination in lexicographic order
            let Some(i) = (0..b).rev().find(|&i| cur[i] < k - (b - 1 - i) as u32) else { break };
            cur[i] += 1;
            for j in i + 1..b {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    out
}

/// All `f`-multisets of an `a`-row character of level `k`, over level lists
/// of length at most `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FProfile {
    a: usize,
    k: u32,
    values: BTreeMap<Vec<u32>, IntMultiset>,
}

impl FProfile {
    pub fn from_rows(rows: &[BitSeq]) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::domain("no rows"));
        };
        let k = first.len() as u32;
        if k == 0 || rows.iter().any(|r| r.len() as u32 != k) {
            return Err(Error::domain("rows must share a positive length"));
        }
        let values = level_lists(k, rows.len())
            .into_par_iter()
            .map(|levels| rows_multiset(&levels, rows).map(|m| (levels, m)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(FProfile { a: rows.len(), k, values })
    }

    pub fn from_spec(spec: &CharSpec) -> Result<Self> {
        spec.uniform().ok_or_else(|| {
            Error::Unsupported(format!("f-profiles need n = a·p^k, got {}", spec.n()))
        })?;
        Self::from_rows(&spec.bit_rows())
    }

    /// A profile given directly; the domain must be complete and every
    /// multiset must have `a` entries.
    pub fn from_map(a: usize, k: u32, values: BTreeMap<Vec<u32>, IntMultiset>) -> Result<Self> {
        if a == 0 || k == 0 {
            return Err(Error::domain("profile needs a ≥ 1 and k ≥ 1"));
        }
        let expected = level_lists(k, a);
        if values.len() != expected.len() || expected.iter().any(|l| !values.contains_key(l)) {
            return Err(Error::domain(format!("incomplete profile for a = {a}, k = {k}")));
        }
        if let Some((l, m)) = values.iter().find(|(_, m)| m.len() != a) {
            return Err(Error::domain(format!("f{l:?} = {m} has {} entries, not {a}", m.len())));
        }
        Ok(FProfile { a, k, values })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn get(&self, levels: &[u32]) -> Option<&IntMultiset> {
        self.values.get(levels)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u32>, &IntMultiset)> {
        self.values.iter()
    }

    fn at(&self, levels: &[u32]) -> Result<&IntMultiset> {
        self.values
            .get(levels)
            .ok_or_else(|| Error::domain(format!("profile has no entry for {levels:?}")))
    }

    /// Number of rows starting with a 1.
    fn leading_ones(&self) -> Result<usize> {
        let first = self.at(&[1])?;
        if first.items().iter().any(|&x| x != 0 && x != 1) {
            return Err(Error::domain(format!("f(1) = {first} is not 0/1-valued")));
        }
        Ok(first.count(1))
    }

    /// Profile of the rows with their first bit removed, when every row
    /// starts with `z`.
    fn strip_common(&self, z: i64) -> Result<FProfile> {
        let mut values = BTreeMap::new();
        for levels in level_lists(self.k - 1, self.a) {
            let up: Vec<u32> = levels.iter().map(|l| l + 1).collect();
            values.insert(levels.clone(), self.at(&up)?.shifted(-(levels.len() as i64) * z));
        }
        FProfile::from_map(self.a, self.k - 1, values)
    }

    /// Profiles of the stripped rows starting with 1 and with 0, where `ones`
    /// rows start with 1. Uses `f(L+1)` and `f({1} ∪ (L+1))`: the latter is
    /// the former with exactly the leading-one rows bumped by one.
    fn split(&self, ones: usize) -> Result<(FProfile, FProfile)> {
        let zeros = self.a - ones;
        let (mut hi, mut lo) = (BTreeMap::new(), BTreeMap::new());
        for levels in level_lists(self.k - 1, self.a - 1) {
            let b = levels.len() as i64;
            let up: Vec<u32> = levels.iter().map(|l| l + 1).collect();
            let with_one: Vec<u32> = std::iter::once(1).chain(up.iter().copied()).collect();
            let base = self.at(&up)?;
            let bumped = self.at(&with_one)?;
            let led = bumped_elements(base, bumped, ones)
                .ok_or_else(|| Error::domain(format!("f{with_one:?} is not f{up:?} with {ones} entries bumped")))?;
            let rest = base.difference(&led).expect("bumped elements come from the base");
            if levels.len() <= ones {
                hi.insert(levels.clone(), led.shifted(-b));
            }
            if levels.len() <= zeros {
                lo.insert(levels, rest);
            }
        }
        Ok((
            FProfile::from_map(ones, self.k - 1, hi)?,
            FProfile::from_map(zeros, self.k - 1, lo)?,
        ))
    }
}

/// Decide whether two profiles come from the same rows up to order, using
/// the profiles alone: strip a shared first bit, or split the rows by first
/// bit and recover both halves' profiles, then recurse.
pub fn part2_equivalent(s: &FProfile, t: &FProfile) -> Result<bool> {
    if (s.a, s.k) != (t.a, t.k) {
        return Err(Error::domain(format!(
            "profiles of shape (a={}, k={}) and (a={}, k={})",
            s.a, s.k, t.a, t.k
        )));
    }
    if s.k == 1 || s.a == 1 {
        for l in 1..=s.k {
            if s.at(&[l])? != t.at(&[l])? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let ones = s.leading_ones()?;
    if ones != t.leading_ones()? {
        return Ok(false);
    }
    if ones == 0 || ones == s.a {
        let z = (ones > 0) as i64;
        return part2_equivalent(&s.strip_common(z)?, &t.strip_common(z)?);
    }
    let (s1, s0) = s.split(ones)?;
    let (t1, t0) = t.split(ones)?;
    Ok(part2_equivalent(&s1, &t1)? && part2_equivalent(&s0, &t0)?)
}
