//! Brute-force class sums.
//!
//! Each factor group `P_{p^l}` is enumerated once and bucketed by (moved cycle
//! lengths, per-level top sums). A character value depends only on the level
//! sums, so any row's distribution over a cycle type is read from the buckets.
//! Direct products are handled by combining factor distributions, never by
//! enumerating the product group.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::eval::{char_eval_product, row_exponent_from_level_sums};
use super::{CharSpec, Row};
use crate::rational::from_big;
use crate::sylow::{product_elements, sylow_element_count, CycleType};
use crate::{CycInt, Error, ExactRational, Result};

type BucketKey = (Vec<u64>, Vec<u32>);

/// Element counts of `P_{p^l}` by moved cycle lengths and level sums.
#[derive(Debug)]
pub struct Census {
    p: u32,
    level: u32,
    /// moved parts (decreasing) → level sums → count
    buckets: BTreeMap<Vec<u64>, BTreeMap<Vec<u32>, u64>>,
}

impl Census {
    fn build(p: u32, level: u32, budget: u64) -> Result<Census> {
        let pieces: Vec<BTreeMap<BucketKey, u64>> = crate::sylow::enumerate::chunks(p, level, false, budget)?
            .into_par_iter()
            .map(|chunk| {
                let mut local = BTreeMap::new();
                for x in chunk {
                    let mut parts = x.moved_cycles();
                    parts.sort_unstable_by(|a, b| b.cmp(a));
                    *local.entry((parts, x.level_sums())).or_insert(0u64) += 1;
                }
                local
            })
            .collect();
        let mut buckets: BTreeMap<Vec<u64>, BTreeMap<Vec<u32>, u64>> = BTreeMap::new();
        for piece in pieces {
            for ((parts, sums), count) in piece {
                *buckets.entry(parts).or_default().entry(sums).or_insert(0) += count;
            }
        }
        Ok(Census { p, level, buckets })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of elements with the given moved cycle lengths (any order).
    pub fn count(&self, moved: &[u64]) -> u64 {
        let mut key = moved.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        self.buckets.get(&key).map_or(0, |m| m.values().sum())
    }

    pub fn total(&self) -> u64 {
        self.buckets.values().flat_map(|m| m.values()).sum()
    }

    /// For each moved-cycle multiset: how many elements take the value `ζ^m`, for each `m`.
    fn row_distribution(&self, row: &Row) -> Vec<(Vec<u64>, Vec<u64>)> {
        self.buckets
            .iter()
            .map(|(parts, by_sums)| {
                let mut dist = vec![0u64; self.p as usize];
                for (sums, &count) in by_sums {
                    dist[row_exponent_from_level_sums(self.p, row, sums) as usize] += count;
                }
                (parts.clone(), dist)
            })
            .collect()
    }
}

type Slot = Arc<Mutex<Option<Arc<Census>>>>;

fn slot(p: u32, level: u32) -> Slot {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Slot>>> = OnceLock::new();
    CACHE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry((p, level))
        .or_default()
        .clone()
}

/// The census of `P_{p^l}`, built on first use and shared afterwards. The
/// budget is checked on every call, cached or not. Concurrent callers for
/// the same group wait for a single build.
pub fn census(p: u32, level: u32, budget: u64) -> Result<Arc<Census>> {
    let required = sylow_element_count(p, level);
    if required > BigInt::from(budget) {
        return Err(Error::Budget {
            what: format!("enumeration of P_{{{p}^{level}}}"),
            required: required.to_string(),
            budget,
        });
    }
    let slot = slot(p, level);
    let mut guard = slot.lock().unwrap();
    if let Some(c) = guard.as_ref() {
        return Ok(c.clone());
    }
    let built = Arc::new(Census::build(p, level, budget)?);
    *guard = Some(built.clone());
    Ok(built)
}

/// `a ∪ b` as a decreasing multiset if it still fits inside `target`.
fn union_within(target: &[u64], a: &[u64], b: &[u64]) -> Option<Vec<u64>> {
    let mut merged: Vec<u64> = a.iter().chain(b).copied().collect();
    merged.sort_unstable_by(|x, y| y.cmp(x));
    let mut t = target.iter().peekable();
    for &x in &merged {
        loop {
            match t.next() {
                Some(&y) if y == x => break,
                Some(&y) if y > x => continue,
                _ => return None,
            }
        }
    }
    Some(merged)
}

/// `Σ_{x ∈ P_n, type(x) = ct} φ(x)` by enumeration, as an exact cyclotomic integer.
pub fn oracle_class_sum_cyclotomic(spec: &CharSpec, ct: &CycleType, budget: u64) -> Result<CycInt> {
    let p = spec.p();
    if ct.n() != spec.n() {
        return Err(Error::domain(format!(
            "cycle type of degree {} for a character of P_{}",
            ct.n(),
            spec.n()
        )));
    }
    let target = ct.moved_parts();
    if ct.moved_levels(p).is_none() {
        return Ok(CycInt::zero(p));
    }
    let censuses = spec
        .rows()
        .iter()
        .map(|r| census(p, r.level(), budget))
        .collect::<Result<Vec<_>>>()?;

    let mut unit = vec![BigInt::zero(); p as usize];
    unit[0] = BigInt::from(1);
    let mut state: BTreeMap<Vec<u64>, Vec<BigInt>> = BTreeMap::from([(Vec::new(), unit)]);
    for (row, c) in spec.rows().iter().zip(&censuses) {
        let dist = c.row_distribution(row);
        let mut next: BTreeMap<Vec<u64>, Vec<BigInt>> = BTreeMap::new();
        for (consumed, acc) in &state {
            for (parts, counts) in &dist {
                let Some(merged) = union_within(&target, consumed, parts) else { continue };
                let slot = next
                    .entry(merged)
                    .or_insert_with(|| vec![BigInt::zero(); p as usize]);
                for (i, a) in acc.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                    for (j, &b) in counts.iter().enumerate().filter(|(_, &b)| b != 0) {
                        slot[(i + j) % p as usize] += a * b;
                    }
                }
            }
        }
        state = next;
    }
    Ok(match state.get(&target) {
        Some(counts) => CycInt::from_exponent_counts(p, counts),
        None => CycInt::zero(p),
    })
}

fn to_rational(sum: CycInt, what: impl FnOnce() -> String) -> Result<ExactRational> {
    sum.as_integer().map(from_big).ok_or_else(|| {
        Error::internal(format!("class sum {sum} for {} is not rational", what()))
    })
}

/// Enumeration class sum, reduced to a rational. An irrational result is an
/// internal error: sums over `S_n`-classes are always rational integers.
pub fn oracle_class_sum(spec: &CharSpec, ct: &CycleType, budget: u64) -> Result<ExactRational> {
    let sum = oracle_class_sum_cyclotomic(spec, ct, budget)?;
    to_rational(sum, || format!("{spec} at {ct}"))
}

/// Class sum by walking every element of `P_n` and evaluating the character
/// through the wreath recursion. Only practical for small `n`.
pub fn oracle_class_sum_direct(spec: &CharSpec, ct: &CycleType, budget: u64) -> Result<ExactRational> {
    if ct.n() != spec.n() {
        return Err(Error::domain("cycle type degree differs from the character's"));
    }
    let mut total = CycInt::zero(spec.p());
    for x in product_elements(spec.shape(), budget)? {
        if &x.cycle_type() == ct {
            total += &char_eval_product(spec, &x)?;
        }
    }
    to_rational(total, || format!("{spec} at {ct}"))
}
