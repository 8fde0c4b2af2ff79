use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::{Case, CaseStatus, VerificationReport};
use crate::chars::{induced_nonzero_check, induced_value, BitSeq, CharSpec, Mode, Row};
use crate::classify::{induced_equal, part2_equivalent, signed_power_case, FProfile, IntMultiset, SignedPowers};
use crate::combinat::{
    complete_bell, complete_bell_determinant, cuts, enumerate_partitions, m_coefficient, m_product, multiplicity,
    refines, signed_partition_sum, theta, LevelSet, SetPartition,
};
use crate::rational::{big_pow, factorial, from_big, int};
use crate::sylow::{all_cycle_types, CycleType, DEFAULT_BUDGET};
use crate::{ExactRational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random instances of the restricted/unrestricted sum identity.
    pub replace_instances: usize,
    /// Random characters for the long-cycle nonvanishing check.
    pub nonzero_specs: usize,
    /// Random row-tuple pairs for the profile decision.
    pub part2_pairs: usize,
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            replace_instances: 1000,
            nonzero_specs: 40,
            part2_pairs: 10_000,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Restricted sum: distinct rows for distinct blocks of `nu`.
fn restricted_sum(c: &[Vec<ExactRational>], nu: &SetPartition) -> ExactRational {
    fn go(c: &[Vec<ExactRational>], blocks: &[Vec<usize>], used: &mut [bool]) -> ExactRational {
        let Some((first, rest)) = blocks.split_first() else {
            return BigRational::one();
        };
        let mut total = BigRational::zero();
        for i in 0..c.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let prod: ExactRational = first.iter().map(|&t| c[i][t - 1].clone()).product();
            total += prod * go(c, rest, used);
            used[i] = false;
        }
        total
    }
    go(c, nu.blocks(), &mut vec![false; c.len()])
}

/// `∏_{ω∈λ} Σ_i ∏_{t∈ω} C_t(i)`.
fn unrestricted_sum(c: &[Vec<ExactRational>], lambda: &SetPartition) -> ExactRational {
    lambda
        .blocks()
        .iter()
        .map(|w| {
            c.iter()
                .map(|row| w.iter().map(|&t| row[t - 1].clone()).product::<ExactRational>())
                .sum::<ExactRational>()
        })
        .product()
}

/// The restricted sum rewritten through unrestricted ones:
/// `Σ_{λ ≥ ν} (-1)^{|ν|-|λ|} ∏_{τ∈λ} (m^λ_ν(τ) - 1)! · C_λ`.
fn replaced_sum(c: &[Vec<ExactRational>], nu: &SetPartition) -> Result<ExactRational> {
    let mut total = BigRational::zero();
    for lambda in enumerate_partitions(nu.size())? {
        if !refines(nu, &lambda)? {
            continue;
        }
        let mut coef = BigInt::one();
        for tau in lambda.blocks() {
            coef *= factorial(multiplicity(nu, &lambda, tau)? as u64 - 1);
        }
        if (nu.len() - lambda.len()) % 2 == 1 {
            coef = -coef;
        }
        total += from_big(coef) * unrestricted_sum(c, &lambda);
    }
    Ok(total)
}

fn replace_suite(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Case>> {
    let mut jobs = Vec::with_capacity(count);
    for i in 0..count {
        let a = rng.gen_range(1..=4usize);
        let b = rng.gen_range(1..=4usize);
        let parts = enumerate_partitions(b)?;
        let nu = parts.choose(rng).expect("nonempty").clone();
        let c: Vec<Vec<ExactRational>> = (0..a)
            .map(|_| {
                (0..b)
                    .map(|_| BigRational::new(rng.gen_range(-9..=9i64).into(), rng.gen_range(1..=5i64).into()))
                    .collect()
            })
            .collect();
        jobs.push((i, nu, c));
    }
    jobs.into_par_iter()
        .map(|(i, nu, c)| {
            let lhs = restricted_sum(&c, &nu);
            let rhs = replaced_sum(&c, &nu)?;
            Ok(Case::check(
                format!("replace/{i}"),
                lhs == rhs,
                format!("a={} nu={nu} restricted={lhs} replaced={rhs}", c.len()),
                0,
            ))
        })
        .collect()
}

fn random_levels(rng: &mut ChaCha8Rng, b: usize) -> Vec<u32> {
    let mut pool: Vec<u32> = (1..=8).collect();
    pool.shuffle(rng);
    let mut levels = pool[..b].to_vec();
    levels.sort_unstable();
    levels
}

/// `M_i(α) = Σ_{β ∈ Cut(α, i)} M_0(β)` over every `α` of `[b]`.
fn cut_identity_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for p in [3u32, 5] {
        for b in 1..=6usize {
            let levels = LevelSet::new(p, random_levels(rng, b))?;
            let mut checked = 0;
            let mut bad = None;
            for alpha in enumerate_partitions(b)? {
                for i in 0..=(b - alpha.len()) {
                    let lhs = m_coefficient(&levels, &alpha, i as u32)?;
                    let mut rhs = BigInt::zero();
                    for beta in cuts(&alpha, i) {
                        rhs += m_coefficient(&levels, &beta, 0)?;
                    }
                    checked += 1;
                    if lhs != rhs && bad.is_none() {
                        bad = Some(format!("alpha={alpha} i={i}: {lhs} vs {rhs}"));
                    }
                }
            }
            let id = format!("cut-identity/p={p} b={b}");
            let detail = bad.clone().unwrap_or(format!("levels={:?}, {checked} coefficients", levels.levels()));
            cases.push(Case::check(id, bad.is_none(), detail, 0));
        }
    }
    Ok(cases)
}

/// `θ_λ = (-1)^{b-|λ|} p^{k|λ|} ∏_{τ∈λ} M(τ)` for `k` from the top level up.
fn theta_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for p in [3u32, 5] {
        for b in 1..=5usize {
            let levels = LevelSet::new(p, random_levels(rng, b))?;
            let top = *levels.levels().last().unwrap();
            let mut bad = None;
            let mut checked = 0;
            for lambda in enumerate_partitions(b)? {
                for k in top..=top + 3 {
                    let lhs = theta(&levels, &lambda, k)?;
                    let mut rhs = big_pow(p as u64, k as u64 * lambda.len() as u64);
                    for tau in lambda.blocks() {
                        rhs *= m_product(&levels, tau)?;
                    }
                    if (b - lambda.len()) % 2 == 1 {
                        rhs = -rhs;
                    }
                    checked += 1;
                    if lhs != rhs && bad.is_none() {
                        bad = Some(format!("lambda={lambda} k={k}: {lhs} vs {rhs}"));
                    }
                }
            }
            let detail = bad.clone().unwrap_or(format!("levels={:?}, {checked} values", levels.levels()));
            cases.push(Case::check(format!("theta/p={p} b={b}"), bad.is_none(), detail, 0));
        }
    }
    Ok(cases)
}

fn bell_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for m in 2..=12usize {
        let xs: Vec<ExactRational> = (0..m).map(|i| -from_big(factorial(i as u64))).collect();
        let v = complete_bell(m, &xs)?;
        cases.push(Case::check(format!("bell-vanishing/m={m}"), v.is_zero(), format!("B_{m} = {v}"), 0));
    }
    for n in 2..=12usize {
        let v = signed_partition_sum(n)?;
        cases.push(Case::check(format!("signed-partition-sum/n={n}"), v.is_zero(), format!("sum = {v}"), 0));
    }
    for m in 1..=8usize {
        let xs: Vec<ExactRational> = (0..m).map(|_| int(rng.gen_range(-5..=5))).collect();
        let (a, b) = (complete_bell(m, &xs)?, complete_bell_determinant(m, &xs)?);
        cases.push(Case::check(format!("bell-determinant/m={m}"), a == b, format!("partitions={a} determinant={b}"), 0));
    }
    Ok(cases)
}

fn random_bits(rng: &mut ChaCha8Rng, k: usize) -> BitSeq {
    BitSeq::new((0..k).map(|_| rng.gen_bool(0.5)).collect())
}

fn nonzero_suite(rng: &mut ChaCha8Rng, count: usize, budget: u64) -> Result<Vec<Case>> {
    let mut specs = vec![CharSpec::new(5, vec![BitSeq::ones(2); 3])?];
    for _ in 0..count {
        let p = *[3u32, 5].choose(rng).unwrap();
        let a = rng.gen_range(1..p as usize);
        let k = rng.gen_range(1..=3usize);
        specs.push(CharSpec::new(p, (0..a).map(|_| random_bits(rng, k)).collect())?);
    }
    specs
        .into_par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let (a, k) = spec.uniform().expect("uniform by construction");
            let v = induced_nonzero_check(&spec)?;
            let cycle = (spec.p() as u64).pow(k);
            let ct = CycleType::new(spec.n(), vec![cycle; a as usize])?;
            let direct = if a == 1 {
                Some(induced_value(&spec, &ct, Mode::Closed, budget)?.value)
            } else {
                None
            };
            let trivial = spec.bit_rows().iter().all(|u| u.bits().iter().all(|&b| b));
            let ok = !v.is_zero() && direct.as_ref().is_none_or(|d| *d == v) && (!trivial || v.is_positive());
            Ok(Case::check(format!("nonzero/{i}"), ok, format!("{spec}: value {v}"), 0))
        })
        .collect()
}

/// `n = 12 = 3 + 9`: the induced value at (9-cycle)·g' splits into factors.
fn factorization_suite(budget: u64) -> Result<Vec<Case>> {
    let mut jobs = Vec::new();
    for small in 0..2u64 {
        for big in 0..4u64 {
            for rest in all_cycle_types(3)? {
                jobs.push((small, big, rest));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(small, big, rest)| {
            let r3 = Row::new(BitSeq::from_index(small, 1));
            let r9 = Row::new(BitSeq::from_index(big, 2));
            let whole = CharSpec::for_degree(3, 12, vec![r3.clone(), r9.clone()])?;
            let nine = CycleType::new(9, vec![9])?;
            let g = CycleType::union(&[nine.clone(), rest.clone()]);
            let lhs = induced_value(&whole, &g, Mode::Oracle, budget)?.value;
            let f9 = induced_value(&CharSpec::from_rows(3, vec![r9])?, &nine, Mode::Oracle, budget)?.value;
            let f3 = induced_value(&CharSpec::from_rows(3, vec![r3])?, &rest, Mode::Oracle, budget)?.value;
            let rhs = &f9 * &f3;
            Ok(Case::check(
                format!("factorization/{whole} at {g}"),
                lhs == rhs,
                format!("{lhs} = {f9} * {f3}"),
                0,
            ))
        })
        .collect()
}

/// A random pair of row tuples: equal up to order, a one-bit neighbour, or
/// independent.
pub(crate) fn random_row_pair(rng: &mut ChaCha8Rng) -> (Vec<BitSeq>, Vec<BitSeq>) {
    let a = rng.gen_range(1..=4usize);
    let k = rng.gen_range(1..=6usize);
    let s: Vec<BitSeq> = (0..a).map(|_| random_bits(rng, k)).collect();
    let mut t = s.clone();
    t.shuffle(rng);
    match rng.gen_range(0..3) {
        0 => {}
        1 => {
            let row = rng.gen_range(0..a);
            let j = rng.gen_range(0..k);
            let mut bits = t[row].bits().to_vec();
            bits[j] = !bits[j];
            t[row] = BitSeq::new(bits);
        }
        _ => t = (0..a).map(|_| random_bits(rng, k)).collect(),
    }
    (s, t)
}

fn sorted(rows: &[BitSeq]) -> Vec<BitSeq> {
    let mut r = rows.to_vec();
    r.sort_by(|x, y| x.bits().cmp(y.bits()));
    r
}

/// Check one pair: the profile decision matches row equality, and unequal
/// rows get a witness whose class sums differ. Characters live in `P_{a·5^k}`.
pub fn check_row_pair(s: &[BitSeq], t: &[BitSeq]) -> Result<std::result::Result<(), String>> {
    let same = sorted(s) == sorted(t);
    let decided = part2_equivalent(&FProfile::from_rows(s)?, &FProfile::from_rows(t)?)?;
    if decided != same {
        return Ok(Err(format!("profile decision {decided}, rows equal {same}")));
    }
    let c = induced_equal(&CharSpec::new(5, s.to_vec())?, &CharSpec::new(5, t.to_vec())?)?;
    match (&c.witness, same) {
        (None, true) => Ok(Ok(())),
        (Some(w), false) if w.class_sums[0] != w.class_sums[1] => Ok(Ok(())),
        (w, _) => Ok(Err(format!("rows equal {same}, witness {w:?}"))),
    }
}

fn part2_suite(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Case>> {
    const BATCH: usize = 100;
    let pairs: Vec<_> = (0..count).map(|_| random_row_pair(rng)).collect();
    pairs
        .par_chunks(BATCH)
        .enumerate()
        .map(|(i, chunk)| {
            let mut unequal = 0;
            for (s, t) in chunk {
                if sorted(s) != sorted(t) {
                    unequal += 1;
                }
                if let Err(msg) = check_row_pair(s, t)? {
                    let rows = |r: &[BitSeq]| r.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",");
                    return Ok(Case::fail(format!("part2/{i}"), format!("s={} t={}: {msg}", rows(s), rows(t)), 0));
                }
            }
            Ok(Case::pass(
                format!("part2/{i}"),
                format!("{} pairs, {unequal} with different rows", chunk.len()),
                0,
            ))
        })
        .collect()
}

/// Multisets of `size` entries from `0..=max`.
pub(crate) fn small_multisets(size: usize, max: i64) -> Vec<IntMultiset> {
    fn go(size: usize, lo: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<IntMultiset>) {
        if cur.len() == size {
            out.push(IntMultiset::new(cur.clone()));
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(size, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, 0, max, &mut Vec::new(), &mut out);
    out
}

/// Counts of each outcome over all pairs of multisets of size `a` with
/// entries at most `max`.
pub fn signed_power_scan(q: i64, a: usize, max: i64) -> Result<BTreeMap<&'static str, usize>> {
    let all = small_multisets(a, max);
    let mut counts = BTreeMap::from([("equal", 0), ("exceptional", 0), ("differ", 0)]);
    for s in &all {
        for t in &all {
            let key = match signed_power_case(q, s, t)? {
                SignedPowers::Equal => "equal",
                SignedPowers::Exceptional(_) => "exceptional",
                SignedPowers::SumsDiffer => "differ",
            };
            *counts.get_mut(key).unwrap() += 1;
        }
    }
    Ok(counts)
}

fn signed_powers_suite() -> Vec<Case> {
    let mut jobs = Vec::new();
    for q in 2..=4i64 {
        for a in 1..=q as usize {
            jobs.push((q, a));
        }
    }
    jobs.into_par_iter()
        .map(|(q, a)| {
            let id = format!("signed-powers/q={q} a={a}");
            match signed_power_scan(q, a, 6) {
                Ok(c) => Case::check(
                    id,
                    a as i64 == q || c["exceptional"] == 0,
                    format!("equal={} exceptional={} differ={}", c["equal"], c["exceptional"], c["differ"]),
                    0,
                ),
                Err(e) => Case::fail(id, e.to_string(), 0),
            }
        })
        .collect()
}

/// All property suites, in a fixed order. Random inputs are drawn from one
/// seeded stream before any parallel work, so equal configs give equal reports.
pub fn run_property_suites(config: &SuiteConfig) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = replace_suite(&mut rng, config.replace_instances)?;
    cases.extend(cut_identity_suite(&mut rng)?);
    cases.extend(theta_suite(&mut rng)?);
    cases.extend(bell_suite(&mut rng)?);
    cases.extend(nonzero_suite(&mut rng, config.nonzero_specs, config.budget)?);
    cases.extend(factorization_suite(config.budget)?);
    cases.extend(part2_suite(&mut rng, config.part2_pairs)?);
    cases.extend(signed_powers_suite());

    let mut per_suite: BTreeMap<String, [usize; 3]> = BTreeMap::new();
    for c in &cases {
        let suite = c.id.split('/').next().unwrap_or("").to_string();
        let slot = per_suite.entry(suite).or_default();
        slot[match c.status {
            CaseStatus::Pass => 0,
            CaseStatus::Fail => 1,
            CaseStatus::Skipped => 2,
        }] += 1;
    }
    let summary = per_suite
        .into_iter()
        .map(|(k, [pass, fail, skipped])| (k, json!({"pass": pass, "fail": fail, "skipped": skipped})))
        .collect();
    let parameters = serde_json::to_value(config)
        .expect("config serializes")
        .as_object()
        .expect("config is an object")
        .iter()
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(VerificationReport::new("suites", parameters, Some(config.seed), cases, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(parts: &[&[usize]], size: usize) -> SetPartition {
        SetPartition::new(size, parts.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_blocks_example() {
        // Σ_{i≠j} C1C2(i) C3(j) = (ΣC1C2)(ΣC3) - ΣC1C2C3
        let c: Vec<Vec<ExactRational>> = vec![vec![int(2), int(3), int(5)], vec![int(7), int(11), int(13)]];
        let nu = sp(&[&[1, 2], &[3]], 3);
        let direct = int(2 * 3 * 13 + 7 * 11 * 5);
        assert_eq!(restricted_sum(&c, &nu), direct);
        assert_eq!(replaced_sum(&c, &nu).unwrap(), direct);
    }

    #[test]
    fn small_config_is_reproducible() {
        let config = SuiteConfig {
            seed: 7,
            replace_instances: 30,
            nonzero_specs: 5,
            part2_pairs: 300,
            budget: DEFAULT_BUDGET,
        };
        let a = run_property_suites(&config).unwrap();
        assert!(a.passed(), "{}", a.to_table());
        let b = run_property_suites(&config).unwrap();
        assert_eq!(a.to_json(false), b.to_json(false));
        let other = run_property_suites(&SuiteConfig { seed: 8, ..config }).unwrap();
        assert_ne!(a.to_json(false), other.to_json(false));
    }

    #[test]
    fn multiset_enumeration() {
        assert_eq!(small_multisets(2, 2).len(), 6);
        assert_eq!(small_multisets(4, 6).len(), 210);
    }
}
