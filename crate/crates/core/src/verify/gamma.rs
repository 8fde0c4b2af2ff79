use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use super::report::{Case, VerificationReport};
use crate::chars::{class_sum, class_sum_recursive, oracle_class_sum, BitSeq, CharSpec};
use crate::classify::level_lists;
use crate::sylow::{sylow_element_count, CycleType};
use crate::{ExactRational, Result};

/// Single-row cycle types the closed forms cover inside `P_{p^k}`: distinct
/// levels (at most `p - 1` of them, fitting in `p^k` points) and, for odd
/// `p`, a pair of equal cycles.
pub(crate) fn covered_types(p: u32, k: u32) -> Vec<(String, CycleType)> {
    let n = (p as u64).pow(k);
    let mut out = Vec::new();
    for levels in level_lists(k, p as usize - 1) {
        let parts: Vec<u64> = levels.iter().map(|&l| (p as u64).pow(l)).collect();
        if let Ok(ct) = CycleType::with_fixed_points(n, &parts) {
            out.push((format!("{levels:?}"), ct));
        }
    }
    if p != 2 {
        for l in 1..k {
            let q = (p as u64).pow(l);
            let ct = CycleType::with_fixed_points(n, &[q, q]).expect("two p^l-cycles fit when l < k");
            out.push((format!("[{l},{l}]"), ct));
        }
    }
    out
}

fn run_case(spec: &CharSpec, ct: &CycleType, budget: u64, elements: u64) -> Result<(bool, String, u64)> {
    let closed = class_sum(spec, ct)?;
    let recursive = class_sum_recursive(spec, ct)?;
    let oracle: ExactRational = oracle_class_sum(spec, ct, budget)?;
    let ok = closed == recursive && recursive == oracle;
    Ok((ok, format!("closed={closed} recursive={recursive} oracle={oracle}"), elements))
}

/// Closed form, recursion and enumeration on every bit row and covered
/// cycle type of `P_{p^k}` for `k ≤ k_max`. Groups over budget are skipped.
pub fn sweep_gamma(p: u32, k_max: u32, budget: u64) -> Result<VerificationReport> {
    crate::ensure_prime(p)?;
    let mut jobs = Vec::new();
    for k in 1..=k_max {
        let types = covered_types(p, k);
        for idx in 0..1u64 << k {
            let u = BitSeq::from_index(idx, k as usize);
            for (label, ct) in &types {
                jobs.push((k, u.clone(), label.clone(), ct.clone()));
            }
        }
    }
    let cases: Vec<Case> = jobs
        .into_par_iter()
        .map(|(k, u, label, ct)| {
            let id = format!("p={p} k={k} u={u} levels={label}");
            let elements = sylow_element_count(p, k).to_u64().unwrap_or(u64::MAX);
            let spec = match CharSpec::new(p, vec![u]) {
                Ok(s) => s,
                Err(e) => return Case::fail(id, e.to_string(), 0),
            };
            match run_case(&spec, &ct, budget, elements) {
                Ok((ok, detail, n)) => Case::check(id, ok, detail, n),
                Err(e) if e.is_budget() => Case::skipped(id, e.to_string()),
                Err(e) => Case::fail(id, e.to_string(), 0),
            }
        })
        .collect();
    let parameters = BTreeMap::from([
        ("p".to_string(), json!(p)),
        ("k_max".to_string(), json!(k_max)),
        ("budget".to_string(), json!(budget)),
    ]);
    let largest = (1..=k_max)
        .filter(|&k| sylow_element_count(p, k) <= budget.into())
        .max()
        .map(|k| sylow_element_count(p, k).to_string());
    let summary = BTreeMap::from([("largest_enumeration".to_string(), json!(largest))]);
    Ok(VerificationReport::new("gamma", parameters, None, cases, summary))
}
