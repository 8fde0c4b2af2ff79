use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::json;

use super::report::{Case, VerificationReport};
use crate::chars::{induced_value, CharSpec, Mode};
use crate::classify::n_conjugate;
use crate::sylow::{all_cycle_types, sylow_order, CycleType};
use crate::{Error, ExactRational, Result};

/// Bits with exponents, e.g. `01[2,0]`.
fn label(spec: &CharSpec) -> String {
    let rows: Vec<String> = spec
        .moving_rows()
        .map(|r| {
            let e: Vec<String> = r.exponents().iter().map(|x| x.to_string()).collect();
            format!("{}[{}]", r.bits(), e.join(","))
        })
        .collect();
    rows.join(" ")
}

fn induced_character(spec: &CharSpec, types: &[CycleType], budget: u64) -> Result<Vec<ExactRational>> {
    types
        .iter()
        .map(|ct| induced_value(spec, ct, Mode::Oracle, budget).map(|r| r.value))
        .collect()
}

/// Groups indices by an equivalence given as `same(i, j)`; groups are listed
/// by smallest member.
fn classes(len: usize, mut same: impl FnMut(usize, usize) -> Result<bool>) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    'next: for i in 0..len {
        for group in &mut out {
            if same(group[0], i)? {
                group.push(i);
                continue 'next;
            }
        }
        out.push(vec![i]);
    }
    Ok(out)
}

/// Every concrete linear character of `P_n` (all bit rows, all exponent
/// choices), its full induced character by enumeration, and a check that
/// equal induced characters are exactly the normalizer-conjugate pairs.
pub fn certify_theorem_a(p: u32, n: u64, budget: u64) -> Result<VerificationReport> {
    let specs = CharSpec::all_concrete(p, n)?;
    let types = all_cycle_types(n)?;
    let parameters = BTreeMap::from([
        ("p".to_string(), json!(p)),
        ("n".to_string(), json!(n)),
        ("budget".to_string(), json!(budget)),
    ]);
    let elements = sylow_order(n, p)?.to_u64().unwrap_or(u64::MAX);

    let computed: Vec<Result<Vec<ExactRational>>> =
        specs.par_iter().map(|s| induced_character(s, &types, budget)).collect();
    let mut values = Vec::with_capacity(specs.len());
    for r in computed {
        match r {
            Ok(v) => values.push(v),
            Err(e) if e.is_budget() => {
                let cases = specs.iter().map(|s| Case::skipped(label(s), e.to_string())).collect();
                return Ok(VerificationReport::new("theorem-a", parameters, None, cases, BTreeMap::new()));
            }
            Err(e) => return Err(e),
        }
    }

    let by_value = classes(specs.len(), |i, j| Ok(values[i] == values[j]))?;
    let by_conjugacy = classes(specs.len(), |i, j| n_conjugate(&specs[i], &specs[j]))?;
    let class_of = |groups: &[Vec<usize>], i: usize| groups.iter().position(|g| g.contains(&i)).unwrap();

    let cases: Vec<Case> = (0..specs.len())
        .map(|i| {
            let vg = &by_value[class_of(&by_value, i)];
            let cg = &by_conjugacy[class_of(&by_conjugacy, i)];
            let detail = format!(
                "induced class {} of size {}, conjugacy class {} of size {}",
                class_of(&by_value, i),
                vg.len(),
                class_of(&by_conjugacy, i),
                cg.len()
            );
            Case::check(label(&specs[i]), vg == cg, detail, elements)
        })
        .collect();

    let mut sizes: Vec<usize> = by_value.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let summary = BTreeMap::from([
        ("characters".to_string(), json!(specs.len())),
        ("cycle_types".to_string(), json!(types.len())),
        ("induced_classes".to_string(), json!(by_value.len())),
        ("conjugacy_classes".to_string(), json!(by_conjugacy.len())),
        ("class_sizes".to_string(), json!(sizes)),
    ]);
    if values.iter().flatten().any(|v| !v.is_integer()) {
        return Err(Error::internal("non-integral induced value"));
    }
    Ok(VerificationReport::new("theorem-a", parameters, None, cases, summary))
}
